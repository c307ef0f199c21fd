#include "einlab/conformal4d.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace einlab::conformal4d {

namespace {

void require_positive_yamabe(const ConformalData4D& d) {
  if (!(d.yamabe > 0.0)) throw error("positive Yamabe required");
}

}  // namespace

BoundReport class_bounds(const ConformalData4D& d) {
  require_positive_yamabe(d);
  const double y = d.yamabe;
  const double i = d.sigma2_integral;

  BoundReport r;
  r.c = -24.0 * i / (y * y);
  if (i > 0.0) {
    r.s2_case = Sigma2Case::Positive;
    r.ein_bound = 2.0;
    r.strict = true;
    r.ein_low_bound = ExtendedReal::neg_infinity();
    return r;
  }
  if (i == 0.0) {
    r.s2_case = Sigma2Case::Zero;
    r.ein_bound = 2.0;
    r.strict = false;
    r.ein_low_bound = ExtendedReal::neg_infinity();
    return r;
  }

  r.s2_case = Sigma2Case::Negative;
  r.strict = false;
  const double root = std::sqrt(y * y - 96.0 * i);
  r.ein_bound = 4.0 * y / (root + y);
  // root - y = -96 i / (root + y), so the cancellation-free form is
  r.ein_low_bound = ExtendedReal(y * (root + y) / (24.0 * i));

  const double s = std::sqrt(4.0 * r.c + 1.0);
  const double ein_c = 4.0 / (s + 1.0);
  const double low_c = -(s + 1.0) / r.c;  // -4/(s-1) without cancellation
  const double low_y = r.ein_low_bound.value();
  if (std::abs(ein_c - r.ein_bound) > 1e-12 * std::max(1.0, std::abs(r.ein_bound)) ||
      std::abs(low_c - low_y) > 1e-12 * std::max(1.0, std::abs(low_y)))
    throw error("equivalent bound forms disagree beyond 1e-12");
  return r;
}

bool alpha_condition(const ConformalData4D& d, double alpha) {
  require_positive_yamabe(d);
  if (!(alpha > 0.0)) throw error("alpha must be positive");
  return 4.0 * d.sigma2_integral +
             alpha * (alpha + 1.0) / 6.0 * d.yamabe * d.yamabe >
         0.0;
}

std::pair<double, double> alpha_exponents(double alpha) {
  if (!(alpha > 0.0)) throw error("alpha must be positive");
  return {-2.0 / alpha, 2.0 / (alpha + 1.0)};
}

BoundReport optimize_alpha(const ConformalData4D& d, double grid) {
  require_positive_yamabe(d);
  if (!(d.sigma2_integral < 0.0))
    throw error("the alpha scan needs a negative sigma2 integral");
  if (!(grid > 0.0)) throw error("grid resolution must be positive");

  BoundReport r;
  r.s2_case = Sigma2Case::Negative;
  r.strict = false;
  r.c = -24.0 * d.sigma2_integral / (d.yamabe * d.yamabe);

  const double step = 1.0 + grid;
  double best_up = 0.0;
  double best_low = 0.0;
  bool any = false;
  for (double alpha = 1e-6; alpha <= 1e6; alpha *= step) {
    if (!alpha_condition(d, alpha)) continue;
    const auto [k_neg, k_pos] = alpha_exponents(alpha);
    if (!any) {
      best_up = k_pos;
      best_low = k_neg;
      any = true;
    } else {
      best_up = std::max(best_up, k_pos);
      best_low = std::min(best_low, k_neg);
    }
  }
  if (!any) throw error("no admitted alpha on the scan grid");
  r.ein_bound = best_up;
  r.ein_low_bound = ExtendedReal(best_low);
  return r;
}

NewtonMaclaurin newton_maclaurin_check(const SymTensor2& h) {
  if (h.dim() != 4) throw error("the sigma1/sigma2 comparison is for dimension 4 only");
  const auto [s1, s2] = sigma_invariants(SymTensor2::identity(4), h);
  NewtonMaclaurin r;
  r.lhs = s1 * s1;
  r.rhs = (8.0 / 3.0) * s2;
  const double scale = std::max({1.0, std::abs(r.lhs), std::abs(r.rhs)});
  r.holds = r.lhs >= r.rhs - 1e-12 * scale;
  r.equality = std::abs(r.lhs - r.rhs) <= 1e-12 * scale;
  return r;
}

}  // namespace einlab::conformal4d
