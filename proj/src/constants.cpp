#include "einlab/constants.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

namespace einlab::constants {

PointThresholds thresholds_from_spectrum(const Spectrum& ricci_spectrum) {
  const int n = ricci_spectrum.size();
  if (n < 1) throw error("empty spectrum");
  const double s = ricci_spectrum.sum();
  double scale = 0.0;
  for (int i = 0; i < n; ++i) scale = std::max(scale, std::abs(ricci_spectrum[i]));
  const double eps = positivity_tolerance();

  PointThresholds out;
  if (s <= eps * std::max(1.0, scale)) return out;  // zero convention
  out.scal_positive = true;

  const double spread = ricci_spectrum.max() - ricci_spectrum.min();
  if (spread <= kEinsteinSpreadTolerance * scale) {
    out.einstein = true;
    out.ein_up = static_cast<double>(n);
    out.ein_low = ExtendedReal::neg_infinity();
    return out;
  }

  double up = static_cast<double>(n);
  bool has_negative = false;
  double low = 0.0;
  for (int i = 0; i < n; ++i) {
    const double l = ricci_spectrum[i];
    if (l > eps * scale) {
      up = std::min(up, s / l);
    } else if (l < -eps * scale) {
      const double cand = s / l;
      low = has_negative ? std::max(low, cand) : cand;
      has_negative = true;
    }
  }
  out.ein_up = up;
  out.ein_low = has_negative ? ExtendedReal(low) : ExtendedReal::neg_infinity();
  return out;
}

PointThresholds thresholds_at_point(const CurvaturePoint& p) {
  return thresholds_from_spectrum(spectrum_rel(p.g(), p.ricci()));
}

EinProfile ein_profile(const spaces::SpaceSpec& spec,
                       const std::vector<std::vector<double>>& samples) {
  EinProfile prof;
  prof.n = spec.dim();

  std::vector<EinProfile::Entry> entries;
  if (spec.homogeneous()) {
    EinProfile::Entry e;
    e.point = 0;
    e.thresholds = thresholds_at_point(curvature_of(spec));
    entries.push_back(std::move(e));
  } else {
    const auto& pts = samples.empty() ? spec.chart_spec().points : samples;
    if (pts.empty()) throw error("chart evaluation needs at least one sample point");
    for (std::size_t i = 0; i < pts.size(); ++i) {
      EinProfile::Entry e;
      e.point = static_cast<int>(i);
      e.coords = pts[i];
      e.thresholds = thresholds_at_point(curvature_of(spec, pts[i]));
      entries.push_back(std::move(e));
    }
  }

  bool zero = false;
  double up = static_cast<double>(prof.n);
  ExtendedReal low = ExtendedReal::neg_infinity();
  for (const auto& e : entries) {
    if (!e.thresholds.scal_positive) zero = true;
    up = std::min(up, e.thresholds.ein_up);
    low = ext_max(low, e.thresholds.ein_low);
  }
  prof.per_point = std::move(entries);
  if (zero) {
    prof.convention_zero = true;
    prof.ein_upper = 0.0;
    prof.ein_lower = ExtendedReal(0.0);
  } else {
    prof.ein_upper = up;
    prof.ein_lower = low;
  }
  return prof;
}

Rational make_rational(long long num, long long den) {
  if (den == 0) throw error("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const long long g = std::gcd(num < 0 ? -num : num, den);
  Rational r;
  r.num = g ? num / g : num;
  r.den = g ? den / g : den;
  return r;
}

std::string Rational::str() const {
  if (den == 1) return std::to_string(num);
  return std::to_string(num) + "/" + std::to_string(den);
}

ClassConstants product_class_constants(int n, int d) {
  if (d < 1 || 2 * d >= n - 2)
    throw error("requires 1 <= d < (n-2)/2 (positive scalar curvature range), got n = " +
                std::to_string(n) + ", d = " + std::to_string(d));
  ClassConstants c;
  c.ein_up = make_rational(static_cast<long long>(n - 1) * (2 * d - n + 2), d - n + 2);
  c.ein_low = make_rational(-static_cast<long long>(n - 1) * (n - 2 * d - 2), d);
  return c;
}

VanishingThresholds vanishing_thresholds(int n, int p) {
  if (p <= 1 || p >= n)
    throw error("form degree must satisfy 1 < p < n, got p = " + std::to_string(p) +
                " with n = " + std::to_string(n));
  VanishingThresholds t;
  t.k1 = make_rational(static_cast<long long>(n - 1) * (2 * p - n), p - 1);
  if (p < n - 1) t.k2 = make_rational(static_cast<long long>(n - 1) * (n - 2 * p), n - p - 1);
  return t;
}

std::vector<int> betti_vanishing_report(int n, double ein_up_lb, double ein_low_ub) {
  if (n <= 1) throw error("dimension must exceed 1");
  std::set<int> forced;
  for (int p = 2; p <= n - 1; ++p) {
    const VanishingThresholds t = vanishing_thresholds(n, p);
    if (n > 2 * p) {
      if (ein_up_lb > t.k2->value() || ein_low_ub < t.k1.value()) {
        forced.insert(p);
        forced.insert(n - p);
      }
    } else if (n < 2 * p) {
      if (ein_up_lb > t.k1.value() || (t.k2 && ein_low_ub < t.k2->value())) {
        forced.insert(p);
        forced.insert(n - p);
      }
    } else {
      // middle degree: both thresholds vanish, so any certificate of
      // positive scalar curvature forces the middle Betti number to zero
      if (ein_up_lb > 0.0 || ein_low_ub < 0.0) forced.insert(p);
    }
  }
  return std::vector<int>(forced.begin(), forced.end());
}

void validate_nayatani(const NayataniParams& params, const SymTensor2& g) {
  const int n = params.n;
  if (n < 3) throw error("the Nayatani curvature model needs dimension n >= 3");
  if (params.a.dim() != n || g.dim() != n) throw error("Nayatani tensor dimension mismatch");
  if (!(params.delta > 0.0 && params.delta < n - 2))
    throw error("delta must lie in (0, n-2), got delta = " + std::to_string(params.delta));
  const Spectrum s = spectrum_rel(g, params.a);
  const double eps = positivity_tolerance();
  const double scale = std::max(std::abs(s.min()), std::abs(s.max()));
  if (s.min() < -eps * std::max(1.0, scale))
    throw error("the tensor must be positive semidefinite (minimal eigenvalue " +
                std::to_string(s.min()) + ")");
  if (s.sum() <= eps * std::max(1.0, scale)) throw error("the tensor must have positive trace");
}

SymTensor2 nayatani_ricci(const NayataniParams& params, const SymTensor2& g) {
  validate_nayatani(params, g);
  const int n = params.n;
  const double tr = trace_rel(g, params.a);
  return params.a * (-(n - 2) * (params.delta + 1.0)) + g * ((n - 2 - params.delta) * tr);
}

SymTensor2 nayatani_ein_k(const NayataniParams& params, const SymTensor2& g, double k) {
  validate_nayatani(params, g);
  const int n = params.n;
  const double tr = trace_rel(g, params.a);
  const double coef = (n - 1) * (n - 2 - 2.0 * params.delta) - k * (n - 2 - params.delta);
  return g * (coef * tr) + params.a * (k * (n - 2) * (params.delta + 1.0));
}

double nayatani_threshold(int n, double delta) {
  if (n < 3) throw error("the Nayatani curvature model needs dimension n >= 3");
  if (!(delta > 0.0 && delta < n - 2))
    throw error("delta must lie in (0, n-2), got delta = " + std::to_string(delta));
  return (n - 1) * (2.0 * delta - n + 2.0) / (delta - n + 2.0);
}

}  // namespace einlab::constants
