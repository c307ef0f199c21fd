#pragma once

#include <optional>
#include <string>
#include <vector>

#include "einlab/common.hpp"
#include "einlab/spaces.hpp"
#include "einlab/tensor_core.hpp"

namespace einlab::constants {

/// Pointwise positivity thresholds of k -> Scal g - k Ric.
/// With Ricci eigenvalues l_1 <= ... <= l_n and S their sum:
///   S <= 0       -> both thresholds 0 (the zero convention);
///   otherwise    ein_up = min(n, min over l_i > 0 of S/l_i),
///                ein_low = -inf when no l_i < 0, else max over l_i < 0 of S/l_i.
/// Einstein spectra (relative spread below kEinsteinSpreadTolerance) cap
/// ein_up at exactly n.
struct PointThresholds {
  double ein_up = 0.0;
  ExtendedReal ein_low{0.0};
  bool scal_positive = false;
  bool einstein = false;
};

PointThresholds thresholds_from_spectrum(const Spectrum& ricci_spectrum);
PointThresholds thresholds_at_point(const CurvaturePoint& p);

/// Ein(g) / ein(g) over a set of sample points: the infimum of per-point
/// upper thresholds and supremum of lower ones, with the zero convention
/// propagated when any sample has nonpositive scalar curvature.
struct EinProfile {
  struct Entry {
    int point = 0;
    std::vector<double> coords;  // empty for homogeneous spaces
    PointThresholds thresholds;
  };

  int n = 0;
  double ein_upper = 0.0;
  ExtendedReal ein_lower{0.0};
  bool convention_zero = false;
  std::vector<Entry> per_point;
};

/// Homogeneous specs are profiled at their representative point (samples
/// ignored); charts use `samples`, falling back to the chart's own point
/// list when `samples` is empty.
EinProfile ein_profile(const spaces::SpaceSpec& spec,
                       const std::vector<std::vector<double>>& samples = {});

/// Exact rational with normalized sign and lowest terms.
struct Rational {
  long long num = 0;
  long long den = 1;

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  std::string str() const;  // "24/5", "-12"
};

Rational make_rational(long long num, long long den);

/// Closed-form class constants of S^{n-d-1}(+1) x H^{d+1}(-1):
/// Ein = (n-1)(2d-n+2)/(d-n+2), ein = -(n-1)(n-2d-2)/d,
/// valid for 1 <= d < (n-2)/2 (positive scalar curvature range).
struct ClassConstants {
  Rational ein_up;
  Rational ein_low;
};

ClassConstants product_class_constants(int n, int d);

/// Positivity thresholds of the degree-p form curvature term:
/// k1 = (n-1)(2p-n)/(p-1), k2 = (n-1)(n-2p)/(n-p-1); k1(n-p) = k2(p).
/// k2 is absent for p = n-1 (its companion degree 1 sits outside the
/// 1 < p < n range, the formula poles there).
struct VanishingThresholds {
  Rational k1;
  std::optional<Rational> k2;
};

VanishingThresholds vanishing_thresholds(int n, int p);

/// Degrees p whose Betti numbers must vanish given certified bounds
/// ein_up_lb <= Ein([g]) and ein_low_ub >= ein([g]). Passing 0 for either
/// bound means "no information" on that side. For 2p = n the middle degree
/// is included whenever either bound certifies positive scalar curvature
/// (ein_up_lb > 0 or ein_low_ub < 0).
std::vector<int> betti_vanishing_report(int n, double ein_up_lb, double ein_low_ub);

/// Conformally flat data with Ricci curvature
///   Ric = -(n-2)(delta+1) A + (n-2-delta) tr_g(A) g
/// for a positive-semidefinite A with positive trace and 0 < delta < n-2.
struct NayataniParams {
  int n = 0;
  double delta = 0.0;
  SymTensor2 a{1};
};

/// Validates dimension, the delta range, and that `a` is positive
/// semidefinite with positive trace relative to g.
void validate_nayatani(const NayataniParams& params, const SymTensor2& g);

SymTensor2 nayatani_ricci(const NayataniParams& params, const SymTensor2& g);

/// Ein_k of the Nayatani curvature:
/// ((n-1)(n-2-2 delta) - k (n-2-delta)) tr_g(A) g + k (n-2)(delta+1) A.
SymTensor2 nayatani_ein_k(const NayataniParams& params, const SymTensor2& g, double k);

/// (n-1)(2 delta - n + 2)/(delta - n + 2): Ein_k is positive definite for
/// every 0 < k below this value; delta -> 0 recovers the cylinder's n-1.
double nayatani_threshold(int n, double delta);

}  // namespace einlab::constants
