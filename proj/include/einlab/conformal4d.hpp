#pragma once

#include <utility>

#include "einlab/common.hpp"
#include "einlab/tensor_core.hpp"

namespace einlab::conformal4d {

/// Input data of the 4-dimensional bound calculator: the Yamabe constant of
/// the class and the integral of sigma2 of the Schouten tensor. Both are
/// supplied, not computed.
struct ConformalData4D {
  double yamabe = 0.0;
  double sigma2_integral = 0.0;
};

enum class Sigma2Case { Positive, Zero, Negative };

/// Bounds on the class constants. `ein_bound` is a lower bound for Ein([g])
/// (strict in the positive case); `ein_low_bound` an upper bound for ein([g]),
/// -inf when the data forces nonnegative Ricci directions.
struct BoundReport {
  Sigma2Case s2_case = Sigma2Case::Zero;
  double ein_bound = 0.0;
  bool strict = false;
  ExtendedReal ein_low_bound = ExtendedReal::neg_infinity();
  double c = 0.0;  // -24 sigma2_integral / yamabe^2
};

/// Case split on the sign of the sigma2 integral I:
///   I > 0: Ein > 2 (strict), ein = -inf
///   I = 0: Ein >= 2, ein = -inf
///   I < 0: Ein >= 4Y/(sqrt(Y^2 - 96 I) + Y), ein <= -4Y/(sqrt(Y^2 - 96 I) - Y)
/// The negative-case values are cross-checked against the equivalent
/// c-parametrized forms 4/(sqrt(4c+1)+1) and -4/(sqrt(4c+1)-1) at 1e-12.
BoundReport class_bounds(const ConformalData4D& d);

/// The admissibility condition 4 I + alpha (alpha + 1) Y^2 / 6 > 0 (strict).
bool alpha_condition(const ConformalData4D& d, double alpha);

/// The exponent pair (-2/alpha, 2/(alpha+1)) attached to an admitted alpha.
std::pair<double, double> alpha_exponents(double alpha);

/// Brute-force companion of class_bounds for I < 0: scans alpha over a
/// logarithmic grid on [1e-6, 1e6] with multiplicative step (1 + grid),
/// keeps admitted alphas, and folds sup 2/(alpha+1) / inf -2/alpha.
BoundReport optimize_alpha(const ConformalData4D& d, double grid);

/// sigma1(H)^2 versus (8/3) sigma2(H) in dimension 4. The difference equals
/// (4 |H|^2 - sigma1^2)/3, nonnegative with equality exactly on multiples of
/// the identity.
struct NewtonMaclaurin {
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = false;
  bool equality = false;
};

NewtonMaclaurin newton_maclaurin_check(const SymTensor2& h);

}  // namespace einlab::conformal4d
