#pragma once

#include <Eigen/Dense>
#include <vector>

#include "einlab/common.hpp"
#include "einlab/tensor_core.hpp"

namespace einlab::dforms {

/// Largest tangent dimension supported by the double-form machinery.
/// Component arrays grow like C(n,p)^2, so the cap keeps them small.
inline constexpr int kMaxDim = 9;

/// All p-element subsets of {0..n-1} in lexicographic order.
std::vector<std::vector<int>> subsets(int n, int p);

/// A (p,q) double form: an array indexed by one ordered p-subset and one
/// ordered q-subset of frame directions, antisymmetric in each group.
/// Components are stored against the lexicographic subset bases.
class DoubleForm {
 public:
  DoubleForm(int n, int p, int q);

  static DoubleForm scalar(int n, double value);
  static DoubleForm metric(int n);
  static DoubleForm from_sym2(const SymTensor2& t);
  static DoubleForm from_riemann(const RiemannTensor& r);

  int dim() const { return n_; }
  int p() const { return p_; }
  int q() const { return q_; }

  double operator()(int row, int col) const { return c_(row, col); }
  void set(int row, int col, double v) { c_(row, col) = v; }
  const Eigen::MatrixXd& comps() const { return c_; }
  double max_abs() const { return c_.cwiseAbs().maxCoeff(); }

  DoubleForm operator+(const DoubleForm& o) const;
  DoubleForm operator-(const DoubleForm& o) const;
  DoubleForm operator*(double s) const;

 private:
  int n_, p_, q_;
  Eigen::MatrixXd c_;
};

DoubleForm operator*(double s, const DoubleForm& f);

double max_abs_diff(const DoubleForm& a, const DoubleForm& b);

/// Exterior product. Degrees add; throws past degree n.
/// wedge(metric, metric) on n = 2 has the single component 2, so g^2/2 is the
/// unit volume-squared form.
DoubleForm wedge(const DoubleForm& a, const DoubleForm& b);

/// g^k / k! built by iterated wedge. The k = 0 case is the scalar 1.
DoubleForm metric_power_over_factorial(int n, int k);

/// Trace over one leading slot of each group: maps (p,q) to (p-1,q-1).
/// contract(metric_power_over_factorial(n,k)) = (n-k+1) * g^{k-1}/(k-1)!.
DoubleForm contract(const DoubleForm& a);

/// Symmetric operator on p-forms, expressed against the lexicographic basis
/// of p-subsets of a g-orthonormal frame.
struct PFormOperator {
  int n = 0;
  int deg = 0;
  Eigen::MatrixXd matrix;

  Spectrum spectrum() const;
  double min_eigenvalue() const;
};

/// Interprets a (p,p) double form as an operator on p-forms, normalized so
/// that g^p/p! becomes the identity. Components are orthonormalized against
/// g first.
PFormOperator as_operator(const DoubleForm& a, const SymTensor2& g);

/// Sum of the p smallest eigenvalues of T relative to g.
double sum_lowest_p(const SymTensor2& t, const SymTensor2& g, int p);

/// Curvature term of the degree-`deg` form Laplacian:
/// g^{deg-2}/(deg-2)! (g Ric/(deg-1) - 2 R), returned as an operator.
/// On the unit round sphere its spectrum is deg(n-deg).
PFormOperator weitzenbock_general(const CurvaturePoint& pt, int deg);

/// Same operator for conformally flat points, assembled from
/// (deg-1)/((n-1)(n-2)) g^{deg-1}/(deg-1)! Ein_{k1} with
/// k1 = (n-1)(2 deg - n)/(deg-1). Requires the Weyl part to vanish.
PFormOperator weitzenbock_cflat(const CurvaturePoint& pt, int deg);

/// Max componentwise deviation of the curvature from wedge(g, schouten).
double weyl_residual(const CurvaturePoint& pt);

}  // namespace einlab::dforms
