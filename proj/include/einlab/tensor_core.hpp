#pragma once

#include <Eigen/Dense>
#include <utility>
#include <vector>

#include "einlab/common.hpp"

namespace einlab {

/// Symmetric 2-tensor on an n-dimensional tangent space.
class SymTensor2 {
 public:
  explicit SymTensor2(int n);
  static SymTensor2 identity(int n);
  static SymTensor2 diagonal(const std::vector<double>& entries);
  /// Requires the input to already be symmetric (up to 1e-12 relative).
  static SymTensor2 from_matrix(const Eigen::MatrixXd& m);
  /// Replaces the input by its symmetric part (m + m^T)/2.
  static SymTensor2 symmetrized(const Eigen::MatrixXd& m);

  int dim() const { return static_cast<int>(m_.rows()); }
  double operator()(int i, int j) const { return m_(i, j); }
  void set(int i, int j, double v) {
    m_(i, j) = v;
    m_(j, i) = v;
  }
  const Eigen::MatrixXd& mat() const { return m_; }
  double max_abs() const { return m_.cwiseAbs().maxCoeff(); }

  SymTensor2 operator+(const SymTensor2& o) const;
  SymTensor2 operator-(const SymTensor2& o) const;
  SymTensor2 operator*(double s) const;

 private:
  Eigen::MatrixXd m_;
};

SymTensor2 operator*(double s, const SymTensor2& t);

/// Eigenvalues in ascending order.
struct Spectrum {
  std::vector<double> values;

  double min() const { return values.front(); }
  double max() const { return values.back(); }
  double sum() const;
  size_t size() const { return values.size(); }
  double operator[](size_t i) const { return values[i]; }
};

/// Generalized eigenvalues of T relative to the metric g, i.e. the roots of
/// det(T - lambda g). Throws if g is not positive definite or dimensions differ.
Spectrum spectrum_rel(const SymTensor2& g, const SymTensor2& T);

/// trace of T relative to g, i.e. tr(g^{-1} T).
double trace_rel(const SymTensor2& g, const SymTensor2& T);

/// Minimal generalized eigenvalue exceeds positivity_tolerance() * |scale|.
bool positive_definite_rel(const SymTensor2& g, const SymTensor2& T, double scale);

/// (0,4) curvature tensor stored densely.
class RiemannTensor {
 public:
  explicit RiemannTensor(int n);

  int dim() const { return n_; }
  double operator()(int i, int j, int k, int l) const { return c_[idx(i, j, k, l)]; }
  void set(int i, int j, int k, int l, double v) { c_[idx(i, j, k, l)] = v; }
  double max_abs() const;

  RiemannTensor operator+(const RiemannTensor& o) const;
  RiemannTensor operator-(const RiemannTensor& o) const;
  RiemannTensor operator*(double s) const;

 private:
  size_t idx(int i, int j, int k, int l) const {
    return static_cast<size_t>(((i * n_ + j) * n_ + k) * n_ + l);
  }
  int n_;
  std::vector<double> c_;
};

/// (a ^ b)_{ijkl} = a_ik b_jl - a_il b_jk - a_jk b_il + a_jl b_ik.
/// kulkarni_nomizu(g, g) / 2 is the curvature tensor of the unit round sphere.
RiemannTensor kulkarni_nomizu(const SymTensor2& a, const SymTensor2& b);

/// ricci[j][l] = sum_{i,k} g^{ik} R[i][j][k][l].
SymTensor2 ricci_from_riemann(const SymTensor2& g, const RiemannTensor& r);
double scalar_from_ricci(const SymTensor2& g, const SymTensor2& ricci);

/// Worst-case violations of the curvature identities, in absolute terms.
struct CurvatureResiduals {
  double antisym_first = 0.0;   // R_ijkl + R_jikl
  double antisym_second = 0.0;  // R_ijkl + R_ijlk
  double pair_symmetry = 0.0;   // R_ijkl - R_klij
  double bianchi = 0.0;         // R_ijkl + R_iklj + R_iljk
  double ricci = 0.0;           // ricci vs contraction of riemann
  double scal = 0.0;            // scal vs trace of ricci
  double max() const;
};

class CurvaturePoint;
CurvatureResiduals curvature_residuals(const SymTensor2& g, const RiemannTensor& riemann,
                                       const SymTensor2& ricci, double scal);

/// Pointwise curvature data (g, R, Ric, Scal) with validated consistency.
class CurvaturePoint {
 public:
  /// Validates metric positivity, the curvature symmetries, the first Bianchi
  /// identity, and the Ricci/scalar contractions, all to `tol` relative to
  /// the magnitude of the curvature. Throws on violation.
  static CurvaturePoint checked(SymTensor2 g, RiemannTensor riemann, SymTensor2 ricci, double scal,
                                double tol = 1e-12);

  /// Derives Ricci and scalar curvature by contraction, then validates.
  static CurvaturePoint from_riemann(SymTensor2 g, RiemannTensor riemann, double tol = 1e-12);

  int dim() const { return g_.dim(); }
  const SymTensor2& g() const { return g_; }
  const RiemannTensor& riemann() const { return riemann_; }
  const SymTensor2& ricci() const { return ricci_; }
  double scal() const { return scal_; }

 private:
  CurvaturePoint(SymTensor2 g, RiemannTensor riemann, SymTensor2 ricci, double scal);

  SymTensor2 g_;
  RiemannTensor riemann_;
  SymTensor2 ricci_;
  double scal_;
};

/// Re-expresses the point in a g-orthonormal frame (the returned metric is
/// the identity). Spectra relative to g are unchanged.
CurvaturePoint to_orthonormal_frame(const CurvaturePoint& p);

/// Ein_k = Scal * g - k * Ric.
SymTensor2 ein_k(const CurvaturePoint& p, double k);

/// Schouten tensor (1/(n-2)) (Ric - Scal/(2(n-1)) g); defined for n >= 3.
SymTensor2 schouten(const CurvaturePoint& p);

/// First and second elementary symmetric functions of the spectrum of A
/// relative to g. sigma2 is accumulated over unordered index pairs.
std::pair<double, double> sigma_invariants(const SymTensor2& g, const SymTensor2& a);

/// Fourth-order curvature scalar in dimension 4:
/// Q = -(1/12) (Laplacian of Scal) + 2 sigma2(Schouten).
double q_curvature(const CurvaturePoint& p, double laplacian_scal);

/// Whether Ein_k is positive definite at this point, relative to the scale
/// of Scal * g.
bool cone_member(const CurvaturePoint& p, double k);

}  // namespace einlab
