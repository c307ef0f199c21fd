#include "einlab/tensor_core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace einlab {

namespace {

void require_same_dim(int a, int b, const char* what) {
  if (a != b)
    throw error(std::string(what) + ": dimension mismatch (" + std::to_string(a) + " vs " +
                std::to_string(b) + ")");
}

void require_metric_pd(const SymTensor2& g) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(g.mat(), Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw error("metric eigendecomposition failed");
  const double lo = es.eigenvalues().minCoeff();
  const double hi = es.eigenvalues().cwiseAbs().maxCoeff();
  if (!(lo > 1e-12 * std::max(1.0, hi))) throw error("metric not positive definite");
}

}  // namespace

SymTensor2::SymTensor2(int n) : m_(Eigen::MatrixXd::Zero(n, n)) {
  if (n < 1) throw error("SymTensor2 needs dimension >= 1");
}

SymTensor2 SymTensor2::identity(int n) {
  SymTensor2 t(n);
  t.m_ = Eigen::MatrixXd::Identity(n, n);
  return t;
}

SymTensor2 SymTensor2::diagonal(const std::vector<double>& entries) {
  SymTensor2 t(static_cast<int>(entries.size()));
  for (size_t i = 0; i < entries.size(); ++i) t.m_(i, i) = entries[i];
  return t;
}

SymTensor2 SymTensor2::from_matrix(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols()) throw error("SymTensor2 needs a square matrix");
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
    throw error("tensor components not symmetric");
  SymTensor2 t(static_cast<int>(m.rows()));
  t.m_ = 0.5 * (m + m.transpose());
  return t;
}

SymTensor2 SymTensor2::symmetrized(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols()) throw error("SymTensor2 needs a square matrix");
  SymTensor2 t(static_cast<int>(m.rows()));
  t.m_ = 0.5 * (m + m.transpose());
  return t;
}

SymTensor2 SymTensor2::operator+(const SymTensor2& o) const {
  require_same_dim(dim(), o.dim(), "tensor sum");
  SymTensor2 t(dim());
  t.m_ = m_ + o.m_;
  return t;
}

SymTensor2 SymTensor2::operator-(const SymTensor2& o) const {
  require_same_dim(dim(), o.dim(), "tensor difference");
  SymTensor2 t(dim());
  t.m_ = m_ - o.m_;
  return t;
}

SymTensor2 SymTensor2::operator*(double s) const {
  SymTensor2 t(dim());
  t.m_ = s * m_;
  return t;
}

SymTensor2 operator*(double s, const SymTensor2& t) { return t * s; }

double Spectrum::sum() const { return std::accumulate(values.begin(), values.end(), 0.0); }

Spectrum spectrum_rel(const SymTensor2& g, const SymTensor2& T) {
  require_same_dim(g.dim(), T.dim(), "spectrum_rel");
  require_metric_pd(g);
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(T.mat(), g.mat(),
                                                               Eigen::EigenvaluesOnly | Eigen::Ax_lBx);
  if (es.info() != Eigen::Success) throw error("generalized eigensolve failed");
  Spectrum s;
  s.values.assign(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
  std::sort(s.values.begin(), s.values.end());
  return s;
}

double trace_rel(const SymTensor2& g, const SymTensor2& T) {
  require_same_dim(g.dim(), T.dim(), "trace_rel");
  require_metric_pd(g);
  return g.mat().ldlt().solve(T.mat()).trace();
}

bool positive_definite_rel(const SymTensor2& g, const SymTensor2& T, double scale) {
  const Spectrum s = spectrum_rel(g, T);
  return s.min() > positivity_tolerance() * std::abs(scale);
}

RiemannTensor::RiemannTensor(int n) : n_(n), c_(static_cast<size_t>(n) * n * n * n, 0.0) {
  if (n < 1) throw error("RiemannTensor needs dimension >= 1");
}

double RiemannTensor::max_abs() const {
  double m = 0.0;
  for (double v : c_) m = std::max(m, std::abs(v));
  return m;
}

RiemannTensor RiemannTensor::operator+(const RiemannTensor& o) const {
  require_same_dim(n_, o.n_, "curvature sum");
  RiemannTensor r(n_);
  for (size_t i = 0; i < c_.size(); ++i) r.c_[i] = c_[i] + o.c_[i];
  return r;
}

RiemannTensor RiemannTensor::operator-(const RiemannTensor& o) const {
  require_same_dim(n_, o.n_, "curvature difference");
  RiemannTensor r(n_);
  for (size_t i = 0; i < c_.size(); ++i) r.c_[i] = c_[i] - o.c_[i];
  return r;
}

RiemannTensor RiemannTensor::operator*(double s) const {
  RiemannTensor r(n_);
  for (size_t i = 0; i < c_.size(); ++i) r.c_[i] = s * c_[i];
  return r;
}

RiemannTensor kulkarni_nomizu(const SymTensor2& a, const SymTensor2& b) {
  require_same_dim(a.dim(), b.dim(), "kulkarni_nomizu");
  const int n = a.dim();
  RiemannTensor r(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l)
          r.set(i, j, k, l,
                a(i, k) * b(j, l) - a(i, l) * b(j, k) - a(j, k) * b(i, l) + a(j, l) * b(i, k));
  return r;
}

SymTensor2 ricci_from_riemann(const SymTensor2& g, const RiemannTensor& r) {
  require_same_dim(g.dim(), r.dim(), "ricci_from_riemann");
  const int n = g.dim();
  const Eigen::MatrixXd ginv = g.mat().inverse();
  Eigen::MatrixXd ric = Eigen::MatrixXd::Zero(n, n);
  for (int j = 0; j < n; ++j)
    for (int l = 0; l < n; ++l) {
      double acc = 0.0;
      for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) acc += ginv(i, k) * r(i, j, k, l);
      ric(j, l) = acc;
    }
  return SymTensor2::symmetrized(ric);
}

double scalar_from_ricci(const SymTensor2& g, const SymTensor2& ricci) {
  require_same_dim(g.dim(), ricci.dim(), "scalar_from_ricci");
  return (g.mat().inverse() * ricci.mat()).trace();
}

double CurvatureResiduals::max() const {
  return std::max({antisym_first, antisym_second, pair_symmetry, bianchi, ricci, scal});
}

CurvatureResiduals curvature_residuals(const SymTensor2& g, const RiemannTensor& riemann,
                                       const SymTensor2& ricci, double scal) {
  const int n = g.dim();
  CurvatureResiduals res;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          const double v = riemann(i, j, k, l);
          res.antisym_first = std::max(res.antisym_first, std::abs(v + riemann(j, i, k, l)));
          res.antisym_second = std::max(res.antisym_second, std::abs(v + riemann(i, j, l, k)));
          res.pair_symmetry = std::max(res.pair_symmetry, std::abs(v - riemann(k, l, i, j)));
          res.bianchi =
              std::max(res.bianchi, std::abs(v + riemann(i, k, l, j) + riemann(i, l, j, k)));
        }
  const SymTensor2 contracted = ricci_from_riemann(g, riemann);
  res.ricci = (contracted.mat() - ricci.mat()).cwiseAbs().maxCoeff();
  res.scal = std::abs(scalar_from_ricci(g, ricci) - scal);
  return res;
}

CurvaturePoint::CurvaturePoint(SymTensor2 g, RiemannTensor riemann, SymTensor2 ricci, double scal)
    : g_(std::move(g)), riemann_(std::move(riemann)), ricci_(std::move(ricci)), scal_(scal) {}

CurvaturePoint CurvaturePoint::checked(SymTensor2 g, RiemannTensor riemann, SymTensor2 ricci,
                                       double scal, double tol) {
  require_same_dim(g.dim(), riemann.dim(), "CurvaturePoint");
  require_same_dim(g.dim(), ricci.dim(), "CurvaturePoint");
  require_metric_pd(g);
  const CurvatureResiduals res = curvature_residuals(g, riemann, ricci, scal);
  const double scale = std::max(1.0, riemann.max_abs());
  if (res.max() > tol * scale)
    throw error("curvature data inconsistent: worst residual " + std::to_string(res.max()) +
                " exceeds tolerance " + std::to_string(tol * scale));
  return CurvaturePoint(std::move(g), std::move(riemann), std::move(ricci), scal);
}

CurvaturePoint CurvaturePoint::from_riemann(SymTensor2 g, RiemannTensor riemann, double tol) {
  SymTensor2 ricci = ricci_from_riemann(g, riemann);
  const double scal = scalar_from_ricci(g, ricci);
  return checked(std::move(g), std::move(riemann), std::move(ricci), scal, tol);
}

CurvaturePoint to_orthonormal_frame(const CurvaturePoint& p) {
  const int n = p.dim();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(p.g().mat());
  if (es.info() != Eigen::Success) throw error("metric eigendecomposition failed");
  const Eigen::MatrixXd b =
      es.eigenvectors() * es.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal() *
      es.eigenvectors().transpose();

  const SymTensor2 ric = SymTensor2::symmetrized(b.transpose() * p.ricci().mat() * b);

  // Contract one slot at a time; four dense passes instead of an n^8 loop.
  const size_t n4 = static_cast<size_t>(n) * n * n * n;
  std::vector<double> cur(n4), nxt(n4);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l)
          cur[static_cast<size_t>(((i * n + j) * n + k) * n + l)] = p.riemann()(i, j, k, l);
  auto at = [n](std::vector<double>& v, int i, int j, int k, int l) -> double& {
    return v[static_cast<size_t>(((i * n + j) * n + k) * n + l)];
  };
  for (int slot = 0; slot < 4; ++slot) {
    std::fill(nxt.begin(), nxt.end(), 0.0);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
          for (int l = 0; l < n; ++l) {
            const double v = at(cur, i, j, k, l);
            if (v == 0.0) continue;
            // Replace the leading slot and rotate it to the back, so after
            // four passes every slot has been transformed once.
            for (int a = 0; a < n; ++a) at(nxt, j, k, l, a) += v * b(i, a);
          }
    std::swap(cur, nxt);
  }
  RiemannTensor riemann(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) riemann.set(i, j, k, l, at(cur, i, j, k, l));

  return CurvaturePoint::checked(SymTensor2::identity(n), std::move(riemann), ric, p.scal(), 1e-6);
}

SymTensor2 ein_k(const CurvaturePoint& p, double k) {
  return p.scal() * p.g() - k * p.ricci();
}

SymTensor2 schouten(const CurvaturePoint& p) {
  const int n = p.dim();
  if (n < 3) throw error("Schouten undefined for dimension n < 3");
  return (1.0 / (n - 2)) * (p.ricci() - (p.scal() / (2.0 * (n - 1))) * p.g());
}

std::pair<double, double> sigma_invariants(const SymTensor2& g, const SymTensor2& a) {
  const Spectrum s = spectrum_rel(g, a);
  const double sigma1 = s.sum();
  double sigma2 = 0.0;
  for (size_t i = 0; i < s.size(); ++i)
    for (size_t j = i + 1; j < s.size(); ++j) sigma2 += s[i] * s[j];
  return {sigma1, sigma2};
}

double q_curvature(const CurvaturePoint& p, double laplacian_scal) {
  if (p.dim() != 4) throw error("Q-curvature implemented for dimension 4 only");
  const auto [s1, s2] = sigma_invariants(p.g(), schouten(p));
  (void)s1;
  return -laplacian_scal / 12.0 + 2.0 * s2;
}

bool cone_member(const CurvaturePoint& p, double k) {
  return positive_definite_rel(p.g(), ein_k(p, k), p.scal());
}

}  // namespace einlab
