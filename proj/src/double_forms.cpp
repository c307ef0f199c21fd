#include "einlab/double_forms.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <string>
#include <utility>

namespace einlab::dforms {

namespace {

struct Basis {
  std::vector<std::vector<int>> sets;
  std::vector<int> rank;  // bitmask -> lex index, -1 elsewhere
};

void enumerate(int n, int p, std::vector<std::vector<int>>& out) {
  std::vector<int> cur(p);
  // standard lexicographic successor walk
  for (int i = 0; i < p; ++i) cur[i] = i;
  if (p > n) return;
  while (true) {
    out.push_back(cur);
    int i = p - 1;
    while (i >= 0 && cur[i] == n - p + i) --i;
    if (i < 0) break;
    ++cur[i];
    for (int j = i + 1; j < p; ++j) cur[j] = cur[j - 1] + 1;
  }
}

const Basis& basis(int n, int p) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, Basis> cache;
  std::scoped_lock lock(mu);
  auto key = std::make_pair(n, p);
  auto it = cache.find(key);
  if (it == cache.end()) {
    Basis b;
    enumerate(n, p, b.sets);
    b.rank.assign(std::size_t{1} << n, -1);
    for (int i = 0; i < static_cast<int>(b.sets.size()); ++i) {
      unsigned mask = 0;
      for (int e : b.sets[i]) mask |= 1u << e;
      b.rank[mask] = i;
    }
    it = cache.emplace(key, std::move(b)).first;
  }
  return it->second;
}

void check_degrees(int n, int p, int q) {
  if (n < 1 || n > kMaxDim)
    throw error("double forms support dimensions 1 through " + std::to_string(kMaxDim) +
                ", got n = " + std::to_string(n));
  if (p < 0 || q < 0 || p > n || q > n)
    throw error("double form degrees must lie in [0, n], got (" + std::to_string(p) + ", " +
                std::to_string(q) + ") with n = " + std::to_string(n));
}

// Splits of `total` sorted positions into a left block of size `left` and the
// complementary right block, with the shuffle sign of the split.
struct Split {
  std::vector<int> left_pos;
  std::vector<int> right_pos;
  double sign;
};

std::vector<Split> position_splits(int total, int left) {
  std::vector<Split> out;
  for (const auto& pos : subsets(total, left)) {
    Split s;
    s.left_pos = pos;
    int inv = 0;
    for (int t = 0; t < left; ++t) inv += pos[t] - t;
    s.sign = (inv % 2 == 0) ? 1.0 : -1.0;
    std::vector<bool> taken(total, false);
    for (int q : pos) taken[q] = true;
    for (int q = 0; q < total; ++q)
      if (!taken[q]) s.right_pos.push_back(q);
    out.push_back(std::move(s));
  }
  return out;
}

unsigned mask_of(const std::vector<int>& set, const std::vector<int>& pos) {
  unsigned m = 0;
  for (int q : pos) m |= 1u << set[q];
  return m;
}

}  // namespace

std::vector<std::vector<int>> subsets(int n, int p) {
  std::vector<std::vector<int>> out;
  if (p < 0 || p > n) return out;
  enumerate(n, p, out);
  return out;
}

DoubleForm::DoubleForm(int n, int p, int q) : n_(n), p_(p), q_(q) {
  check_degrees(n, p, q);
  const auto rows = basis(n, p).sets.size();
  const auto cols = basis(n, q).sets.size();
  c_ = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
}

DoubleForm DoubleForm::scalar(int n, double value) {
  DoubleForm f(n, 0, 0);
  f.c_(0, 0) = value;
  return f;
}

DoubleForm DoubleForm::metric(int n) {
  DoubleForm f(n, 1, 1);
  f.c_ = Eigen::MatrixXd::Identity(n, n);
  return f;
}

DoubleForm DoubleForm::from_sym2(const SymTensor2& t) {
  DoubleForm f(t.dim(), 1, 1);
  f.c_ = t.mat();
  return f;
}

DoubleForm DoubleForm::from_riemann(const RiemannTensor& r) {
  const int n = r.dim();
  DoubleForm f(n, 2, 2);
  const auto& b = basis(n, 2).sets;
  for (int row = 0; row < static_cast<int>(b.size()); ++row)
    for (int col = 0; col < static_cast<int>(b.size()); ++col)
      f.c_(row, col) = r(b[row][0], b[row][1], b[col][0], b[col][1]);
  return f;
}

DoubleForm DoubleForm::operator+(const DoubleForm& o) const {
  if (n_ != o.n_ || p_ != o.p_ || q_ != o.q_) throw error("double form shape mismatch in +");
  DoubleForm f(n_, p_, q_);
  f.c_ = c_ + o.c_;
  return f;
}

DoubleForm DoubleForm::operator-(const DoubleForm& o) const {
  if (n_ != o.n_ || p_ != o.p_ || q_ != o.q_) throw error("double form shape mismatch in -");
  DoubleForm f(n_, p_, q_);
  f.c_ = c_ - o.c_;
  return f;
}

DoubleForm DoubleForm::operator*(double s) const {
  DoubleForm f(n_, p_, q_);
  f.c_ = c_ * s;
  return f;
}

DoubleForm operator*(double s, const DoubleForm& f) { return f * s; }

double max_abs_diff(const DoubleForm& a, const DoubleForm& b) {
  if (a.dim() != b.dim() || a.p() != b.p() || a.q() != b.q())
    throw error("double form shape mismatch in max_abs_diff");
  return (a.comps() - b.comps()).cwiseAbs().maxCoeff();
}

DoubleForm wedge(const DoubleForm& a, const DoubleForm& b) {
  if (a.dim() != b.dim()) throw error("wedge requires equal dimensions");
  const int n = a.dim();
  const int p = a.p() + b.p();
  const int q = a.q() + b.q();
  if (p > n || q > n)
    throw error("wedge degree (" + std::to_string(p) + ", " + std::to_string(q) +
                ") exceeds dimension " + std::to_string(n));
  DoubleForm out(n, p, q);

  const auto& rows = basis(n, p).sets;
  const auto& cols = basis(n, q).sets;
  const auto& row_rank_a = basis(n, a.p()).rank;
  const auto& row_rank_b = basis(n, b.p()).rank;
  const auto& col_rank_a = basis(n, a.q()).rank;
  const auto& col_rank_b = basis(n, b.q()).rank;
  const auto row_splits = position_splits(p, a.p());
  const auto col_splits = position_splits(q, a.q());

  for (int ri = 0; ri < static_cast<int>(rows.size()); ++ri) {
    for (const auto& rs : row_splits) {
      const int ra = row_rank_a[mask_of(rows[ri], rs.left_pos)];
      const int rb = row_rank_b[mask_of(rows[ri], rs.right_pos)];
      for (int ci = 0; ci < static_cast<int>(cols.size()); ++ci) {
        double acc = 0.0;
        for (const auto& cs : col_splits) {
          const int ca = col_rank_a[mask_of(cols[ci], cs.left_pos)];
          const int cb = col_rank_b[mask_of(cols[ci], cs.right_pos)];
          acc += rs.sign * cs.sign * a(ra, ca) * b(rb, cb);
        }
        out.set(ri, ci, out(ri, ci) + acc);
      }
    }
  }
  return out;
}

DoubleForm metric_power_over_factorial(int n, int k) {
  check_degrees(n, k, k);
  DoubleForm acc = DoubleForm::scalar(n, 1.0);
  for (int j = 1; j <= k; ++j) acc = wedge(acc, DoubleForm::metric(n)) * (1.0 / j);
  return acc;
}

DoubleForm contract(const DoubleForm& a) {
  if (a.p() < 1 || a.q() < 1) throw error("contract requires a (p, q) form with p, q >= 1");
  const int n = a.dim();
  DoubleForm out(n, a.p() - 1, a.q() - 1);
  const auto& rows = basis(n, a.p() - 1).sets;
  const auto& cols = basis(n, a.q() - 1).sets;
  const auto& row_rank = basis(n, a.p()).rank;
  const auto& col_rank = basis(n, a.q()).rank;

  for (int ri = 0; ri < static_cast<int>(rows.size()); ++ri) {
    unsigned rmask = 0;
    for (int e : rows[ri]) rmask |= 1u << e;
    for (int ci = 0; ci < static_cast<int>(cols.size()); ++ci) {
      unsigned cmask = 0;
      for (int e : cols[ci]) cmask |= 1u << e;
      double acc = 0.0;
      for (int m = 0; m < n; ++m) {
        const unsigned bit = 1u << m;
        if ((rmask & bit) || (cmask & bit)) continue;
        int before = 0;
        for (int e : rows[ri]) before += (e < m) ? 1 : 0;
        for (int e : cols[ci]) before += (e < m) ? 1 : 0;
        const double sign = (before % 2 == 0) ? 1.0 : -1.0;
        acc += sign * a(row_rank[rmask | bit], col_rank[cmask | bit]);
      }
      out.set(ri, ci, acc);
    }
  }
  return out;
}

Spectrum PFormOperator::spectrum() const {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(matrix, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw error("p-form operator eigensolve failed");
  Eigen::VectorXd v = es.eigenvalues();
  std::vector<double> vals(v.data(), v.data() + v.size());
  std::sort(vals.begin(), vals.end());
  return Spectrum(std::move(vals));
}

double PFormOperator::min_eigenvalue() const { return spectrum().min(); }

PFormOperator as_operator(const DoubleForm& a, const SymTensor2& g) {
  if (a.p() != a.q())
    throw error("a p-form operator needs a (p, p) double form, got (" + std::to_string(a.p()) +
                ", " + std::to_string(a.q()) + ")");
  if (g.dim() != a.dim()) throw error("as_operator dimension mismatch");
  const int n = a.dim();
  const int p = a.p();

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(g.mat());
  if (es.info() != Eigen::Success) throw error("metric eigensolve failed");
  if (es.eigenvalues().minCoeff() <= 1e-12 * std::max(1.0, es.eigenvalues().cwiseAbs().maxCoeff()))
    throw error("metric not positive definite");
  Eigen::MatrixXd b = es.eigenvectors() *
                      es.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal() *
                      es.eigenvectors().transpose();

  const auto& sets = basis(n, p).sets;
  const int nn = static_cast<int>(sets.size());
  Eigen::MatrixXd cp(nn, nn);
  if (p == 0) {
    cp(0, 0) = 1.0;
  } else {
    Eigen::MatrixXd sub(p, p);
    for (int ri = 0; ri < nn; ++ri)
      for (int ci = 0; ci < nn; ++ci) {
        for (int r = 0; r < p; ++r)
          for (int c = 0; c < p; ++c) sub(r, c) = b(sets[ri][r], sets[ci][c]);
        cp(ri, ci) = sub.determinant();
      }
  }

  Eigen::MatrixXd m = cp.transpose() * a.comps() * cp;
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  const double asym = (m - m.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-6 * scale)
    throw error("double form is not symmetric as an operator (asymmetry " + std::to_string(asym) +
                ")");
  PFormOperator op;
  op.n = n;
  op.deg = p;
  op.matrix = 0.5 * (m + m.transpose());
  return op;
}

double sum_lowest_p(const SymTensor2& t, const SymTensor2& g, int p) {
  if (p < 1 || p > g.dim())
    throw error("sum_lowest_p needs 1 <= p <= n, got p = " + std::to_string(p));
  Spectrum s = spectrum_rel(g, t);
  double acc = 0.0;
  for (int i = 0; i < p; ++i) acc += s[i];
  return acc;
}

namespace {

void check_weitzenbock_degree(int n, int deg) {
  if (n > kMaxDim)
    throw error("form curvature terms support dimensions up to " + std::to_string(kMaxDim) +
                ", got n = " + std::to_string(n));
  if (deg < 2 || deg > n - 1)
    throw error("form degree must satisfy 2 <= deg <= n - 1, got deg = " + std::to_string(deg) +
                " with n = " + std::to_string(n));
}

}  // namespace

PFormOperator weitzenbock_general(const CurvaturePoint& pt, int deg) {
  check_weitzenbock_degree(pt.dim(), deg);
  const CurvaturePoint o = to_orthonormal_frame(pt);
  const int n = o.dim();
  DoubleForm gdf = DoubleForm::metric(n);
  DoubleForm core =
      wedge(gdf, DoubleForm::from_sym2(o.ricci())) * (1.0 / (deg - 1)) -
      2.0 * DoubleForm::from_riemann(o.riemann());
  DoubleForm w = wedge(metric_power_over_factorial(n, deg - 2), core);
  return as_operator(w, SymTensor2::identity(n));
}

double weyl_residual(const CurvaturePoint& pt) {
  const RiemannTensor flat = kulkarni_nomizu(pt.g(), schouten(pt));
  return (pt.riemann() - flat).max_abs();
}

PFormOperator weitzenbock_cflat(const CurvaturePoint& pt, int deg) {
  check_weitzenbock_degree(pt.dim(), deg);
  const int n = pt.dim();
  const double resid = weyl_residual(pt);
  const double scale = std::max(1.0, pt.riemann().max_abs());
  if (resid > 1e-6 * scale)
    throw error("Weyl part nonzero: residual " + std::to_string(resid) +
                " exceeds 1e-6 of the curvature scale");
  const CurvaturePoint o = to_orthonormal_frame(pt);
  const double k1 = static_cast<double>(n - 1) * (2 * deg - n) / (deg - 1);
  const SymTensor2 e = ein_k(o, k1);
  DoubleForm w = wedge(metric_power_over_factorial(n, deg - 1), DoubleForm::from_sym2(e)) *
                 (static_cast<double>(deg - 1) / ((n - 1) * (n - 2)));
  return as_operator(w, SymTensor2::identity(n));
}

}  // namespace einlab::dforms
