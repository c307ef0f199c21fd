#pragma once

#include <random>
#include <vector>

#include <Eigen/Dense>

#include "einlab/tensor_core.hpp"

namespace einlab::testing {

inline std::mt19937_64 make_rng(unsigned long long seed) { return std::mt19937_64(seed); }

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline int uniform_int(std::mt19937_64& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

inline SymTensor2 random_sym(std::mt19937_64& rng, int n, double scale = 1.0) {
  Eigen::MatrixXd m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = uniform(rng, -scale, scale);
  return SymTensor2::symmetrized(m);
}

/// A A^T + margin I: positive definite with eigenvalues >= margin.
inline SymTensor2 random_spd(std::mt19937_64& rng, int n, double margin = 0.2) {
  Eigen::MatrixXd m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = uniform(rng, -1.0, 1.0);
  Eigen::MatrixXd s = m * m.transpose() + margin * Eigen::MatrixXd::Identity(n, n);
  return SymTensor2::from_matrix(s);
}

/// A A^T with A of the given rank: positive semidefinite.
inline SymTensor2 random_psd(std::mt19937_64& rng, int n, int rank) {
  Eigen::MatrixXd m(n, rank);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < rank; ++j) m(i, j) = uniform(rng, -1.0, 1.0);
  return SymTensor2::from_matrix(m * m.transpose());
}

/// v v^T for a random nonzero v.
inline SymTensor2 rank_one(std::mt19937_64& rng, int n) {
  Eigen::VectorXd v(n);
  double norm = 0.0;
  while (norm < 1e-3) {
    for (int i = 0; i < n; ++i) v(i) = uniform(rng, -1.0, 1.0);
    norm = v.norm();
  }
  return SymTensor2::from_matrix(v * v.transpose());
}

/// Curvature of the form wedge(g, A): the conformally flat model family.
/// Uses a random positive-definite metric and a random symmetric A.
inline CurvaturePoint random_cflat_point(std::mt19937_64& rng, int n, double a_scale = 1.0) {
  const SymTensor2 g = random_spd(rng, n);
  const SymTensor2 a = random_sym(rng, n, a_scale);
  return CurvaturePoint::from_riemann(g, kulkarni_nomizu(g, a));
}

}  // namespace einlab::testing
