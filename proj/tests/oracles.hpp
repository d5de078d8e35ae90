#pragma once

// Test-only reference computations, written without the library's matrix
// type so they stay independent of the code they check.

#include <algorithm>
#include <complex>
#include <limits>
#include <numeric>
#include <vector>

#include <Eigen/Dense>

#include "qhe/linalg.hpp"

namespace oracle {

using Cx = std::complex<double>;
using Dense = std::vector<std::vector<Cx>>;

inline Dense to_dense(const qhe::Matrix& m) {
  Dense d(m.dim(), std::vector<Cx>(m.dim()));
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = 0; j < m.dim(); ++j) d[i][j] = m(i, j);
  return d;
}

// sum_k A_k rho A_k^dagger by explicit index sums.
inline Dense kraus_sum(const std::vector<Dense>& ops, const Dense& rho) {
  const std::size_t n = rho.size();
  Dense out(n, std::vector<Cx>(n));
  for (const auto& a : ops)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k)
          for (std::size_t l = 0; l < n; ++l) out[i][j] += a[i][k] * rho[k][l] * std::conj(a[j][l]);
  return out;
}

// min over population permutations of sum_i levels[i] p[pi(i)].
inline double min_permuted_energy(const std::vector<double>& levels, const std::vector<double>& p) {
  std::vector<std::size_t> perm(p.size());
  std::iota(perm.begin(), perm.end(), 0);
  double best = std::numeric_limits<double>::infinity();
  do {
    double e = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) e += levels[i] * p[perm[i]];
    best = std::min(best, e);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

inline double dot(const std::vector<double>& a, const std::vector<double>& b) {
  return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

inline std::vector<double> eigen_hermitian(const qhe::Matrix& m) {
  Eigen::MatrixXcd a(m.dim(), m.dim());
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = 0; j < m.dim(); ++j) a(i, j) = 0.5 * (m(i, j) + std::conj(m(j, i)));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(a);
  const auto& ev = solver.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

// Qubit GAD populations in closed form for the evolved state.
inline std::pair<double, double> gad_qubit_populations(double f, double gamma, double pg, double pe) {
  return {f * gamma * pe + (1.0 + (f - 1.0) * gamma) * pg, (1.0 - f * gamma) * pe - (f - 1.0) * gamma * pg};
}

}  // namespace oracle
