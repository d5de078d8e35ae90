#pragma once

// Density matrices and diagonal Hamiltonians for qubit and qutrit media.
// Units: hbar = k_B = 1; Hamiltonians carry raw level energies.

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "qhe/linalg.hpp"

namespace qhe {

// Tolerance for algebraic identities on <= 3x3 double-precision matrices.
inline constexpr double kTolerance = 1e-12;

class DensityMatrix {
 public:
  // Wraps an arbitrary 2x2 or 3x3 matrix without checking the state
  // invariants; use validate() to inspect them.
  explicit DensityMatrix(Matrix entries);

  std::size_t dim() const noexcept { return entries_.dim(); }
  const Matrix& matrix() const noexcept { return entries_; }
  std::vector<double> populations() const { return entries_.real_diagonal(); }
  double population(std::size_t level) const { return entries_(level, level).real(); }
  bool is_diagonal(double tol = kTolerance) const noexcept { return entries_.max_off_diagonal() <= tol; }

  friend bool operator==(const DensityMatrix&, const DensityMatrix&) = default;

 private:
  Matrix entries_;
};

class Hamiltonian {
 public:
  // Levels must be strictly increasing; 2 or 3 of them.
  explicit Hamiltonian(std::vector<double> levels);

  // Two-level spectrum (ground, ground + gap).
  static Hamiltonian qubit(double gap, double ground = 0.0);
  // Three-level spectrum (ground, ground + gap10, ground + gap20).
  static Hamiltonian qutrit(double gap10, double gap20, double ground = 0.0);

  std::size_t dim() const noexcept { return levels_.size(); }
  std::span<const double> levels() const noexcept { return levels_; }
  double level(std::size_t i) const { return levels_.at(i); }
  // levels[upper] - levels[lower].
  double gap(std::size_t lower, std::size_t upper) const { return levels_.at(upper) - levels_.at(lower); }
  Hamiltonian shifted(double offset) const;
  Matrix matrix() const { return Matrix::diagonal(levels_); }

 private:
  std::vector<double> levels_;
};

// Diagonal state with the given populations (length 2 or 3, each in [0,1],
// summing to 1 within kTolerance).
DensityMatrix make_diagonal_state(std::span<const double> populations);
inline DensityMatrix make_diagonal_state(std::initializer_list<double> populations) {
  return make_diagonal_state(std::span<const double>(populations.begin(), populations.size()));
}

// Tr[rho H].
double energy(const DensityMatrix& state, const Hamiltonian& h);

// Hilbert-Schmidt distance sqrt(sum |a_ij - b_ij|^2).
double hs_distance(const DensityMatrix& a, const DensityMatrix& b);

struct InvariantCheck {
  bool passed = true;
  double residual = 0.0;
};

struct ValidationReport {
  InvariantCheck trace;      // |Tr rho - 1|
  InvariantCheck hermitian;  // max |rho_ij - conj(rho_ji)|
  InvariantCheck psd;        // max(0, -lambda_min)
  double min_eigenvalue = 0.0;

  bool ok() const noexcept { return trace.passed && hermitian.passed && psd.passed; }
  std::string describe() const;
};

ValidationReport validate(const DensityMatrix& state, double tol = kTolerance);

}  // namespace qhe
