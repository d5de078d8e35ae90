#pragma once

// Fixed-capacity complex matrices for the 2- and 3-level systems handled here.
// Storage is inline (no heap); the dimension is a runtime value <= kMaxDim.

#include <array>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace qhe {

using Complex = std::complex<double>;

inline constexpr std::size_t kMaxDim = 3;

class Matrix {
 public:
  Matrix() = default;
  explicit Matrix(std::size_t dim);
  Matrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static Matrix identity(std::size_t dim);
  static Matrix diagonal(std::span<const double> entries);

  std::size_t dim() const noexcept { return dim_; }

  Complex& operator()(std::size_t row, std::size_t col) noexcept { return data_[row * kMaxDim + col]; }
  const Complex& operator()(std::size_t row, std::size_t col) const noexcept {
    return data_[row * kMaxDim + col];
  }

  Matrix adjoint() const;
  Complex trace() const noexcept;
  double frobenius_norm() const noexcept;
  // Largest |a_ij| off the main diagonal.
  double max_off_diagonal() const noexcept;
  std::vector<double> real_diagonal() const;

  Matrix& operator+=(const Matrix& rhs);
  Matrix& operator-=(const Matrix& rhs);
  Matrix& operator*=(Complex scale) noexcept;

  friend Matrix operator+(Matrix lhs, const Matrix& rhs) { return lhs += rhs; }
  friend Matrix operator-(Matrix lhs, const Matrix& rhs) { return lhs -= rhs; }
  friend Matrix operator*(Matrix lhs, Complex scale) { return lhs *= scale; }
  friend Matrix operator*(Complex scale, Matrix rhs) { return rhs *= scale; }
  friend Matrix operator*(const Matrix& lhs, const Matrix& rhs);

  friend bool operator==(const Matrix& lhs, const Matrix& rhs) noexcept;

 private:
  std::size_t dim_ = 0;
  std::array<Complex, kMaxDim * kMaxDim> data_{};
};

// Eigenvalues of the Hermitian part (A + A†)/2, ascending. Uses the closed
// form for 2x2 and cyclic Jacobi on the real 2n x 2n embedding otherwise.
std::vector<double> hermitian_eigenvalues(const Matrix& m);

// Largest singular value, sqrt(max eig(A†A)).
double spectral_norm(const Matrix& m);

// Largest |a_ij| over all entries.
double max_abs_entry(const Matrix& m) noexcept;

}  // namespace qhe
