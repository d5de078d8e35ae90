#include "qhe/linalg.hpp"

#include <algorithm>
#include <cmath>

#include "qhe/error.hpp"

namespace qhe {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::NonNormalized: return "NonNormalized";
    case ErrorKind::OutOfRange: return "OutOfRange";
    case ErrorKind::BadDimension: return "BadDimension";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::InfeasibleDamping: return "InfeasibleDamping";
    case ErrorKind::NoUniqueFixedPoint: return "NoUniqueFixedPoint";
    case ErrorKind::NoHeatAbsorbed: return "NoHeatAbsorbed";
    case ErrorKind::DegenerateInput: return "DegenerateInput";
    case ErrorKind::AxisMismatch: return "AxisMismatch";
    case ErrorKind::UnknownPreset: return "UnknownPreset";
    case ErrorKind::BadInput: return "BadInput";
    case ErrorKind::IoFailure: return "IoFailure";
  }
  return "Unknown";
}

Matrix::Matrix(std::size_t dim) : dim_(dim) {
  if (dim == 0 || dim > kMaxDim) {
    throw Error(ErrorKind::BadDimension, "matrix dimension must be 1.." + std::to_string(kMaxDim));
  }
}

Matrix::Matrix(std::initializer_list<std::initializer_list<Complex>> rows) : Matrix(rows.size()) {
  std::size_t i = 0;
  for (const auto& row : rows) {
    if (row.size() != dim_) throw Error(ErrorKind::BadDimension, "matrix literal must be square");
    std::size_t j = 0;
    for (const auto& value : row) (*this)(i, j++) = value;
    ++i;
  }
}

Matrix Matrix::identity(std::size_t dim) {
  Matrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::diagonal(std::span<const double> entries) {
  Matrix m(entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) m(i, i) = entries[i];
  return m;
}

Matrix Matrix::adjoint() const {
  Matrix out(dim_);
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j) out(i, j) = std::conj((*this)(j, i));
  return out;
}

Complex Matrix::trace() const noexcept {
  Complex sum = 0.0;
  for (std::size_t i = 0; i < dim_; ++i) sum += (*this)(i, i);
  return sum;
}

double Matrix::frobenius_norm() const noexcept {
  double sum = 0.0;
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j) sum += std::norm((*this)(i, j));
  return std::sqrt(sum);
}

double Matrix::max_off_diagonal() const noexcept {
  double worst = 0.0;
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j)
      if (i != j) worst = std::max(worst, std::abs((*this)(i, j)));
  return worst;
}

std::vector<double> Matrix::real_diagonal() const {
  std::vector<double> d(dim_);
  for (std::size_t i = 0; i < dim_; ++i) d[i] = (*this)(i, i).real();
  return d;
}

Matrix& Matrix::operator+=(const Matrix& rhs) {
  if (rhs.dim_ != dim_) throw Error(ErrorKind::DimensionMismatch, "matrix addition");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += rhs.data_[k];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& rhs) {
  if (rhs.dim_ != dim_) throw Error(ErrorKind::DimensionMismatch, "matrix subtraction");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= rhs.data_[k];
  return *this;
}

Matrix& Matrix::operator*=(Complex scale) noexcept {
  for (auto& v : data_) v *= scale;
  return *this;
}

Matrix operator*(const Matrix& lhs, const Matrix& rhs) {
  if (lhs.dim_ != rhs.dim_) throw Error(ErrorKind::DimensionMismatch, "matrix product");
  Matrix out(lhs.dim_);
  for (std::size_t i = 0; i < lhs.dim_; ++i)
    for (std::size_t k = 0; k < lhs.dim_; ++k) {
      const Complex a = lhs(i, k);
      if (a == Complex{}) continue;
      for (std::size_t j = 0; j < lhs.dim_; ++j) out(i, j) += a * rhs(k, j);
    }
  return out;
}

bool operator==(const Matrix& lhs, const Matrix& rhs) noexcept {
  return lhs.dim_ == rhs.dim_ && lhs.data_ == rhs.data_;
}

double max_abs_entry(const Matrix& m) noexcept {
  double worst = 0.0;
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = 0; j < m.dim(); ++j) worst = std::max(worst, std::abs(m(i, j)));
  return worst;
}

namespace {

constexpr std::size_t kMaxReal = 2 * kMaxDim;

// Cyclic Jacobi sweeps on a real symmetric matrix of order n <= 6.
std::vector<double> symmetric_jacobi(std::array<std::array<double, kMaxReal>, kMaxReal> a, std::size_t n) {
  double total = 0.0;
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = 0; q < n; ++q) total += a[p][q] * a[p][q];

  for (int sweep = 0; sweep < 64; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += a[p][q] * a[p][q];
    if (off <= 1e-34 * total) break;

    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        if (a[p][q] == 0.0) continue;
        const double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
        const double t = std::copysign(1.0, theta) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a[k][p];
          const double akq = a[k][q];
          a[k][p] = c * akp - s * akq;
          a[k][q] = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a[p][k];
          const double aqk = a[q][k];
          a[p][k] = c * apk - s * aqk;
          a[q][k] = s * apk + c * aqk;
        }
      }
    }
  }
  std::vector<double> eig(n);
  for (std::size_t i = 0; i < n; ++i) eig[i] = a[i][i];
  std::sort(eig.begin(), eig.end());
  return eig;
}

}  // namespace

std::vector<double> hermitian_eigenvalues(const Matrix& m) {
  const std::size_t n = m.dim();
  Matrix h = m + m.adjoint();
  h *= 0.5;

  if (n == 1) return {h(0, 0).real()};

  if (n == 2) {
    const double a = h(0, 0).real();
    const double d = h(1, 1).real();
    const double mean = 0.5 * (a + d);
    const double radius = std::hypot(0.5 * (a - d), std::abs(h(0, 1)));
    return {mean - radius, mean + radius};
  }

  // H = X + iY is similar to [[X, -Y], [Y, X]], whose spectrum is that of H
  // with every eigenvalue doubled.
  std::array<std::array<double, kMaxReal>, kMaxReal> embed{};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double x = h(i, j).real();
      const double y = h(i, j).imag();
      embed[i][j] = x;
      embed[i + n][j + n] = x;
      embed[i][j + n] = -y;
      embed[i + n][j] = y;
    }
  }
  const auto doubled = symmetric_jacobi(embed, 2 * n);
  std::vector<double> eig(n);
  for (std::size_t i = 0; i < n; ++i) eig[i] = 0.5 * (doubled[2 * i] + doubled[2 * i + 1]);
  return eig;
}

double spectral_norm(const Matrix& m) {
  const auto eig = hermitian_eigenvalues(m.adjoint() * m);
  return std::sqrt(std::max(0.0, eig.back()));
}

}  // namespace qhe
