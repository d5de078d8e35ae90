#include "qhe/qstate.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qhe/error.hpp"

namespace qhe {

namespace {

void require_state_dim(std::size_t dim) {
  if (dim != 2 && dim != 3) {
    throw Error(ErrorKind::BadDimension, "working medium must be a qubit or qutrit, got dim " + std::to_string(dim));
  }
}

}  // namespace

DensityMatrix::DensityMatrix(Matrix entries) : entries_(std::move(entries)) { require_state_dim(entries_.dim()); }

Hamiltonian::Hamiltonian(std::vector<double> levels) : levels_(std::move(levels)) {
  require_state_dim(levels_.size());
  for (std::size_t i = 0; i < levels_.size(); ++i) {
    if (!std::isfinite(levels_[i])) throw Error(ErrorKind::OutOfRange, "energy levels must be finite");
    if (i > 0 && !(levels_[i] > levels_[i - 1])) {
      throw Error(ErrorKind::OutOfRange, "energy levels must be strictly increasing");
    }
  }
}

Hamiltonian Hamiltonian::qubit(double gap, double ground) { return Hamiltonian({ground, ground + gap}); }

Hamiltonian Hamiltonian::qutrit(double gap10, double gap20, double ground) {
  return Hamiltonian({ground, ground + gap10, ground + gap20});
}

Hamiltonian Hamiltonian::shifted(double offset) const {
  auto levels = levels_;
  for (auto& e : levels) e += offset;
  return Hamiltonian(std::move(levels));
}

DensityMatrix make_diagonal_state(std::span<const double> populations) {
  require_state_dim(populations.size());
  double sum = 0.0;
  for (double p : populations) {
    if (!(p >= 0.0 && p <= 1.0)) throw Error(ErrorKind::OutOfRange, "population outside [0,1]");
    sum += p;
  }
  if (std::abs(sum - 1.0) > kTolerance) {
    throw Error(ErrorKind::NonNormalized, "populations sum to " + std::to_string(sum));
  }
  return DensityMatrix(Matrix::diagonal(populations));
}

double energy(const DensityMatrix& state, const Hamiltonian& h) {
  if (state.dim() != h.dim()) throw Error(ErrorKind::DimensionMismatch, "state and Hamiltonian dimensions differ");
  // H is diagonal, so Tr[rho H] only sees the diagonal of rho.
  double e = 0.0;
  for (std::size_t i = 0; i < h.dim(); ++i) e += h.level(i) * state.matrix()(i, i).real();
  return e;
}

double hs_distance(const DensityMatrix& a, const DensityMatrix& b) {
  if (a.dim() != b.dim()) throw Error(ErrorKind::DimensionMismatch, "states of different dimension");
  return (a.matrix() - b.matrix()).frobenius_norm();
}

std::string ValidationReport::describe() const {
  std::ostringstream os;
  os << "trace " << (trace.passed ? "ok" : "FAIL") << " (" << trace.residual << "), hermitian "
     << (hermitian.passed ? "ok" : "FAIL") << " (" << hermitian.residual << "), psd " << (psd.passed ? "ok" : "FAIL")
     << " (min eigenvalue " << min_eigenvalue << ")";
  return os.str();
}

ValidationReport validate(const DensityMatrix& state, double tol) {
  const Matrix& m = state.matrix();
  ValidationReport report;

  report.trace.residual = std::abs(m.trace() - Complex{1.0});
  report.trace.passed = report.trace.residual <= tol;

  double herm = 0.0;
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = 0; j < m.dim(); ++j) herm = std::max(herm, std::abs(m(i, j) - std::conj(m(j, i))));
  report.hermitian.residual = herm;
  report.hermitian.passed = herm <= tol;

  if (state.is_diagonal(0.0)) {
    const auto d = m.real_diagonal();
    report.min_eigenvalue = *std::min_element(d.begin(), d.end());
  } else {
    report.min_eigenvalue = hermitian_eigenvalues(m).front();
  }
  report.psd.residual = std::max(0.0, -report.min_eigenvalue);
  report.psd.passed = report.min_eigenvalue >= -tol;
  return report;
}

}  // namespace qhe
