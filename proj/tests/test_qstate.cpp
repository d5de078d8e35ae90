#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "qhe/error.hpp"
#include "qhe/qstate.hpp"

using qhe::DensityMatrix;
using qhe::ErrorKind;
using qhe::Hamiltonian;
using qhe::make_diagonal_state;
using qhe::Matrix;

namespace {

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const qhe::Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "expected qhe::Error";
  return ErrorKind::BadInput;
}

std::vector<double> random_simplex(std::size_t n, std::mt19937_64& rng) {
  std::exponential_distribution<double> e;
  std::vector<double> p(n);
  double sum = 0.0;
  for (auto& x : p) sum += (x = e(rng));
  for (auto& x : p) x /= sum;
  double head = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) head += p[i];
  p.back() = 1.0 - head;
  return p;
}

}  // namespace

TEST(QState, DiagonalStateConstruction) {
  const auto mixed = make_diagonal_state({0.5, 0.5});
  EXPECT_EQ(mixed.populations(), (std::vector<double>{0.5, 0.5}));
  EXPECT_TRUE(mixed.is_diagonal(0.0));

  const auto skewed = make_diagonal_state({0.9, 0.1});
  EXPECT_DOUBLE_EQ(skewed.population(0), 0.9);
  EXPECT_DOUBLE_EQ(skewed.population(1), 0.1);
  EXPECT_EQ(skewed.matrix()(0, 1), qhe::Complex{});
}

TEST(QState, DiagonalStateErrors) {
  EXPECT_EQ(kind_of([] { make_diagonal_state({1.1, -0.1}); }), ErrorKind::OutOfRange);
  EXPECT_EQ(kind_of([] { make_diagonal_state({0.6, 0.6}); }), ErrorKind::NonNormalized);
  EXPECT_EQ(kind_of([] { make_diagonal_state({1.0}); }), ErrorKind::BadDimension);
  EXPECT_EQ(kind_of([] { make_diagonal_state({0.25, 0.25, 0.25, 0.25}); }), ErrorKind::BadDimension);
}

TEST(QState, HamiltonianInvariants) {
  const auto h = Hamiltonian::qutrit(1.0, 2.5, -0.5);
  EXPECT_DOUBLE_EQ(h.gap(0, 1), 1.0);
  EXPECT_DOUBLE_EQ(h.gap(0, 2), 2.5);
  EXPECT_DOUBLE_EQ(h.gap(1, 2), 1.5);
  EXPECT_EQ(kind_of([] { Hamiltonian({1.0, 1.0}); }), ErrorKind::OutOfRange);
  EXPECT_EQ(kind_of([] { Hamiltonian({0.0, 2.0, 1.0}); }), ErrorKind::OutOfRange);
}

TEST(QState, EnergyExamples) {
  const Hamiltonian sym({-0.5, 0.5});
  EXPECT_NEAR(qhe::energy(make_diagonal_state({0.5, 0.5}), sym), 0.0, 1e-15);
  // 1/2 (p_e - p_g)
  EXPECT_NEAR(qhe::energy(make_diagonal_state({0.2, 0.8}), sym), 0.3, 1e-15);
  EXPECT_NEAR(qhe::energy(make_diagonal_state({0.1, 0.3, 0.6}), Hamiltonian({0.0, 1.0, 2.0})), 1.5, 1e-15);
  EXPECT_EQ(kind_of([&] { qhe::energy(make_diagonal_state({0.1, 0.3, 0.6}), sym); }), ErrorKind::DimensionMismatch);
}

TEST(QState, EnergyIsLinear) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u;
  for (int i = 0; i < 200; ++i) {
    const std::size_t n = 2 + i % 2;
    const auto a = random_simplex(n, rng);
    const auto b = random_simplex(n, rng);
    const double lam = u(rng);
    std::vector<double> mix(n);
    for (std::size_t j = 0; j < n; ++j) mix[j] = lam * a[j] + (1.0 - lam) * b[j];
    std::vector<double> levels{0.0, 0.3 + u(rng)};
    if (n == 3) levels.push_back(levels[1] + 0.1 + u(rng));
    const Hamiltonian h(levels);
    const double lhs = qhe::energy(DensityMatrix(Matrix::diagonal(mix)), h);
    const double rhs = lam * qhe::energy(make_diagonal_state(a), h) + (1.0 - lam) * qhe::energy(make_diagonal_state(b), h);
    EXPECT_NEAR(lhs, rhs, 1e-12);
  }
}

TEST(QState, HilbertSchmidtDistance) {
  const auto a = make_diagonal_state({0.9, 0.1});
  EXPECT_EQ(qhe::hs_distance(a, a), 0.0);
  EXPECT_NEAR(qhe::hs_distance(make_diagonal_state({1.0, 0.0}), make_diagonal_state({0.0, 1.0})), std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(qhe::hs_distance(a, make_diagonal_state({0.7, 0.3})), std::sqrt(2.0) * 0.2, 1e-15);
  EXPECT_THROW(qhe::hs_distance(a, make_diagonal_state({0.2, 0.3, 0.5})), qhe::Error);
}

TEST(QState, HilbertSchmidtProperties) {
  std::mt19937_64 rng(2);
  for (int i = 0; i < 300; ++i) {
    const std::size_t n = 2 + i % 2;
    const auto p = random_simplex(n, rng);
    const auto q = random_simplex(n, rng);
    const auto r = random_simplex(n, rng);
    const auto a = make_diagonal_state(p);
    const auto b = make_diagonal_state(q);
    const auto c = make_diagonal_state(r);
    EXPECT_LE(qhe::hs_distance(a, c), qhe::hs_distance(a, b) + qhe::hs_distance(b, c) + 1e-12);
    EXPECT_EQ(qhe::hs_distance(a, b), qhe::hs_distance(b, a));
    double sq = 0.0;
    for (std::size_t j = 0; j < n; ++j) sq += (p[j] - q[j]) * (p[j] - q[j]);
    EXPECT_NEAR(qhe::hs_distance(a, b), std::sqrt(sq), 1e-12);
    if (n == 2) EXPECT_NEAR(qhe::hs_distance(a, b), std::sqrt(2.0) * std::abs(p[0] - q[0]), 1e-12);
  }
}

TEST(QState, ValidateReports) {
  EXPECT_TRUE(qhe::validate(make_diagonal_state({0.5, 0.5})).ok());

  const auto bad_trace = qhe::validate(DensityMatrix(Matrix{{0.6, 0.0}, {0.0, 0.6}}));
  EXPECT_FALSE(bad_trace.trace.passed);
  EXPECT_NEAR(bad_trace.trace.residual, 0.2, 1e-15);
  EXPECT_TRUE(bad_trace.psd.passed);

  const auto not_psd = qhe::validate(DensityMatrix(Matrix{{0.5, 0.9}, {0.9, 0.5}}));
  EXPECT_TRUE(not_psd.trace.passed);
  EXPECT_TRUE(not_psd.hermitian.passed);
  EXPECT_FALSE(not_psd.psd.passed);
  EXPECT_NEAR(not_psd.min_eigenvalue, -0.4, 1e-15);

  const auto not_herm = qhe::validate(DensityMatrix(Matrix{{0.5, 0.1}, {0.0, 0.5}}));
  EXPECT_FALSE(not_herm.hermitian.passed);
  EXPECT_FALSE(not_herm.ok());
}

TEST(QState, RandomDiagonalStatesValidate) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 200; ++i) {
    EXPECT_TRUE(qhe::validate(make_diagonal_state(random_simplex(2 + i % 2, rng))).ok());
  }
}
