#include "qhe/channels.hpp"

#include <cmath>

#include "qhe/error.hpp"

namespace qhe {

namespace {

void require_unit_interval(double value, const char* name) {
  if (!(value >= 0.0 && value <= 1.0)) {
    throw Error(ErrorKind::OutOfRange, std::string(name) + " = " + std::to_string(value) + " outside [0,1]");
  }
}

KrausSet finish(std::vector<Matrix> ops, ChannelParams params, const ChannelOptions& options) {
  KrausSet set(std::move(ops), params);
  if (options.verify) {
    const double residual = set.completeness_residual();
    if (residual > kTolerance) {
      throw Error(ErrorKind::OutOfRange, "Kraus completeness violated, residual " + std::to_string(residual));
    }
  }
  return set;
}

}  // namespace

KrausSet::KrausSet(std::vector<Matrix> operators, ChannelParams params)
    : dim_(operators.empty() ? 0 : operators.front().dim()), operators_(std::move(operators)), params_(params) {
  if (operators_.empty()) throw Error(ErrorKind::BadDimension, "empty Kraus set");
  for (const auto& op : operators_) {
    if (op.dim() != dim_) throw Error(ErrorKind::DimensionMismatch, "Kraus operators of mixed dimension");
  }
}

Matrix KrausSet::completeness_sum() const {
  Matrix sum(dim_);
  for (const auto& op : operators_) sum += op.adjoint() * op;
  return sum;
}

double KrausSet::completeness_residual() const { return max_abs_entry(completeness_sum() - Matrix::identity(dim_)); }

double KrausSet::max_singular_value() const {
  double worst = 0.0;
  for (const auto& op : operators_) worst = std::max(worst, spectral_norm(op));
  return worst;
}

double damping_from_schedule(const DampingSchedule& schedule) {
  if (!(schedule.rate >= 0.0) || !(schedule.time >= 0.0)) {
    throw Error(ErrorKind::OutOfRange, "damping rate and time must be non-negative");
  }
  // -expm1 keeps full precision for small rate*time.
  return -std::expm1(-schedule.rate * schedule.time);
}

KrausSet gad_qubit(double f, double gamma, const ChannelOptions& options) {
  require_unit_interval(f, "f");
  require_unit_interval(gamma, "gamma");
  const double sf = std::sqrt(f);
  const double sfc = std::sqrt(1.0 - f);
  const double sg = std::sqrt(gamma);
  const double sgc = std::sqrt(1.0 - gamma);

  // Basis order (|g>, |e>). A1 lowers |e> -> |g>, A3 raises |g> -> |e>.
  std::vector<Matrix> ops{
      Matrix{{sf, 0.0}, {0.0, sf * sgc}},
      Matrix{{0.0, sf * sg}, {0.0, 0.0}},
      Matrix{{sfc * sgc, 0.0}, {0.0, sfc}},
      Matrix{{0.0, 0.0}, {sfc * sg, 0.0}},
  };
  return finish(std::move(ops), {ChannelFamily::QubitGad, f, gamma, 0.0, 0.0}, options);
}

KrausSet ad_qubit(double k, const ChannelOptions& options) {
  require_unit_interval(k, "k");
  auto set = gad_qubit(1.0, k, options);
  auto params = set.params();
  params.family = ChannelFamily::QubitAd;
  return KrausSet(set.operators(), params);
}

KrausSet gad_qutrit(double f_prime, double lambda1, double lambda2, const ChannelOptions& options) {
  require_unit_interval(f_prime, "f'");
  require_unit_interval(lambda1, "lambda1");
  require_unit_interval(lambda2, "lambda2");
  const double ground_survival = 1.0 - lambda1 - lambda2;
  if (ground_survival < -kTolerance) {
    throw Error(ErrorKind::InfeasibleDamping,
                "lambda1 + lambda2 = " + std::to_string(lambda1 + lambda2) + " exceeds 1");
  }
  const double sf = std::sqrt(f_prime);
  const double sfc = std::sqrt(1.0 - f_prime);
  const double s1 = std::sqrt(lambda1);
  const double s2 = std::sqrt(lambda2);
  const double s0 = std::sqrt(std::max(0.0, ground_survival));
  // The (1 - f') group {F3, F4, F5} only sums to (1 - f') I with the sqrt(1 - f')
  // prefactor on F3; the literal variant carries sqrt(f').
  const double f3 = options.convention == Convention::Literal ? sf : sfc;

  std::vector<Matrix> ops{
      Matrix{{sf, 0.0, 0.0}, {0.0, sf * std::sqrt(1.0 - lambda1), 0.0}, {0.0, 0.0, sf * std::sqrt(1.0 - lambda2)}},
      Matrix{{0.0, sf * s1, 0.0}, {0.0, 0.0, 0.0}, {0.0, 0.0, 0.0}},
      Matrix{{0.0, 0.0, sf * s2}, {0.0, 0.0, 0.0}, {0.0, 0.0, 0.0}},
      Matrix{{f3 * s0, 0.0, 0.0}, {0.0, f3, 0.0}, {0.0, 0.0, f3}},
      Matrix{{0.0, 0.0, 0.0}, {sfc * s1, 0.0, 0.0}, {0.0, 0.0, 0.0}},
      Matrix{{0.0, 0.0, 0.0}, {0.0, 0.0, 0.0}, {sfc * s2, 0.0, 0.0}},
  };
  return finish(std::move(ops), {ChannelFamily::QutritGad, f_prime, 0.0, lambda1, lambda2}, options);
}

DensityMatrix apply(const KrausSet& channel, const DensityMatrix& state) {
  if (channel.dim() != state.dim()) throw Error(ErrorKind::DimensionMismatch, "channel and state dimensions differ");
  Matrix out(state.dim());
  for (const auto& op : channel.operators()) out += op * state.matrix() * op.adjoint();
  return DensityMatrix(out);
}

DensityMatrix fixed_point(const KrausSet& channel) {
  const auto& p = channel.params();
  switch (p.family) {
    case ChannelFamily::QubitGad:
    case ChannelFamily::QubitAd:
      if (p.gamma <= 0.0) throw Error(ErrorKind::NoUniqueFixedPoint, "zero damping leaves every state fixed");
      break;
    case ChannelFamily::QutritGad:
      if (p.lambda1 <= 0.0 || p.lambda2 <= 0.0) {
        throw Error(ErrorKind::NoUniqueFixedPoint, "a decoupled qutrit level has no unique stationary population");
      }
      if (p.f <= 0.0) {
        throw Error(ErrorKind::NoUniqueFixedPoint, "f' = 0 fixes every state with empty ground level");
      }
      break;
  }

  const std::size_t n = channel.dim();
  std::vector<double> mixed(n, 1.0 / static_cast<double>(n));
  DensityMatrix current(Matrix::diagonal(mixed));
  for (int iter = 0; iter < 1'000'000; ++iter) {
    DensityMatrix next = apply(channel, current);
    if (hs_distance(next, current) < 1e-13) return next;
    current = std::move(next);
  }
  throw Error(ErrorKind::NoUniqueFixedPoint, "iteration did not converge within 1e6 steps");
}

}  // namespace qhe
