#include "qhe/engine.hpp"

#include <cmath>
#include <limits>

#include "qhe/error.hpp"

namespace qhe {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void require_unit(double value, const char* name) {
  if (!(value >= 0.0 && value <= 1.0)) {
    throw Error(ErrorKind::OutOfRange, std::string(name) + " = " + std::to_string(value) + " outside [0,1]");
  }
}

void require_positive(double value, const char* name) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw Error(ErrorKind::OutOfRange, std::string(name) + " must be positive and finite");
  }
}

void check_stroke_unitary(const std::optional<Matrix>& u, std::size_t dim) {
  if (!u) return;
  if (u->dim() != dim) throw Error(ErrorKind::DimensionMismatch, "stroke unitary has wrong dimension");
  if (max_abs_entry(u->adjoint() * *u - Matrix::identity(dim)) > kTolerance) {
    throw Error(ErrorKind::BadInput, "stroke operator is not unitary");
  }
}

DensityMatrix unitary_stroke(const std::optional<Matrix>& u, const DensityMatrix& state) {
  if (!u) return state;
  DensityMatrix out(*u * state.matrix() * u->adjoint());
  const auto before = state.populations();
  const auto after = out.populations();
  for (std::size_t i = 0; i < before.size(); ++i) {
    if (std::abs(before[i] - after[i]) > kTolerance) {
      throw Error(ErrorKind::BadInput, "unitary stroke must preserve level populations");
    }
  }
  return out;
}

void finish_efficiency(CycleReport& r) {
  // Heat below the algebraic tolerance is rounding noise, not absorption.
  r.heat_absorbed = r.q_hot > kTolerance;
  r.efficiency = r.heat_absorbed ? r.work / r.q_hot : kNaN;
}

double logistic_excited(double beta, double gap) {
  if (std::isinf(beta)) return 1.0;
  return 1.0 / (1.0 + std::exp(-beta * gap));
}

}  // namespace

DensityMatrix QubitEngineConfig::initial_state() const { return make_diagonal_state({initial_pg, initial_pe()}); }

DensityMatrix QutritEngineConfig::initial_state() const { return make_diagonal_state(initial_p); }

void validate_config(const QubitEngineConfig& cfg) {
  require_unit(cfg.initial_pg, "pg");
  require_unit(cfg.f, "f");
  require_unit(cfg.gamma, "gamma");
  require_unit(cfg.k, "k");
  require_positive(cfg.hot_gap, "hot gap");
  require_positive(cfg.cold_gap, "cold gap");
  if (!std::isfinite(cfg.ground_energy)) throw Error(ErrorKind::OutOfRange, "ground energy must be finite");
  check_stroke_unitary(cfg.unitary_before_hot, 2);
  check_stroke_unitary(cfg.unitary_before_cold, 2);
}

void validate_config(const QutritEngineConfig& cfg) {
  (void)cfg.initial_state();
  require_unit(cfg.f_prime, "f'");
  require_unit(cfg.lambda1, "lambda1");
  require_unit(cfg.lambda2, "lambda2");
  require_unit(cfg.k1, "k1");
  require_unit(cfg.k2, "k2");
  if (cfg.lambda1 + cfg.lambda2 > 1.0 + kTolerance) {
    throw Error(ErrorKind::InfeasibleDamping, "hot stroke: lambda1 + lambda2 > 1");
  }
  if (cfg.k1 + cfg.k2 > 1.0 + kTolerance) throw Error(ErrorKind::InfeasibleDamping, "cold stroke: k1 + k2 > 1");
  if (cfg.hot_levels.dim() != 3 || cfg.cold_levels.dim() != 3) {
    throw Error(ErrorKind::DimensionMismatch, "qutrit engine needs three-level Hamiltonians");
  }
  check_stroke_unitary(cfg.unitary_before_hot, 3);
  check_stroke_unitary(cfg.unitary_before_cold, 3);
}

ReservoirBaseline reservoir_baseline(double beta_cold, double beta_hot, double cold_gap, double hot_gap) {
  require_positive(cold_gap, "cold gap");
  require_positive(hot_gap, "hot gap");
  if (!(beta_cold >= 0.0) || !(beta_hot >= 0.0)) {
    throw Error(ErrorKind::OutOfRange, "inverse temperatures must be non-negative");
  }
  ReservoirBaseline out;
  out.p_cold = logistic_excited(beta_cold, cold_gap);
  out.p_hot = logistic_excited(beta_hot, hot_gap);
  out.work = (out.p_cold - out.p_hot) * (cold_gap - hot_gap);
  return out;
}

namespace {

// (1 - f) gamma p_g - f gamma p_e: net population pumped into |e> by the hot stroke.
double hot_transfer(const QubitEngineConfig& cfg) {
  return (1.0 - cfg.f) * cfg.gamma * cfg.initial_pg - cfg.f * cfg.gamma * cfg.initial_pe();
}

}  // namespace

double hot_stroke_heat(const QubitEngineConfig& cfg) {
  validate_config(cfg);
  return hot_transfer(cfg) * cfg.hot_gap;
}

double cold_stroke_heat(const QubitEngineConfig& cfg) {
  validate_config(cfg);
  const double pg = cfg.initial_pg;
  const double pe = cfg.initial_pe();
  return ((cfg.f - 1.0) * cfg.gamma * pg + cfg.f * cfg.gamma * pe) * cfg.cold_gap;
}

double cycle_work(const QubitEngineConfig& cfg) {
  validate_config(cfg);
  return hot_transfer(cfg) * (cfg.hot_gap - cfg.cold_gap);
}

double max_work(const QubitEngineConfig& cfg) {
  validate_config(cfg);
  return cfg.initial_pg * (cfg.hot_gap - cfg.cold_gap);
}

WorkThreshold positive_work_threshold(const QubitEngineConfig& cfg) {
  validate_config(cfg);
  constexpr double inf = std::numeric_limits<double>::infinity();
  const double pg = cfg.initial_pg;
  const double pe = cfg.initial_pe();
  WorkThreshold out;
  out.degenerate = cfg.f == 0.0 || pg == 0.0;
  out.ratio_bound = cfg.f == 0.0 ? inf : (1.0 - cfg.f) / cfg.f;
  out.population_ratio = pg == 0.0 ? inf : pe / pg;
  if (out.degenerate) {
    // f = 0: population only flows upward. p_g = 0: W >= 0 only without emission.
    out.work_nonnegative = cfg.f == 0.0;
  } else {
    out.work_nonnegative = out.ratio_bound >= out.population_ratio;
  }
  return out;
}

bool inversion_condition(double f, double gamma, double pg, double pe) {
  const double denominator = 1.0 - 2.0 * gamma * f;
  if (!(denominator > 0.0)) return false;
  const double bound = (1.0 + 2.0 * gamma * (f - 1.0)) / denominator;
  if (pg == 0.0) return pe > 0.0;
  return bound < pe / pg;
}

Populations2 noncyclic_populations(const QubitEngineConfig& cfg, Convention convention) {
  validate_config(cfg);
  const double f = cfg.f;
  const double g = cfg.gamma;
  const double k = cfg.k;
  const double pg = cfg.initial_pg;
  const double pe = cfg.initial_pe();
  Populations2 out;
  out.pg = (k + f * g - k * f * g) * pe + (1.0 + (f - 1.0 + k - f * k) * g) * pg;
  // Composing AD(k) after GAD(f, gamma) gives +(1 - f) gamma p_g inside the bracket.
  const double upward = convention == Convention::Literal ? (f - 1.0) * g * pg : (1.0 - f) * g * pg;
  out.pe = (1.0 - k) * ((1.0 - f * g) * pe + upward);
  return out;
}

double noncyclic_deviation(const QubitEngineConfig& cfg) {
  validate_config(cfg);
  const double f = cfg.f;
  const double g = cfg.gamma;
  const double k = cfg.k;
  return std::sqrt(2.0) *
         std::abs((1.0 - f) * (1.0 - k) * g * cfg.initial_pg - (f * g + k * (1.0 - f * g)) * cfg.initial_pe());
}

double redistribution_work(const QubitEngineConfig& cfg) {
  validate_config(cfg);
  const double f = cfg.f;
  const double g = cfg.gamma;
  const double k = cfg.k;
  return ((f * g + k * (1.0 - f * g)) * cfg.initial_pe() - (1.0 - f) * (1.0 - k) * g * cfg.initial_pg) * cfg.hot_gap;
}

std::optional<double> closure_damping(const QubitEngineConfig& cfg) {
  validate_config(cfg);
  const double pe = cfg.initial_pe();
  const double pe_hot = pe + hot_transfer(cfg);
  if (pe_hot <= 0.0) {
    if (pe == 0.0) return 0.0;
    return std::nullopt;
  }
  const double k = (pe_hot - pe) / pe_hot;
  if (k < 0.0 || k > 1.0) return std::nullopt;
  return k;
}

double qutrit_hot_heat(const QutritEngineConfig& cfg, Convention convention) {
  validate_config(cfg);
  const auto& p = cfg.initial_p;
  const double d10 = cfg.hot_levels.gap(0, 1);
  const double d20 = cfg.hot_levels.gap(0, 2);
  const double absorbed = (1.0 - cfg.f_prime) * p[0] * (d10 * cfg.lambda1 + d20 * cfg.lambda2);
  const double emitted = cfg.f_prime * (d10 * cfg.lambda1 * p[1] + d20 * cfg.lambda2 * p[2]);
  return convention == Convention::Literal ? absorbed + emitted : absorbed - emitted;
}

double qutrit_rejected_heat(const QutritEngineConfig& cfg, Convention convention) {
  validate_config(cfg);
  const auto& p = cfg.initial_p;
  const double fp = cfg.f_prime;
  const double c01 = cfg.cold_levels.gap(0, 1);
  const double c02 = cfg.cold_levels.gap(0, 2);
  const double c12 = cfg.cold_levels.gap(1, 2);
  const double second = convention == Convention::Literal ? c12 : c02;
  return (1.0 - fp) * p[0] * (c01 * cfg.lambda1 * cfg.k1 + second * cfg.lambda2 * cfg.k2) +
         cfg.k1 * p[1] * (1.0 - fp * cfg.lambda1) * c01 + cfg.k2 * p[2] * (1.0 - fp * cfg.lambda2) * c02;
}

CycleReport run_cyclic_qubit(const QubitEngineConfig& cfg, const ChannelOptions& options) {
  validate_config(cfg);
  const Hamiltonian hot = cfg.hot_hamiltonian();
  const Hamiltonian cold = cfg.cold_hamiltonian();
  const DensityMatrix rho = cfg.initial_state();
  const DensityMatrix rho1 = unitary_stroke(cfg.unitary_before_hot, rho);
  const DensityMatrix rho2 = apply(gad_qubit(cfg.f, cfg.gamma, options), rho1);
  const DensityMatrix rho3 = unitary_stroke(cfg.unitary_before_cold, rho2);
  // Asymptotic contact with the cold bath returns the medium to rho.
  const DensityMatrix final_state = rho;

  CycleReport r;
  r.states = {rho, rho1, rho2, rho3, final_state};
  r.q_hot = energy(rho2, hot) - energy(rho1, hot);
  r.q_cold = energy(final_state, cold) - energy(rho3, cold);
  r.q_cold_stroke = r.q_cold;
  r.work = r.q_hot + r.q_cold;
  r.deviation = hs_distance(rho, final_state);
  r.redistribution_work = 0.0;
  r.cyclic = true;
  finish_efficiency(r);
  return r;
}

CycleReport run_noncyclic_qubit(const QubitEngineConfig& cfg, const ChannelOptions& options) {
  validate_config(cfg);
  const Hamiltonian hot = cfg.hot_hamiltonian();
  const Hamiltonian cold = cfg.cold_hamiltonian();
  const DensityMatrix rho = cfg.initial_state();
  const DensityMatrix rho1 = unitary_stroke(cfg.unitary_before_hot, rho);
  const DensityMatrix rho2 = apply(gad_qubit(cfg.f, cfg.gamma, options), rho1);
  const DensityMatrix rho3 = unitary_stroke(cfg.unitary_before_cold, rho2);
  const DensityMatrix final_state = apply(ad_qubit(cfg.k, options), rho3);

  CycleReport r;
  r.states = {rho, rho1, rho2, rho3, final_state};
  r.q_hot = energy(rho2, hot) - energy(rho1, hot);
  r.q_cold_stroke = energy(final_state, cold) - energy(rho3, cold);
  // Bringing rho' back to rho on the hot spectrum costs the redistribution
  // work; the cold side then balances as for the closed cycle.
  r.redistribution_work = energy(rho, hot) - energy(final_state, hot);
  r.q_cold = energy(rho, cold) - energy(rho3, cold) - r.redistribution_work;
  r.work = r.q_hot + r.q_cold;
  r.deviation = hs_distance(rho, final_state);
  r.cyclic = r.deviation < kTolerance;
  finish_efficiency(r);
  return r;
}

CycleReport run_qutrit(const QutritEngineConfig& cfg, const ChannelOptions& options) {
  validate_config(cfg);
  const DensityMatrix tau = cfg.initial_state();
  const DensityMatrix tau1 = unitary_stroke(cfg.unitary_before_hot, tau);
  const DensityMatrix tau2 = apply(gad_qutrit(cfg.f_prime, cfg.lambda1, cfg.lambda2, options), tau1);
  const DensityMatrix tau3 = unitary_stroke(cfg.unitary_before_cold, tau2);
  const DensityMatrix tau4 = apply(gad_qutrit(1.0, cfg.k1, cfg.k2, options), tau3);

  CycleReport r;
  r.states = {tau, tau1, tau2, tau3, tau4};
  r.q_hot = energy(tau2, cfg.hot_levels) - energy(tau1, cfg.hot_levels);
  r.q_cold = energy(tau4, cfg.cold_levels) - energy(tau3, cfg.cold_levels);
  r.q_cold_stroke = r.q_cold;
  r.work = r.q_hot + r.q_cold;
  r.deviation = hs_distance(tau, tau4);
  r.redistribution_work = energy(tau, cfg.hot_levels) - energy(tau4, cfg.hot_levels);
  r.cyclic = r.deviation < kTolerance;
  finish_efficiency(r);
  return r;
}

double efficiency(const CycleReport& report) {
  if (!(report.q_hot > kTolerance)) throw Error(ErrorKind::NoHeatAbsorbed, "efficiency undefined for q_hot <= 0");
  return report.work / report.q_hot;
}

}  // namespace qhe
