#pragma once

// Four-stroke heat engines on qubit and qutrit working media:
//   I   unitary stroke (populations preserved)
//   II  hot-bath GAD stroke
//   III unitary stroke (populations preserved)
//   IV  cold-bath stroke (exact reset for the cyclic qubit, AD otherwise)
// Every heat/work quantity is computed from the stroke states by traces;
// the closed forms below are independent routes used for cross-checks.

#include <array>
#include <optional>
#include <vector>

#include "qhe/channels.hpp"
#include "qhe/qstate.hpp"

namespace qhe {

struct QubitEngineConfig {
  double initial_pg = 0.9;
  double f = 0.2;         // hot-stroke emission weight
  double gamma = 0.5;     // hot-stroke damping probability
  double k = 1.0;         // cold-stroke AD damping (non-cyclic engine)
  double hot_gap = 1.0;   // Delta_h
  double cold_gap = 0.5;  // Delta_c
  double ground_energy = 0.0;  // common offset of both spectra; never affects results
  // Optional population-preserving unitaries for strokes I and III (identity if unset).
  std::optional<Matrix> unitary_before_hot;
  std::optional<Matrix> unitary_before_cold;

  double initial_pe() const noexcept { return 1.0 - initial_pg; }
  Hamiltonian hot_hamiltonian() const { return Hamiltonian::qubit(hot_gap, ground_energy); }
  Hamiltonian cold_hamiltonian() const { return Hamiltonian::qubit(cold_gap, ground_energy); }
  DensityMatrix initial_state() const;
};

struct QutritEngineConfig {
  std::array<double, 3> initial_p{1.0, 0.0, 0.0};
  double f_prime = 0.5;
  double lambda1 = 0.5;  // hot stroke
  double lambda2 = 0.5;
  double k1 = 0.5;       // cold stroke
  double k2 = 0.5;
  Hamiltonian hot_levels = Hamiltonian::qutrit(1.0, 2.0);
  Hamiltonian cold_levels = Hamiltonian::qutrit(0.5, 1.0);
  std::optional<Matrix> unitary_before_hot;
  std::optional<Matrix> unitary_before_cold;

  DensityMatrix initial_state() const;
};

void validate_config(const QubitEngineConfig& cfg);
void validate_config(const QutritEngineConfig& cfg);

struct CycleReport {
  // rho, rho_1, rho_2, rho_3, rho_final
  std::vector<DensityMatrix> states;
  double q_hot = 0.0;
  double q_cold = 0.0;
  double work = 0.0;
  // work / q_hot; NaN when no heat is absorbed (q_hot <= kTolerance).
  double efficiency = 0.0;
  double deviation = 0.0;
  double redistribution_work = 0.0;
  // Heat exchanged during the cold-bath stroke alone. Equals q_cold for the
  // closed cycle; differs from it when the cycle must be closed by redistribution.
  double q_cold_stroke = 0.0;
  bool cyclic = false;
  bool heat_absorbed = false;
};

// Two-level engine run between thermal reservoirs.
struct ReservoirBaseline {
  double p_cold = 0.0;
  double p_hot = 0.0;
  double work = 0.0;
};

// Inverse temperatures may be +infinity (zero-temperature limit).
ReservoirBaseline reservoir_baseline(double beta_cold, double beta_hot, double cold_gap, double hot_gap);

// Closed forms for the cyclic qubit engine.
double hot_stroke_heat(const QubitEngineConfig& cfg);
double cold_stroke_heat(const QubitEngineConfig& cfg);
double cycle_work(const QubitEngineConfig& cfg);
// p_g (Delta_h - Delta_c): limit of cycle_work as f -> 0, gamma -> 1.
double max_work(const QubitEngineConfig& cfg);

struct WorkThreshold {
  double ratio_bound = 0.0;       // (1 - f) / f, +inf when f = 0
  double population_ratio = 0.0;  // p_e / p_g, +inf when p_g = 0
  bool work_nonnegative = false;
  bool degenerate = false;        // f = 0 or p_g = 0
};

WorkThreshold positive_work_threshold(const QubitEngineConfig& cfg);

// Inversion after the hot stroke: p_e / p_g > (1 + 2 gamma (f - 1)) / (1 - 2 gamma f)
// on the branch 1 - 2 gamma f > 0 (no inversion is reachable otherwise).
bool inversion_condition(double f, double gamma, double pg, double pe);

// Closed forms for the non-cyclic qubit engine (finite-time AD cold stroke).
struct Populations2 {
  double pg = 0.0;
  double pe = 0.0;
};
Populations2 noncyclic_populations(const QubitEngineConfig& cfg, Convention convention = Convention::Corrected);
double noncyclic_deviation(const QubitEngineConfig& cfg);
double redistribution_work(const QubitEngineConfig& cfg);
// AD damping k that returns the post-hot-stroke state to the initial one,
// if such a k in [0,1] exists.
std::optional<double> closure_damping(const QubitEngineConfig& cfg);

// Closed forms for the qutrit engine.
double qutrit_hot_heat(const QutritEngineConfig& cfg, Convention convention = Convention::Corrected);
// Magnitude of the heat released to the cold bath (-q_cold). Literal uses
// Delta^c_12 in the p0 bracket.
double qutrit_rejected_heat(const QutritEngineConfig& cfg, Convention convention = Convention::Corrected);

CycleReport run_cyclic_qubit(const QubitEngineConfig& cfg, const ChannelOptions& options = {});
CycleReport run_noncyclic_qubit(const QubitEngineConfig& cfg, const ChannelOptions& options = {});
CycleReport run_qutrit(const QutritEngineConfig& cfg, const ChannelOptions& options = {});

// work / q_hot; throws NoHeatAbsorbed when q_hot <= kTolerance.
double efficiency(const CycleReport& report);

}  // namespace qhe
