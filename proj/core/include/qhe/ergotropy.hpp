#pragma once

// Passive states, ergotropy and time-resolved (f, t) ergotropy landscapes
// under GAD damping lambda(t) = 1 - exp(-rate t).

#include <cstddef>
#include <span>
#include <vector>

#include "qhe/channels.hpp"
#include "qhe/error.hpp"
#include "qhe/qstate.hpp"

namespace qhe {

struct PassiveDecomposition {
  DensityMatrix original;
  DensityMatrix passive;
  // passive level i carries the i-th largest eigenvalue; for diagonal input
  // that is the population of original level permutation[i].
  std::vector<std::size_t> permutation;
  double energy_active = 0.0;
  double energy_passive = 0.0;
};

// Eigenvalues sorted non-increasing onto ascending levels. Diagonal states
// use their populations directly (stable order for ties).
PassiveDecomposition passive_state(const DensityMatrix& state, const Hamiltonian& h);

// E(rho) - E(rho_passive), reported as 0 when it does not exceed kTolerance.
double ergotropy(const DensityMatrix& state, const Hamiltonian& h);

// Populations of diag(initial) after the GAD channel with damping
// lambda_i = 1 - exp(-rate_i t): one schedule for a qubit, two for a qutrit.
std::vector<double> populations_at_time(std::span<const double> initial, double f,
                                        std::span<const DampingSchedule> schedules);

struct ErgotropyGrid {
  std::vector<double> f_axis;
  std::vector<double> t_axis;
  std::vector<double> rates;
  std::vector<double> initial;
  std::size_t system_dim = 2;
  // values[i][j] at (f_axis[i], t_axis[j]).
  std::vector<std::vector<double>> values;
};

struct GridPoint {
  double f = 0.0;
  double t = 0.0;
};

// Thrown when some landscape cells violate lambda1 + lambda2 <= 1; lists every such cell.
class InfeasibleGridError : public Error {
 public:
  explicit InfeasibleGridError(std::vector<GridPoint> cells);
  const std::vector<GridPoint>& cells() const noexcept { return cells_; }

 private:
  std::vector<GridPoint> cells_;
};

// rates has one entry (qubit) or two (qutrit). Axes must be non-empty and
// strictly ascending. threads <= 1 evaluates serially.
ErgotropyGrid ergotropy_landscape(std::span<const double> initial, const Hamiltonian& h,
                                  std::span<const double> f_axis, std::span<const double> t_axis,
                                  std::span<const double> rates, unsigned threads = 1);

struct LandscapeDifference {
  ErgotropyGrid field;  // qutrit - qubit, signed
  // Cells where the qubit has no ergotropy but the qutrit does.
  std::size_t qutrit_only_cells = 0;
};

LandscapeDifference landscape_difference(const ErgotropyGrid& qutrit, const ErgotropyGrid& qubit);

}  // namespace qhe
