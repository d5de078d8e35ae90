#include "qhe/ergotropy.hpp"

#include <algorithm>
#include <exception>
#include <numeric>
#include <sstream>
#include <thread>

#include "qhe/error.hpp"

namespace qhe {

namespace {

std::string describe_cells(const std::vector<GridPoint>& cells) {
  std::ostringstream os;
  os << cells.size() << " landscape cell(s) with lambda1 + lambda2 > 1:";
  const std::size_t shown = std::min<std::size_t>(cells.size(), 8);
  for (std::size_t i = 0; i < shown; ++i) os << " (f=" << cells[i].f << ", t=" << cells[i].t << ")";
  if (shown < cells.size()) os << " ...";
  return os.str();
}

void require_ascending(std::span<const double> axis, const char* name) {
  if (axis.empty()) throw Error(ErrorKind::BadInput, std::string(name) + " axis is empty");
  for (std::size_t i = 1; i < axis.size(); ++i) {
    if (!(axis[i] > axis[i - 1])) throw Error(ErrorKind::BadInput, std::string(name) + " axis must be ascending");
  }
}

}  // namespace

InfeasibleGridError::InfeasibleGridError(std::vector<GridPoint> cells)
    : Error(ErrorKind::InfeasibleDamping, describe_cells(cells)), cells_(std::move(cells)) {}

PassiveDecomposition passive_state(const DensityMatrix& state, const Hamiltonian& h) {
  if (state.dim() != h.dim()) throw Error(ErrorKind::DimensionMismatch, "state and Hamiltonian dimensions differ");
  const std::size_t n = state.dim();

  std::vector<double> spectrum;
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  if (state.is_diagonal(0.0)) {
    spectrum = state.populations();
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return spectrum[a] > spectrum[b]; });
  } else {
    spectrum = hermitian_eigenvalues(state.matrix());
    std::reverse(spectrum.begin(), spectrum.end());
  }

  std::vector<double> passive(n);
  for (std::size_t i = 0; i < n; ++i) passive[i] = spectrum[order[i]];

  PassiveDecomposition out{state, DensityMatrix(Matrix::diagonal(passive)), order, 0.0, 0.0};
  out.energy_active = energy(state, h);
  out.energy_passive = energy(out.passive, h);
  return out;
}

double ergotropy(const DensityMatrix& state, const Hamiltonian& h) {
  const auto d = passive_state(state, h);
  // Populations that are ordered only up to rounding (channel outputs at a
  // balance point) leave a residue of a few ulps; treat it as passive.
  const double w = d.energy_active - d.energy_passive;
  return w > kTolerance ? w : 0.0;
}

std::vector<double> populations_at_time(std::span<const double> initial, double f,
                                        std::span<const DampingSchedule> schedules) {
  const DensityMatrix start = make_diagonal_state(initial);
  if (start.dim() == 2) {
    if (schedules.size() != 1) throw Error(ErrorKind::BadInput, "qubit evolution takes one damping schedule");
    return apply(gad_qubit(f, damping_from_schedule(schedules[0])), start).populations();
  }
  if (schedules.size() != 2) throw Error(ErrorKind::BadInput, "qutrit evolution takes two damping schedules");
  const double l1 = damping_from_schedule(schedules[0]);
  const double l2 = damping_from_schedule(schedules[1]);
  return apply(gad_qutrit(f, l1, l2), start).populations();
}

ErgotropyGrid ergotropy_landscape(std::span<const double> initial, const Hamiltonian& h,
                                  std::span<const double> f_axis, std::span<const double> t_axis,
                                  std::span<const double> rates, unsigned threads) {
  require_ascending(f_axis, "f");
  require_ascending(t_axis, "t");
  if (f_axis.front() < 0.0 || f_axis.back() > 1.0) throw Error(ErrorKind::OutOfRange, "f axis outside [0,1]");
  if (t_axis.front() < 0.0) throw Error(ErrorKind::OutOfRange, "t axis must be non-negative");
  for (double r : rates) {
    if (!(r >= 0.0)) throw Error(ErrorKind::OutOfRange, "decay rates must be non-negative");
  }
  const std::size_t dim = initial.size();
  if (h.dim() != dim) throw Error(ErrorKind::DimensionMismatch, "initial state and Hamiltonian dimensions differ");
  if (rates.size() != dim - 1) throw Error(ErrorKind::BadInput, "need one decay rate per excited level");
  (void)make_diagonal_state(initial);

  if (dim == 3) {
    std::vector<GridPoint> bad;
    for (double f : f_axis)
      for (double t : t_axis) {
        const double sum = damping_from_schedule({rates[0], t}) + damping_from_schedule({rates[1], t});
        if (sum > 1.0 + kTolerance) bad.push_back({f, t});
      }
    if (!bad.empty()) throw InfeasibleGridError(std::move(bad));
  }

  ErgotropyGrid grid;
  grid.f_axis.assign(f_axis.begin(), f_axis.end());
  grid.t_axis.assign(t_axis.begin(), t_axis.end());
  grid.rates.assign(rates.begin(), rates.end());
  grid.initial.assign(initial.begin(), initial.end());
  grid.system_dim = dim;
  grid.values.assign(f_axis.size(), std::vector<double>(t_axis.size(), 0.0));

  auto fill_row = [&](std::size_t i) {
    std::vector<DampingSchedule> schedules(rates.size());
    for (std::size_t j = 0; j < t_axis.size(); ++j) {
      for (std::size_t r = 0; r < rates.size(); ++r) schedules[r] = {rates[r], t_axis[j]};
      const auto p = populations_at_time(initial, f_axis[i], schedules);
      // Channel output can round a few ulps below zero; ergotropy needs no validation.
      grid.values[i][j] = ergotropy(DensityMatrix(Matrix::diagonal(p)), h);
    }
  };

  const std::size_t workers = std::min<std::size_t>(std::max(1u, threads), f_axis.size());
  if (workers <= 1) {
    for (std::size_t i = 0; i < f_axis.size(); ++i) fill_row(i);
    return grid;
  }
  std::vector<std::exception_ptr> errors(workers);
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (std::size_t i = w; i < f_axis.size(); i += workers) fill_row(i);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return grid;
}

LandscapeDifference landscape_difference(const ErgotropyGrid& qutrit, const ErgotropyGrid& qubit) {
  if (qutrit.f_axis != qubit.f_axis || qutrit.t_axis != qubit.t_axis) {
    throw Error(ErrorKind::AxisMismatch, "landscapes are sampled on different axes");
  }
  LandscapeDifference out;
  out.field = qutrit;
  for (std::size_t i = 0; i < qutrit.values.size(); ++i) {
    for (std::size_t j = 0; j < qutrit.values[i].size(); ++j) {
      const double a = qutrit.values[i][j];
      const double b = qubit.values[i][j];
      out.field.values[i][j] = a - b;
      if (b <= kTolerance && a > kTolerance) ++out.qutrit_only_cells;
    }
  }
  return out;
}

}  // namespace qhe
