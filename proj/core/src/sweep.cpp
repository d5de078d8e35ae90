#include "qhe/sweep.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <thread>

#include "qhe/ergotropy.hpp"

namespace qhe {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

using ParamList = std::vector<std::pair<std::string, double>>;

const ParamList kCyclicParams{{"pg", 0.9}, {"f", 0.2}, {"gamma", 0.5}, {"k", 1.0},
                              {"dh", 1.0}, {"dc", 0.5}, {"e0", 0.0}};
const ParamList kNoncyclicParams{{"pg", 0.9}, {"f", 0.2}, {"gamma", 0.5}, {"k", 0.5},
                                 {"dh", 1.0}, {"dc", 0.5}, {"e0", 0.0}};
// p0..p2 = NaN means "qutrit starts from (pg, 1 - pg, 0)".
const ParamList kCombinedParams{{"pg", 0.9},      {"f", 0.2},       {"gamma", 0.5}, {"k", 0.5},   {"dh", 1.0},
                                {"dc", 0.5},      {"e0", 0.0},      {"p0", kNaN},   {"p1", kNaN}, {"p2", kNaN},
                                {"lambda1", 0.5}, {"lambda2", 0.5}, {"k1", 0.5},    {"k2", 0.5},  {"eh1", 1.0},
                                {"eh2", 2.0},     {"ec1", 0.5},     {"ec2", 1.0}};
const ParamList kErgotropyParams{{"f", 0.0},     {"t", 0.0},   {"system_dim", 3.0}, {"pg", 1.0},
                                 {"p0", 1.0},    {"p1", 0.0},  {"p2", 0.0},         {"rate", 1.0},
                                 {"rate1", 0.5}, {"rate2", 1.0}, {"omega", 1.0},    {"eq1", 1.0},
                                 {"eq2", 2.0}};
const ParamList kErgotropyDiffParams{{"f", 0.0},     {"t", 0.0},     {"pg", 1.0},    {"p0", 1.0}, {"p1", 0.0},
                                     {"p2", 0.0},    {"rate", 1.0},  {"rate1", 0.5}, {"rate2", 1.0},
                                     {"omega", 1.0}, {"eq1", 1.0},   {"eq2", 2.0}};

constexpr std::array<std::pair<Target, std::string_view>, 8> kTargetNames{{
    {Target::WorkVsF, "work_vs_f"},
    {Target::WorkVsPg, "work_vs_pg"},
    {Target::WorkVsFNoncyclic, "work_vs_f_noncyclic"},
    {Target::HeatWorkCyclicVsNoncyclic, "heat_work_cyclic_vs_noncyclic"},
    {Target::QutritVsQubitWork, "qutrit_vs_qubit_work"},
    {Target::Efficiency, "efficiency"},
    {Target::ErgotropyMap, "ergotropy_map"},
    {Target::ErgotropyDiff, "ergotropy_diff"},
}};

bool is_ergotropy(Target t) { return t == Target::ErgotropyMap || t == Target::ErgotropyDiff; }

bool has_param(Target target, std::string_view name) {
  const auto& list = target_parameters(target);
  return std::any_of(list.begin(), list.end(), [&](const auto& p) { return p.first == name; });
}

double get(const std::map<std::string, double>& params, const std::string& key, double fallback) {
  const auto it = params.find(key);
  return it == params.end() ? fallback : it->second;
}

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<double> parse_list(std::string_view text, std::string_view key) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto comma = text.find(',', pos);
    const auto piece = text.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
    out.push_back(parse_number(trim(piece), key));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

std::size_t parse_count(std::string_view text, std::string_view key) {
  const double v = parse_number(text, key);
  if (!(v >= 0.0) || v != std::floor(v) || v > 1e7) {
    throw Error(ErrorKind::BadInput, std::string(key) + " must be a non-negative integer");
  }
  return static_cast<std::size_t>(v);
}

std::string cell_label(const std::map<std::string, double>& point) {
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, v] : point) {
    os << (first ? "" : ", ") << k << "=" << format_number(v);
    first = false;
  }
  return os.str();
}

std::string join_numbers(const std::vector<double>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) out += (i ? ";" : "") + format_number(values[i]);
  return out;
}

// ---- row builders -----------------------------------------------------------

using Row = std::vector<Cell>;

const std::vector<std::string> kQubitColumns{"pg", "pe", "f", "gamma", "k", "dh", "dc", "q_hot", "q_cold",
                                             "work", "efficiency", "deviation", "delta_w", "cyclic"};

Row qubit_row(const QubitEngineConfig& cfg, const CycleReport& r) {
  return {cfg.initial_pg, cfg.initial_pe(), cfg.f,   cfg.gamma,    cfg.k,         cfg.hot_gap,
          cfg.cold_gap,   r.q_hot,          r.q_cold, r.work,      r.efficiency, r.deviation,
          r.redistribution_work, r.cyclic};
}

const std::vector<std::string> kCompareColumns{
    "pg",       "pe",          "f",          "gamma",        "k",              "dh",
    "dc",       "q_hot",       "q_cold_cyclic", "q_cold_noncyclic", "q_cold_stroke", "work_cyclic",
    "work_noncyclic", "delta_w", "deviation", "efficiency_cyclic", "efficiency_noncyclic"};

Row compare_row(const QubitEngineConfig& cfg, const ChannelOptions& opts) {
  const auto c = run_cyclic_qubit(cfg, opts);
  const auto n = run_noncyclic_qubit(cfg, opts);
  return {cfg.initial_pg, cfg.initial_pe(), cfg.f,       cfg.gamma,  cfg.k,
          cfg.hot_gap,    cfg.cold_gap,     c.q_hot,     c.q_cold,   n.q_cold,
          n.q_cold_stroke, c.work,          n.work,      n.redistribution_work, n.deviation,
          c.efficiency,   n.efficiency};
}

const std::vector<std::string> kQutritConfigColumns{"f",  "pg", "gamma", "k",  "dh",  "dc",  "p0",  "p1",
                                                    "p2", "lambda1", "lambda2", "k1", "k2", "eh1", "eh2", "ec1",
                                                    "ec2"};

Row qutrit_config_cells(const QubitEngineConfig& q, const QutritEngineConfig& t) {
  return {q.f,
          q.initial_pg,
          q.gamma,
          q.k,
          q.hot_gap,
          q.cold_gap,
          t.initial_p[0],
          t.initial_p[1],
          t.initial_p[2],
          t.lambda1,
          t.lambda2,
          t.k1,
          t.k2,
          t.hot_levels.gap(0, 1),
          t.hot_levels.gap(0, 2),
          t.cold_levels.gap(0, 1),
          t.cold_levels.gap(0, 2)};
}

std::vector<std::string> concat(std::vector<std::string> a, const std::vector<std::string>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

const std::vector<std::string> kQutritVsQubitColumns =
    concat(kQutritConfigColumns, {"q_hot_qubit", "q_cold_qubit", "work_qubit", "q_hot_qutrit", "q_cold_qutrit",
                                  "work_qutrit", "work_difference"});

const std::vector<std::string> kEfficiencyColumns =
    concat(kQutritConfigColumns, {"q_hot_qubit", "work_qubit_cyclic", "work_qubit_noncyclic", "q_hot_qutrit",
                                  "work_qutrit", "efficiency_qubit_cyclic", "efficiency_qubit_noncyclic",
                                  "efficiency_qutrit"});

std::vector<std::string> columns_for(Target target) {
  switch (target) {
    case Target::WorkVsF:
    case Target::WorkVsPg:
    case Target::WorkVsFNoncyclic: return kQubitColumns;
    case Target::HeatWorkCyclicVsNoncyclic: return kCompareColumns;
    case Target::QutritVsQubitWork: return kQutritVsQubitColumns;
    case Target::Efficiency: return kEfficiencyColumns;
    case Target::ErgotropyMap: return {"f", "t", "value"};
    case Target::ErgotropyDiff: return {"f", "t", "qubit", "qutrit", "difference"};
  }
  return {};
}

Row engine_row(Target target, const std::map<std::string, double>& params, const ChannelOptions& opts) {
  switch (target) {
    case Target::WorkVsF:
    case Target::WorkVsPg: {
      const auto cfg = qubit_config_from(params);
      return qubit_row(cfg, run_cyclic_qubit(cfg, opts));
    }
    case Target::WorkVsFNoncyclic: {
      const auto cfg = qubit_config_from(params);
      return qubit_row(cfg, run_noncyclic_qubit(cfg, opts));
    }
    case Target::HeatWorkCyclicVsNoncyclic: return compare_row(qubit_config_from(params), opts);
    case Target::QutritVsQubitWork: {
      const auto q = qubit_config_from(params);
      const auto t = qutrit_config_from(params);
      const auto rq = run_cyclic_qubit(q, opts);
      const auto rt = run_qutrit(t, opts);
      Row row = qutrit_config_cells(q, t);
      row.insert(row.end(), {rq.q_hot, rq.q_cold, rq.work, rt.q_hot, rt.q_cold, rt.work, rt.work - rq.work});
      return row;
    }
    case Target::Efficiency: {
      const auto q = qubit_config_from(params);
      const auto t = qutrit_config_from(params);
      const auto rc = run_cyclic_qubit(q, opts);
      const auto rn = run_noncyclic_qubit(q, opts);
      const auto rt = run_qutrit(t, opts);
      Row row = qutrit_config_cells(q, t);
      row.insert(row.end(), {rc.q_hot, rc.work, rn.work, rt.q_hot, rt.work, rc.efficiency, rn.efficiency,
                             rt.efficiency});
      return row;
    }
    case Target::ErgotropyMap:
    case Target::ErgotropyDiff: break;
  }
  throw Error(ErrorKind::BadInput, "ergotropy targets are grid-evaluated");
}

// ---- ergotropy targets ------------------------------------------------------

struct LandscapeInputs {
  std::vector<double> initial;
  std::vector<double> rates;
  Hamiltonian h;
};

LandscapeInputs qubit_landscape_inputs(const std::map<std::string, double>& p) {
  const double omega = get(p, "omega", 1.0);
  const double pg = get(p, "pg", 1.0);
  return {{pg, 1.0 - pg}, {get(p, "rate", 1.0)}, Hamiltonian({-0.5 * omega, 0.5 * omega})};
}

LandscapeInputs qutrit_landscape_inputs(const std::map<std::string, double>& p) {
  return {{get(p, "p0", 1.0), get(p, "p1", 0.0), get(p, "p2", 0.0)},
          {get(p, "rate1", 0.5), get(p, "rate2", 1.0)},
          Hamiltonian({0.0, get(p, "eq1", 1.0), get(p, "eq2", 2.0)})};
}

void add_landscape_metadata(Table& table, const std::string& prefix, const ErgotropyGrid& g) {
  table.metadata.emplace_back(prefix + "system_dim", std::to_string(g.system_dim));
  table.metadata.emplace_back(prefix + "rates", join_numbers(g.rates));
  table.metadata.emplace_back(prefix + "initial", join_numbers(g.initial));
}

ErgotropyGrid checked_landscape(const LandscapeInputs& in, const std::vector<double>& f_axis,
                                const std::vector<double>& t_axis, unsigned threads) {
  try {
    return ergotropy_landscape(in.initial, in.h, f_axis, t_axis, in.rates, threads);
  } catch (const InfeasibleGridError& e) {
    std::vector<std::string> failures;
    for (const auto& c : e.cells()) {
      failures.push_back("f=" + format_number(c.f) + ", t=" + format_number(c.t) + ": lambda1 + lambda2 > 1");
    }
    throw SweepError(ErrorKind::InfeasibleDamping, std::move(failures));
  }
}

Table run_ergotropy(const SweepSpec& spec, const std::map<std::string, double>& params, unsigned threads) {
  const auto f_axis = spec.swept.values();
  const auto t_axis = spec.inner->values();
  Table table;
  table.columns = columns_for(spec.target);

  if (spec.target == Target::ErgotropyMap) {
    const double dim = get(params, "system_dim", 3.0);
    if (dim != 2.0 && dim != 3.0) throw Error(ErrorKind::BadInput, "system_dim must be 2 or 3");
    const auto inputs = dim == 2.0 ? qubit_landscape_inputs(params) : qutrit_landscape_inputs(params);
    const auto grid = checked_landscape(inputs, f_axis, t_axis, threads);
    add_landscape_metadata(table, "", grid);
    table.metadata.emplace_back("levels", join_numbers({inputs.h.levels().begin(), inputs.h.levels().end()}));
    for (std::size_t i = 0; i < f_axis.size(); ++i)
      for (std::size_t j = 0; j < t_axis.size(); ++j) table.rows.push_back({f_axis[i], t_axis[j], grid.values[i][j]});
    return table;
  }

  const auto qubit = checked_landscape(qubit_landscape_inputs(params), f_axis, t_axis, threads);
  const auto qutrit = checked_landscape(qutrit_landscape_inputs(params), f_axis, t_axis, threads);
  const auto diff = landscape_difference(qutrit, qubit);
  add_landscape_metadata(table, "qubit_", qubit);
  add_landscape_metadata(table, "qutrit_", qutrit);
  table.metadata.emplace_back("qutrit_only_cells", std::to_string(diff.qutrit_only_cells));
  for (std::size_t i = 0; i < f_axis.size(); ++i)
    for (std::size_t j = 0; j < t_axis.size(); ++j)
      table.rows.push_back({f_axis[i], t_axis[j], qubit.values[i][j], qutrit.values[i][j], diff.field.values[i][j]});
  return table;
}

}  // namespace

std::string_view to_string(Target target) noexcept {
  for (const auto& [t, name] : kTargetNames)
    if (t == target) return name;
  return "unknown";
}

Target parse_target(std::string_view name) {
  for (const auto& [t, n] : kTargetNames)
    if (n == name) return t;
  throw Error(ErrorKind::BadInput, "unknown sweep target '" + std::string(name) + "'");
}

std::vector<double> Axis::values() const {
  std::vector<double> out(points);
  if (points == 1) {
    out[0] = start;
    return out;
  }
  const double span = stop - start;
  for (std::size_t i = 0; i < points; ++i) {
    out[i] = start + span * static_cast<double>(i) / static_cast<double>(points - 1);
  }
  out.back() = stop;
  return out;
}

const std::vector<std::pair<std::string, double>>& target_parameters(Target target) {
  switch (target) {
    case Target::WorkVsF:
    case Target::WorkVsPg: return kCyclicParams;
    case Target::WorkVsFNoncyclic:
    case Target::HeatWorkCyclicVsNoncyclic: return kNoncyclicParams;
    case Target::QutritVsQubitWork:
    case Target::Efficiency: return kCombinedParams;
    case Target::ErgotropyMap: return kErgotropyParams;
    case Target::ErgotropyDiff: return kErgotropyDiffParams;
  }
  return kCyclicParams;
}

void check_spec(const SweepSpec& spec) {
  auto check_axis = [&](const Axis& axis, bool ascending) {
    if (!has_param(spec.target, axis.name)) {
      throw Error(ErrorKind::BadInput,
                  "'" + axis.name + "' is not a parameter of target " + std::string(to_string(spec.target)));
    }
    if (axis.points < 2) throw Error(ErrorKind::BadInput, "axis '" + axis.name + "' needs at least 2 points");
    if (!std::isfinite(axis.start) || !std::isfinite(axis.stop) || axis.start == axis.stop) {
      throw Error(ErrorKind::BadInput, "axis '" + axis.name + "' must be strictly monotone");
    }
    if (ascending && axis.stop < axis.start) {
      throw Error(ErrorKind::BadInput, "axis '" + axis.name + "' must be ascending");
    }
  };

  check_axis(spec.swept, is_ergotropy(spec.target));
  for (const auto& [key, value] : spec.fixed) {
    if (!has_param(spec.target, key)) {
      throw Error(ErrorKind::BadInput, "'" + key + "' is not a parameter of target " + std::string(to_string(spec.target)));
    }
  }
  if (spec.series) {
    if (!has_param(spec.target, spec.series->name)) {
      throw Error(ErrorKind::BadInput, "series parameter '" + spec.series->name + "' is not a parameter of target " +
                                           std::string(to_string(spec.target)));
    }
    if (spec.series->values.empty()) throw Error(ErrorKind::BadInput, "series has no values");
    if (spec.series->name == spec.swept.name) throw Error(ErrorKind::BadInput, "series and sweep share a parameter");
  }
  if (is_ergotropy(spec.target)) {
    if (spec.swept.name != "f") throw Error(ErrorKind::BadInput, "ergotropy targets sweep f");
    if (!spec.inner || spec.inner->name != "t") throw Error(ErrorKind::BadInput, "ergotropy targets need a t axis");
    check_axis(*spec.inner, true);
    if (spec.series) throw Error(ErrorKind::BadInput, "ergotropy targets take no series");
  } else if (spec.inner) {
    throw Error(ErrorKind::BadInput, "only ergotropy targets take a second axis");
  }
}

bool is_preset_name(std::string_view name) {
  return name.size() == 4 && name.substr(0, 3) == "fig" && name[3] >= '1' && name[3] <= '7';
}

SweepSpec preset(std::string_view name) {
  if (!is_preset_name(name)) throw Error(ErrorKind::UnknownPreset, "no preset named '" + std::string(name) + "'");
  SweepSpec s;
  s.swept = {"f", 0.0, 1.0, kDefaultPoints};
  switch (name[3]) {
    case '1':
      s.target = Target::WorkVsF;
      s.fixed = {{"pg", 0.9}, {"dh", 1.0}, {"dc", 0.5}};
      s.series = Series{"gamma", {0.1, 0.2, 0.5, 0.7, 1.0}};
      break;
    case '2':
      s.target = Target::WorkVsPg;
      s.swept = {"pg", 0.0, 1.0, kDefaultPoints};
      s.fixed = {{"f", 0.5}, {"gamma", 1.0}, {"dc", 0.5}};
      s.series = Series{"dh", {1.0, 5.0, 10.0, 20.0, 50.0}};
      break;
    case '3':
      s.target = Target::WorkVsFNoncyclic;
      s.fixed = {{"gamma", 0.5}, {"k", 0.5}, {"dh", 1.0}, {"dc", 0.5}};
      s.series = Series{"pg", {0.0, 0.4, 0.5, 0.9}};
      break;
    case '4':
      s.target = Target::HeatWorkCyclicVsNoncyclic;
      s.fixed = {{"pg", 0.9}, {"gamma", 0.5}, {"dh", 1.0}, {"dc", 0.5}};
      s.series = Series{"k", {0.3, 0.6, 0.9}};
      break;
    case '5':
      s.target = Target::QutritVsQubitWork;
      s.fixed = {{"pg", 1.0},      {"p0", 1.0},      {"p1", 0.0}, {"p2", 0.0}, {"gamma", 0.5},
                 {"lambda1", 0.5}, {"lambda2", 0.5}, {"k1", 0.5}, {"k2", 0.5}, {"dh", 1.0},
                 {"dc", 0.5},      {"eh1", 1.0},     {"eh2", 2.0}, {"ec1", 0.5}, {"ec2", 1.0}};
      break;
    case '6':
      s.target = Target::Efficiency;
      s.fixed = {{"gamma", 0.5}, {"k", 0.5},    {"lambda1", 0.5}, {"lambda2", 0.5}, {"k1", 0.5}, {"k2", 0.5},
                 {"dh", 1.0},    {"dc", 0.5},   {"eh1", 1.0},     {"eh2", 2.0},     {"ec1", 0.5}, {"ec2", 1.0}};
      s.series = Series{"pg", {0.6, 0.75, 0.9}};
      break;
    case '7':
      s.target = Target::ErgotropyDiff;
      s.fixed = {{"pg", 1.0}, {"p0", 1.0}, {"p1", 0.0}, {"p2", 0.0}, {"rate", 1.0}, {"rate1", 0.5},
                 {"rate2", 1.0}, {"omega", 1.0}, {"eq1", 1.0}, {"eq2", 2.0}};
      s.inner = Axis{"t", 0.0, 0.95, kDefaultPoints};
      break;
  }
  return s;
}

std::size_t Table::column_index(std::string_view name) const {
  const auto it = std::find(columns.begin(), columns.end(), name);
  if (it == columns.end()) throw Error(ErrorKind::BadInput, "no column '" + std::string(name) + "'");
  return static_cast<std::size_t>(it - columns.begin());
}

double Table::number(std::size_t row, std::string_view column) const {
  const Cell& c = rows.at(row).at(column_index(column));
  if (const auto* d = std::get_if<double>(&c)) return *d;
  return std::get<bool>(c) ? 1.0 : 0.0;
}

namespace {

std::string join_failures(const std::vector<std::string>& failures) {
  std::string out = std::to_string(failures.size()) + " sweep cell(s) failed";
  for (const auto& f : failures) out += "\n  " + f;
  return out;
}

}  // namespace

SweepError::SweepError(ErrorKind kind, std::vector<std::string> failures)
    : Error(kind, join_failures(failures)), failures_(std::move(failures)) {}

Table run_sweep(const SweepSpec& spec, unsigned threads) {
  check_spec(spec);

  std::map<std::string, double> base;
  for (const auto& [k, v] : target_parameters(spec.target)) base[k] = v;
  for (const auto& [k, v] : spec.fixed) base[k] = v;

  if (is_ergotropy(spec.target)) return run_ergotropy(spec, base, threads);

  const auto sweep_values = spec.swept.values();
  const std::vector<double> series_values = spec.series ? spec.series->values : std::vector<double>{kNaN};
  const std::size_t total = series_values.size() * sweep_values.size();

  auto params_at = [&](std::size_t cell) {
    auto params = base;
    if (spec.series) params[spec.series->name] = series_values[cell / sweep_values.size()];
    params[spec.swept.name] = sweep_values[cell % sweep_values.size()];
    return params;
  };

  const ChannelOptions opts{spec.convention, false};
  std::vector<Row> rows(total);
  std::vector<std::string> errors(total);
  std::vector<ErrorKind> kinds(total, ErrorKind::BadInput);

  auto evaluate = [&](std::size_t cell) {
    const auto params = params_at(cell);
    try {
      rows[cell] = engine_row(spec.target, params, opts);
    } catch (const Error& e) {
      kinds[cell] = e.kind();
      std::map<std::string, double> point{{spec.swept.name, params.at(spec.swept.name)}};
      if (spec.series) point[spec.series->name] = params.at(spec.series->name);
      errors[cell] = cell_label(point) + ": " + e.what();
    }
  };

  const std::size_t workers = std::min<std::size_t>(std::max(1u, threads), total);
  if (workers <= 1) {
    for (std::size_t c = 0; c < total; ++c) evaluate(c);
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t c = w; c < total; c += workers) evaluate(c);
      });
    }
  }

  std::vector<std::string> failures;
  std::optional<ErrorKind> first_kind;
  for (std::size_t c = 0; c < total; ++c) {
    if (!errors[c].empty()) {
      if (!first_kind) first_kind = kinds[c];
      failures.push_back(errors[c]);
    }
  }
  if (!failures.empty()) throw SweepError(*first_kind, std::move(failures));

  Table table;
  table.columns = columns_for(spec.target);
  table.rows = std::move(rows);
  return table;
}

// ---- key=value configuration ------------------------------------------------

double parse_number(std::string_view text, std::string_view key) {
  const std::string s = trim(text);
  if (s.empty()) throw Error(ErrorKind::BadInput, "missing value for '" + std::string(key) + "'");
  if (s == "inf" || s == "+inf" || s == "infinity") return std::numeric_limits<double>::infinity();
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw Error(ErrorKind::BadInput, "'" + s + "' is not a number (key '" + std::string(key) + "')");
  }
  if (used != s.size()) throw Error(ErrorKind::BadInput, "'" + s + "' is not a number (key '" + std::string(key) + "')");
  return v;
}

std::pair<std::string, std::string> parse_assignment(std::string_view text) {
  const auto eq = text.find('=');
  if (eq == std::string_view::npos) throw Error(ErrorKind::BadInput, "expected key=value, got '" + std::string(text) + "'");
  auto key = trim(text.substr(0, eq));
  if (key.empty()) throw Error(ErrorKind::BadInput, "empty key in '" + std::string(text) + "'");
  return {std::move(key), trim(text.substr(eq + 1))};
}

KeyValues parse_key_values(std::string_view text) {
  KeyValues out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    if (!trim(line).empty()) out.push_back(parse_assignment(line));
    pos = end + 1;
  }
  return out;
}

KeyValues read_key_values_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::IoFailure, "cannot read '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_key_values(buffer.str());
}

void apply_overrides(SweepSpec& spec, const KeyValues& overrides) {
  for (const auto& [key, value] : overrides) {
    if (key == "target") {
      spec.target = parse_target(value);
    } else if (key == "sweep") {
      spec.swept.name = value;
    } else if (key == "start") {
      spec.swept.start = parse_number(value, key);
    } else if (key == "stop") {
      spec.swept.stop = parse_number(value, key);
    } else if (key == "points") {
      spec.swept.points = parse_count(value, key);
      if (spec.inner) spec.inner->points = spec.swept.points;
    } else if (key == "series") {
      if (value.empty() || value == "none") {
        spec.series.reset();
      } else {
        if (!spec.series) spec.series = Series{};
        spec.series->name = value;
      }
    } else if (key == "series_values") {
      if (!spec.series) spec.series = Series{};
      spec.series->values = parse_list(value, key);
    } else if (key == "inner") {
      if (!spec.inner) spec.inner = Axis{value, 0.0, 1.0, kDefaultPoints};
      spec.inner->name = value;
    } else if (key == "inner_start" || key == "inner_stop" || key == "inner_points") {
      if (!spec.inner) spec.inner = Axis{"t", 0.0, 1.0, kDefaultPoints};
      if (key == "inner_start") spec.inner->start = parse_number(value, key);
      if (key == "inner_stop") spec.inner->stop = parse_number(value, key);
      if (key == "inner_points") spec.inner->points = parse_count(value, key);
    } else {
      spec.fixed[key] = parse_number(value, key);
    }
  }
}

SweepSpec spec_from_key_values(const KeyValues& kv) {
  const auto it = std::find_if(kv.begin(), kv.end(), [](const auto& p) { return p.first == "target"; });
  if (it == kv.end()) throw Error(ErrorKind::BadInput, "spec file must name a target");
  SweepSpec spec;
  spec.target = parse_target(it->second);
  spec.swept = {"f", 0.0, 1.0, kDefaultPoints};
  if (is_ergotropy(spec.target)) spec.inner = Axis{"t", 0.0, 0.95, kDefaultPoints};
  apply_overrides(spec, kv);
  return spec;
}

QubitEngineConfig qubit_config_from(const std::map<std::string, double>& params) {
  QubitEngineConfig cfg;
  cfg.initial_pg = get(params, "pg", cfg.initial_pg);
  cfg.f = get(params, "f", cfg.f);
  cfg.gamma = get(params, "gamma", cfg.gamma);
  cfg.k = get(params, "k", cfg.k);
  cfg.hot_gap = get(params, "dh", cfg.hot_gap);
  cfg.cold_gap = get(params, "dc", cfg.cold_gap);
  cfg.ground_energy = get(params, "e0", cfg.ground_energy);
  return cfg;
}

QutritEngineConfig qutrit_config_from(const std::map<std::string, double>& params) {
  QutritEngineConfig cfg;
  const double p0 = get(params, "p0", kNaN);
  const double p1 = get(params, "p1", kNaN);
  const double p2 = get(params, "p2", kNaN);
  const int given = !std::isnan(p0) + !std::isnan(p1) + !std::isnan(p2);
  if (given == 3) {
    cfg.initial_p = {p0, p1, p2};
  } else if (given == 0) {
    if (params.count("pg")) {
      const double pg = params.at("pg");
      cfg.initial_p = {pg, 1.0 - pg, 0.0};
    }
  } else {
    throw Error(ErrorKind::BadInput, "qutrit start needs all of p0, p1, p2");
  }
  cfg.f_prime = get(params, "f", cfg.f_prime);
  cfg.lambda1 = get(params, "lambda1", cfg.lambda1);
  cfg.lambda2 = get(params, "lambda2", cfg.lambda2);
  cfg.k1 = get(params, "k1", cfg.k1);
  cfg.k2 = get(params, "k2", cfg.k2);
  const double e0 = get(params, "e0", 0.0);
  cfg.hot_levels = Hamiltonian::qutrit(get(params, "eh1", 1.0), get(params, "eh2", 2.0), e0);
  cfg.cold_levels = Hamiltonian::qutrit(get(params, "ec1", 0.5), get(params, "ec2", 1.0), e0);
  return cfg;
}

RunRequest run_request_from_key_values(const KeyValues& kv) {
  RunRequest req;
  for (const auto& [key, value] : kv) {
    if (key == "engine") {
      if (value != "cyclic" && value != "noncyclic" && value != "qutrit") {
        throw Error(ErrorKind::BadInput, "engine must be cyclic, noncyclic or qutrit");
      }
      req.engine = value;
    } else {
      req.params[key] = parse_number(value, key);
    }
  }
  static const std::vector<std::string> qubit_keys{"pg", "f", "gamma", "k", "dh", "dc", "e0"};
  static const std::vector<std::string> qutrit_keys{"pg", "p0", "p1", "p2", "f", "lambda1", "lambda2",
                                                    "k1", "k2", "eh1", "eh2", "ec1", "ec2", "e0"};
  const auto& allowed = req.engine == "qutrit" ? qutrit_keys : qubit_keys;
  for (const auto& [key, value] : req.params) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw Error(ErrorKind::BadInput, "'" + key + "' is not a parameter of the " + req.engine + " engine");
    }
  }
  return req;
}

std::string run_report(const RunRequest& request, Convention convention) {
  const ChannelOptions opts{convention, false};
  std::ostringstream os;
  CycleReport r;
  os << "engine=" << request.engine << "\n";
  if (request.engine == "qutrit") {
    const auto cfg = qutrit_config_from(request.params);
    r = run_qutrit(cfg, opts);
    os << "p0=" << format_number(cfg.initial_p[0]) << "\np1=" << format_number(cfg.initial_p[1])
       << "\np2=" << format_number(cfg.initial_p[2]) << "\nf=" << format_number(cfg.f_prime)
       << "\nlambda1=" << format_number(cfg.lambda1) << "\nlambda2=" << format_number(cfg.lambda2)
       << "\nk1=" << format_number(cfg.k1) << "\nk2=" << format_number(cfg.k2)
       << "\nhot_levels=" << join_numbers({cfg.hot_levels.levels().begin(), cfg.hot_levels.levels().end()})
       << "\ncold_levels=" << join_numbers({cfg.cold_levels.levels().begin(), cfg.cold_levels.levels().end()})
       << "\nq_hot_closed_form=" << format_number(qutrit_hot_heat(cfg, convention))
       << "\nq_cold_closed_form=" << format_number(-qutrit_rejected_heat(cfg, convention)) << "\n";
  } else {
    const auto cfg = qubit_config_from(request.params);
    r = request.engine == "cyclic" ? run_cyclic_qubit(cfg, opts) : run_noncyclic_qubit(cfg, opts);
    os << "pg=" << format_number(cfg.initial_pg) << "\npe=" << format_number(cfg.initial_pe())
       << "\nf=" << format_number(cfg.f) << "\ngamma=" << format_number(cfg.gamma) << "\nk=" << format_number(cfg.k)
       << "\ndh=" << format_number(cfg.hot_gap) << "\ndc=" << format_number(cfg.cold_gap) << "\n";
  }
  os << "q_hot=" << format_number(r.q_hot) << "\nq_cold=" << format_number(r.q_cold)
     << "\nq_cold_stroke=" << format_number(r.q_cold_stroke) << "\nwork=" << format_number(r.work)
     << "\nefficiency=" << format_number(r.efficiency) << "\ndeviation=" << format_number(r.deviation)
     << "\ndelta_w=" << format_number(r.redistribution_work) << "\ncyclic=" << (r.cyclic ? "true" : "false")
     << "\nheat_absorbed=" << (r.heat_absorbed ? "true" : "false") << "\n";
  for (std::size_t i = 0; i < r.states.size(); ++i) {
    os << "populations_" << i << "=" << join_numbers(r.states[i].populations()) << "\n";
  }
  return os.str();
}

}  // namespace qhe
