#pragma once

// Parameter sweeps, the fig1..fig7 presets, and the flat
// key=value configuration format shared by spec files and --set overrides.

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "qhe/channels.hpp"
#include "qhe/engine.hpp"
#include "qhe/error.hpp"

namespace qhe {

enum class Target {
  WorkVsF,
  WorkVsPg,
  WorkVsFNoncyclic,
  HeatWorkCyclicVsNoncyclic,
  QutritVsQubitWork,
  Efficiency,
  ErgotropyMap,
  ErgotropyDiff,
};

std::string_view to_string(Target target) noexcept;
Target parse_target(std::string_view name);

struct Axis {
  std::string name;
  double start = 0.0;
  double stop = 1.0;
  std::size_t points = 201;

  // Evenly spaced, endpoints exact.
  std::vector<double> values() const;
};

struct Series {
  std::string name;
  std::vector<double> values;
};

struct SweepSpec {
  Target target = Target::WorkVsF;
  std::map<std::string, double> fixed;
  Axis swept;
  std::optional<Series> series;
  // Second grid axis (time) for the ergotropy targets.
  std::optional<Axis> inner;
  Convention convention = Convention::Corrected;
};

inline constexpr std::size_t kDefaultPoints = 201;

// Parameters (name, default) accepted by a target, in column order.
const std::vector<std::pair<std::string, double>>& target_parameters(Target target);

// Checks axis sizes/monotonicity and that every named parameter belongs to the target.
void check_spec(const SweepSpec& spec);

// fig1 .. fig7.
SweepSpec preset(std::string_view name);
bool is_preset_name(std::string_view name);

using Cell = std::variant<double, bool>;

struct Table {
  // Emitted as "# key=value" lines ahead of the header row.
  std::vector<std::pair<std::string, std::string>> metadata;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  std::size_t column_index(std::string_view name) const;
  double number(std::size_t row, std::string_view column) const;
};

// Thrown when sweep cells fail; carries one annotated message per failing cell.
class SweepError : public Error {
 public:
  SweepError(ErrorKind kind, std::vector<std::string> failures);
  const std::vector<std::string>& failures() const noexcept { return failures_; }

 private:
  std::vector<std::string> failures_;
};

// Rows are series-major, sweep-minor (f-major, t-minor for the ergotropy
// targets) regardless of how many worker threads are used.
Table run_sweep(const SweepSpec& spec, unsigned threads = 1);

// 12 significant digits, comma separated, '\n' line endings.
std::string format_number(double value);
void emit_csv(const Table& table, std::ostream& out);
void emit_csv_file(const Table& table, const std::string& path);

// ---- key=value configuration ------------------------------------------------

using KeyValues = std::vector<std::pair<std::string, std::string>>;

// One key=value per line; '#' starts a comment; blank lines ignored.
KeyValues parse_key_values(std::string_view text);
KeyValues read_key_values_file(const std::string& path);
std::pair<std::string, std::string> parse_assignment(std::string_view text);
double parse_number(std::string_view text, std::string_view key);

// Spec-level keys: target, sweep, start, stop, points, series, series_values,
// inner, inner_start, inner_stop, inner_points. All other keys are fixed
// parameters of the target.
SweepSpec spec_from_key_values(const KeyValues& kv);
// Applies --set style overrides (spec-level or parameter keys) on top of a spec.
void apply_overrides(SweepSpec& spec, const KeyValues& overrides);

// Single engine run described by key=value pairs ("engine" = cyclic |
// noncyclic | qutrit, plus that engine's parameters).
struct RunRequest {
  std::string engine = "cyclic";
  std::map<std::string, double> params;
};

RunRequest run_request_from_key_values(const KeyValues& kv);
// key=value lines describing the report.
std::string run_report(const RunRequest& request, Convention convention = Convention::Corrected);

QubitEngineConfig qubit_config_from(const std::map<std::string, double>& params);
QutritEngineConfig qutrit_config_from(const std::map<std::string, double>& params);

}  // namespace qhe
