// qhe: sweeps, validation and single reports for the GAD heat-engine models.
//
//   qhe sweep <preset|specfile> [--out path] [--points n] [--set key=value]...
//   qhe validate [--paper-literal]
//   qhe ergomap [--set system_dim=2|3] ...
//   qhe report <specfile>
//
// Exit codes: 0 success, 1 validation failure, 2 bad input.

#include <fstream>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "qhe/sweep.hpp"
#include "qhe/validation.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitBadInput = 2;

struct CommonOptions {
  std::string out;
  std::size_t points = 0;
  std::vector<std::string> sets;
  bool paper_literal = false;
  unsigned parallel = 1;
};

void add_common(CLI::App* cmd, CommonOptions& opts, bool sweep_like) {
  cmd->add_flag("--paper-literal", opts.paper_literal, "Use the uncorrected channel/formula variants for comparison");
  if (!sweep_like) return;
  cmd->add_option("--out", opts.out, "Output path (default: standard output)");
  cmd->add_option("--points", opts.points, "Points per swept axis")->check(CLI::Range(2, 1000000));
  cmd->add_option("--set", opts.sets, "Override a parameter, key=value (repeatable)")->take_all();
  cmd->add_option("--parallel", opts.parallel, "Worker threads for sweep cells")->check(CLI::Range(1, 1024));
}

qhe::KeyValues parse_sets(const std::vector<std::string>& sets) {
  qhe::KeyValues kv;
  for (const auto& s : sets) kv.push_back(qhe::parse_assignment(s));
  return kv;
}

void write_table(const qhe::Table& table, const std::string& out) {
  if (out.empty() || out == "-") {
    qhe::emit_csv(table, std::cout);
    std::cout.flush();
  } else {
    qhe::emit_csv_file(table, out);
  }
}

int run_spec(qhe::SweepSpec spec, const CommonOptions& opts) {
  apply_overrides(spec, parse_sets(opts.sets));
  if (opts.points) {
    spec.swept.points = opts.points;
    if (spec.inner) spec.inner->points = opts.points;
  }
  spec.convention = opts.paper_literal ? qhe::Convention::Literal : qhe::Convention::Corrected;
  write_table(qhe::run_sweep(spec, opts.parallel), opts.out);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum heat engines driven by generalized amplitude damping channels"};
  app.require_subcommand(1);

  CommonOptions sweep_opts;
  std::string sweep_source;
  auto* sweep = app.add_subcommand("sweep", "Run a preset (fig1..fig7) or a key=value spec file");
  sweep->add_option("source", sweep_source, "Preset name or spec file")->required();
  add_common(sweep, sweep_opts, true);

  CommonOptions validate_opts;
  auto* validate = app.add_subcommand("validate", "Run the built-in consistency checks");
  add_common(validate, validate_opts, false);

  CommonOptions ergo_opts;
  auto* ergomap = app.add_subcommand("ergomap", "Ergotropy landscapes over (f, t); set system_dim for a single map");
  add_common(ergomap, ergo_opts, true);

  CommonOptions report_opts;
  std::string report_source;
  auto* report = app.add_subcommand("report", "Run one engine cycle described by a key=value file");
  report->add_option("specfile", report_source, "Config file (engine=cyclic|noncyclic|qutrit plus parameters)")
      ->required();
  add_common(report, report_opts, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitBadInput;
  }

  try {
    if (*sweep) {
      qhe::SweepSpec spec = qhe::is_preset_name(sweep_source)
                                ? qhe::preset(sweep_source)
                                : qhe::spec_from_key_values(qhe::read_key_values_file(sweep_source));
      return run_spec(std::move(spec), sweep_opts);
    }

    if (*ergomap) {
      qhe::SweepSpec spec = qhe::preset("fig7");
      const auto sets = parse_sets(ergo_opts.sets);
      const bool single = std::any_of(sets.begin(), sets.end(), [](const auto& kv) { return kv.first == "system_dim"; });
      if (single) spec.target = qhe::Target::ErgotropyMap;
      return run_spec(std::move(spec), ergo_opts);
    }

    if (*validate) {
      const auto convention =
          validate_opts.paper_literal ? qhe::Convention::Literal : qhe::Convention::Corrected;
      const auto summary = qhe::validate_all(convention);
      for (const auto& c : summary.checks) {
        std::cout << (c.passed ? "PASS " : "FAIL ") << c.name << "  [worst " << qhe::format_number(c.worst) << "]";
        if (!c.detail.empty()) std::cout << "  " << c.detail;
        std::cout << '\n';
      }
      std::cout << (summary.ok() ? "all checks passed" : "validation FAILED") << std::endl;
      return summary.ok() ? kExitOk : kExitValidation;
    }

    if (*report) {
      auto kv = qhe::read_key_values_file(report_source);
      const auto sets = parse_sets(report_opts.sets);
      kv.insert(kv.end(), sets.begin(), sets.end());
      const auto request = qhe::run_request_from_key_values(kv);
      const auto text = qhe::run_report(
          request, report_opts.paper_literal ? qhe::Convention::Literal : qhe::Convention::Corrected);
      if (report_opts.out.empty() || report_opts.out == "-") {
        std::cout << text;
      } else {
        std::ofstream out(report_opts.out, std::ios::binary | std::ios::trunc);
        if (!(out << text)) throw qhe::Error(qhe::ErrorKind::IoFailure, "cannot write '" + report_opts.out + "'");
      }
      return kExitOk;
    }
  } catch (const qhe::Error& e) {
    std::cerr << "qhe: " << e.what() << '\n';
    return kExitBadInput;
  } catch (const std::exception& e) {
    std::cerr << "qhe: " << e.what() << '\n';
    return kExitBadInput;
  }
  return kExitBadInput;
}
