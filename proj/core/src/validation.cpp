#include "qhe/validation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "qhe/engine.hpp"
#include "qhe/ergotropy.hpp"
#include "qhe/error.hpp"
#include "qhe/sweep.hpp"

namespace qhe {

namespace {

// Tracks the worst residual of a family of identities.
class Residual {
 public:
  explicit Residual(std::string name, double tol = kTolerance) : name_(std::move(name)), tol_(tol) {}

  void observe(double residual, const std::string& where) {
    if (!(residual <= worst_)) {
      worst_ = residual;
      where_ = where;
    }
  }

  CheckResult result() const {
    const bool ok = worst_ <= tol_;
    return {name_, ok, worst_, ok ? std::string{} : "worst at " + where_};
  }

 private:
  std::string name_;
  double tol_;
  double worst_ = 0.0;
  std::string where_;
};

std::string at(std::initializer_list<std::pair<const char*, double>> params) {
  std::string s;
  for (const auto& [k, v] : params) s += (s.empty() ? "" : ", ") + std::string(k) + "=" + format_number(v);
  return s;
}

DensityMatrix random_state(std::size_t dim, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  Matrix g(dim);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) g(i, j) = Complex(normal(rng), normal(rng));
  Matrix rho = g * g.adjoint();
  rho *= 1.0 / rho.trace().real();
  return DensityMatrix(rho);
}

std::vector<double> grid(std::size_t n) {
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = static_cast<double>(i) / static_cast<double>(n - 1);
  return out;
}

CheckResult qubit_completeness() {
  Residual r("qubit GAD completeness (11x11 grid)");
  for (double f : grid(11))
    for (double g : grid(11)) {
      const auto ch = gad_qubit(f, g, {Convention::Corrected, false});
      r.observe(ch.completeness_residual(), at({{"f", f}, {"gamma", g}}));
      r.observe(std::max(0.0, ch.max_singular_value() - 1.0), at({{"f", f}, {"gamma", g}}));
    }
  return r.result();
}

CheckResult qutrit_completeness(Convention convention) {
  Residual r("qutrit GAD completeness (6x6x6 feasible grid)");
  for (double f : grid(6))
    for (double l1 : grid(6))
      for (double l2 : grid(6)) {
        if (l1 + l2 > 1.0 + kTolerance) continue;
        const auto ch = gad_qutrit(f, l1, l2, {convention, false});
        r.observe(ch.completeness_residual(), at({{"f'", f}, {"lambda1", l1}, {"lambda2", l2}}));
      }
  return r.result();
}

CheckResult trace_and_positivity(Convention convention) {
  Residual r("trace and positivity preservation (random states)");
  std::mt19937_64 rng(20240917);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    const double f = unit(rng);
    const double g = unit(rng);
    const double l1 = unit(rng);
    const double l2 = unit(rng) * (1.0 - l1);
    const std::vector<std::pair<KrausSet, std::string>> channels{
        {gad_qubit(f, g, {convention, false}), "gad_qubit " + at({{"f", f}, {"gamma", g}})},
        {ad_qubit(g, {convention, false}), "ad_qubit " + at({{"k", g}})},
        {gad_qutrit(f, l1, l2, {convention, false}), "gad_qutrit " + at({{"f'", f}, {"lambda1", l1}, {"lambda2", l2}})},
    };
    for (const auto& [ch, label] : channels) {
      const auto out = validate(apply(ch, random_state(ch.dim(), rng)));
      r.observe(std::max({out.trace.residual, out.hermitian.residual, out.psd.residual}), label);
    }
  }
  return r.result();
}

CheckResult evolved_state_closed_form() {
  Residual r("GAD evolved populations vs closed form");
  for (double f : grid(21))
    for (double g : grid(21))
      for (double pg : grid(21)) {
        const double pe = 1.0 - pg;
        const auto out = apply(gad_qubit(f, g, {Convention::Corrected, false}), make_diagonal_state({pg, pe}));
        const double pg2 = f * g * pe + (1.0 + (f - 1.0) * g) * pg;
        const double pe2 = (1.0 - f * g) * pe - (f - 1.0) * g * pg;
        const std::string where = at({{"f", f}, {"gamma", g}, {"pg", pg}});
        r.observe(std::abs(out.matrix()(0, 0) - Complex(pg2)), where);
        r.observe(std::abs(out.matrix()(1, 1) - Complex(pe2)), where);
        r.observe(out.matrix().max_off_diagonal(), where);
      }
  return r.result();
}

CheckResult inversion_scan() {
  std::size_t misclassified = 0;
  std::size_t ties = 0;
  std::string where;
  for (int fi = 0; fi <= 20; ++fi)
    for (int gi = 0; gi <= 20; ++gi)
      for (int ei = 0; ei <= 20; ++ei) {
        const double f = fi / 20.0;
        const double g = gi / 20.0;
        const double pe = ei / 20.0;
        const double pg = 1.0 - pe;
        const auto out = apply(gad_qubit(f, g, {Convention::Corrected, false}), make_diagonal_state({pg, pe}));
        const double margin = out.population(1) - out.population(0);
        if (std::abs(margin) <= kTolerance) {
          ++ties;
          continue;
        }
        if ((margin > 0.0) != inversion_condition(f, g, pg, pe)) {
          ++misclassified;
          where = at({{"f", f}, {"gamma", g}, {"pe", pe}});
        }
      }
  CheckResult c{"inversion condition scan (0.05 grid)", misclassified == 0, static_cast<double>(misclassified),
                std::to_string(ties) + " exact ties"};
  if (misclassified) c.detail += "; last miss at " + where;
  return c;
}

CheckResult qubit_heat_closed_forms() {
  Residual r("qubit Q1, Q2, W closed forms vs traces");
  for (double f : grid(11))
    for (double g : grid(11))
      for (double pg : grid(11)) {
        QubitEngineConfig cfg;
        cfg.initial_pg = pg;
        cfg.f = f;
        cfg.gamma = g;
        cfg.hot_gap = 1.7;
        cfg.cold_gap = 0.6;
        const auto rep = run_cyclic_qubit(cfg, {Convention::Corrected, false});
        const std::string where = at({{"f", f}, {"gamma", g}, {"pg", pg}});
        r.observe(std::abs(rep.q_hot - hot_stroke_heat(cfg)), where);
        r.observe(std::abs(rep.q_cold - cold_stroke_heat(cfg)), where);
        r.observe(std::abs(rep.work - cycle_work(cfg)), where);
        r.observe(std::abs(rep.work - rep.q_hot - rep.q_cold), where);
      }
  return r.result();
}

CheckResult noncyclic_closed_forms(Convention convention) {
  Residual r("non-cyclic populations, deviation and redistribution work");
  for (double f : grid(11))
    for (double g : grid(11))
      for (double k : grid(11))
        for (double pg : grid(6)) {
          QubitEngineConfig cfg;
          cfg.initial_pg = pg;
          cfg.f = f;
          cfg.gamma = g;
          cfg.k = k;
          const auto cyc = run_cyclic_qubit(cfg, {Convention::Corrected, false});
          const auto rep = run_noncyclic_qubit(cfg, {Convention::Corrected, false});
          const auto closed = noncyclic_populations(cfg, convention);
          const std::string where = at({{"f", f}, {"gamma", g}, {"k", k}, {"pg", pg}});
          const auto& fin = rep.states.back();
          r.observe(std::abs(fin.population(0) - closed.pg), where);
          r.observe(std::abs(fin.population(1) - closed.pe), where);
          r.observe(std::abs(rep.deviation - noncyclic_deviation(cfg)), where);
          r.observe(std::abs(rep.redistribution_work - redistribution_work(cfg)), where);
          r.observe(std::abs((cyc.work - rep.work) - redistribution_work(cfg)), where);
        }
  return r.result();
}

CheckResult composition_law() {
  Residual r("GAD composition law in gamma");
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int i = 0; i < 500; ++i) {
    const double f = unit(rng);
    const double g1 = unit(rng);
    const double g2 = unit(rng);
    const double pg = unit(rng);
    const auto rho = make_diagonal_state({pg, 1.0 - pg});
    const ChannelOptions o{Convention::Corrected, false};
    const auto twice = apply(gad_qubit(f, g2, o), apply(gad_qubit(f, g1, o), rho));
    const auto once = apply(gad_qubit(f, g1 + g2 - g1 * g2, o), rho);
    r.observe(hs_distance(twice, once), at({{"f", f}, {"gamma1", g1}, {"gamma2", g2}}));
  }
  return r.result();
}

CheckResult qutrit_heat_closed_forms(Convention convention) {
  Residual r("qutrit Q1 and rejected heat closed forms vs traces");
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int i = 0; i < 500; ++i) {
    QutritEngineConfig cfg;
    const double a = unit(rng);
    const double b = unit(rng);
    const double lo = std::min(a, b);
    const double hi = std::max(a, b);
    cfg.initial_p = {lo, hi - lo, 1.0 - hi};
    cfg.f_prime = unit(rng);
    cfg.lambda1 = unit(rng);
    cfg.lambda2 = unit(rng) * (1.0 - cfg.lambda1);
    cfg.k1 = unit(rng);
    cfg.k2 = unit(rng) * (1.0 - cfg.k1);
    cfg.hot_levels = Hamiltonian({0.0, 1.0 + unit(rng), 3.0 + unit(rng)});
    cfg.cold_levels = Hamiltonian({0.0, 0.3 + unit(rng), 1.5 + unit(rng)});
    const auto rep = run_qutrit(cfg, {Convention::Corrected, false});
    const std::string where = at({{"f'", cfg.f_prime}, {"lambda1", cfg.lambda1}, {"lambda2", cfg.lambda2}});
    r.observe(std::abs(rep.q_hot - qutrit_hot_heat(cfg, convention)), where);
    r.observe(std::abs(-rep.q_cold - qutrit_rejected_heat(cfg, convention)), where);
  }
  return r.result();
}

CheckResult ergotropy_oracle() {
  Residual r("ergotropy vs permutation brute force");
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int i = 0; i < 1000; ++i) {
    const std::size_t dim = i % 2 == 0 ? 2 : 3;
    std::vector<double> p(dim);
    for (auto& x : p) x = -std::log(1.0 - unit(rng));
    const double sum = std::accumulate(p.begin(), p.end(), 0.0);
    for (auto& x : p) x /= sum;
    p.back() = 1.0 - std::accumulate(p.begin(), p.end() - 1, 0.0);
    std::vector<double> levels(dim);
    double e = unit(rng) - 0.5;
    for (auto& l : levels) l = (e += 0.05 + unit(rng));
    const Hamiltonian h(levels);
    const auto rho = make_diagonal_state(p);

    std::vector<std::size_t> perm(dim);
    std::iota(perm.begin(), perm.end(), 0);
    double best = std::numeric_limits<double>::infinity();
    do {
      double en = 0.0;
      for (std::size_t j = 0; j < dim; ++j) en += levels[j] * p[perm[j]];
      best = std::min(best, en);
    } while (std::next_permutation(perm.begin(), perm.end()));
    double active = 0.0;
    for (std::size_t j = 0; j < dim; ++j) active += levels[j] * p[j];

    const double w = ergotropy(rho, h);
    r.observe(std::abs(w - std::max(0.0, active - best)), "trial " + std::to_string(i));
    if (w < 0.0) r.observe(1.0, "negative ergotropy");
  }
  return r.result();
}

CheckResult sign_theorem() {
  std::size_t violations = 0;
  for (double f : grid(41))
    for (double g : grid(41))
      for (double pg : grid(41)) {
        if (g == 0.0) continue;
        QubitEngineConfig cfg;
        cfg.initial_pg = pg;
        cfg.f = f;
        cfg.gamma = g;
        const double w = run_cyclic_qubit(cfg, {Convention::Corrected, false}).work;
        const double s = (1.0 - f) * pg - f * (1.0 - pg);
        if (std::abs(s) <= kTolerance) {
          if (std::abs(w) >= kTolerance) ++violations;
        } else if ((w > 0.0) != (s > 0.0)) {
          ++violations;
        }
      }
  return {"positive-work sign theorem scan", violations == 0, static_cast<double>(violations), {}};
}

}  // namespace

bool ValidationSummary::ok() const noexcept {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

ValidationSummary validate_all(Convention convention) {
  ValidationSummary s;
  s.checks.push_back(qubit_completeness());
  s.checks.push_back(qutrit_completeness(convention));
  s.checks.push_back(trace_and_positivity(convention));
  s.checks.push_back(evolved_state_closed_form());
  s.checks.push_back(inversion_scan());
  s.checks.push_back(composition_law());
  s.checks.push_back(qubit_heat_closed_forms());
  s.checks.push_back(noncyclic_closed_forms(convention));
  s.checks.push_back(qutrit_heat_closed_forms(convention));
  s.checks.push_back(ergotropy_oracle());
  s.checks.push_back(sign_theorem());
  return s;
}

}  // namespace qhe
