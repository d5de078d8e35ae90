#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "qhe/engine.hpp"
#include "qhe/sweep.hpp"

using qhe::Target;

namespace {

std::string csv_of(const qhe::Table& t) {
  std::ostringstream os;
  qhe::emit_csv(t, os);
  return os.str();
}

qhe::SweepSpec small(qhe::SweepSpec s, std::size_t points = 21) {
  s.swept.points = points;
  if (s.inner) s.inner->points = points;
  return s;
}

}  // namespace

TEST(Sweep, PresetShapes) {
  const auto f1 = qhe::preset("fig1");
  EXPECT_EQ(f1.target, Target::WorkVsF);
  EXPECT_EQ(f1.swept.name, "f");
  EXPECT_EQ(f1.swept.start, 0.0);
  EXPECT_EQ(f1.swept.stop, 1.0);
  ASSERT_TRUE(f1.series);
  EXPECT_EQ(f1.series->name, "gamma");
  EXPECT_EQ(f1.series->values, (std::vector<double>{0.1, 0.2, 0.5, 0.7, 1.0}));

  const auto f2 = qhe::preset("fig2");
  EXPECT_EQ(f2.swept.name, "pg");
  EXPECT_EQ(f2.series->name, "dh");
  EXPECT_EQ(f2.series->values, (std::vector<double>{1, 5, 10, 20, 50}));

  const auto f3 = qhe::preset("fig3");
  EXPECT_EQ(f3.swept.name, "f");
  EXPECT_EQ(f3.series->name, "pg");
  EXPECT_EQ(f3.series->values, (std::vector<double>{0.0, 0.4, 0.5, 0.9}));

  for (const char* name : {"fig1", "fig2", "fig3", "fig4", "fig5", "fig6", "fig7"}) {
    EXPECT_TRUE(qhe::is_preset_name(name));
    EXPECT_NO_THROW(qhe::check_spec(qhe::preset(name))) << name;
  }
  try {
    qhe::preset("fig8");
    FAIL();
  } catch (const qhe::Error& e) {
    EXPECT_EQ(e.kind(), qhe::ErrorKind::UnknownPreset);
  }
}

TEST(Sweep, TargetNamesRoundTrip) {
  for (auto t : {Target::WorkVsF, Target::WorkVsPg, Target::WorkVsFNoncyclic, Target::HeatWorkCyclicVsNoncyclic,
                 Target::QutritVsQubitWork, Target::Efficiency, Target::ErgotropyMap, Target::ErgotropyDiff}) {
    EXPECT_EQ(qhe::parse_target(qhe::to_string(t)), t);
  }
  EXPECT_THROW(qhe::parse_target("work"), qhe::Error);
}

TEST(Sweep, AxisValues) {
  const qhe::Axis a{"f", 0.0, 1.0, 201};
  const auto v = a.values();
  ASSERT_EQ(v.size(), 201u);
  EXPECT_EQ(v.front(), 0.0);
  EXPECT_EQ(v.back(), 1.0);
  EXPECT_DOUBLE_EQ(v[180], 0.9);
}

TEST(Sweep, Fig1RowsMatchWorkOracle) {
  const auto table = qhe::run_sweep(qhe::preset("fig1"));
  ASSERT_EQ(table.rows.size(), 5u * 201u);
  for (const char* col : {"f", "gamma", "pg", "dh", "dc", "work"}) EXPECT_NO_THROW(table.column_index(col));
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    qhe::QubitEngineConfig c;
    c.initial_pg = table.number(r, "pg");
    c.f = table.number(r, "f");
    c.gamma = table.number(r, "gamma");
    c.hot_gap = table.number(r, "dh");
    c.cold_gap = table.number(r, "dc");
    EXPECT_NEAR(table.number(r, "work"), qhe::cycle_work(c), 1e-12);
    EXPECT_NEAR(table.number(r, "work"), table.number(r, "q_hot") + table.number(r, "q_cold"), 1e-12);
  }
  // Series-major order: gamma constant in blocks of 201, f ascending within.
  EXPECT_EQ(table.number(0, "gamma"), 0.1);
  EXPECT_EQ(table.number(200, "gamma"), 0.1);
  EXPECT_EQ(table.number(201, "gamma"), 0.2);
  EXPECT_EQ(table.number(201, "f"), 0.0);
  // f = 0.9 crossing at pg = 0.9.
  for (std::size_t s = 0; s < 5; ++s) EXPECT_NEAR(table.number(s * 201 + 180, "work"), 0.0, 1e-12);
}

TEST(Sweep, ZeroDampingGivesZeroWork) {
  qhe::SweepSpec s;
  s.target = Target::WorkVsF;
  s.swept = {"f", 0.0, 1.0, 11};
  s.fixed = {{"gamma", 0.0}};
  const auto table = qhe::run_sweep(s);
  ASSERT_EQ(table.rows.size(), 11u);
  for (std::size_t r = 0; r < table.rows.size(); ++r) EXPECT_NEAR(table.number(r, "work"), 0.0, 1e-15);
}

TEST(Sweep, EveryPresetBalancesEnergy) {
  for (const char* name : {"fig1", "fig2", "fig3"}) {
    const auto t = qhe::run_sweep(small(qhe::preset(name)));
    for (std::size_t r = 0; r < t.rows.size(); ++r)
      EXPECT_NEAR(t.number(r, "work"), t.number(r, "q_hot") + t.number(r, "q_cold"), 1e-12) << name;
  }
  const auto fig4 = qhe::run_sweep(small(qhe::preset("fig4")));
  for (std::size_t r = 0; r < fig4.rows.size(); ++r) {
    EXPECT_NEAR(fig4.number(r, "work_cyclic"), fig4.number(r, "q_hot") + fig4.number(r, "q_cold_cyclic"), 1e-12);
    EXPECT_NEAR(fig4.number(r, "work_noncyclic"), fig4.number(r, "q_hot") + fig4.number(r, "q_cold_noncyclic"), 1e-12);
    EXPECT_NEAR(fig4.number(r, "work_cyclic") - fig4.number(r, "work_noncyclic"), fig4.number(r, "delta_w"), 1e-12);
  }
  const auto fig5 = qhe::run_sweep(small(qhe::preset("fig5")));
  for (std::size_t r = 0; r < fig5.rows.size(); ++r) {
    EXPECT_NEAR(fig5.number(r, "work_qubit"), fig5.number(r, "q_hot_qubit") + fig5.number(r, "q_cold_qubit"), 1e-12);
    EXPECT_NEAR(fig5.number(r, "work_qutrit"), fig5.number(r, "q_hot_qutrit") + fig5.number(r, "q_cold_qutrit"), 1e-12);
    EXPECT_GE(fig5.number(r, "work_qutrit"), fig5.number(r, "work_qubit") - 1e-12);
  }
}

TEST(Sweep, Fig6QutritStartsFromQubitPopulations) {
  const auto t = qhe::run_sweep(small(qhe::preset("fig6"), 11));
  ASSERT_EQ(t.rows.size(), 33u);
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    EXPECT_EQ(t.number(r, "p0"), t.number(r, "pg"));
    EXPECT_NEAR(t.number(r, "p1"), 1.0 - t.number(r, "pg"), 1e-15);
    EXPECT_EQ(t.number(r, "p2"), 0.0);
  }
}

TEST(Sweep, ErgotropyDiffMetadata) {
  const auto t = qhe::run_sweep(small(qhe::preset("fig7")));
  EXPECT_EQ(t.rows.size(), 21u * 21u);
  bool found = false;
  for (const auto& [k, v] : t.metadata)
    if (k == "qutrit_only_cells") {
      found = true;
      EXPECT_GT(std::stoul(v), 0u);
    }
  EXPECT_TRUE(found);
  const auto text = csv_of(t);
  EXPECT_EQ(text.rfind("# ", 0), 0u);
  EXPECT_NE(text.find("\nf,t,qubit,qutrit,difference\n"), std::string::npos);
}

TEST(Sweep, InfeasibleErgotropyCellsAreAllReported) {
  auto s = small(qhe::preset("fig7"), 5);
  s.inner->stop = 2.0;
  try {
    qhe::run_sweep(s);
    FAIL();
  } catch (const qhe::SweepError& e) {
    // t = 1, 1.5, 2 are infeasible for every f.
    EXPECT_EQ(e.failures().size(), 15u);
  }
}

TEST(Sweep, EngineErrorsCarryGridPoints) {
  qhe::SweepSpec s;
  s.target = Target::WorkVsPg;
  s.swept = {"pg", 0.0, 1.2, 7};
  try {
    qhe::run_sweep(s);
    FAIL();
  } catch (const qhe::SweepError& e) {
    ASSERT_EQ(e.failures().size(), 1u);
    EXPECT_NE(e.failures()[0].find("pg=1.2"), std::string::npos);
  }
}

TEST(Sweep, ParallelMatchesSerial) {
  for (const char* name : {"fig1", "fig4", "fig6", "fig7"}) {
    const auto spec = small(qhe::preset(name), 31);
    EXPECT_EQ(csv_of(qhe::run_sweep(spec, 1)), csv_of(qhe::run_sweep(spec, 7))) << name;
  }
}

TEST(Sweep, SpecValidation) {
  auto s = qhe::preset("fig1");
  s.swept.points = 1;
  EXPECT_THROW(qhe::check_spec(s), qhe::Error);
  s = qhe::preset("fig1");
  s.fixed["lambda1"] = 0.3;
  EXPECT_THROW(qhe::check_spec(s), qhe::Error);
  s = qhe::preset("fig1");
  s.swept.stop = s.swept.start;
  EXPECT_THROW(qhe::check_spec(s), qhe::Error);
  s = qhe::preset("fig1");
  s.series->name = "f";
  EXPECT_THROW(qhe::check_spec(s), qhe::Error);
  s = qhe::preset("fig7");
  s.inner.reset();
  EXPECT_THROW(qhe::check_spec(s), qhe::Error);
}

TEST(Csv, FormatNumber) {
  EXPECT_EQ(qhe::format_number(0.1), "0.1");
  EXPECT_EQ(qhe::format_number(-0.0), "0");
  EXPECT_EQ(qhe::format_number(1.0 / 3.0), "0.333333333333");
  EXPECT_EQ(qhe::format_number(1e-20), "1e-20");
  EXPECT_EQ(qhe::format_number(std::nan("")), "nan");
}

TEST(Csv, EmptyTableIsHeaderOnly) {
  qhe::Table t;
  t.columns = {"a", "b"};
  EXPECT_EQ(csv_of(t), "a,b\n");
}

TEST(Csv, RowsAndBooleans) {
  qhe::Table t;
  t.columns = {"x", "ok"};
  t.rows.push_back({0.25, true});
  t.rows.push_back({-1.5, false});
  EXPECT_EQ(csv_of(t), "x,ok\n0.25,true\n-1.5,false\n");
}

TEST(Csv, FileOutputAndFailure) {
  const auto path = std::filesystem::temp_directory_path() / "qhe_csv_test.csv";
  const auto spec = small(qhe::preset("fig1"));
  qhe::emit_csv_file(qhe::run_sweep(spec), path.string());
  std::ifstream in(path, std::ios::binary);
  std::stringstream buf;
  buf << in.rdbuf();
  EXPECT_EQ(buf.str(), csv_of(qhe::run_sweep(spec)));
  std::filesystem::remove(path);
  try {
    qhe::emit_csv_file(qhe::Table{}, "/nonexistent-dir/x.csv");
    FAIL();
  } catch (const qhe::Error& e) {
    EXPECT_EQ(e.kind(), qhe::ErrorKind::IoFailure);
  }
}

TEST(Config, ParseKeyValues) {
  const auto kv = qhe::parse_key_values("# comment\ntarget = work_vs_f\n\nsweep=f\npoints=11 # trailing\ngamma=0.3\n");
  ASSERT_EQ(kv.size(), 4u);
  EXPECT_EQ(kv[0], (std::pair<std::string, std::string>{"target", "work_vs_f"}));
  EXPECT_EQ(kv[2].second, "11");
  EXPECT_THROW(qhe::parse_assignment("novalue"), qhe::Error);
  EXPECT_THROW(qhe::parse_number("0.3x", "gamma"), qhe::Error);
  EXPECT_EQ(qhe::parse_number(" 2.5 ", "dh"), 2.5);
}

TEST(Config, SpecFromKeyValues) {
  const auto spec = qhe::spec_from_key_values(qhe::parse_key_values(
      "target=work_vs_f\nsweep=f\nstart=0\nstop=0.5\npoints=6\nseries=gamma\nseries_values=0.2,0.4\npg=0.8\n"));
  EXPECT_EQ(spec.target, Target::WorkVsF);
  EXPECT_EQ(spec.swept.points, 6u);
  EXPECT_EQ(spec.swept.stop, 0.5);
  ASSERT_TRUE(spec.series);
  EXPECT_EQ(spec.series->values, (std::vector<double>{0.2, 0.4}));
  EXPECT_EQ(spec.fixed.at("pg"), 0.8);
  const auto t = qhe::run_sweep(spec);
  EXPECT_EQ(t.rows.size(), 12u);
  EXPECT_EQ(t.number(11, "pg"), 0.8);
  EXPECT_THROW(qhe::run_sweep(qhe::spec_from_key_values(qhe::parse_key_values("target=work_vs_f\nomega=2\n"))),
               qhe::Error);
}

TEST(Config, Overrides) {
  auto spec = qhe::preset("fig1");
  qhe::apply_overrides(spec, {{"points", "5"}, {"pg", "0.7"}, {"series", "none"}});
  EXPECT_EQ(spec.swept.points, 5u);
  EXPECT_FALSE(spec.series);
  const auto t = qhe::run_sweep(spec);
  ASSERT_EQ(t.rows.size(), 5u);
  EXPECT_EQ(t.number(0, "pg"), 0.7);
}

TEST(Config, RunReport) {
  const auto req = qhe::run_request_from_key_values(qhe::parse_key_values("engine=cyclic\npg=0.9\nf=0.2\ngamma=0.5\n"));
  const auto text = qhe::run_report(req);
  EXPECT_NE(text.find("q_hot=0.35\n"), std::string::npos);
  EXPECT_NE(text.find("work=0.175\n"), std::string::npos);
  EXPECT_NE(text.find("efficiency=0.5\n"), std::string::npos);

  const auto nc = qhe::run_request_from_key_values(
      qhe::parse_key_values("engine=noncyclic\npg=0.9\nf=0.2\ngamma=0.5\nk=0.3\n"));
  EXPECT_NE(qhe::run_report(nc).find("populations_4=0.685;0.315\n"), std::string::npos);

  const auto qt = qhe::run_request_from_key_values(
      qhe::parse_key_values("engine=qutrit\np0=1\np1=0\np2=0\nf=0\nlambda1=0.3\nlambda2=0.5\n"));
  EXPECT_NE(qhe::run_report(qt).find("q_hot=1.3\n"), std::string::npos);

  EXPECT_THROW(qhe::run_request_from_key_values(qhe::parse_key_values("engine=diesel\n")), qhe::Error);
  EXPECT_THROW(qhe::run_request_from_key_values(qhe::parse_key_values("engine=cyclic\nlambda1=0.2\n")), qhe::Error);
}
