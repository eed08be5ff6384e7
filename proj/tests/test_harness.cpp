#include <catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "nsv/nsv.hpp"

using namespace nsv;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("datum generators") {
  SECTION("shear") {
    const auto u = generate_datum({DatumSpec::Kind::shear}, {3});
    CHECK(u.at({0, 1, 0})[0] == Complex(0.0, -0.5));
    CHECK(l2_norm_sq(u) == Catch::Approx(kTorusVolume / 2));
  }
  SECTION("Taylor-Green coefficients and point values") {
    const auto u = generate_datum({}, {2});
    CHECK(u.at({1, 1, 0})[0] == Complex(0.0, -0.25));
    CHECK(u.at({1, 1, 0})[1] == Complex(0.0, 0.25));
    CHECK(u.at({-1, 1, 0})[0] == Complex(0.0, -0.25));
    CHECK(u.at({-1, 1, 0})[1] == Complex(0.0, -0.25));
    const std::array<double, 3> x{0.3, 1.1, 2.0};
    CHECK_THAT(oracle::evaluate(u.field(), 0, x), WithinAbs(std::cos(0.3) * std::sin(1.1), 1e-15));
    CHECK_THAT(oracle::evaluate(u.field(), 1, x), WithinAbs(-std::sin(0.3) * std::cos(1.1), 1e-15));
  }
  SECTION("random data are deterministic, solenoidal and nested") {
    const DatumSpec spec{DatumSpec::Kind::random_hs, 3.0, 42, 1.0};
    const auto a = generate_datum(spec, {5});
    const auto b = generate_datum(spec, {5});
    CHECK(a == b);
    CHECK(divergence_defect(a.field()) <= 1e-14 * max_coefficient(a.field()));
    CHECK(generate_datum(spec, {3}) == a.resized(3));
    CHECK_FALSE(generate_datum({DatumSpec::Kind::random_hs, 3.0, 43, 1.0}, {5}) == a);
  }
  SECTION("kind names") {
    for (auto k : {DatumSpec::Kind::taylor_green, DatumSpec::Kind::shear, DatumSpec::Kind::random_hs})
      CHECK(parse_datum_kind(to_string(k)) == k);
    CHECK_THROWS(parse_datum_kind("vortex"));
  }
}

TEST_CASE("schedules") {
  SECTION("default coupling n alpha^3 = n^{-1/4}") {
    const auto levels = default_schedule({4, 8, 16});
    for (const auto& l : levels) {
      CHECK_THAT(l.coupling(), WithinRel(std::pow(double(l.n), -0.25), 1e-14));
      CHECK(l.M == l.n);
    }
  }
  SECTION("alpha = n^{-1/2} is valid") {
    const auto levels = default_schedule({4, 6, 8}, 0.5);
    CHECK_THAT(levels[2].coupling(), WithinRel(std::pow(8.0, -0.5), 1e-14));
  }
  SECTION("violations") {
    CHECK_THROWS_AS(validate_schedule({{4, 4, 0.3}, {8, 8, 0.3}}), ScheduleViolation);  // constant alpha
    CHECK_THROWS_AS(validate_schedule({{4, 4, 0.5}, {4, 8, 0.4}}), ScheduleViolation);  // n not increasing
    CHECK_THROWS_AS(validate_schedule({{4, 8, 0.5}, {8, 4, 0.4}}), ScheduleViolation);  // M decreasing
    CHECK_THROWS_AS(validate_schedule({{4, 4, 0.5}, {8, 8, 0.45}}), ScheduleViolation); // 8*0.45^3 > 4*0.5^3
    CHECK_THROWS_AS(validate_schedule({{4, 4, 1.5}}), ScheduleViolation);
    CHECK_THROWS_AS(validate_schedule({}), ScheduleViolation);
    CHECK_NOTHROW(validate_schedule({{4, 4, 0.5}, {8, 4, 0.39}}));
  }
}

TEST_CASE("config parsing") {
  std::istringstream is("# comment\n n = 6 \nalpha=0.25 # trailing\n\nphi = a\nphi = b\nflag = yes\n");
  const auto cfg = Config::parse(is);
  CHECK(cfg.get_int("n", 0) == 6);
  CHECK(cfg.get_double("alpha", 0) == 0.25);
  CHECK(cfg.get_double("T", 0.5) == 0.5);
  CHECK(cfg.get_all("phi") == std::vector<std::string>{"a", "b"});
  CHECK(cfg.get_bool("flag", false));
  CHECK_THROWS_AS(cfg.require_known({"n", "alpha"}), FormatError);
  CHECK_NOTHROW(cfg.require_known({"n", "alpha", "phi", "flag"}));

  std::istringstream bad("n 4\n");
  CHECK_THROWS_AS(Config::parse(bad), FormatError);
  std::istringstream junk("n = 4x\n");
  CHECK_THROWS_AS(Config::parse(junk).get_int("n", 0), FormatError);
}

TEST_CASE("Cauchy metric between two shear levels") {
  // Both levels carry only the (0,1,0) mode; u_a, u_b are step functions in
  // time with values q_a^m, q_b^m times the datum.
  SweepPlan plan;
  plan.datum = {DatumSpec::Kind::shear};
  plan.levels = {{2, 3, 0.5}, {3, 4, 0.4}};
  const auto rep = run_sweep(plan);
  REQUIRE(rep.cauchy.size() == 1);
  const double e0 = kTorusVolume / 2;
  const double T = plan.T;
  auto q = [&](const Level& l) { return oracle::linear_decay_factor(1.0, l.alpha, T / l.M); };
  const double qa = q(plan.levels[0]), qb = q(plan.levels[1]);
  // integrate the piecewise-constant difference on the merged net
  std::vector<double> net;
  for (int m = 0; m <= 3; ++m) net.push_back(m * T / 3);
  for (int m = 0; m <= 4; ++m) net.push_back(m * T / 4);
  std::sort(net.begin(), net.end());
  net.erase(std::unique(net.begin(), net.end(), [](double x, double y) { return std::abs(x - y) < 1e-15; }), net.end());
  double s = 0.0;
  for (std::size_t i = 1; i < net.size(); ++i) {
    const double mid = 0.5 * (net[i - 1] + net[i]);
    const int ma = std::min(3, int(mid / (T / 3)) + 1), mb = std::min(4, int(mid / (T / 4)) + 1);
    const double d = std::pow(qa, ma) - std::pow(qb, mb);
    s += (net[i] - net[i - 1]) * d * d * e0;
  }
  CHECK_THAT(rep.cauchy[0].u, WithinRel(std::sqrt(s), 1e-12));
  CHECK(rep.cauchy[0].v > 0.0);
}

TEST_CASE("zero datum sweep is all zero") {
  SweepPlan plan;
  plan.datum = {DatumSpec::Kind::random_hs, 4.0, 1, 0.0};
  plan.levels = {{3, 3, 0.5}};
  plan.phis = {TestFunction::standard(plan.T)};
  const auto rep = run_sweep(plan);
  const auto& r = rep.levels.at(0).report;
  CHECK(r.energy.rhs == 0.0);
  CHECK(r.lei.at(0).residual == 0.0);
  CHECK(r.u_minus_v == 0.0);
}

TEST_CASE("sweeps are deterministic and honour the u - v bound") {
  SweepPlan plan;
  plan.datum = {DatumSpec::Kind::random_hs, 4.0, 5, 1.0};
  plan.levels = default_schedule({3, 4});
  plan.phis = {TestFunction::standard(plan.T)};
  const auto a = run_sweep(plan);
  const auto b = run_sweep(plan);
  CHECK(a.summary_table() == b.summary_table());
  CHECK(to_json(a).dump() == to_json(b).dump());
  for (const auto& l : a.levels) {
    CHECK(l.report.u_minus_v_bound.pass());
    CHECK(l.report.energy.max_residual.pass());
  }
}

TEST_CASE("sweep files and trajectory snapshots") {
  const auto dir = std::filesystem::temp_directory_path() / "nsv_harness_test";
  std::filesystem::remove_all(dir);
  SweepPlan plan;
  plan.levels = {{3, 3, 0.5}, {4, 4, 0.4}};
  plan.phis = {TestFunction::standard(plan.T)};
  const auto rep = run_sweep(plan);
  write_sweep_files(dir, rep);
  CHECK(std::filesystem::exists(dir / "sweep.json"));
  CHECK(std::filesystem::exists(dir / "summary.txt"));
  CHECK(std::filesystem::exists(dir / "level_n3.csv"));
  CHECK(std::filesystem::exists(dir / "level_n4.csv"));

  const auto path = (dir / "traj.nsv").string();
  const auto& traj = rep.levels[1].trajectory;
  write_trajectory(path, traj);
  const auto back = read_trajectory(path);
  REQUIRE(back.states.size() == traj.states.size());
  for (std::size_t m = 0; m < back.states.size(); ++m) CHECK(back.states[m] == traj.states[m]);
  CHECK(back.params.alpha == traj.params.alpha);
  const auto r1 = lei_residual(traj, plan.phis[0]);
  const auto r2 = lei_residual(back, plan.phis[0]);
  CHECK(r1.residual == r2.residual);

  // a trajectory file missing its last record is refused
  {
    std::ofstream os(path, std::ios::binary);
    for (std::size_t m = 0; m + 1 < traj.states.size(); ++m) write_snapshot(os, traj.states[m], traj.params.M, traj.params.T, traj.params.alpha);
  }
  CHECK_THROWS_AS(read_trajectory(path), FormatError);
  std::filesystem::remove_all(dir);
}

TEST_CASE("NSV_THREADS caps the worker count") {
  setenv("NSV_THREADS", "1", 1);
  CHECK(thread_budget() == 1);
  setenv("NSV_THREADS", "3", 1);
  CHECK(thread_budget() == 3);
  setenv("NSV_THREADS", "zero", 1);
  CHECK(thread_budget() >= 1);
  unsetenv("NSV_THREADS");
  std::vector<int> hits(50, 0);
  parallel_for(hits.size(), [&](std::size_t i) { hits[i] += 1; });
  for (int h : hits) CHECK(h == 1);
  CHECK_THROWS_AS(parallel_for(4, [](std::size_t i) { if (i == 2) throw std::runtime_error("x"); }), std::runtime_error);
}
