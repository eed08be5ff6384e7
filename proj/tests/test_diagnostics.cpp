#include <catch_amalgamated.hpp>

#include "nsv/nsv.hpp"

using namespace nsv;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

DiscreteTrajectory random_run() {
  SchemeParams p;  // n = 4, M = 8, T = 0.5, alpha = 0.5
  return run(generate_datum({DatumSpec::Kind::random_hs, 4.0, 7, 1.0}, {4}), p);
}

DiscreteTrajectory shear_run(int M = 10) {
  SchemeParams p;
  p.n = 2;
  p.M = M;
  p.alpha = 0.3;
  return run(generate_datum({DatumSpec::Kind::shear}, {2}), p);
}

}  // namespace

TEST_CASE("Gauss rules integrate polynomials exactly") {
  for (int q : {2, 3, 6, 12, 24}) {
    const auto& rule = gauss_legendre(q);
    CHECK(rule.nodes.size() == static_cast<std::size_t>(q));
    const int deg = 2 * q - 1;
    const double got = rule.integrate(0.5, 2.0, [&](double t) { return std::pow(t, deg); });
    const double expect = (std::pow(2.0, deg + 1) - std::pow(0.5, deg + 1)) / (deg + 1);
    CHECK_THAT(got, WithinRel(expect, 1e-14));
  }
  CHECK_THROWS(gauss_legendre(13));
}

TEST_CASE("interpolants") {
  const auto traj = shear_run(4);
  const Interpolants in(traj);
  const double k = traj.kappa();
  CHECK(in.interval(0.0) == 1);
  CHECK(in.interval(0.999 * k) == 1);
  CHECK(in.interval(k) == 2);
  CHECK(in.interval(traj.params.T) == 4);
  CHECK(in.u(1.5 * k) == traj.states[2]);
  const auto mid = in.v(1.5 * k);
  CHECK(oracle::relative_deviation(mid.field(), (0.5 * (traj.states[1] + traj.states[2])).field()) <= 1e-15);
  CHECK(in.v(traj.params.T) == traj.states.back());
  CHECK(oracle::relative_deviation(in.dv_dt(0.2 * k).field(), ((1.0 / k) * (traj.states[1] - traj.states[0])).field()) <=
        1e-15);
}

TEST_CASE("zero trajectory gives an all-zero ledger") {
  SchemeParams p;
  const auto traj = run(SpectralVelocity(4), p);
  const auto r = build_report(traj, {{TestFunction::standard(p.T)}, 6, true});
  CHECK(r.energy.rhs == 0.0);
  CHECK(r.energy.max_residual.value == 0.0);
  CHECK(r.weighted.tdw == 0.0);
  CHECK(r.pressure->pressure_sum == 0.0);
  CHECK(r.interpolants.lhs1 == 0.0);
  const auto& t = r.lei.at(0);
  for (double v : {t.lhs, t.I1, t.I2, t.I3, t.I4, t.I5, t.residual, t.i1_jump, t.i21_flux}) CHECK(v == 0.0);
}

TEST_CASE("energy ledger and interpolant identities on a random run") {
  const auto traj = random_run();
  const auto led = energy_ledger(traj);
  CHECK(led.max_residual.value <= 1e-10);
  CHECK(led.max_residual.tolerance == 100 * traj.params.picard_tol);
  CHECK(led.sup_l2_sq <= led.rhs);
  CHECK(led.sup_energy <= led.rhs * (1 + 1e-12));
  const auto id = interpolant_identities(traj);
  CHECK(id.rel1.pass());
  CHECK(id.rel2.pass());
}

TEST_CASE("closed forms on the shear trajectory") {
  const auto traj = shear_run();
  const double q = oracle::linear_decay_factor(1.0, traj.params.alpha, traj.kappa());
  const double e0 = l2_norm_sq(traj.states[0]);
  const double k = traj.kappa();
  double geo = 0.0;
  for (int m = 1; m <= traj.params.M; ++m) geo += std::pow(q, 2 * (m - 1));

  const auto id = interpolant_identities(traj);
  CHECK_THAT(id.rhs1, WithinRel(k / 3 * e0 * (1 - q) * (1 - q) * geo, 1e-12));
  CHECK_THAT(id.lhs1, WithinRel(id.rhs1, 1e-13));
  CHECK_THAT(id.lhs2, WithinRel(id.rhs1, 1e-13));  // |k| = 1

  const auto w = weighted_estimates(traj);
  const double a = traj.params.alpha;
  CHECK_THAT(w.tdw, WithinRel(std::pow(a, 3) * k * e0 * (1 - q) * (1 - q) / (k * k) * geo, 1e-12));

  // no nonlinearity, no pressure: only the linear terms survive
  const auto t = lei_residual(traj, TestFunction::standard(traj.params.T));
  CHECK(std::abs(t.I5) <= 1e-16 * t.lhs);
  CHECK(std::abs(t.residual) <= 1e-12 * t.lhs);
  CHECK(t.i1_full.pass());
  CHECK(t.i21_full.pass());
  // doubled Gauss order changes nothing beyond roundoff
  const auto t12 = lei_residual(traj, TestFunction::standard(traj.params.T), 12);
  CHECK_THAT(t12.residual, WithinAbs(t.residual, 1e-8));
}

TEST_CASE("LEI terms on a random run") {
  const auto traj = random_run();
  const auto phi = TestFunction::standard(traj.params.T);
  const auto t = lei_residual(traj, phi);
  // the balance is an identity of the scheme: it closes to solver accuracy
  CHECK(std::abs(t.residual) <= 1e-9 * t.lhs);
  // complete re-derivations hold; the jump and flux pieces are not small
  CHECK(t.i1_full.pass());
  CHECK(t.i21_full.pass());
  CHECK(std::abs(t.i1_jump) > 1e-3 * std::abs(t.I1));
  CHECK(std::abs(t.i21_flux) > 1e-3 * std::abs(t.i21));
  const auto t12 = lei_residual(traj, phi, 12);
  CHECK_THAT(t12.residual, WithinAbs(t.residual, 1e-8));
  CHECK_THAT(t12.lhs, WithinRel(t.lhs, 1e-12));
}

TEST_CASE("pressure ledger on a random run") {
  const auto traj = random_run();
  const auto led = pressure_ledger(traj);
  REQUIRE(led.steps.size() == 8);
  CHECK(led.gn.pass());
  for (const auto& s : led.steps) {
    CHECK(s.u_l103 <= s.gn_rhs * (1 + 1e-9));
    CHECK(s.p_l53 > 0.0);
  }
  double sum = 0.0;
  for (const auto& s : led.steps) sum += traj.kappa() * std::pow(s.p_l53, 5.0 / 3.0);
  CHECK_THAT(led.pressure_sum, WithinRel(sum, 1e-14));
}

TEST_CASE("test functions") {
  SECTION("parse and describe round trip") {
    const auto phi = TestFunction::parse("mean=1;cos=1,0,0:0.5;cos=0,1,1:0.25:0.3;window=0.1,0.4");
    const auto again = TestFunction::parse(phi.describe());
    CHECK(again.describe() == phi.describe());
    CHECK(phi.space.degree() == 2);
    CHECK_NOTHROW(phi.validate(0.5));
  }
  SECTION("negative psi is rejected") {
    const auto phi = TestFunction::parse("mean=1;cos=1,0,0:2.5;window=0.1,0.4");
    CHECK_THROWS_AS(phi.validate(0.5), PhiNotNonnegative);
    CHECK_THROWS_AS(lei_residual(shear_run(2), phi), PhiNotNonnegative);
  }
  SECTION("window must sit inside (0, T)") {
    const auto phi = TestFunction::parse("mean=1;window=0.1,0.6");
    CHECK_THROWS_AS(phi.validate(0.5), std::invalid_argument);
  }
  SECTION("malformed specs") {
    CHECK_THROWS_AS(TestFunction::parse("mean=1"), FormatError);
    CHECK_THROWS_AS(TestFunction::parse("mean=x;window=0.1,0.2"), FormatError);
    CHECK_THROWS_AS(TestFunction::parse("cos=1,0:1;window=0.1,0.2"), FormatError);
    CHECK_THROWS_AS(TestFunction::parse("foo=1;window=0.1,0.2"), FormatError);
  }
  SECTION("time window") {
    const TimeWindow w{0.1, 0.5};
    CHECK_THAT(w.value(0.3), WithinRel(1.0, 1e-14));
    CHECK(w.value(0.05) == 0.0);
    // derivative against a central difference
    const double h = 1e-6;
    CHECK_THAT(w.derivative(0.2), WithinRel((w.value(0.2 + h) - w.value(0.2 - h)) / (2 * h), 1e-8));
  }
}

TEST_CASE("report serialization") {
  const auto traj = random_run();
  auto r = build_report(traj, {{TestFunction::standard(0.5)}, 6, true});
  r.datum = DatumSpec{DatumSpec::Kind::random_hs, 4.0, 7, 1.0};
  const auto j = to_json(r);
  CHECK(j["schema"] == "nsv-report/1");
  CHECK(j["params"]["n"] == 4);
  CHECK(j["datum"]["kind"] == "random_hs");
  CHECK(j["steps"].size() == 8);
  CHECK(j["lei"].size() == 1);
  CHECK(j["energy"]["max_residual"]["pass"] == true);
  std::ostringstream csv;
  write_csv(csv, r);
  const std::string text = csv.str();
  CHECK(std::count(text.begin(), text.end(), '\n') == 9);
  CHECK(text.rfind("m,t,l2_sq", 0) == 0);
}
