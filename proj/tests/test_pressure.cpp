#include <catch_amalgamated.hpp>

#include "nsv/nsv.hpp"

using namespace nsv;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("zero velocity, zero pressure") {
  CHECK(max_coefficient(solve_pressure(SpectralVelocity(3))) == 0.0);
}

TEST_CASE("Taylor-Green pressure") {
  const auto u = generate_datum({}, {4});
  const auto p = solve_pressure(u);
  CHECK(p.radius() == 8);
  CHECK(oracle::relative_deviation(p, oracle::taylor_green_pressure()) <= 1e-12);
  CHECK(oracle::relative_deviation(p, oracle::pressure(u.field())) <= 1e-12);
  CHECK_THAT(p.at({-2, 0, 0})[0].real(), WithinAbs(-0.125, 1e-15));
}

TEST_CASE("pressure matches the direct oracle on random fields") {
  for (std::uint64_t seed : {4u, 5u, 6u}) {
    const auto u = oracle::random_field(3, seed);
    CHECK(oracle::relative_deviation(solve_pressure(u), oracle::pressure(u.field())) <= 1e-12);
  }
}

TEST_CASE("gradient part of the convective term is minus grad p") {
  for (std::uint64_t seed : {1u, 2u}) {
    const auto u = oracle::random_field(4, seed, 1.0);
    const auto grad = gradient_part(convective(u));
    const auto p = solve_pressure(u);
    SpectralVector g(p.radius());
    for (std::size_t i = 0; i < g.size(); ++i) {
      const auto& k = g.mode(i);
      const Complex ik(0.0, 1.0);
      for (int c = 0; c < 3; ++c) g[i][c] = -ik * double(k[c]) * p[i][0];
    }
    CHECK(oracle::relative_deviation(grad, g) <= 1e-11);
  }
}

TEST_CASE("GridTooSmall below 4n + 2") {
  const auto u = oracle::random_field(2, 3);
  CHECK_THROWS_AS(solve_pressure(u, 9), GridTooSmall);
  CHECK(oracle::relative_deviation(solve_pressure(u, 16), solve_pressure(u)) <= 1e-13);
}

TEST_CASE("L^p norms") {
  SECTION("p = 2 reproduces Parseval") {
    const auto u = oracle::random_field(3, 9);
    const auto l2 = lp_norm(u.field(), 2.0, 1e-12);
    CHECK_THAT(l2.value * l2.value, WithinRel(l2_norm_sq(u), 1e-12));
  }
  SECTION("single mode, p = 10/3") {
    // |sin x2|^{10/3} averaged: Gamma-function closed form
    const auto u = generate_datum({DatumSpec::Kind::shear}, {2});
    const double p = 10.0 / 3.0;
    const double mean = std::tgamma(0.5 * (p + 1)) / (std::sqrt(std::numbers::pi) * std::tgamma(0.5 * p + 1));
    const double expect = std::pow(kTorusVolume * mean, 1.0 / p);
    CHECK_THAT(lp_norm(u.field(), p, kVelocityLpTolerance).value, WithinRel(expect, 1e-6));
  }
  SECTION("Taylor-Green pressure against direct evaluation") {
    const auto p = solve_pressure(generate_datum({}, {2}));
    const auto fast = lp_norm(p, 5.0 / 3.0, kPressureLpTolerance);
    const double slow = oracle::lp_norm(p, 5.0 / 3.0, fast.grid);
    CHECK_THAT(fast.value, WithinRel(slow, 1e-12));  // same rule, different evaluation path
  }
  SECTION("unresolved quadrature is reported") {
    const auto p = solve_pressure(generate_datum({}, {2}));
    CHECK_THROWS_AS(lp_norm(p, 5.0 / 3.0, 1e-8, 0, 64), QuadratureUnresolved);
  }
}
