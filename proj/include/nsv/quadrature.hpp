#pragma once

#include <boost/math/quadrature/gauss.hpp>

#include <stdexcept>
#include <string>
#include <vector>

namespace nsv {

/// Gauss-Legendre rule on [-1, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;

  /// Integral of f over [lo, hi].
  template <class F>
  double integrate(double lo, double hi, F&& f) const {
    const double half = 0.5 * (hi - lo);
    const double mid = 0.5 * (hi + lo);
    double s = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) s += weights[i] * f(mid + half * nodes[i]);
    return s * half;
  }
};

namespace detail {

template <unsigned N>
GaussRule boost_gauss_rule() {
  using Rule = boost::math::quadrature::gauss<double, N>;
  GaussRule r;
  const auto& x = Rule::abscissa();
  const auto& w = Rule::weights();
  for (std::size_t i = 0; i < x.size(); ++i) {
    r.nodes.push_back(x[i]);
    r.weights.push_back(w[i]);
    if (x[i] != 0.0) {
      r.nodes.push_back(-x[i]);
      r.weights.push_back(w[i]);
    }
  }
  return r;
}

}  // namespace detail

/// Rules with 2..12 points plus 16 and 24 (exact for polynomial degree 2N - 1).
inline const GaussRule& gauss_legendre(int points) {
  static const GaussRule rules[] = {
      detail::boost_gauss_rule<2>(),  detail::boost_gauss_rule<3>(),  detail::boost_gauss_rule<4>(),
      detail::boost_gauss_rule<5>(),  detail::boost_gauss_rule<6>(),  detail::boost_gauss_rule<7>(),
      detail::boost_gauss_rule<8>(),  detail::boost_gauss_rule<9>(),  detail::boost_gauss_rule<10>(),
      detail::boost_gauss_rule<11>(), detail::boost_gauss_rule<12>(), detail::boost_gauss_rule<16>(),
      detail::boost_gauss_rule<24>()};
  if (points >= 2 && points <= 12) return rules[points - 2];
  if (points == 16) return rules[11];
  if (points == 24) return rules[12];
  throw std::invalid_argument("unsupported Gauss order " + std::to_string(points));
}

}  // namespace nsv
