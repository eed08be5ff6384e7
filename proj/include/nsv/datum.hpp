#pragma once

// Initial data generators.

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

#include "nsv/projection.hpp"

namespace nsv {

struct DatumSpec {
  enum class Kind { taylor_green, shear, random_hs };

  Kind kind = Kind::taylor_green;
  double decay = 4.0;  // s in |u_k| ~ |k|^{-s}, random_hs only
  std::uint64_t seed = 1;
  double amplitude = 1.0;
};

inline std::string to_string(DatumSpec::Kind kind) {
  switch (kind) {
    case DatumSpec::Kind::taylor_green: return "taylor_green";
    case DatumSpec::Kind::shear: return "shear";
    case DatumSpec::Kind::random_hs: return "random_hs";
  }
  return "?";
}

inline DatumSpec::Kind parse_datum_kind(const std::string& s) {
  if (s == "taylor_green") return DatumSpec::Kind::taylor_green;
  if (s == "shear") return DatumSpec::Kind::shear;
  if (s == "random_hs") return DatumSpec::Kind::random_hs;
  throw std::invalid_argument("unknown datum kind '" + s + "'");
}

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Seed for one wave vector, so a mode's draw does not depend on the ball.
inline std::uint64_t mode_seed(std::uint64_t seed, const WaveVector& k) {
  std::uint64_t h = splitmix64(seed);
  for (int axis = 0; axis < 3; ++axis) h = splitmix64(h ^ static_cast<std::uint64_t>(k[axis] + 0x10000));
  return h;
}

}  // namespace detail

/// Datum in V_n.  random_hs draws complex Gaussian amplitudes per canonical
/// mode, scales them by |k|^{-s} and Leray-projects; the draw for a given k
/// depends only on (seed, k), so larger balls extend smaller ones.
inline SpectralVelocity generate_datum(const DatumSpec& spec, TruncationBall n) {
  SpectralVector g(n.n);
  const double a = spec.amplitude;
  const Complex i(0.0, 1.0);
  switch (spec.kind) {
    case DatumSpec::Kind::shear:
      // (sin x2, 0, 0)
      if (n.n >= 1) g.set({0, 1, 0}, {-0.5 * i * a, 0.0, 0.0});
      break;
    case DatumSpec::Kind::taylor_green:
      // (cos x1 sin x2, -sin x1 cos x2, 0): modes (s1, s2, 0), s = +-1,
      // u_k = (-i s2 / 4, i s1 / 4, 0).
      if (n.n >= 2) {
        g.set({1, 1, 0}, {-0.25 * i * a, 0.25 * i * a, 0.0});
        g.set({-1, 1, 0}, {-0.25 * i * a, -0.25 * i * a, 0.0});
      }
      break;
    case DatumSpec::Kind::random_hs:
      if (spec.decay < 0.0) throw std::invalid_argument("decay exponent must be nonnegative");
      for (std::size_t m = 0; m < g.size(); ++m) {
        const auto& k = g.mode(m);
        std::mt19937_64 rng(detail::mode_seed(spec.seed, k));
        std::normal_distribution<double> normal;
        const double scale = a * std::pow(k.norm(), -spec.decay);
        for (int c = 0; c < 3; ++c) {
          const double re = normal(rng);
          const double im = normal(rng);
          g[m][c] = scale * Complex(re, im);
        }
      }
      return leray_project(g);
  }
  return SpectralVelocity::from_solenoidal(std::move(g));
}

}  // namespace nsv
