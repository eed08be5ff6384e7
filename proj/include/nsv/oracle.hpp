#pragma once

// Brute-force reference computations.  Nothing here touches FFTW: products
// are direct sums over all mode pairs of the full lattice, point values are
// direct trigonometric sums.  Slow (O(n^6) and worse) and meant for small n.

#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "nsv/datum.hpp"
#include "nsv/spectral_field.hpp"

namespace nsv::oracle {

template <std::size_t C>
using FullLattice = std::map<WaveVector, std::array<Complex, C>>;

/// Both halves of a field, the conjugate half filled in explicitly.
template <std::size_t C>
FullLattice<C> expand(const SpectralField<C>& g) {
  FullLattice<C> out;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const auto& k = g.mode(i);
    out[k] = g[i];
    std::array<Complex, C> c;
    for (std::size_t j = 0; j < C; ++j) c[j] = std::conj(g[i][j]);
    out[-k] = c;
  }
  return out;
}

template <std::size_t C>
SpectralField<C> collapse(const FullLattice<C>& full, int radius) {
  SpectralField<C> g(radius);
  for (std::size_t i = 0; i < g.size(); ++i) {
    auto it = full.find(g.mode(i));
    if (it != full.end()) g[i] = it->second;
  }
  return g;
}

/// (u . grad) u by summing u_p . (i q) u_q over every pair p + q = k.
inline SpectralVector convective(const SpectralVector& u) {
  const auto full = expand(u);
  FullLattice<3> acc;
  for (const auto& [p, up] : full) {
    for (const auto& [q, uq] : full) {
      const WaveVector k = p + q;
      if (k.is_zero()) continue;
      const Complex a = Complex(0.0, 1.0) * (up[0] * double(q.x) + up[1] * double(q.y) + up[2] * double(q.z));
      auto& slot = acc[k];
      for (int c = 0; c < 3; ++c) slot[c] += a * uq[c];
    }
  }
  return collapse(acc, 2 * u.radius());
}

/// p_k = -sum_ij k_i k_j (u_i u_j)_k / |k|^2 with the products summed directly.
inline SpectralScalar pressure(const SpectralVector& u) {
  const auto full = expand(u);
  FullLattice<1> acc;
  for (const auto& [p, up] : full) {
    for (const auto& [q, uq] : full) {
      const WaveVector k = p + q;
      if (k.is_zero()) continue;
      Complex s = 0.0;
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) s += double(k[i]) * double(k[j]) * up[i] * uq[j];
      acc[k][0] += -s / double(k.norm_sq());
    }
  }
  return collapse(acc, 2 * u.radius());
}

/// Point value of component c at x.
template <std::size_t C>
double evaluate(const SpectralField<C>& g, std::size_t c, const std::array<double, 3>& x) {
  double s = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const auto& k = g.mode(i);
    const double phase = k.x * x[0] + k.y * x[1] + k.z * x[2];
    s += 2.0 * std::real(g[i][c] * std::polar(1.0, phase));
  }
  return s;
}

/// ||f||_p by the rectangle rule on an N^3 grid of direct point values.
template <std::size_t C>
double lp_norm(const SpectralField<C>& f, double p, std::size_t N) {
  const double h = 2.0 * std::numbers::pi / double(N);
  double s = 0.0;
  for (std::size_t a = 0; a < N; ++a)
    for (std::size_t b = 0; b < N; ++b)
      for (std::size_t c = 0; c < N; ++c) {
        const std::array<double, 3> x{a * h, b * h, c * h};
        double m2 = 0.0;
        for (std::size_t j = 0; j < C; ++j) {
          const double v = evaluate(f, j, x);
          m2 += v * v;
        }
        s += std::pow(m2, 0.5 * p);
      }
  return std::pow(s * h * h * h, 1.0 / p);
}

/// Taylor-Green pressure -(cos 2x1 + cos 2x2) / 4, scaled by amplitude^2.
inline SpectralScalar taylor_green_pressure(double amplitude = 1.0) {
  SpectralScalar p(2);
  const double v = -0.125 * amplitude * amplitude;
  p.set({2, 0, 0}, {v});
  p.set({0, 2, 0}, {v});
  return p;
}

/// Per-step factor of a single Stokes-Voigt mode |k|^2 = k2 under implicit Euler.
inline double linear_decay_factor(double k2, double alpha, double kappa) {
  const double b = 1.0 + alpha * alpha * k2;
  return b / (b + kappa * k2);
}

/// Random divergence-free field on the ball with unit-variance amplitudes
/// (no spectral decay), for stress-testing products.
inline SpectralVelocity random_field(int n, std::uint64_t seed, double decay = 0.0) {
  return generate_datum({DatumSpec::Kind::random_hs, decay, seed, 1.0}, {n});
}

/// Largest componentwise deviation, relative to the largest reference coefficient.
template <std::size_t C>
double relative_deviation(const SpectralField<C>& got, const SpectralField<C>& ref) {
  const int r = std::max(got.radius(), ref.radius());
  const auto a = got.resized(r);
  const auto b = ref.resized(r);
  double worst = 0.0, scale = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t c = 0; c < C; ++c) {
      worst = std::max(worst, std::abs(a[i][c] - b[i][c]));
      scale = std::max(scale, std::abs(b[i][c]));
    }
  if (worst == 0.0) return 0.0;
  return worst / (scale > 0.0 ? scale : 1.0);
}

}  // namespace nsv::oracle
