#pragma once

// The convective term (u . grad) u of a Galerkin velocity, evaluated exactly
// (alias-free) by zero-padded transforms, and its split into the Galerkin
// part P_n, the remainder Q_n and the gradient part.

#include <algorithm>
#include <span>

#include "nsv/projection.hpp"
#include "nsv/transform.hpp"
#include "nsv/trig_polynomial.hpp"

namespace nsv {

/// Grid on which P_n((u.grad)u) is exact: products reach |k_i| <= 2n, so
/// aliases of the retained |k_i| <= n modes vanish once N > 3n.
inline std::size_t galerkin_product_grid(int n) { return 3 * static_cast<std::size_t>(n) + 2; }

/// Grid on which the whole quadratic product (support |k| <= 2n) is exact.
inline std::size_t full_product_grid(int n) { return 4 * static_cast<std::size_t>(n) + 2; }

namespace detail {

inline SpectralVector partial(const SpectralVector& u, int axis) {
  return u.map([axis](const WaveVector& k, const auto& v) {
    const Complex ik(0.0, static_cast<double>(k[axis]));
    return SpectralVector::value_type{ik * v[0], ik * v[1], ik * v[2]};
  });
}

/// Samples of u and of its nine first derivatives; du[j][i] = d u_i / d x_j.
struct VelocitySamples {
  GridField<3> u;
  std::array<GridField<3>, 3> du;
};

inline VelocitySamples sample_velocity(const SpectralVector& u, std::size_t n) {
  VelocitySamples s;
  s.u = to_grid(u, n);
  for (int j = 0; j < 3; ++j) s.du[j] = to_grid(partial(u, j), n);
  return s;
}

inline GridField<3> advect(const VelocitySamples& s) {
  const std::size_t n = s.u[0].n;
  GridField<3> out{RealGrid(n), RealGrid(n), RealGrid(n)};
  for (std::size_t p = 0; p < out[0].size(); ++p) {
    for (int i = 0; i < 3; ++i) {
      out[i][p] = s.u[0][p] * s.du[0][i][p] + s.u[1][p] * s.du[1][i][p] + s.u[2][p] * s.du[2][i][p];
    }
  }
  return out;
}

inline std::size_t pick_grid(std::size_t requested, std::size_t required) {
  if (requested == 0) return required;
  if (requested < required) throw GridTooSmall(requested, required);
  return requested;
}

}  // namespace detail

/// Fourier coefficients of (u . grad) u, supported on |k| <= 2n.
inline SpectralVector convective(const SpectralVelocity& u, std::size_t grid = 0) {
  const std::size_t n = detail::pick_grid(grid, full_product_grid(u.n()));
  return from_grid(detail::advect(detail::sample_velocity(u.field(), n)), 2 * u.n());
}

/// P_n((u . grad) u), computed on the smaller grid that is exact for |k| <= n.
inline SpectralVelocity galerkin_convective(const SpectralVelocity& u, std::size_t grid = 0) {
  const std::size_t n = detail::pick_grid(grid, galerkin_product_grid(u.n()));
  return leray_project(from_grid(detail::advect(detail::sample_velocity(u.field(), n)), u.n()));
}

struct NonlinearTerm {
  SpectralVector full;          // (u.grad)u on |k| <= 2n
  SpectralVelocity projected;   // P_n (u.grad)u
  SpectralVector remainder;     // Q_n (u.grad)u on |k| <= 2n

  SpectralVector gradient() const { return gradient_part(full); }
};

inline NonlinearTerm galerkin_nonlinearity(const SpectralVelocity& u, std::size_t grid = 0) {
  NonlinearTerm t;
  t.full = convective(u, grid);
  t.projected = galerkin_truncate(t.full, u.ball());
  t.remainder = qn_remainder(t.full, u.ball());
  return t;
}

/// Both sides of the tail estimate
///   ||Q_n(u phi)||_inf^2 <= c (n^2 sum_{|k|>=n/2} |u_k|^2 + (1/n) sum_k |u_k|^2).
struct TailBound {
  double lhs = 0.0;      // (sum_k |Q_n(u phi)_k|)^2, a certified bound on the sup norm squared
  double bracket = 0.0;  // the parenthesis on the right, without c

  double ratio() const { return bracket > 0.0 ? lhs / bracket : 0.0; }
  bool holds(double c) const { return lhs <= c * bracket; }
};

inline TailBound qn_tail_bound(const SpectralVelocity& u, const TrigPolynomial& phi) {
  const int n = u.n();
  const int r = n + phi.degree();
  const std::size_t grid = min_transform_grid(r);
  auto samples = to_grid(u.field(), grid);
  const RealGrid weight = phi.sample(grid);
  for (auto& comp : samples)
    for (std::size_t p = 0; p < comp.size(); ++p) comp[p] *= weight[p];
  const SpectralVector remainder = qn_remainder(from_grid(samples, r), u.ball());

  TailBound b;
  double l1 = 0.0;
  for (const auto& v : remainder.coefficients()) l1 += magnitude(v);
  b.lhs = (2.0 * l1) * (2.0 * l1);

  double tail = 0.0;
  double total = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double e = 2.0 * magnitude_sq(u[i]);
    total += e;
    if (4 * u.mode(i).norm_sq() >= std::int64_t{n} * n) tail += e;
  }
  if (n > 0) b.bracket = double(n) * n * tail + total / n;
  return b;
}

/// Empirical constant for the tail estimate: 1.1 times the largest observed ratio.
inline double calibrate_tail_constant(std::span<const TailBound> samples) {
  double worst = 0.0;
  for (const auto& s : samples) worst = std::max(worst, s.ratio());
  return 1.1 * worst;
}

}  // namespace nsv
