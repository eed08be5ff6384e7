#pragma once

// Pressure recovery from -Delta p = div div (u (x) u), and grid quadrature
// of the fractional Lebesgue norms used by the pressure estimates.

#include <cmath>

#include "nsv/nonlinearity.hpp"

namespace nsv {

/// Zero-mean pressure on |k| <= 2n:  p_k = -sum_ij k_i k_j (u_i u_j)_k / |k|^2.
inline SpectralScalar solve_pressure(const SpectralVelocity& u, std::size_t grid = 0) {
  const std::size_t n = detail::pick_grid(grid, full_product_grid(u.n()));
  const int radius = 2 * u.n();
  const auto samples = to_grid(u.field(), n);

  // Symmetric products u_i u_j, i <= j.
  constexpr std::array<std::array<int, 2>, 6> pairs{{{0, 0}, {1, 1}, {2, 2}, {0, 1}, {0, 2}, {1, 2}}};
  std::array<SpectralScalar, 6> products;
  for (std::size_t q = 0; q < pairs.size(); ++q) {
    RealGrid prod(n);
    const auto& a = samples[pairs[q][0]];
    const auto& b = samples[pairs[q][1]];
    for (std::size_t p = 0; p < prod.size(); ++p) prod[p] = a[p] * b[p];
    products[q] = from_grid_scalar(prod, radius);
  }

  SpectralScalar p(radius);
  for (std::size_t m = 0; m < p.size(); ++m) {
    const auto& k = p.mode(m);
    Complex s = 0.0;
    for (std::size_t q = 0; q < pairs.size(); ++q) {
      const double w = double(k[pairs[q][0]]) * double(k[pairs[q][1]]) * (pairs[q][0] == pairs[q][1] ? 1.0 : 2.0);
      s += w * products[q][m][0];
    }
    p[m][0] = -s / static_cast<double>(k.norm_sq());
  }
  return p;
}

/// Relative change tolerated when the quadrature grid is doubled.  Powers of
/// a smooth vector magnitude settle fast; |p|^{5/3} has a non-smooth zero set
/// and converges only algebraically (rate ~ h^{8/3}).
inline constexpr double kVelocityLpTolerance = 1e-6;
inline constexpr double kPressureLpTolerance = 1e-3;

/// Largest grid side the L^p self-check refines to.
inline constexpr std::size_t kMaxLpGrid = 256;

struct LpNorm {
  double value = 0.0;    // ||f||_p from the fine grid
  double coarse = 0.0;   // ||f||_p from the base grid
  std::size_t grid = 0;  // fine grid size
};

namespace detail {

template <std::size_t C>
double lp_integral(const SpectralField<C>& f, double p, std::size_t n) {
  const auto g = to_grid(f, n);
  double s = 0.0;
  for (std::size_t i = 0; i < g[0].size(); ++i) {
    double m2 = 0.0;
    for (std::size_t c = 0; c < C; ++c) m2 += g[c][i] * g[c][i];
    s += std::pow(m2, 0.5 * p);
  }
  return s * kTorusVolume / static_cast<double>(g[0].size());
}

}  // namespace detail

/// ||f||_p by the rectangle rule, starting from N0 = 4R + 2 points per side
/// and doubling until two successive grids agree to rel_tol.  Fields whose
/// zero set is a surface (a single shear mode, say) need several doublings;
/// generic 3D fields vanish only at points and settle after one or two.
/// Throws QuadratureUnresolved once the grid would exceed max_grid.
template <std::size_t C>
LpNorm lp_norm(const SpectralField<C>& f, double p, double rel_tol, std::size_t base_grid = 0,
               std::size_t max_grid = kMaxLpGrid) {
  std::size_t n = base_grid ? base_grid : 4 * static_cast<std::size_t>(f.radius()) + 2;
  LpNorm out;
  out.coarse = std::pow(detail::lp_integral(f, p, n), 1.0 / p);
  for (;;) {
    out.grid = 2 * n;
    out.value = std::pow(detail::lp_integral(f, p, out.grid), 1.0 / p);
    if (std::abs(out.value - out.coarse) <= rel_tol * std::abs(out.value)) return out;
    if (2 * out.grid > max_grid) throw QuadratureUnresolved(out.coarse, out.value, rel_tol);
    out.coarse = out.value;
    n = out.grid;
  }
}

}  // namespace nsv
