#pragma once

// Transform pair between truncated spectral fields and samples on the
// uniform N^3 grid x_j = 2 pi j / N (FFTW real-to-complex / complex-to-real).
//
// Samples are stored row-major with the x1 index slowest:
//   value(i0, i1, i2) = values[(i0 * N + i1) * N + i2].

#include <fftw3.h>

#include <array>
#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "nsv/error.hpp"
#include "nsv/spectral_field.hpp"

namespace nsv {

struct RealGrid {
  std::size_t n = 0;
  std::vector<double> values;

  RealGrid() = default;
  explicit RealGrid(std::size_t side, double fill = 0.0) : n(side), values(side * side * side, fill) {}

  std::size_t size() const { return values.size(); }
  double& operator[](std::size_t i) { return values[i]; }
  double operator[](std::size_t i) const { return values[i]; }
};

template <std::size_t C>
using GridField = std::array<RealGrid, C>;

/// Smallest grid that synthesises/analyses a radius-R field without loss.
inline std::size_t min_transform_grid(int radius) { return 2 * static_cast<std::size_t>(radius) + 2; }

/// int_{T^3} f dx by the rectangle rule (exact for trig polynomials of degree < N).
inline double integrate(const RealGrid& g) {
  double s = 0.0;
  for (double v : g.values) s += v;
  return s * kTorusVolume / static_cast<double>(g.size());
}

namespace detail {

struct FftwFree {
  void operator()(void* p) const { fftw_free(p); }
};
using ComplexBuffer = std::unique_ptr<fftw_complex[], FftwFree>;
using RealBuffer = std::unique_ptr<double[], FftwFree>;

inline std::size_t half_size(std::size_t n) { return n * n * (n / 2 + 1); }

inline ComplexBuffer complex_buffer(std::size_t n) {
  return ComplexBuffer(fftw_alloc_complex(half_size(n)));
}
inline RealBuffer real_buffer(std::size_t n) { return RealBuffer(fftw_alloc_real(n * n * n)); }

/// Plans are created once per (N, direction) under a lock; execution through
/// the new-array interface is thread-safe.
class PlanCache {
 public:
  static PlanCache& instance() {
    static PlanCache cache;
    return cache;
  }

  fftw_plan synthesis(std::size_t n) { return get(n, true); }
  fftw_plan analysis(std::size_t n) { return get(n, false); }

  PlanCache(const PlanCache&) = delete;
  PlanCache& operator=(const PlanCache&) = delete;
  ~PlanCache() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

 private:
  PlanCache() = default;

  fftw_plan get(std::size_t n, bool c2r) {
    std::lock_guard lock(mutex_);
    auto& plan = plans_[{n, c2r}];
    if (!plan) {
      auto spec = complex_buffer(n);
      auto real = real_buffer(n);
      const int side = static_cast<int>(n);
      plan = c2r ? fftw_plan_dft_c2r_3d(side, side, side, spec.get(), real.get(),
                                        FFTW_ESTIMATE | FFTW_DESTROY_INPUT)
                 : fftw_plan_dft_r2c_3d(side, side, side, real.get(), spec.get(), FFTW_ESTIMATE);
    }
    return plan;
  }

  std::mutex mutex_;
  std::map<std::pair<std::size_t, bool>, fftw_plan> plans_;
};

inline std::size_t wrap(int k, std::size_t n) {
  const long v = k % static_cast<long>(n);
  return static_cast<std::size_t>(v < 0 ? v + static_cast<long>(n) : v);
}

inline std::size_t spectral_slot(const WaveVector& k, std::size_t n) {
  // k.z >= 0 is guaranteed by the callers (canonical modes, or the z = 0 plane).
  return (wrap(k.x, n) * n + wrap(k.y, n)) * (n / 2 + 1) + static_cast<std::size_t>(k.z);
}

template <std::size_t C>
RealGrid synthesize_component(const SpectralField<C>& g, std::size_t component, std::size_t n) {
  auto spec = complex_buffer(n);
  std::fill_n(reinterpret_cast<double*>(spec.get()), 2 * half_size(n), 0.0);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const auto& k = g.mode(i);
    const Complex c = g[i][component];
    auto* slot = spec[spectral_slot(k, n)];
    slot[0] = c.real();
    slot[1] = c.imag();
    if (k.z == 0) {
      auto* mirror = spec[spectral_slot(-k, n)];
      mirror[0] = c.real();
      mirror[1] = -c.imag();
    }
  }
  auto real = real_buffer(n);
  fftw_execute_dft_c2r(PlanCache::instance().synthesis(n), spec.get(), real.get());
  RealGrid out(n);
  std::copy_n(real.get(), out.size(), out.values.begin());
  return out;
}

}  // namespace detail

/// Samples of a radius-R field on an N^3 grid; requires N >= 2R + 2.
template <std::size_t C>
GridField<C> to_grid(const SpectralField<C>& g, std::size_t n) {
  if (n < min_transform_grid(g.radius())) throw GridTooSmall(n, min_transform_grid(g.radius()));
  GridField<C> out;
  for (std::size_t c = 0; c < C; ++c) out[c] = detail::synthesize_component(g, c, n);
  return out;
}

inline RealGrid to_grid_scalar(const SpectralScalar& g, std::size_t n) { return to_grid(g, n)[0]; }

/// Fourier coefficients 0 < |k| <= radius of sampled real fields.  The mean
/// (k = 0) is discarded.  Requires N >= 2 radius + 2.
template <std::size_t C>
SpectralField<C> from_grid(const GridField<C>& samples, int radius) {
  const std::size_t n = samples[0].n;
  if (n < min_transform_grid(radius)) throw GridTooSmall(n, min_transform_grid(radius));
  SpectralField<C> out(radius);
  const double scale = 1.0 / static_cast<double>(n * n * n);
  auto real = detail::real_buffer(n);
  auto spec = detail::complex_buffer(n);
  for (std::size_t c = 0; c < C; ++c) {
    std::copy(samples[c].values.begin(), samples[c].values.end(), real.get());
    fftw_execute_dft_r2c(detail::PlanCache::instance().analysis(n), real.get(), spec.get());
    for (std::size_t i = 0; i < out.size(); ++i) {
      const auto* slot = spec[detail::spectral_slot(out.mode(i), n)];
      out[i][c] = Complex(slot[0], slot[1]) * scale;
    }
  }
  return out;
}

inline SpectralScalar from_grid_scalar(const RealGrid& samples, int radius) {
  return from_grid(GridField<1>{samples}, radius);
}

}  // namespace nsv
