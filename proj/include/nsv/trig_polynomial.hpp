#pragma once

#include <algorithm>
#include <cmath>

#include "nsv/spectral_field.hpp"
#include "nsv/transform.hpp"

namespace nsv {

/// Real trigonometric polynomial psi(x) = mean + sum_k c_k exp(i k.x).
struct TrigPolynomial {
  double mean = 0.0;
  SpectralScalar fluctuation{0};

  static TrigPolynomial constant(double value) { return {value, SpectralScalar(0)}; }

  int degree() const { return fluctuation.radius(); }

  /// Adds amplitude * cos(k.x + phase), growing the support if needed.
  TrigPolynomial& add_cosine(const WaveVector& k, double amplitude, double phase = 0.0) {
    if (k.is_zero()) {
      mean += amplitude * std::cos(phase);
      return *this;
    }
    const int need = static_cast<int>(std::ceil(k.norm() - 1e-12));
    if (need > fluctuation.radius()) fluctuation = fluctuation.resized(need);
    const Complex c = 0.5 * amplitude * std::polar(1.0, phase);
    auto current = fluctuation.at(k);
    current[0] += c;
    fluctuation.set(k, current);
    return *this;
  }

  RealGrid sample(std::size_t n) const {
    RealGrid g = to_grid_scalar(fluctuation.resized(std::max(degree(), 0)), n);
    for (double& v : g.values) v += mean;
    return g;
  }

  SpectralVector gradient() const {
    SpectralVector out(degree());
    for (std::size_t i = 0; i < out.size(); ++i) {
      const auto& k = out.mode(i);
      const Complex ic = Complex(0.0, 1.0) * fluctuation[i][0];
      out[i] = {ic * double(k.x), ic * double(k.y), ic * double(k.z)};
    }
    return out;
  }

  SpectralScalar laplacian() const {
    return fluctuation.map([](const WaveVector& k, const auto& v) {
      return SpectralScalar::value_type{-static_cast<double>(k.norm_sq()) * v[0]};
    });
  }
};

}  // namespace nsv
