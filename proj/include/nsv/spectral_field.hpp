#pragma once

// Truncated Fourier representation of real, zero-mean fields on T^3.
//
// A field of radius R stores one coefficient block per canonical wave vector
// with 0 < |k| <= R; the coefficient at -k is the complex conjugate and is
// never stored, so every field is real-valued by construction.  Coefficients
// are physical amplitudes: g(x) = sum_k g_k exp(i k.x).

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <memory>
#include <numbers>
#include <span>
#include <stdexcept>
#include <vector>

#include "nsv/error.hpp"
#include "nsv/lattice.hpp"

namespace nsv {

using Complex = std::complex<double>;

/// (2 pi)^3, the torus volume and Parseval factor.
inline constexpr double kTorusVolume = 8.0 * std::numbers::pi * std::numbers::pi * std::numbers::pi;

template <std::size_t C>
class SpectralField {
 public:
  static constexpr std::size_t components = C;
  using value_type = std::array<Complex, C>;

  SpectralField() : SpectralField(0) {}
  explicit SpectralField(int radius) : modes_(ModeSet::of(radius)), coeffs_(modes_->size()) {}

  int radius() const { return modes_->radius(); }
  TruncationBall ball() const { return {radius()}; }
  const ModeSet& modes() const { return *modes_; }
  std::size_t size() const { return coeffs_.size(); }
  const WaveVector& mode(std::size_t i) const { return (*modes_)[i]; }

  std::span<const value_type> coefficients() const { return coeffs_; }
  std::span<value_type> coefficients() { return coeffs_; }
  value_type& operator[](std::size_t i) { return coeffs_[i]; }
  const value_type& operator[](std::size_t i) const { return coeffs_[i]; }

  /// Coefficient at an arbitrary wave vector; zero outside the stored ball.
  value_type at(const WaveVector& k) const {
    value_type out{};
    const auto loc = modes_->locate(k);
    if (!loc) return out;
    const auto& c = coeffs_[loc->index];
    for (std::size_t i = 0; i < C; ++i) out[i] = loc->conjugate ? std::conj(c[i]) : c[i];
    return out;
  }

  /// Sets the coefficient at k (and implicitly its conjugate at -k).
  void set(const WaveVector& k, const value_type& v) {
    const auto loc = modes_->locate(k);
    if (!loc) throw std::out_of_range("wave vector outside the field's ball");
    auto& c = coeffs_[loc->index];
    for (std::size_t i = 0; i < C; ++i) c[i] = loc->conjugate ? std::conj(v[i]) : v[i];
  }

  /// Same field in a ball of another radius: zero-extension when growing,
  /// mode cutoff when shrinking.
  SpectralField resized(int new_radius) const {
    SpectralField out(new_radius);
    if (new_radius == radius()) return *this;
    for (std::size_t i = 0; i < out.size(); ++i) {
      if (auto loc = modes_->locate(out.mode(i))) out.coeffs_[i] = coeffs_[loc->index];
    }
    return out;
  }

  /// Applies f(k, coefficient) -> coefficient to every stored mode.
  template <class F>
  SpectralField map(F&& f) const {
    SpectralField out(radius());
    for (std::size_t i = 0; i < size(); ++i) out.coeffs_[i] = f(mode(i), coeffs_[i]);
    return out;
  }

  SpectralField& operator+=(const SpectralField& o) {
    require_same_ball(o);
    for (std::size_t i = 0; i < size(); ++i)
      for (std::size_t c = 0; c < C; ++c) coeffs_[i][c] += o.coeffs_[i][c];
    return *this;
  }
  SpectralField& operator-=(const SpectralField& o) {
    require_same_ball(o);
    for (std::size_t i = 0; i < size(); ++i)
      for (std::size_t c = 0; c < C; ++c) coeffs_[i][c] -= o.coeffs_[i][c];
    return *this;
  }
  SpectralField& operator*=(double s) {
    for (auto& v : coeffs_)
      for (auto& x : v) x *= s;
    return *this;
  }
  friend SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
  friend SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
  friend SpectralField operator*(double s, SpectralField a) { return a *= s; }
  friend SpectralField operator*(SpectralField a, double s) { return a *= s; }

  friend bool operator==(const SpectralField& a, const SpectralField& b) {
    return a.radius() == b.radius() && a.coeffs_ == b.coeffs_;
  }

 private:
  void require_same_ball(const SpectralField& o) const {
    if (o.radius() != radius()) throw std::invalid_argument("fields live in different balls");
  }

  std::shared_ptr<const ModeSet> modes_;
  std::vector<value_type> coeffs_;
};

using SpectralVector = SpectralField<3>;
using SpectralScalar = SpectralField<1>;

template <std::size_t C>
double magnitude_sq(const std::array<Complex, C>& v) {
  double s = 0.0;
  for (const auto& x : v) s += std::norm(x);
  return s;
}

template <std::size_t C>
double magnitude(const std::array<Complex, C>& v) {
  return std::sqrt(magnitude_sq(v));
}

inline Complex dot(const std::array<Complex, 3>& v, const WaveVector& k) {
  return v[0] * double(k.x) + v[1] * double(k.y) + v[2] * double(k.z);
}

/// Largest |k . u_k| / |k| over the stored modes.
inline double divergence_defect(const SpectralVector& g) {
  double worst = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    worst = std::max(worst, std::abs(dot(g[i], g.mode(i))) / g.mode(i).norm());
  }
  return worst;
}

template <std::size_t C>
double max_coefficient(const SpectralField<C>& g) {
  double worst = 0.0;
  for (const auto& v : g.coefficients()) worst = std::max(worst, magnitude(v));
  return worst;
}

/// Per-mode divergence tolerance, relative to the largest coefficient.
inline constexpr double kDivergenceTolerance = 1e-12;

/// A divergence-free element of V_n: real, zero mean, supported in 0 < |k| <= n.
class SpectralVelocity {
 public:
  SpectralVelocity() = default;
  explicit SpectralVelocity(int n) : field_(n) {}

  /// Validates k . u_k = 0 to kDivergenceTolerance (relative); throws NotSolenoidal.
  static SpectralVelocity from_solenoidal(SpectralVector field,
                                          double tol = kDivergenceTolerance) {
    const double defect = divergence_defect(field);
    if (defect > tol * std::max(max_coefficient(field), 1e-300)) throw NotSolenoidal(defect);
    return SpectralVelocity(std::move(field), Trusted{});
  }

  /// Wraps coefficients known to be solenoidal by construction (e.g. the
  /// output of a Leray projection) without re-checking.
  static SpectralVelocity assume_solenoidal(SpectralVector field) {
    return SpectralVelocity(std::move(field), Trusted{});
  }

  TruncationBall ball() const { return field_.ball(); }
  int n() const { return field_.radius(); }
  const SpectralVector& field() const { return field_; }
  operator const SpectralVector&() const { return field_; }
  std::size_t size() const { return field_.size(); }
  const SpectralVector::value_type& operator[](std::size_t i) const { return field_[i]; }
  const WaveVector& mode(std::size_t i) const { return field_.mode(i); }
  SpectralVector::value_type at(const WaveVector& k) const { return field_.at(k); }

  /// Zero-extension into a larger ball, or mode cutoff into a smaller one
  /// (both preserve the divergence-free property).
  SpectralVelocity resized(int n) const { return SpectralVelocity(field_.resized(n), Trusted{}); }

  /// Multiplies each mode by a real weight w(k); solenoidality is preserved.
  template <class W>
  SpectralVelocity scaled(W&& weight) const {
    return SpectralVelocity(field_.map([&](const WaveVector& k, const auto& v) {
      const double w = weight(k);
      return SpectralVector::value_type{v[0] * w, v[1] * w, v[2] * w};
    }),
                            Trusted{});
  }

  friend SpectralVelocity operator+(const SpectralVelocity& a, const SpectralVelocity& b) {
    return SpectralVelocity(a.field_ + b.field_, Trusted{});
  }
  friend SpectralVelocity operator-(const SpectralVelocity& a, const SpectralVelocity& b) {
    return SpectralVelocity(a.field_ - b.field_, Trusted{});
  }
  friend SpectralVelocity operator*(double s, const SpectralVelocity& a) {
    return SpectralVelocity(s * a.field_, Trusted{});
  }
  friend bool operator==(const SpectralVelocity& a, const SpectralVelocity& b) {
    return a.field_ == b.field_;
  }

 private:
  struct Trusted {};
  SpectralVelocity(SpectralVector f, Trusted) : field_(std::move(f)) {}

  SpectralVector field_;
};

// ---------------------------------------------------------------------------
// Parseval-weighted quadratic forms.  All sums run over the full lattice,
// i.e. twice the canonical half.

/// (2pi)^3 * sum_k w(|k|^2) |g_k|^2.
template <std::size_t C, class W>
double weighted_energy(const SpectralField<C>& g, W&& weight) {
  double s = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    s += weight(static_cast<double>(g.mode(i).norm_sq())) * magnitude_sq(g[i]);
  }
  return 2.0 * kTorusVolume * s;
}

template <std::size_t C>
double l2_norm_sq(const SpectralField<C>& g) {
  return weighted_energy(g, [](double) { return 1.0; });
}
template <std::size_t C>
double h1_seminorm_sq(const SpectralField<C>& g) {
  return weighted_energy(g, [](double k2) { return k2; });
}
template <std::size_t C>
double h2_seminorm_sq(const SpectralField<C>& g) {
  return weighted_energy(g, [](double k2) { return k2 * k2; });
}

/// L^2 pairing (g, h) = int g . h dx of two real fields.
template <std::size_t C>
double inner(const SpectralField<C>& g, const SpectralField<C>& h) {
  const int r = std::min(g.radius(), h.radius());
  double s = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const auto& k = g.mode(i);
    if (k.norm_sq() > std::int64_t{r} * r) continue;
    const auto hk = h.at(k);
    for (std::size_t c = 0; c < C; ++c) s += (g[i][c] * std::conj(hk[c])).real();
  }
  return 2.0 * kTorusVolume * s;
}

struct Norms {
  double l2 = 0.0;
  double h1_seminorm = 0.0;
  double h2_seminorm = 0.0;
  /// sum_k |u_k|, an upper bound for sup_x |u(x)|.
  double linf_bound = 0.0;
};

template <std::size_t C>
Norms norms(const SpectralField<C>& g) {
  double l1 = 0.0;
  for (const auto& v : g.coefficients()) l1 += magnitude(v);
  return {std::sqrt(l2_norm_sq(g)), std::sqrt(h1_seminorm_sq(g)), std::sqrt(h2_seminorm_sq(g)),
          2.0 * l1};
}

inline double l2_norm_sq(const SpectralVelocity& u) { return l2_norm_sq(u.field()); }
inline double h1_seminorm_sq(const SpectralVelocity& u) { return h1_seminorm_sq(u.field()); }
inline double h2_seminorm_sq(const SpectralVelocity& u) { return h2_seminorm_sq(u.field()); }
inline double inner(const SpectralVelocity& u, const SpectralVelocity& v) {
  return inner(u.field(), v.field());
}
inline Norms norms(const SpectralVelocity& u) { return norms(u.field()); }

/// Canonical-half l^2 norm of the raw coefficients (no Parseval factor).
template <std::size_t C>
double coefficient_l2(const SpectralField<C>& g) {
  double s = 0.0;
  for (const auto& v : g.coefficients()) s += magnitude_sq(v);
  return std::sqrt(s);
}

}  // namespace nsv
