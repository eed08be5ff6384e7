#pragma once

// Leray projector P, Galerkin projector P_n = P o cutoff_n, and the spectral
// remainder Q_n = P - P_n, all as exact coefficient operations.

#include "nsv/spectral_field.hpp"

namespace nsv {

/// g_k - (g_k . k) k / |k|^2 on every stored mode.
inline SpectralVelocity leray_project(const SpectralVector& g) {
  return SpectralVelocity::assume_solenoidal(g.map([](const WaveVector& k, const auto& v) {
    const Complex s = dot(v, k) / static_cast<double>(k.norm_sq());
    return SpectralVector::value_type{v[0] - s * double(k.x), v[1] - s * double(k.y),
                                      v[2] - s * double(k.z)};
  }));
}

/// Restriction to 0 < |k| <= n; the result lives in a ball of radius n.
template <std::size_t C>
SpectralField<C> mode_cutoff(const SpectralField<C>& g, TruncationBall n) {
  return g.resized(n.n);
}

/// P_n for vector fields: mode cutoff followed by Leray projection.
inline SpectralVelocity galerkin_truncate(const SpectralVector& g, TruncationBall n) {
  return leray_project(mode_cutoff(g, n));
}

/// P_n for scalar fields reduces to the mode cutoff.
inline SpectralScalar galerkin_truncate(const SpectralScalar& g, TruncationBall n) {
  return mode_cutoff(g, n);
}

/// Q_n g = P g - P_n g, kept in the ball of g (zero on 0 < |k| <= n).
inline SpectralVector qn_remainder(const SpectralVector& g, TruncationBall n) {
  const int r = std::max(g.radius(), n.n);
  return leray_project(g.resized(r)).field() - galerkin_truncate(g, n).field().resized(r);
}

inline SpectralScalar qn_remainder(const SpectralScalar& g, TruncationBall n) {
  const int r = std::max(g.radius(), n.n);
  return g.resized(r) - mode_cutoff(g, n).resized(r);
}

/// Gradient (curl-free) part g - P g.
inline SpectralVector gradient_part(const SpectralVector& g) {
  return g - leray_project(g).field();
}

}  // namespace nsv
