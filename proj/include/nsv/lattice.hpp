#pragma once

// Integer wave vectors on the torus R^3 / 2pi Z^3 and the canonical
// half-lattice used to store real fields.

#include <array>
#include <cmath>
#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <vector>

namespace nsv {

struct WaveVector {
  int x = 0;
  int y = 0;
  int z = 0;

  constexpr int operator[](int axis) const { return axis == 0 ? x : (axis == 1 ? y : z); }
  constexpr std::int64_t norm_sq() const {
    return std::int64_t{x} * x + std::int64_t{y} * y + std::int64_t{z} * z;
  }
  double norm() const { return std::sqrt(static_cast<double>(norm_sq())); }
  constexpr bool is_zero() const { return x == 0 && y == 0 && z == 0; }
  constexpr WaveVector operator-() const { return {-x, -y, -z}; }
  constexpr WaveVector operator+(const WaveVector& o) const { return {x + o.x, y + o.y, z + o.z}; }
  constexpr WaveVector operator-(const WaveVector& o) const { return {x - o.x, y - o.y, z - o.z}; }
  constexpr auto operator<=>(const WaveVector&) const = default;

  /// Representative of {k, -k} that is stored: z > 0, or z == 0 and y > 0,
  /// or z == y == 0 and x > 0.
  constexpr bool is_canonical() const {
    if (z != 0) return z > 0;
    if (y != 0) return y > 0;
    return x > 0;
  }
};

/// Euclidean spectral cutoff: membership is 0 < |k| <= n.
struct TruncationBall {
  int n = 0;

  constexpr bool contains(const WaveVector& k) const {
    return !k.is_zero() && k.norm_sq() <= std::int64_t{n} * n;
  }
  constexpr auto operator<=>(const TruncationBall&) const = default;
};

/// Canonical half of the lattice ball 0 < |k| <= radius, in a fixed order
/// (z-major, then y, then x).  Instances are interned per radius.
class ModeSet {
 public:
  struct Location {
    std::size_t index;
    bool conjugate;  // true when k itself is not canonical and -k is stored
  };

  explicit ModeSet(int radius) : radius_(radius) {
    if (radius < 0) throw std::invalid_argument("ModeSet radius must be nonnegative");
    const int side = 2 * radius + 1;
    lookup_.assign(static_cast<std::size_t>(side) * side * side, -1);
    const TruncationBall ball{radius};
    for (int kz = 0; kz <= radius; ++kz) {
      for (int ky = -radius; ky <= radius; ++ky) {
        for (int kx = -radius; kx <= radius; ++kx) {
          const WaveVector k{kx, ky, kz};
          if (!ball.contains(k) || !k.is_canonical()) continue;
          lookup_[slot(k)] = static_cast<std::int32_t>(modes_.size());
          modes_.push_back(k);
        }
      }
    }
  }

  int radius() const { return radius_; }
  std::size_t size() const { return modes_.size(); }
  const std::vector<WaveVector>& modes() const { return modes_; }
  const WaveVector& operator[](std::size_t i) const { return modes_[i]; }

  /// Where the coefficient of k lives, if k lies in the ball.
  std::optional<Location> locate(const WaveVector& k) const {
    if (std::abs(k.x) > radius_ || std::abs(k.y) > radius_ || std::abs(k.z) > radius_) {
      return std::nullopt;
    }
    if (k.is_canonical()) {
      const auto idx = lookup_[slot(k)];
      if (idx < 0) return std::nullopt;
      return Location{static_cast<std::size_t>(idx), false};
    }
    const auto idx = lookup_[slot(-k)];
    if (idx < 0) return std::nullopt;
    return Location{static_cast<std::size_t>(idx), true};
  }

  /// Shared instance for a radius.
  static std::shared_ptr<const ModeSet> of(int radius) {
    static std::mutex mutex;
    static std::map<int, std::shared_ptr<const ModeSet>> cache;
    std::lock_guard lock(mutex);
    auto& entry = cache[radius];
    if (!entry) entry = std::make_shared<const ModeSet>(radius);
    return entry;
  }

 private:
  std::size_t slot(const WaveVector& k) const {
    const std::size_t side = 2 * static_cast<std::size_t>(radius_) + 1;
    return (static_cast<std::size_t>(k.z + radius_) * side + static_cast<std::size_t>(k.y + radius_)) *
               side +
           static_cast<std::size_t>(k.x + radius_);
  }

  int radius_;
  std::vector<WaveVector> modes_;
  std::vector<std::int32_t> lookup_;
};

}  // namespace nsv
