#pragma once

// Binary snapshots, little-endian:
//   "NSV1"  u32 n  u32 M  f64 T  f64 alpha  u32 mode_count
//   mode_count x { i32 kx ky kz, f64 re(u1) im(u1) re(u2) im(u2) re(u3) im(u3) }
// One record per state.  A trajectory file is the M + 1 records u^0..u^M
// written back to back; the writer emits canonical modes only.

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "nsv/error.hpp"
#include "nsv/stepper.hpp"

namespace nsv {

struct SnapshotHeader {
  std::uint32_t n = 0;
  std::uint32_t M = 0;
  double T = 0.0;
  double alpha = 0.0;
  std::uint32_t mode_count = 0;
};

namespace detail {

template <class T>
void put_le(std::ostream& os, T value) {
  auto bytes = std::bit_cast<std::array<unsigned char, sizeof(T)>>(value);
  if constexpr (std::endian::native == std::endian::big) std::reverse(bytes.begin(), bytes.end());
  os.write(reinterpret_cast<const char*>(bytes.data()), sizeof(T));
}

template <class T>
T get_le(std::istream& is) {
  std::array<unsigned char, sizeof(T)> bytes;
  if (!is.read(reinterpret_cast<char*>(bytes.data()), sizeof(T))) throw FormatError("truncated snapshot");
  if constexpr (std::endian::native == std::endian::big) std::reverse(bytes.begin(), bytes.end());
  return std::bit_cast<T>(bytes);
}

}  // namespace detail

inline void write_snapshot(std::ostream& os, const SpectralVelocity& u, int M, double T, double alpha) {
  os.write("NSV1", 4);
  detail::put_le<std::uint32_t>(os, static_cast<std::uint32_t>(u.n()));
  detail::put_le<std::uint32_t>(os, static_cast<std::uint32_t>(M));
  detail::put_le<double>(os, T);
  detail::put_le<double>(os, alpha);
  detail::put_le<std::uint32_t>(os, static_cast<std::uint32_t>(u.size()));
  for (std::size_t i = 0; i < u.size(); ++i) {
    const auto& k = u.mode(i);
    detail::put_le<std::int32_t>(os, k.x);
    detail::put_le<std::int32_t>(os, k.y);
    detail::put_le<std::int32_t>(os, k.z);
    for (int c = 0; c < 3; ++c) {
      detail::put_le<double>(os, u[i][c].real());
      detail::put_le<double>(os, u[i][c].imag());
    }
  }
}

struct SnapshotRecord {
  SnapshotHeader header;
  SpectralVelocity state;
};

/// Reads one record; non-canonical modes are stored through their conjugate.
inline SnapshotRecord read_snapshot(std::istream& is) {
  char magic[4];
  if (!is.read(magic, 4) || std::memcmp(magic, "NSV1", 4) != 0) throw FormatError("bad snapshot magic");
  SnapshotRecord rec{{}, SpectralVelocity(0)};
  auto& h = rec.header;
  h.n = detail::get_le<std::uint32_t>(is);
  h.M = detail::get_le<std::uint32_t>(is);
  h.T = detail::get_le<double>(is);
  h.alpha = detail::get_le<double>(is);
  h.mode_count = detail::get_le<std::uint32_t>(is);
  if (h.n > 4096) throw FormatError("snapshot radius out of range");
  const int n = static_cast<int>(h.n);
  SpectralVector g(n);
  if (h.mode_count > 2 * g.size()) throw FormatError("snapshot mode count exceeds the ball");
  for (std::uint32_t i = 0; i < h.mode_count; ++i) {
    WaveVector k;
    k.x = detail::get_le<std::int32_t>(is);
    k.y = detail::get_le<std::int32_t>(is);
    k.z = detail::get_le<std::int32_t>(is);
    SpectralVector::value_type v;
    for (int c = 0; c < 3; ++c) {
      const double re = detail::get_le<double>(is);
      const double im = detail::get_le<double>(is);
      v[c] = Complex(re, im);
    }
    if (!TruncationBall{n}.contains(k)) throw FormatError("snapshot mode outside the ball");
    if (k.is_canonical()) {
      g.set(k, v);
    } else {
      g.set(-k, {std::conj(v[0]), std::conj(v[1]), std::conj(v[2])});
    }
  }
  rec.state = SpectralVelocity::from_solenoidal(std::move(g));
  return rec;
}

inline void write_trajectory(const std::string& path, const DiscreteTrajectory& traj) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw FormatError("cannot open " + path + " for writing");
  for (const auto& u : traj.states) write_snapshot(os, u, traj.params.M, traj.params.T, traj.params.alpha);
}

/// Reads u^0..u^M and recomputes the pressures.  Picard settings keep
/// their defaults; iteration counts are not stored.
inline DiscreteTrajectory read_trajectory(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw FormatError("cannot open " + path);
  DiscreteTrajectory traj;
  SnapshotHeader first;
  while (is.peek() != std::char_traits<char>::eof()) {
    auto rec = read_snapshot(is);
    if (traj.states.empty()) {
      first = rec.header;
    } else if (rec.header.n != first.n || rec.header.M != first.M || rec.header.T != first.T ||
               rec.header.alpha != first.alpha) {
      throw FormatError("snapshot records disagree on n, M, T or alpha");
    }
    traj.states.push_back(std::move(rec.state));
  }
  if (traj.states.empty()) throw FormatError("empty trajectory file " + path);
  if (traj.states.size() != first.M + 1u) {
    throw FormatError("trajectory holds " + std::to_string(traj.states.size()) + " records, expected M + 1 = " +
                      std::to_string(first.M + 1u));
  }
  traj.params.n = static_cast<int>(first.n);
  traj.params.M = static_cast<int>(first.M);
  traj.params.T = first.T;
  traj.params.alpha = first.alpha;
  traj.params.validate();
  traj.datum = record_datum(traj.states.front(), traj.params.n);
  attach_pressures(traj);
  return traj;
}

}  // namespace nsv
