#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <ostream>

namespace spacebound {

using Coord = std::int64_t;

/// Closed axis-aligned integer box. Two-dimensional boxes keep the z axis
/// pinned to [0, 0], so every box carries three axes and 2D and 3D share
/// the same kernels.
struct Box {
  std::array<Coord, 3> lo{};
  std::array<Coord, 3> hi{};

  static constexpr Box make2(Coord x1, Coord y1, Coord x2, Coord y2) {
    return Box{{x1, y1, 0}, {x2, y2, 0}};
  }
  static constexpr Box make3(Coord x1, Coord y1, Coord z1, Coord x2, Coord y2, Coord z2) {
    return Box{{x1, y1, z1}, {x2, y2, z2}};
  }
  static constexpr Box point(Coord x, Coord y, Coord z = 0) { return Box{{x, y, z}, {x, y, z}}; }

  constexpr bool ordered() const {
    return lo[0] <= hi[0] && lo[1] <= hi[1] && lo[2] <= hi[2];
  }

  constexpr bool contains(const std::array<Coord, 3>& p) const {
    for (int k = 0; k < 3; ++k) {
      if (p[k] < lo[k] || p[k] > hi[k]) return false;
    }
    return true;
  }

  constexpr bool contains(const Box& other) const {
    for (int k = 0; k < 3; ++k) {
      if (other.lo[k] < lo[k] || other.hi[k] > hi[k]) return false;
    }
    return true;
  }

  constexpr bool overlaps(const Box& other) const {
    for (int k = 0; k < 3; ++k) {
      if (other.lo[k] > hi[k] || lo[k] > other.hi[k]) return false;
    }
    return true;
  }

  auto operator<=>(const Box&) const = default;
};

using LatticePoint = std::array<Coord, 3>;

inline std::ostream& operator<<(std::ostream& os, const Box& b) {
  return os << "box(" << b.lo[0] << ',' << b.lo[1] << ',' << b.lo[2] << " .. " << b.hi[0] << ','
            << b.hi[1] << ',' << b.hi[2] << ')';
}

}  // namespace spacebound
