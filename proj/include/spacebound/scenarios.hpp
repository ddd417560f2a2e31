#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "spacebound/term.hpp"
#include "spacebound/time_order.hpp"
#include "spacebound/transforms.hpp"

namespace spacebound {

struct Scenario {
  Term term;
  TimeOrder order;
  std::optional<NodeGeometry> geometry;
};

/// The topological forklift invariant over pt1 -> pt2 -> pt3 -> pt4, with a
/// synthetic node geometry for n1..n7 attached.
Scenario gen_forklift_topological();

/// Synthetic demo layout of the forklift graph nodes n1..n7.
NodeGeometry forklift_demo_geometry();

/// Lifting arm over the chain t0..t201. `speed_milli` is the speed in
/// thousandths of a unit per step. Throws ParameterOutOfRange for negative
/// arguments.
Scenario gen_lifting_arm(std::int64_t speed_milli, std::int64_t stoppointup);

/// Robot of the given radius turning once around (cx, cy) in `steps` steps.
/// The body is the bounding box of its circle; the tool tip is a box of
/// half-width `tool_half`. Throws ParameterOutOfRange.
Scenario gen_rotating_robot(Coord cx, Coord cy, Coord radius, Coord arm_len, Coord tool_half, int steps);

struct Benchmark {
  std::vector<TimedSpace> spaces;
  TimeOrder order;
};

/// `components` random spaces over the chain t0..t{timepoints-1}, each in
/// its own horizontal band so they never meet. With `overlap_at`, the second
/// component also occupies a copy of the first one's box at that index.
/// Throws ParameterOutOfRange for non-positive sizes.
Benchmark gen_benchmark(int components, int timepoints, int boxes_per_entry, std::uint64_t seed,
                        std::optional<int> overlap_at = std::nullopt);

/// Two components of 15000 and 20000 lattice points per time index. With
/// `collision_at`, the second one is moved onto the first at that index.
Benchmark gen_point_benchmark(int timepoints = 100, std::optional<int> collision_at = std::nullopt);

}  // namespace spacebound
