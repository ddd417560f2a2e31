#include "spacebound/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "spacebound/error.hpp"

namespace spacebound {

NodeGeometry forklift_demo_geometry() {
  // Seven 40x40 cells on a 2x4 grid, 10 units apart.
  NodeGeometry g;
  for (int i = 1; i <= 7; ++i) {
    const Coord col = (i - 1) % 4;
    const Coord row = (i - 1) / 4;
    const Coord x = col * 50;
    const Coord y = row * 50;
    g.emplace("n" + std::to_string(i), Box::make2(x, y, x + 40, y + 40));
  }
  return g;
}

Scenario gen_forklift_topological() {
  Term t = make_and(
      make_and(make_and(make_implies(time_point("pt1"), node("n2")),
                        make_implies(time_point("pt2"), make_or(node("n3"), node("n4")))),
               make_implies(time_point("pt3"), make_or(node("n6"), node("n7")))),
      make_implies(time_point("pt4"), node("n7")));
  return {std::move(t), TimeOrder::chain_of({"pt1", "pt2", "pt3", "pt4"}), forklift_demo_geometry()};
}

Scenario gen_lifting_arm(std::int64_t speed_milli, std::int64_t stoppointup) {
  if (speed_milli < 0) throw Error(ErrorCode::ParameterOutOfRange, "speed must be >= 0");
  if (stoppointup < 0) throw Error(ErrorCode::ParameterOutOfRange, "stoppointup must be >= 0");
  auto scaled = [&](std::int64_t i) { return i * speed_milli / 1000; };
  auto stamp = [&](std::int64_t i, Coord y) {
    return make_implies(time_point("t" + std::to_string(i)), segment2d(300, y, 320, y, 3));
  };
  std::vector<Term> inv;
  for (std::int64_t i = 0; i <= 100; ++i) inv.push_back(stamp(i, 200 + scaled(i)));
  for (std::int64_t i = 0; i <= 100; ++i) {
    const std::int64_t down = i < stoppointup ? scaled(i) : scaled(stoppointup);
    inv.push_back(stamp(i + 101, 200 + scaled(100) - down));
  }
  // The original builds its list by prepending.
  std::reverse(inv.begin(), inv.end());
  return {make_big_and(std::move(inv)), TimeOrder::chain(202, "t"), std::nullopt};
}

Scenario gen_rotating_robot(Coord cx, Coord cy, Coord radius, Coord arm_len, Coord tool_half, int steps) {
  if (radius < 0 || arm_len < 0 || tool_half < 0) {
    throw Error(ErrorCode::ParameterOutOfRange, "radius, arm length and tool size must be >= 0");
  }
  if (steps < 1) throw Error(ErrorCode::ParameterOutOfRange, "steps must be >= 1");
  const Term body = box2d(cx - radius, cy - radius, cx + radius, cy + radius);
  const double reach = static_cast<double>(radius + arm_len);
  std::vector<Term> inv;
  for (int k = 0; k < steps; ++k) {
    const double theta = 2.0 * std::numbers::pi * k / steps;
    const Coord tx = cx + std::lround(reach * std::cos(theta));
    const Coord ty = cy + std::lround(reach * std::sin(theta));
    const Term tip = box2d(tx - tool_half, ty - tool_half, tx + tool_half, ty + tool_half);
    inv.push_back(make_implies(time_point("t" + std::to_string(k)), make_and(body, tip)));
  }
  return {make_big_and(std::move(inv)), TimeOrder::chain(static_cast<std::size_t>(steps), "t"), std::nullopt};
}

namespace {

constexpr Coord kBand = 1000;

TimedSpace empty_space(const std::string& name) {
  TimedSpace ts;
  ts.component = name;
  return ts;
}

}  // namespace

Benchmark gen_benchmark(int components, int timepoints, int boxes_per_entry, std::uint64_t seed,
                        std::optional<int> overlap_at) {
  if (components < 1 || timepoints < 1 || boxes_per_entry < 1) {
    throw Error(ErrorCode::ParameterOutOfRange, "benchmark sizes must be positive");
  }
  if (overlap_at && (components < 2 || *overlap_at < 0 || *overlap_at >= timepoints)) {
    throw Error(ErrorCode::ParameterOutOfRange, "overlap index needs two components and a valid time index");
  }
  std::mt19937_64 rng(seed);
  auto uniform = [&](Coord lo, Coord hi) { return lo + static_cast<Coord>(rng() % static_cast<std::uint64_t>(hi - lo + 1)); };
  Benchmark out{{}, TimeOrder::chain(static_cast<std::size_t>(timepoints), "t")};
  std::vector<Box> first_boxes(static_cast<std::size_t>(timepoints));
  for (int c = 0; c < components; ++c) {
    TimedSpace ts = empty_space("c" + std::to_string(c));
    const Coord base = c * kBand;
    for (int t = 0; t < timepoints; ++t) {
      std::vector<Term> boxes;
      for (int k = 0; k < boxes_per_entry; ++k) {
        const Coord x = uniform(0, 900);
        const Coord y = base + uniform(0, 850);
        const Coord w = uniform(1, 50);
        const Coord h = uniform(1, 50);
        if (c == 0 && k == 0) first_boxes[static_cast<std::size_t>(t)] = Box::make2(x, y, x + w, y + h);
        boxes.push_back(box2d(x, y, x + w, y + h));
      }
      if (c == 1 && overlap_at && *overlap_at == t) {
        const Box& b = first_boxes[static_cast<std::size_t>(t)];
        boxes.push_back(box2d(b.lo[0], b.lo[1], b.hi[0], b.hi[1]));
      }
      Term f = boxes.size() == 1 ? boxes.front() : make_big_and(std::move(boxes));
      ts.entries.emplace(TimeIndex::at("t" + std::to_string(t)), std::move(f));
    }
    out.spaces.push_back(std::move(ts));
  }
  return out;
}

Benchmark gen_point_benchmark(int timepoints, std::optional<int> collision_at) {
  if (timepoints < 1) throw Error(ErrorCode::ParameterOutOfRange, "timepoints must be positive");
  if (collision_at && (*collision_at < 0 || *collision_at >= timepoints)) {
    throw Error(ErrorCode::ParameterOutOfRange, "collision index out of range");
  }
  Benchmark out{{empty_space("small"), empty_space("large")}, TimeOrder::chain(static_cast<std::size_t>(timepoints), "t")};
  for (int t = 0; t < timepoints; ++t) {
    const TimeIndex idx = TimeIndex::at("t" + std::to_string(t));
    const Coord shift = 3 * t;  // both drift so no entry repeats
    // 150 x 100 = 15000 and 200 x 100 = 20000 lattice points.
    out.spaces[0].entries.emplace(idx, box2d(shift, 0, shift + 149, 99));
    const Coord bx = collision_at && *collision_at == t ? shift + 100 : shift + 1000;
    out.spaces[1].entries.emplace(idx, box2d(bx, 0, bx + 199, 99));
  }
  return out;
}

}  // namespace spacebound
