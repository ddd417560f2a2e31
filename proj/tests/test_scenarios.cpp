#include <gtest/gtest.h>

#include <cmath>

#include "spacebound/checkers.hpp"
#include "spacebound/dsl.hpp"
#include "spacebound/error.hpp"
#include "spacebound/scenarios.hpp"
#include "spacebound/transforms.hpp"

using namespace spacebound;

namespace {

const Term& entry_at(const TimedSpace& ts, const std::string& p) {
  auto it = ts.entries.find(TimeIndex::at(p));
  if (it == ts.entries.end()) throw std::runtime_error("no entry at " + p);
  return it->second;
}

// y coordinate of the arm segment at stamp t.
Coord lift_y(const TimedSpace& ts, int t) {
  const Term& f = entry_at(ts, "t" + std::to_string(t));
  const auto* s = f.atom().get_if<OccupySegment2D>();
  if (!s) throw std::runtime_error("not a segment");
  EXPECT_EQ(s->y1, s->y2);
  EXPECT_EQ(s->x1, 300);
  EXPECT_EQ(s->x2, 320);
  EXPECT_EQ(s->radius, 3);
  return s->y1;
}

TimedSpace lifting(std::int64_t speed, std::int64_t stop) {
  auto s = gen_lifting_arm(speed, stop);
  return index_by_time(s.term, s.order);
}

// Boxes of one robot step: the body first, then the tool.
std::vector<Box> robot_boxes(const Scenario& s, int step) {
  auto ts = index_by_time(s.term, s.order);
  return spatial_region(entry_at(ts, "t" + std::to_string(step)), Mode::Over, 2).boxes();
}

std::uint64_t volume(const Term& f) {
  std::uint64_t v = 0;
  const Region r = spatial_region(f, Mode::Over, 2);
  for (const auto& b : r.boxes()) v += lattice_volume(b);
  return v;
}

}  // namespace

TEST(Forklift, ExactInvariant) {
  auto s = gen_forklift_topological();
  auto ts = index_by_time(s.term, s.order);
  ASSERT_EQ(ts.entries.size(), 4u);
  EXPECT_EQ(entry_at(ts, "pt1"), node("n2"));
  EXPECT_EQ(entry_at(ts, "pt2"), make_or(node("n3"), node("n4")));
  EXPECT_EQ(entry_at(ts, "pt3"), make_or(node("n6"), node("n7")));
  EXPECT_EQ(entry_at(ts, "pt4"), node("n7"));
  EXPECT_EQ(s.order.points(), (std::vector<std::string>{"pt1", "pt2", "pt3", "pt4"}));
  ASSERT_TRUE(s.geometry.has_value());
  EXPECT_EQ(s.geometry->size(), 7u);
}

TEST(Forklift, RoundTripsThroughTheDsl) {
  auto s = gen_forklift_topological();
  EXPECT_EQ(parse_term(print_term(s.term)), s.term);
}

TEST(LiftingArm, SpotValues) {
  auto up = lifting(1000, 201);
  EXPECT_EQ(up.entries.size(), 202u);
  EXPECT_EQ(lift_y(up, 0), 200);
  EXPECT_EQ(lift_y(up, 100), 300);
  EXPECT_EQ(lift_y(up, 101), 300);
  EXPECT_EQ(lift_y(up, 201), 200);

  auto stop50 = lifting(1000, 50);
  EXPECT_EQ(lift_y(stop50, 201), 250);
  EXPECT_EQ(lift_y(stop50, 151), 250);
  EXPECT_EQ(lift_y(stop50, 150), 251);
}

TEST(LiftingArm, StopBeyondTheRangeNeverFreezes) {
  auto s = lifting(1000, 300);
  const std::vector<std::pair<int, Coord>> expected = {{0, 200}, {50, 250}, {100, 300}, {101, 300}, {201, 200}};
  for (auto [t, y] : expected) EXPECT_EQ(lift_y(s, t), y) << "t" << t;
}

TEST(LiftingArm, FractionalSpeedsFloor) {
  auto s = lifting(1500, 201);
  EXPECT_EQ(lift_y(s, 1), 201);
  EXPECT_EQ(lift_y(s, 3), 204);
  EXPECT_EQ(lift_y(s, 100), 350);
  auto zero = lifting(0, 0);
  for (int t = 0; t < 202; ++t) ASSERT_EQ(lift_y(zero, t), 200);
}

TEST(LiftingArm, DescentMirrorsAscentWithoutStop) {
  for (std::int64_t speed : {0, 250, 1000, 1337, 3000}) {
    for (std::int64_t stop : {201, 250}) {
      auto s = lifting(speed, stop);
      for (int i = 0; i <= 100; ++i) {
        // floor(100v) - floor(iv) and floor((100-i)v) agree only when the
        // speed is a whole number of units; otherwise allow the rounding gap.
        const Coord down = lift_y(s, 101 + i);
        const Coord up = lift_y(s, 100 - i);
        if (speed % 1000 == 0)
          ASSERT_EQ(down, up) << speed << " " << i;
        else
          ASSERT_LE(std::llabs(down - up), 1) << speed << " " << i;
      }
    }
  }
}

TEST(LiftingArm, RejectsNegativeParameters) {
  EXPECT_THROW(gen_lifting_arm(-1, 0), Error);
  EXPECT_THROW(gen_lifting_arm(0, -1), Error);
}

TEST(Robot, CardinalTips) {
  auto s = gen_rotating_robot(0, 0, 100, 0, 0, 4);
  const std::vector<std::pair<Coord, Coord>> tips = {{100, 0}, {0, 100}, {-100, 0}, {0, -100}};
  for (int k = 0; k < 4; ++k) {
    auto boxes = robot_boxes(s, k);
    bool found = false;
    for (const auto& b : boxes) found = found || b == Box::point(tips[k].first, tips[k].second);
    // A zero-size tip on the body's boundary merges into the body.
    Region r(2, boxes);
    EXPECT_TRUE(found || r.contains_point({tips[k].first, tips[k].second, 0})) << k;
  }
}

TEST(Robot, SingleStepAndToolBox) {
  auto one = gen_rotating_robot(0, 0, 10, 5, 1, 1);
  EXPECT_EQ(one.order.points().size(), 1u);
  auto tool = gen_rotating_robot(0, 0, 50, 50, 3, 4);
  auto ts = index_by_time(tool.term, tool.order);
  EXPECT_EQ(entry_at(ts, "t0"), make_and(box2d(-50, -50, 50, 50), box2d(97, -3, 103, 3)));
  EXPECT_EQ(gen_rotating_robot(0, 0, 100, 0, 3, 4).order.points().size(), 4u);
  EXPECT_THROW(gen_rotating_robot(0, 0, 1, 1, 1, 0), Error);
  EXPECT_THROW(gen_rotating_robot(0, 0, -1, 1, 1, 3), Error);
}

TEST(Robot, EveryStepStaysInsideTheReach) {
  for (int steps : {1, 3, 7, 12, 36}) {
    const Coord cx = 17, cy = -4, r = 40, arm = 25, tool = 6;
    auto s = gen_rotating_robot(cx, cy, r, arm, tool, steps);
    const Coord reach = r + arm + tool;
    const Box bound = Box::make2(cx - reach, cy - reach, cx + reach, cy + reach);
    for (int k = 0; k < steps; ++k)
      for (const auto& b : robot_boxes(s, k)) EXPECT_TRUE(bound.contains(b)) << steps << " " << k;
  }
}

TEST(Benchmark, SizesAndDeterminism) {
  auto a = gen_benchmark(2, 1000, 1, 42);
  auto b = gen_benchmark(2, 1000, 1, 42);
  ASSERT_EQ(a.spaces.size(), 2u);
  EXPECT_EQ(a.spaces[0].entries.size(), 1000u);
  EXPECT_EQ(a.spaces[1].entries.size(), 1000u);
  EXPECT_EQ(a.spaces, b.spaces);
  EXPECT_NE(gen_benchmark(2, 50, 1, 1).spaces, gen_benchmark(2, 50, 1, 2).spaces);
  EXPECT_EQ(check_collision_boxes(a.spaces[0], a.spaces[1], a.order).verdict, Verdict::Pass);
  auto three = gen_benchmark(3, 10, 4, 5);
  EXPECT_EQ(three.spaces.size(), 3u);
  EXPECT_EQ(entry_at(three.spaces[2], "t9").children().size(), 4u);
}

TEST(Benchmark, PlantedOverlapIsTheOnlyFailure) {
  auto b = gen_benchmark(2, 100, 3, 9, 63);
  auto r = check_collision_boxes(b.spaces[0], b.spaces[1], b.order);
  EXPECT_EQ(r.verdict, Verdict::Fail);
  ASSERT_EQ(r.witnesses.size(), 1u);
  EXPECT_EQ(r.witnesses[0].index, TimeIndex::at("t63"));
  EXPECT_THROW(gen_benchmark(1, 10, 1, 1, 3), Error);
  EXPECT_THROW(gen_benchmark(2, 10, 1, 1, 10), Error);
  EXPECT_THROW(gen_benchmark(2, 0, 1, 1), Error);
}

TEST(PointBenchmark, SizesAndCollision) {
  auto b = gen_point_benchmark();
  ASSERT_EQ(b.spaces.size(), 2u);
  EXPECT_EQ(b.spaces[0].entries.size(), 100u);
  for (const auto& [idx, f] : b.spaces[0].entries) ASSERT_EQ(volume(f), 15000u);
  for (const auto& [idx, f] : b.spaces[1].entries) ASSERT_EQ(volume(f), 20000u);
  EXPECT_EQ(check_collision_boxes(b.spaces[0], b.spaces[1], b.order).verdict, Verdict::Pass);

  auto hit = gen_point_benchmark(10, 4);
  auto r = check_collision_boxes(hit.spaces[0], hit.spaces[1], hit.order);
  ASSERT_EQ(r.witnesses.size(), 1u);
  EXPECT_EQ(r.witnesses[0].index, TimeIndex::at("t4"));
  EXPECT_THROW(gen_point_benchmark(10, 10), Error);
}
