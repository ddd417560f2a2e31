#include <gtest/gtest.h>

#include <cstdlib>
#include <limits>

#include "oracles.hpp"
#include "spacebound/kernels.hpp"

using namespace spacebound;
namespace k = spacebound::kernels;

namespace {

constexpr Coord kMin = std::numeric_limits<Coord>::min();
constexpr Coord kMax = std::numeric_limits<Coord>::max();

std::vector<Box> random_boxes(sbtest::Gen& g, std::size_t n, bool extreme) {
  std::vector<Box> out;
  for (std::size_t i = 0; i < n; ++i) {
    Box b = sbtest::random_box(g, 3, -30, 30, 15);
    if (extreme && g.coin(0.3)) {
      const int axis = static_cast<int>(g.range(0, 2));
      if (g.coin()) b.lo[axis] = kMin;
      else b.hi[axis] = kMax;
    }
    out.push_back(b);
  }
  return out;
}

void reference(const Box& q, const std::vector<Box>& boxes, std::vector<std::uint8_t>& ov,
               std::vector<std::uint8_t>& cov, std::vector<std::uint8_t>& ins) {
  ov.clear();
  cov.clear();
  ins.clear();
  for (const auto& b : boxes) {
    ov.push_back(b.overlaps(q) ? 1 : 0);
    cov.push_back(b.contains(q) ? 1 : 0);
    ins.push_back(q.contains(b) ? 1 : 0);
  }
}

}  // namespace

TEST(Kernels, ScalarIsAlwaysAvailable) {
  auto all = k::available();
  ASSERT_FALSE(all.empty());
  EXPECT_EQ(all.front()->name, "scalar");
  EXPECT_EQ(&k::scalar(), all.front());
}

TEST(Kernels, EnvironmentOverrideSelectsScalar) {
  const char* env = std::getenv("SPACEBOUND_KERNELS");
  if (env == nullptr || std::string_view(env) != "scalar") GTEST_SKIP() << "override not set";
  EXPECT_EQ(k::active().name, "scalar");
}

TEST(Kernels, AllVariantsMatchReference) {
  sbtest::Gen g(500);
  std::vector<std::uint8_t> ov, cov, ins;
  for (int round = 0; round < 400; ++round) {
    const auto n = static_cast<std::size_t>(g.range(0, 37));
    auto boxes = random_boxes(g, n, round % 2 == 1);
    k::BoxSoA soa(boxes);
    ASSERT_EQ(soa.size(), n);
    Box q = random_boxes(g, 1, round % 3 == 0).front();
    reference(q, boxes, ov, cov, ins);
    std::size_t first = n;
    for (std::size_t i = 0; i < n; ++i)
      if (ov[i]) {
        first = i;
        break;
      }
    for (const auto* table : k::available()) {
      std::vector<std::uint8_t> out(n + k::BoxSoA::kPad, 0xAA);
      table->overlap_mask(q, soa, out.data());
      EXPECT_TRUE(std::equal(ov.begin(), ov.end(), out.begin())) << table->name;
      table->covers_mask(q, soa, out.data());
      EXPECT_TRUE(std::equal(cov.begin(), cov.end(), out.begin())) << table->name;
      table->inside_mask(q, soa, out.data());
      EXPECT_TRUE(std::equal(ins.begin(), ins.end(), out.begin())) << table->name;
      EXPECT_EQ(table->first_overlap(q, soa), first) << table->name;
    }
  }
}

TEST(Kernels, ExtremeValuesAndTouchingFaces) {
  std::vector<Box> boxes = {
      Box{{kMin, kMin, kMin}, {kMax, kMax, kMax}},
      Box{{kMax, kMax, kMax}, {kMax, kMax, kMax}},
      Box{{kMin, kMin, kMin}, {kMin, kMin, kMin}},
      Box::make3(5, 0, 0, 10, 5, 0),  // touches q on x = 5
      Box::make3(6, 0, 0, 10, 5, 0),
  };
  k::BoxSoA soa(boxes);
  Box q = Box::make3(0, 0, 0, 5, 5, 0);
  for (const auto* table : k::available()) {
    std::vector<std::uint8_t> out(boxes.size() + k::BoxSoA::kPad);
    table->overlap_mask(q, soa, out.data());
    EXPECT_EQ(std::vector<std::uint8_t>(out.begin(), out.begin() + 5), (std::vector<std::uint8_t>{1, 0, 0, 1, 0}))
        << table->name;
    table->covers_mask(q, soa, out.data());
    EXPECT_EQ(out[0], 1) << table->name;
    Box far{{kMax, kMax, kMax}, {kMax, kMax, kMax}};
    EXPECT_EQ(table->first_overlap(far, soa), 0u) << table->name;
  }
}

TEST(Kernels, EmptyInput) {
  k::BoxSoA soa(std::vector<Box>{});
  for (const auto* table : k::available()) {
    EXPECT_EQ(table->first_overlap(Box::make2(0, 0, 1, 1), soa), 0u) << table->name;
  }
}
