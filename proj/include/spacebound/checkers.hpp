#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "spacebound/region.hpp"
#include "spacebound/time_order.hpp"
#include "spacebound/transforms.hpp"

namespace spacebound {

enum class Verdict { Pass, Fail, Inconclusive };
enum class Property { CollisionFree, Coverage };

std::string_view to_string(Verdict v) noexcept;
std::string_view to_string(Property p) noexcept;

struct Witness {
  TimeIndex index;
  Region region;                       // overlap or uncovered part; may be empty
  std::optional<LatticePoint> point;   // a concrete offending lattice point
  std::vector<std::string> components; // owners involved
};

struct CheckStats {
  std::size_t time_points_examined = 0;
  bool early_exit = false;
  bool vacuous = false;
  double wall_time_ms = 0.0;
};

struct CheckReport {
  Verdict verdict = Verdict::Pass;
  Property property = Property::CollisionFree;
  std::vector<std::string> components;
  std::vector<Witness> witnesses;  // sorted by time order position
  CheckStats stats;
};

struct CheckOptions {
  Coord margin = 0;
  bool early_exit = false;
  unsigned jobs = 1;
};

/// Time points covered by entries of both spaces, in order-insertion order.
std::vector<std::string> shared_points(const TimedSpace& a, const TimedSpace& b,
                                       const TimeOrder& order);

/// Region per owner at one time point: the union of every entry whose index
/// covers the point. Pending guarded entries count as active under Over and
/// inactive under Under. Untagged atoms belong to the component.
std::map<std::string, Region> regions_at(const TimedSpace& ts, const std::string& point,
                                         const TimeOrder& order, int dim);

/// regions_at for several points, sharing the per-point index.
std::vector<std::map<std::string, Region>> regions_at(const TimedSpace& ts,
                                                      const std::vector<std::string>& points,
                                                      const TimeOrder& order, int dim);

/// Shared dimension of two spaces. Throws DimensionMismatch.
int common_dim(const TimedSpace& a, const TimedSpace& b);

/// Both spaces must be Over and Occupied. Throws ModeMismatch or
/// ClassificationMismatch.
void check_collision_inputs(const TimedSpace& a, const TimedSpace& b);

/// Throws ModeMismatch, ClassificationMismatch, NegativeMargin.
CheckReport check_collision_boxes(const TimedSpace& a, const TimedSpace& b, const TimeOrder& order,
                                  const CheckOptions& opts = {});

/// Lattice points at `step` (anchored at 0), hashed. Throws StepNonPositive.
CheckReport check_collision_points(const TimedSpace& a, const TimedSpace& b, const TimeOrder& order,
                                   Coord step, const CheckOptions& opts = {});

/// Throws ModeMismatch unless inner is Over and outer is Under.
CheckReport check_coverage(const TimedSpace& inner, const TimedSpace& outer, const TimeOrder& order,
                           const CheckOptions& opts = {});

using PairChecker = std::function<CheckReport(const TimedSpace&, const TimedSpace&)>;

/// CollisionFree: one report per unordered pair of components. Coverage: one
/// report per (Over inner, Under outer) pair. Pairs without shared points get
/// a vacuous Pass without calling `check`.
std::vector<CheckReport> run_pairwise(const std::vector<TimedSpace>& components, const TimeOrder& order,
                                      Property property, const PairChecker& check);

enum class NativeBackend { Boxes, Points };

struct PairwiseOptions {
  NativeBackend backend = NativeBackend::Boxes;
  Coord step = 1;
  CheckOptions check;
};

std::vector<CheckReport> run_pairwise(const std::vector<TimedSpace>& components, const TimeOrder& order,
                                      Property property, const PairwiseOptions& opts = {});

/// Worst verdict of a report set (Fail over Inconclusive over Pass).
Verdict overall_verdict(const std::vector<CheckReport>& reports);

/// Line-oriented text rendering.
std::string report_text(const std::vector<CheckReport>& reports);
/// JSON document, see docs/report-schema.md.
std::string report_json(const std::vector<CheckReport>& reports);

/// Runs fn(i) for i in [0, n) on up to `jobs` threads. fn must be thread safe.
void parallel_for(std::size_t n, unsigned jobs, const std::function<void(std::size_t)>& fn);

}  // namespace spacebound
