#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "spacebound/term.hpp"

namespace spacebound {

enum class Ordering { Yes, No, Incomparable };

/// Finite partial order over named time points, stored as a DAG with a
/// precomputed reachability closure. Immutable after construction.
class TimeOrder {
 public:
  TimeOrder() = default;

  /// Throws UnknownTimePoint for dangling edge endpoints, CyclicOrder when
  /// the edges do not form a DAG, DuplicateName for repeated points.
  TimeOrder(std::vector<std::string> points, std::vector<std::pair<std::string, std::string>> edges);

  /// Total order "<prefix>0" -> ... -> "<prefix>{n-1}".
  static TimeOrder chain(std::size_t n, const std::string& prefix = "t");
  static TimeOrder chain_of(std::vector<std::string> names);

  const std::vector<std::string>& points() const { return points_; }
  const std::vector<std::pair<std::string, std::string>>& edges() const { return edges_; }
  std::size_t size() const { return points_.size(); }

  bool contains(std::string_view p) const { return index_.find(p) != index_.end(); }
  /// Insertion position of a point; throws UnknownTimePoint.
  std::size_t index_of(std::string_view p) const;

  /// True when every point has at most one successor and predecessor and the
  /// points form a single path.
  bool is_chain() const;
  /// Points along the chain, first to last. Throws NotAChain.
  std::vector<std::string> chain_sequence() const;

  bool reachable(std::size_t from, std::size_t to) const;

  bool operator==(const TimeOrder& o) const { return points_ == o.points_ && edges_ == o.edges_; }

 private:
  std::vector<std::string> points_;
  std::vector<std::pair<std::string, std::string>> edges_;
  std::map<std::string, std::size_t, std::less<>> index_;
  std::vector<std::vector<std::uint64_t>> closure_;  // bitset rows, reflexive
};

Ordering time_leq(const TimeOrder& order, std::string_view a, std::string_view b);

/// Points p with from <= p <= to, in order-insertion order. Throws NotOrdered.
std::vector<std::string> expand_interval(const TimeOrder& order, std::string_view from,
                                         std::string_view to);

/// Time index of a timed-space entry: a single point or a closed interval.
struct TimeIndex {
  std::string from;
  std::string to;  // equals `from` for a point

  static TimeIndex at(std::string p) {
    std::string q = p;
    return {std::move(p), std::move(q)};
  }
  static TimeIndex between(std::string a, std::string b) { return {std::move(a), std::move(b)}; }

  bool is_point() const { return from == to; }

  auto operator<=>(const TimeIndex&) const = default;
};

std::string to_string(const TimeIndex& idx);

/// Points covered by an index (expanded for intervals).
std::vector<std::string> covered_points(const TimeOrder& order, const TimeIndex& idx);

/// Time points mentioned by a term; intervals contribute every enclosed
/// point. Throws UnknownTimePoint, or InvalidArgument on an unresolved
/// event-relative label.
std::vector<std::string> mentioned_time_points(const Term& t, const TimeOrder& order);

/// Intersection of the points mentioned by two terms, in order-insertion order.
std::vector<std::string> shared_time_points(const Term& a, const Term& b, const TimeOrder& order);

}  // namespace spacebound
