#pragma once

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "spacebound/region.hpp"
#include "spacebound/term.hpp"
#include "spacebound/time_order.hpp"

namespace spacebound {

enum class Classification { Occupied, CommRange };
/// Over: the formula must contain all space really used (occupancy).
/// Under: the formula must lie inside the real capability (ranges).
enum class Mode { Over, Under };

std::string_view to_string(Classification c) noexcept;
std::string_view to_string(Mode m) noexcept;

/// `(index ∧ event) → consequent`, waiting for an event trace.
struct GuardedEntry {
  TimeIndex index;
  std::string event;
  Term consequent;
  bool operator==(const GuardedEntry&) const = default;
};

/// `index → derived` or `(index ∧ guard) → derived` on events.
struct EventRule {
  TimeIndex index;
  std::optional<std::string> guard;
  std::string derived;
  bool operator==(const EventRule&) const = default;
};

/// Spatial formulas of one component keyed by time index.
struct TimedSpace {
  std::string component;
  Classification classification = Classification::Occupied;
  Mode mode = Mode::Over;
  std::map<TimeIndex, Term> entries;
  std::vector<GuardedEntry> pending;
  std::vector<EventRule> event_rules;

  bool operator==(const TimedSpace&) const = default;
};

/// Time points at which each event is asserted.
struct EventTrace {
  std::map<std::string, std::set<std::string>> occurrences;
  bool operator==(const EventTrace&) const = default;
};

using NodeGeometry = std::map<std::string, Box, std::less<>>;

struct IndexOptions {
  std::string component;
  Classification classification = Classification::Occupied;
  Mode mode = Mode::Over;
  /// Keeps only the spatial atoms accepted by the filter (for example one
  /// ownership tag). Empty means keep everything.
  std::function<bool(const Atom&)> keep;
};

/// Flattens nested And/Or into BigAnd/BigOr, drops True under conjunction and
/// False under disjunction, collapses singleton connectives.
Term normalize(const Term& t);

/// Throws NotImplicationForm when a conjunct is not `time → formula`.
TimedSpace index_by_time(const Term& t, const TimeOrder& order, const IndexOptions& opts = {});

/// Inverse of index_by_time: a BigAnd of implications.
Term to_term(const TimedSpace& ts);

/// Adds events derived by `time → e` and `(time ∧ e) → e'` rules until fixpoint.
EventTrace saturate_trace(const EventTrace& trace, std::span<const EventRule> rules,
                          const TimeOrder& order);

/// Activates pending guarded entries. An Over space activates a guard when
/// the event may occur (unlisted events are assumed possible); an Under space
/// only when the trace asserts it at the entry's time.
TimedSpace resolve_events(const TimedSpace& ts, const EventTrace& trace, const TimeOrder& order);

/// Rewrites event-relative labels into absolute points along a chain order.
/// Throws NotAChain and OffsetOutOfRange.
Term resolve_event_relative(const Term& t, const EventTrace& trace, const TimeOrder& order);

/// Adds Between(a, b) entries built from the point entries inside [a, b].
/// Throws NotOrdered.
TimedSpace merge_intervals(const TimedSpace& ts, const TimeOrder& order,
                           std::span<const std::pair<std::string, std::string>> pairs);

Term geometrize(const Term& f, const NodeGeometry& geometry);
/// Throws UnmappedNode.
TimedSpace geometrize(const TimedSpace& ts, const NodeGeometry& geometry);

/// Dimension of the spatial atoms in a formula (2 when there are none).
/// Throws DimensionMismatch when 2D and 3D atoms are mixed.
int formula_dim(const Term& f);
int space_dim(const TimedSpace& ts);

/// Region denoted by a negation-free, grounded and geometrized formula.
Region spatial_region(const Term& f, Mode mode);
Region spatial_region(const Term& f, Mode mode, int dim);

/// Region per owner; atoms without a tag belong to `default_owner`.
std::map<std::string, Region> owned_regions(const Term& f, Mode mode, int dim,
                                            const std::string& default_owner);

/// Replaces each entry by its bounding box (one box per owner).
TimedSpace box_abstract(const TimedSpace& ts);

/// Throws AlreadyOwned when an atom carries a different owner.
Term assign_owner(const Term& f, const std::string& owner);
Term strip_owner(const Term& f);

/// Throws ModeMismatch or ClassificationMismatch.
TimedSpace aggregate(std::span<const TimedSpace> parts, std::string name);

struct Automaton {
  std::set<std::string> states;
  std::set<std::string> initial;
  std::set<std::pair<std::string, std::string>> transitions;
  std::map<std::string, Term> labels;

  bool operator==(const Automaton&) const = default;
};

struct Unfolding {
  Term term;
  TimeOrder order;
};

/// States reachable in exactly k steps, sink states looping on themselves.
std::vector<std::set<std::string>> automaton_frontiers(const Automaton& a, int horizon);

/// Throws EmptyInitial, InvalidAutomaton, ParameterOutOfRange (horizon < 1).
Unfolding unfold_automaton(const Automaton& a, int horizon, const std::string& prefix = "t");

}  // namespace spacebound
