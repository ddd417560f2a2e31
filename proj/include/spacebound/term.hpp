#pragma once

#include <cstdint>
#include <memory>
#include <set>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "spacebound/box.hpp"
#include "spacebound/symint.hpp"

namespace spacebound {

/// A time label is either an absolute named time point or a point at a fixed
/// offset from an occurrence of an event.
struct TimeLabel {
  std::string name;  // point name, or event name when relative
  bool relative = false;
  std::int64_t offset = 0;

  static TimeLabel absolute(std::string point) { return {std::move(point), false, 0}; }
  static TimeLabel event_relative(std::string event, std::int64_t offset) {
    return {std::move(event), true, offset};
  }

  bool operator==(const TimeLabel&) const = default;
};

struct TimePoint {
  TimeLabel label;
  bool operator==(const TimePoint&) const = default;
};
struct TimeInterval {
  TimeLabel from;
  TimeLabel to;
  bool operator==(const TimeInterval&) const = default;
};
struct Event {
  std::string name;
  bool operator==(const Event&) const = default;
};
struct OccupyPoint2D {
  Coord x = 0, y = 0;
  bool operator==(const OccupyPoint2D&) const = default;
};
struct OccupyBox2D {
  Coord x1 = 0, y1 = 0, x2 = 0, y2 = 0;
  bool operator==(const OccupyBox2D&) const = default;
};
struct OccupySegment2D {
  Coord x1 = 0, y1 = 0, x2 = 0, y2 = 0, radius = 0;
  bool operator==(const OccupySegment2D&) const = default;
};
struct OccupyPoint3D {
  Coord x = 0, y = 0, z = 0;
  bool operator==(const OccupyPoint3D&) const = default;
};
struct OccupyBox3D {
  Coord x1 = 0, y1 = 0, z1 = 0, x2 = 0, y2 = 0, z2 = 0;
  bool operator==(const OccupyBox3D&) const = default;
};
struct OccupySegment3D {
  Coord x1 = 0, y1 = 0, z1 = 0, x2 = 0, y2 = 0, z2 = 0, radius = 0;
  bool operator==(const OccupySegment3D&) const = default;
};
struct OccupyNode {
  std::string node;
  bool operator==(const OccupyNode&) const = default;
};
struct OccupyBoxSym {
  SymInt x1, y1, x2, y2;
  bool operator==(const OccupyBoxSym&) const = default;
};

struct Atom;

/// Spatial atom tagged with the component that owns it.
struct Owned {
  std::string owner;
  std::shared_ptr<const Atom> inner;
  friend bool operator==(const Owned& a, const Owned& b);
};

using AtomVariant = std::variant<TimePoint, TimeInterval, Event, OccupyPoint2D, OccupyBox2D,
                                 OccupySegment2D, OccupyPoint3D, OccupyBox3D, OccupySegment3D,
                                 OccupyNode, Owned, OccupyBoxSym>;

struct Atom {
  AtomVariant value;

  template <class T>
  const T* get_if() const {
    return std::get_if<T>(&value);
  }
  template <class T>
  bool is() const {
    return std::holds_alternative<T>(value);
  }

  bool is_temporal() const { return is<TimePoint>() || is<TimeInterval>(); }
  bool is_event() const { return is<Event>(); }
  bool is_spatial() const { return !is_temporal() && !is_event(); }

  /// Owner tag when the atom is Owned, otherwise empty.
  const std::string* owner() const;
  /// The atom under any ownership wrapper.
  const Atom& unowned() const;

  bool operator==(const Atom&) const = default;
};

enum class TermKind : std::uint8_t { And, Or, Not, Implies, BigAnd, BigOr, True, False, Atom };

/// Immutable invariant term. Copies share structure.
class Term {
 public:
  Term();

  TermKind kind() const { return node_->kind; }
  std::span<const Term> children() const { return node_->children; }
  const Term& child(std::size_t i) const { return node_->children.at(i); }
  const Atom& atom() const { return node_->atom; }

  bool is_atom() const { return kind() == TermKind::Atom; }
  /// True when both handles refer to the same node.
  bool shares(const Term& other) const { return node_ == other.node_; }

  static Term make(TermKind kind, std::vector<Term> children);
  static Term make_atom(Atom atom);

  friend bool operator==(const Term& a, const Term& b);

 private:
  struct Node {
    TermKind kind = TermKind::True;
    std::vector<Term> children;
    Atom atom;
  };
  explicit Term(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

  std::shared_ptr<const Node> node_;
};

// Builders.
Term make_and(Term a, Term b);
Term make_or(Term a, Term b);
Term make_not(Term a);
Term make_implies(Term a, Term b);
Term make_big_and(std::vector<Term> parts);
Term make_big_or(std::vector<Term> parts);
Term make_true();
Term make_false();
Term make_atom(Atom a);

Term time_point(std::string name);
Term time_point(TimeLabel label);
Term time_interval(std::string from, std::string to);
Term time_interval(TimeLabel from, TimeLabel to);
Term event(std::string name);
Term point2d(Coord x, Coord y);
Term box2d(Coord x1, Coord y1, Coord x2, Coord y2);
Term segment2d(Coord x1, Coord y1, Coord x2, Coord y2, Coord radius);
Term point3d(Coord x, Coord y, Coord z);
Term box3d(Coord x1, Coord y1, Coord z1, Coord x2, Coord y2, Coord z2);
Term segment3d(Coord x1, Coord y1, Coord z1, Coord x2, Coord y2, Coord z2, Coord radius);
Term node(std::string name);
Term box_sym(SymInt x1, SymInt y1, SymInt x2, SymInt y2);
/// Wraps an atom term in an ownership tag. `inner` must be an atom term.
Term owned(std::string owner, const Term& inner);
Atom owned_atom(std::string owner, Atom inner);

enum class ViolationKind {
  BoxUnordered,
  EmptyBigConnective,
  NegativeRadius,
  NestedOwnership,
  OwnedNonSpatial,
  EmptyName,
};

std::string_view to_string(ViolationKind kind) noexcept;

struct Violation {
  ViolationKind kind;
  std::string path;  // "root", "root.1.0", ...
  bool operator==(const Violation&) const = default;
};

/// All structural violations, in pre-order. An empty result means valid.
std::vector<Violation> validate(const Term& term);

/// Replaces every OccupyBoxSym by an OccupyBox2D evaluated in `env`.
/// Throws UnboundVariable or BoxUnordered.
Term ground(const Term& term, const Env& env);

bool has_symbolic(const Term& term);
std::set<std::string> symbolic_variables(const Term& term);

/// Visits every atom in pre-order.
template <class F>
void for_each_atom(const Term& t, F&& f) {
  if (t.is_atom()) {
    f(t.atom());
    return;
  }
  for (const auto& c : t.children()) for_each_atom(c, f);
}

std::size_t term_size(const Term& t);

}  // namespace spacebound
