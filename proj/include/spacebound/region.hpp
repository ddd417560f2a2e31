#pragma once

#include <optional>
#include <span>
#include <vector>

#include "spacebound/box.hpp"

namespace spacebound {

/// Finite union of closed integer boxes in 2 or 3 dimensions.
///
/// Boxes are kept in canonical form: no box is contained in another and the
/// list is sorted lexicographically by (lo, hi). The form is not a minimal
/// cover, so two regions with the same lattice points can still differ in
/// their box lists; use same_points() for semantic equality.
class Region {
 public:
  Region() = default;
  explicit Region(int dim);
  /// Throws BoxUnordered for an inverted box and InvalidArgument for a bad
  /// dimension or a 2D box with a non-zero z extent.
  Region(int dim, std::vector<Box> boxes);

  static Region of(const Box& b, int dim = 2) { return Region(dim, {b}); }

  int dim() const { return dim_; }
  const std::vector<Box>& boxes() const { return boxes_; }
  bool empty() const { return boxes_.empty(); }
  bool contains_point(const LatticePoint& p) const;

  bool operator==(const Region&) const = default;

 private:
  struct Canonical {};
  Region(int dim, std::vector<Box> boxes, Canonical) : dim_(dim), boxes_(std::move(boxes)) {}

  friend Region make_canonical(int dim, std::vector<Box> boxes);

  int dim_ = 2;
  std::vector<Box> boxes_;
};

/// Builds a region from already validated boxes.
Region make_canonical(int dim, std::vector<Box> boxes);

Region region_union(const Region& a, const Region& b);
Region region_intersection(const Region& a, const Region& b);
/// Lattice difference: exactly the integer points of a not in b.
Region region_difference(const Region& a, const Region& b);

struct Containment {
  bool contained = true;
  std::optional<LatticePoint> witness;  // a point of inner outside outer
};

Containment region_contains(const Region& outer, const Region& inner);

/// Grows every box by `margin` on each face of the active axes. Throws
/// NegativeMargin.
Region region_inflate(const Region& r, Coord margin);

std::optional<Box> bounding_box(const Region& r);

/// Boolean intersection test without building the intersection.
bool regions_overlap(const Region& a, const Region& b);

/// Lattice points equal (exact, via difference in both directions).
bool same_points(const Region& a, const Region& b);

/// Number of lattice points of a box.
std::uint64_t lattice_volume(const Box& b);

}  // namespace spacebound
