#include "spacebound/region.hpp"

#include <algorithm>
#include <string>

#include "spacebound/error.hpp"
#include "spacebound/kernels.hpp"

namespace spacebound {

namespace {

void check_dim(int dim) {
  if (dim != 2 && dim != 3) throw Error(ErrorCode::InvalidArgument, "region dimension must be 2 or 3");
}

void check_same_dim(const Region& a, const Region& b) {
  if (a.dim() != b.dim()) {
    throw Error(ErrorCode::DimensionMismatch,
                std::to_string(a.dim()) + "D vs " + std::to_string(b.dim()) + "D");
  }
}

Box intersect(const Box& a, const Box& b) {
  Box r;
  for (int k = 0; k < 3; ++k) {
    r.lo[k] = std::max(a.lo[k], b.lo[k]);
    r.hi[k] = std::min(a.hi[k], b.hi[k]);
  }
  return r;
}

// Splits r around s along each axis. Emits at most two slabs per axis; the
// part of r inside s is dropped.
void subtract_box(Box r, const Box& s, std::vector<Box>& out) {
  if (!r.overlaps(s)) {
    out.push_back(r);
    return;
  }
  for (int k = 0; k < 3; ++k) {
    if (r.lo[k] < s.lo[k]) {
      Box piece = r;
      piece.hi[k] = s.lo[k] - 1;
      out.push_back(piece);
      r.lo[k] = s.lo[k];
    }
    if (r.hi[k] > s.hi[k]) {
      Box piece = r;
      piece.lo[k] = s.hi[k] + 1;
      out.push_back(piece);
      r.hi[k] = s.hi[k];
    }
  }
}

}  // namespace

Region make_canonical(int dim, std::vector<Box> boxes) {
  std::sort(boxes.begin(), boxes.end());
  boxes.erase(std::unique(boxes.begin(), boxes.end()), boxes.end());
  if (boxes.size() > 1) {
    const auto& k = kernels::active();
    const kernels::BoxSoA soa(boxes);
    std::vector<std::uint8_t> mask(boxes.size());
    std::vector<Box> kept;
    kept.reserve(boxes.size());
    for (std::size_t i = 0; i < boxes.size(); ++i) {
      k.covers_mask(boxes[i], soa, mask.data());
      mask[i] = 0;
      // Duplicates are gone, so any other cover is a strict superset.
      if (std::find(mask.begin(), mask.end(), 1) == mask.end()) kept.push_back(boxes[i]);
    }
    boxes = std::move(kept);
  }
  return Region(dim, std::move(boxes), Region::Canonical{});
}

Region::Region(int dim) : dim_(dim) { check_dim(dim); }

Region::Region(int dim, std::vector<Box> boxes) : dim_(dim) {
  check_dim(dim);
  for (const auto& b : boxes) {
    if (!b.ordered()) throw Error(ErrorCode::BoxUnordered, "region box is inverted");
    if (dim == 2 && (b.lo[2] != 0 || b.hi[2] != 0)) {
      throw Error(ErrorCode::InvalidArgument, "2D box with z extent");
    }
  }
  *this = make_canonical(dim, std::move(boxes));
}

bool Region::contains_point(const LatticePoint& p) const {
  return std::any_of(boxes_.begin(), boxes_.end(), [&](const Box& b) { return b.contains(p); });
}

Region region_union(const Region& a, const Region& b) {
  check_same_dim(a, b);
  if (b.empty()) return a;
  if (a.empty()) return b;
  std::vector<Box> all = a.boxes();
  all.insert(all.end(), b.boxes().begin(), b.boxes().end());
  return make_canonical(a.dim(), std::move(all));
}

Region region_intersection(const Region& a, const Region& b) {
  check_same_dim(a, b);
  if (a.empty() || b.empty()) return Region(a.dim());
  const auto& k = kernels::active();
  const kernels::BoxSoA soa(b.boxes());
  std::vector<std::uint8_t> mask(b.boxes().size());
  std::vector<Box> out;
  for (const auto& ab : a.boxes()) {
    k.overlap_mask(ab, soa, mask.data());
    for (std::size_t j = 0; j < mask.size(); ++j) {
      if (mask[j]) out.push_back(intersect(ab, b.boxes()[j]));
    }
  }
  return make_canonical(a.dim(), std::move(out));
}

Region region_difference(const Region& a, const Region& b) {
  check_same_dim(a, b);
  if (a.empty() || b.empty()) return a;
  const auto& k = kernels::active();
  const kernels::BoxSoA soa(b.boxes());
  std::vector<std::uint8_t> mask(b.boxes().size());
  std::vector<Box> out;
  std::vector<Box> fragments;
  std::vector<Box> next;
  for (const auto& ab : a.boxes()) {
    k.overlap_mask(ab, soa, mask.data());
    fragments.assign(1, ab);
    for (std::size_t j = 0; j < mask.size() && !fragments.empty(); ++j) {
      if (!mask[j]) continue;
      next.clear();
      for (const auto& f : fragments) subtract_box(f, b.boxes()[j], next);
      fragments.swap(next);
    }
    out.insert(out.end(), fragments.begin(), fragments.end());
  }
  return make_canonical(a.dim(), std::move(out));
}

Containment region_contains(const Region& outer, const Region& inner) {
  Region rest = region_difference(inner, outer);
  if (rest.empty()) return {true, std::nullopt};
  return {false, rest.boxes().front().lo};
}

Region region_inflate(const Region& r, Coord margin) {
  if (margin < 0) throw Error(ErrorCode::NegativeMargin, std::to_string(margin));
  if (margin == 0 || r.empty()) return r;
  std::vector<Box> grown = r.boxes();
  for (auto& b : grown) {
    for (int k = 0; k < r.dim(); ++k) {
      b.lo[k] -= margin;
      b.hi[k] += margin;
    }
  }
  return make_canonical(r.dim(), std::move(grown));
}

std::optional<Box> bounding_box(const Region& r) {
  if (r.empty()) return std::nullopt;
  Box bb = r.boxes().front();
  for (const auto& b : r.boxes()) {
    for (int k = 0; k < 3; ++k) {
      bb.lo[k] = std::min(bb.lo[k], b.lo[k]);
      bb.hi[k] = std::max(bb.hi[k], b.hi[k]);
    }
  }
  return bb;
}

bool regions_overlap(const Region& a, const Region& b) {
  check_same_dim(a, b);
  if (a.empty() || b.empty()) return false;
  const auto& k = kernels::active();
  const kernels::BoxSoA soa(b.boxes());
  return std::any_of(a.boxes().begin(), a.boxes().end(),
                     [&](const Box& q) { return k.first_overlap(q, soa) < soa.size(); });
}

bool same_points(const Region& a, const Region& b) {
  return region_difference(a, b).empty() && region_difference(b, a).empty();
}

std::uint64_t lattice_volume(const Box& b) {
  std::uint64_t v = 1;
  for (int k = 0; k < 3; ++k) v *= static_cast<std::uint64_t>(b.hi[k] - b.lo[k] + 1);
  return v;
}

}  // namespace spacebound
