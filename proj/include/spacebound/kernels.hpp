#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "spacebound/box.hpp"

namespace spacebound::kernels {

/// Structure-of-arrays view of a box list, padded so vector kernels can
/// load whole lanes. Padding slots hold an empty (inverted) box that never
/// overlaps, covers or is covered by anything.
class BoxSoA {
 public:
  static constexpr std::size_t kPad = 8;

  BoxSoA() = default;
  explicit BoxSoA(std::span<const Box> boxes);

  std::size_t size() const { return size_; }
  const Coord* lo(int axis) const { return lo_[axis].data(); }
  const Coord* hi(int axis) const { return hi_[axis].data(); }

 private:
  std::size_t size_ = 0;
  std::vector<Coord> lo_[3];
  std::vector<Coord> hi_[3];
};

/// out[i] = 1 when boxes[i] and q share a lattice point (closed semantics).
using MaskFn = void (*)(const Box& q, const BoxSoA& boxes, std::uint8_t* out);
/// Index of the first set entry or boxes.size().
using FirstFn = std::size_t (*)(const Box& q, const BoxSoA& boxes);

struct KernelTable {
  std::string_view name;
  MaskFn overlap_mask;  // boxes[i] ∩ q ≠ ∅
  MaskFn covers_mask;   // boxes[i] ⊇ q
  MaskFn inside_mask;   // boxes[i] ⊆ q
  FirstFn first_overlap;
};

const KernelTable& scalar();
/// Null when the variant is not compiled in or the CPU lacks the feature.
const KernelTable* avx2();
const KernelTable* neon();

/// Best supported table. SPACEBOUND_KERNELS=scalar|avx2|neon overrides the
/// choice when that variant is available.
const KernelTable& active();

/// Every table usable on this host, scalar first.
std::vector<const KernelTable*> available();

}  // namespace spacebound::kernels
