#include <limits>

#include "kernels_internal.hpp"

namespace spacebound::kernels {

BoxSoA::BoxSoA(std::span<const Box> boxes) : size_(boxes.size()) {
  const std::size_t padded = (size_ + kPad - 1) / kPad * kPad;
  for (int k = 0; k < 3; ++k) {
    lo_[k].assign(padded, std::numeric_limits<Coord>::max());
    hi_[k].assign(padded, std::numeric_limits<Coord>::min());
    for (std::size_t i = 0; i < size_; ++i) {
      lo_[k][i] = boxes[i].lo[k];
      hi_[k][i] = boxes[i].hi[k];
    }
  }
}

namespace detail {

void overlap_mask_scalar(const Box& q, const BoxSoA& s, std::uint8_t* out) {
  for (std::size_t i = 0; i < s.size(); ++i) {
    bool hit = true;
    for (int k = 0; k < 3; ++k) {
      hit = hit && s.lo(k)[i] <= q.hi[k] && q.lo[k] <= s.hi(k)[i];
    }
    out[i] = hit ? 1 : 0;
  }
}

void covers_mask_scalar(const Box& q, const BoxSoA& s, std::uint8_t* out) {
  for (std::size_t i = 0; i < s.size(); ++i) {
    bool hit = true;
    for (int k = 0; k < 3; ++k) {
      hit = hit && s.lo(k)[i] <= q.lo[k] && q.hi[k] <= s.hi(k)[i];
    }
    out[i] = hit ? 1 : 0;
  }
}

void inside_mask_scalar(const Box& q, const BoxSoA& s, std::uint8_t* out) {
  for (std::size_t i = 0; i < s.size(); ++i) {
    bool hit = true;
    for (int k = 0; k < 3; ++k) {
      hit = hit && q.lo[k] <= s.lo(k)[i] && s.hi(k)[i] <= q.hi[k];
    }
    out[i] = hit ? 1 : 0;
  }
}

std::size_t first_overlap_scalar(const Box& q, const BoxSoA& s) {
  for (std::size_t i = 0; i < s.size(); ++i) {
    bool hit = true;
    for (int k = 0; k < 3; ++k) {
      hit = hit && s.lo(k)[i] <= q.hi[k] && q.lo[k] <= s.hi(k)[i];
    }
    if (hit) return i;
  }
  return s.size();
}

}  // namespace detail

const KernelTable& scalar() {
  static const KernelTable table{"scalar", detail::overlap_mask_scalar, detail::covers_mask_scalar,
                                 detail::inside_mask_scalar, detail::first_overlap_scalar};
  return table;
}

}  // namespace spacebound::kernels
