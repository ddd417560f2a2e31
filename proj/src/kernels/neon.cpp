#include "kernels_internal.hpp"

#if defined(__aarch64__) && defined(__ARM_NEON)
#include <arm_neon.h>

namespace spacebound::kernels::detail {

namespace {

// Two 64-bit lanes per step; vcgtq_s64 needs AArch64.
template <class MissFn>
inline void mask_loop(const BoxSoA& s, std::uint8_t* out, MissFn miss_of) {
  const std::size_t n = s.size();
  for (std::size_t i = 0; i < n; i += 2) {
    uint64x2_t miss = vdupq_n_u64(0);
    for (int k = 0; k < 3; ++k) {
      const int64x2_t slo = vld1q_s64(s.lo(k) + i);
      const int64x2_t shi = vld1q_s64(s.hi(k) + i);
      miss = vorrq_u64(miss, miss_of(k, slo, shi));
    }
    out[i] = vgetq_lane_u64(miss, 0) == 0 ? 1 : 0;
    if (i + 1 < n) out[i + 1] = vgetq_lane_u64(miss, 1) == 0 ? 1 : 0;
  }
}

struct QueryLanes {
  int64x2_t lo[3];
  int64x2_t hi[3];
  explicit QueryLanes(const Box& q) {
    for (int k = 0; k < 3; ++k) {
      lo[k] = vdupq_n_s64(q.lo[k]);
      hi[k] = vdupq_n_s64(q.hi[k]);
    }
  }
};

void overlap_mask_neon(const Box& q, const BoxSoA& s, std::uint8_t* out) {
  const QueryLanes ql(q);
  mask_loop(s, out, [&](int k, int64x2_t slo, int64x2_t shi) {
    return vorrq_u64(vcgtq_s64(slo, ql.hi[k]), vcgtq_s64(ql.lo[k], shi));
  });
}

void covers_mask_neon(const Box& q, const BoxSoA& s, std::uint8_t* out) {
  const QueryLanes ql(q);
  mask_loop(s, out, [&](int k, int64x2_t slo, int64x2_t shi) {
    return vorrq_u64(vcgtq_s64(slo, ql.lo[k]), vcgtq_s64(ql.hi[k], shi));
  });
}

void inside_mask_neon(const Box& q, const BoxSoA& s, std::uint8_t* out) {
  const QueryLanes ql(q);
  mask_loop(s, out, [&](int k, int64x2_t slo, int64x2_t shi) {
    return vorrq_u64(vcgtq_s64(ql.lo[k], slo), vcgtq_s64(shi, ql.hi[k]));
  });
}

std::size_t first_overlap_neon(const Box& q, const BoxSoA& s) {
  const QueryLanes ql(q);
  const std::size_t n = s.size();
  for (std::size_t i = 0; i < n; i += 2) {
    uint64x2_t miss = vdupq_n_u64(0);
    for (int k = 0; k < 3; ++k) {
      const int64x2_t slo = vld1q_s64(s.lo(k) + i);
      const int64x2_t shi = vld1q_s64(s.hi(k) + i);
      miss = vorrq_u64(miss, vcgtq_s64(slo, ql.hi[k]));
      miss = vorrq_u64(miss, vcgtq_s64(ql.lo[k], shi));
    }
    if (vgetq_lane_u64(miss, 0) == 0) return i;
    if (i + 1 < n && vgetq_lane_u64(miss, 1) == 0) return i + 1;
  }
  return n;
}

}  // namespace

const KernelTable* neon_table() {
  static const KernelTable table{"neon", overlap_mask_neon, covers_mask_neon, inside_mask_neon,
                                 first_overlap_neon};
  return &table;
}

}  // namespace spacebound::kernels::detail

#else

namespace spacebound::kernels::detail {
const KernelTable* neon_table() { return nullptr; }
}  // namespace spacebound::kernels::detail

#endif
