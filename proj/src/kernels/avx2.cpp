// Built with -mavx2. Only reached after a runtime CPU check in dispatch.cpp.
#include "kernels_internal.hpp"

#if defined(__AVX2__)
#include <immintrin.h>

namespace spacebound::kernels::detail {

namespace {

// Four 64-bit lanes per step. BoxSoA pads to a multiple of 8 so the tail
// load never reads past the allocation.
template <class MissFn>
inline void mask_loop(const BoxSoA& s, std::uint8_t* out, MissFn miss_of) {
  const std::size_t n = s.size();
  for (std::size_t i = 0; i < n; i += 4) {
    __m256i miss = _mm256_setzero_si256();
    for (int k = 0; k < 3; ++k) {
      const __m256i slo = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(s.lo(k) + i));
      const __m256i shi = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(s.hi(k) + i));
      miss = _mm256_or_si256(miss, miss_of(k, slo, shi));
    }
    const int bits = ~_mm256_movemask_pd(_mm256_castsi256_pd(miss)) & 0xF;
    const std::size_t lanes = n - i < 4 ? n - i : 4;
    for (std::size_t j = 0; j < lanes; ++j) out[i + j] = static_cast<std::uint8_t>((bits >> j) & 1);
  }
}

struct QueryLanes {
  __m256i lo[3];
  __m256i hi[3];
  explicit QueryLanes(const Box& q) {
    for (int k = 0; k < 3; ++k) {
      lo[k] = _mm256_set1_epi64x(q.lo[k]);
      hi[k] = _mm256_set1_epi64x(q.hi[k]);
    }
  }
};

void overlap_mask_avx2(const Box& q, const BoxSoA& s, std::uint8_t* out) {
  const QueryLanes ql(q);
  mask_loop(s, out, [&](int k, __m256i slo, __m256i shi) {
    return _mm256_or_si256(_mm256_cmpgt_epi64(slo, ql.hi[k]), _mm256_cmpgt_epi64(ql.lo[k], shi));
  });
}

void covers_mask_avx2(const Box& q, const BoxSoA& s, std::uint8_t* out) {
  const QueryLanes ql(q);
  mask_loop(s, out, [&](int k, __m256i slo, __m256i shi) {
    return _mm256_or_si256(_mm256_cmpgt_epi64(slo, ql.lo[k]), _mm256_cmpgt_epi64(ql.hi[k], shi));
  });
}

void inside_mask_avx2(const Box& q, const BoxSoA& s, std::uint8_t* out) {
  const QueryLanes ql(q);
  mask_loop(s, out, [&](int k, __m256i slo, __m256i shi) {
    return _mm256_or_si256(_mm256_cmpgt_epi64(ql.lo[k], slo), _mm256_cmpgt_epi64(shi, ql.hi[k]));
  });
}

std::size_t first_overlap_avx2(const Box& q, const BoxSoA& s) {
  const QueryLanes ql(q);
  const std::size_t n = s.size();
  for (std::size_t i = 0; i < n; i += 4) {
    __m256i miss = _mm256_setzero_si256();
    for (int k = 0; k < 3; ++k) {
      const __m256i slo = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(s.lo(k) + i));
      const __m256i shi = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(s.hi(k) + i));
      miss = _mm256_or_si256(miss, _mm256_cmpgt_epi64(slo, ql.hi[k]));
      miss = _mm256_or_si256(miss, _mm256_cmpgt_epi64(ql.lo[k], shi));
    }
    const int bits = ~_mm256_movemask_pd(_mm256_castsi256_pd(miss)) & 0xF;
    if (bits != 0) {
      const std::size_t hit = i + static_cast<std::size_t>(__builtin_ctz(static_cast<unsigned>(bits)));
      return hit < n ? hit : n;
    }
  }
  return n;
}

}  // namespace

const KernelTable* avx2_table() {
  static const KernelTable table{"avx2", overlap_mask_avx2, covers_mask_avx2, inside_mask_avx2,
                                 first_overlap_avx2};
  return &table;
}

}  // namespace spacebound::kernels::detail

#else

namespace spacebound::kernels::detail {
const KernelTable* avx2_table() { return nullptr; }
}  // namespace spacebound::kernels::detail

#endif
