#pragma once

#include "spacebound/kernels.hpp"

namespace spacebound::kernels::detail {

void overlap_mask_scalar(const Box& q, const BoxSoA& s, std::uint8_t* out);
void covers_mask_scalar(const Box& q, const BoxSoA& s, std::uint8_t* out);
void inside_mask_scalar(const Box& q, const BoxSoA& s, std::uint8_t* out);
std::size_t first_overlap_scalar(const Box& q, const BoxSoA& s);

// Defined only when the matching source is compiled for the target.
const KernelTable* avx2_table();
const KernelTable* neon_table();

}  // namespace spacebound::kernels::detail
