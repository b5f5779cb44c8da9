#pragma once
// Internal declarations shared by the per-ISA translation units.

#include "ccl/kernels.hpp"

namespace ccl::kernels {

void axpy_mod_scalar(std::uint32_t* dst, const std::uint32_t* src,
                     std::uint32_t scalar, std::uint32_t p, std::size_t n);

// Defined only in the translation unit compiled for the ISA; callers must
// check CPU support first.
const KernelTable* avx2_table_unchecked();
const KernelTable* neon_table_unchecked();

// Largest modulus for which the vectorized axpy_mod is exact.
inline constexpr std::uint32_t kSimdAxpyMaxPrime = 1u << 15;

}  // namespace ccl::kernels
