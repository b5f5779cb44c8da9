#pragma once
// Data-parallel inner loops of the engine.
//
// Every kernel has a scalar reference implementation. SIMD variants (AVX2 on
// x86-64, NEON on AArch64) are compiled when the toolchain supports them and
// selected at runtime from CPU feature detection. The environment variable
// CCL_SIMD=scalar|avx2|neon|auto overrides the choice.
//
// Exponent vectors are fixed-width: kLanes unsigned 16-bit lanes, unused
// lanes zero. One vector is exactly one 256-bit register.

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

namespace ccl::kernels {

using Exponent = std::uint16_t;
inline constexpr std::size_t kLanes = 16;

struct KernelTable {
  const char* name;

  // out = a + b lanewise. Returns false (out unspecified) if a lane overflows.
  bool (*mul)(const Exponent* a, const Exponent* b, Exponent* out);
  // a <= b in every lane, i.e. monomial a divides monomial b.
  bool (*divides)(const Exponent* a, const Exponent* b);
  // out = b - a. Requires divides(a, b).
  void (*quotient)(const Exponent* b, const Exponent* a, Exponent* out);
  void (*lcm)(const Exponent* a, const Exponent* b, Exponent* out);
  // min(a, b) == 0 in every lane.
  bool (*coprime)(const Exponent* a, const Exponent* b);
  // Sum of lanes [begin, end).
  std::uint32_t (*degree)(const Exponent* a, std::size_t begin, std::size_t end);
  // Graded reverse lexicographic comparison restricted to lanes [begin, end).
  int (*compare_grevlex)(const Exponent* a, const Exponent* b, std::size_t begin,
                         std::size_t end);
  // Lexicographic comparison, lane 0 most significant.
  int (*compare_lex)(const Exponent* a, const Exponent* b);
  // Index of the first of `count` contiguous vectors in `table` dividing m,
  // or -1.
  std::ptrdiff_t (*find_divisor)(const Exponent* table, std::size_t count,
                                 const Exponent* m);
  // dst[i] = (dst[i] + scalar * src[i]) mod p, all inputs reduced mod p.
  void (*axpy_mod)(std::uint32_t* dst, const std::uint32_t* src,
                   std::uint32_t scalar, std::uint32_t p, std::size_t n);
};

const KernelTable& scalar_kernels();
// nullptr when not compiled in or not supported by this CPU.
const KernelTable* avx2_kernels();
const KernelTable* neon_kernels();

// Every table usable on this machine, scalar first.
std::vector<const KernelTable*> available_kernels();

// The table in use by the library.
const KernelTable& active();

// Force a table by name ("scalar", "avx2", "neon", "auto"). Returns false if
// the name is unknown or unavailable; the active table is then unchanged.
bool select_kernels(std::string_view name);

}  // namespace ccl::kernels
