// AVX2 kernels. This translation unit is compiled with -mavx2 and must only
// be entered after a runtime CPU check.

#include "kernels_impl.hpp"

#if defined(CCL_HAVE_AVX2)

#include <immintrin.h>

namespace ccl::kernels {
namespace {

inline __m256i load(const Exponent* p) {
  return _mm256_loadu_si256(reinterpret_cast<const __m256i*>(p));
}

inline void store(Exponent* p, __m256i v) {
  _mm256_storeu_si256(reinterpret_cast<__m256i*>(p), v);
}

inline bool all_ones(__m256i v) { return _mm256_movemask_epi8(v) == -1; }

// Byte mask selecting lanes [begin, end) in a movemask result.
inline std::uint32_t lane_bits(std::size_t begin, std::size_t end) {
  std::uint64_t hi = (std::uint64_t{1} << (2 * end)) - 1;
  std::uint64_t lo = (std::uint64_t{1} << (2 * begin)) - 1;
  return static_cast<std::uint32_t>(hi & ~lo);
}

inline __m256i lane_mask(std::size_t begin, std::size_t end) {
  const __m256i idx =
      _mm256_setr_epi16(0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15);
  __m256i below_end =
      _mm256_cmpgt_epi16(_mm256_set1_epi16(static_cast<short>(end)), idx);
  __m256i below_begin =
      _mm256_cmpgt_epi16(_mm256_set1_epi16(static_cast<short>(begin)), idx);
  return _mm256_andnot_si256(below_begin, below_end);
}

inline std::uint32_t hsum_u16(__m256i v) {
  __m256i lo = _mm256_cvtepu16_epi32(_mm256_castsi256_si128(v));
  __m256i hi = _mm256_cvtepu16_epi32(_mm256_extracti128_si256(v, 1));
  __m256i s = _mm256_add_epi32(lo, hi);
  __m128i t = _mm_add_epi32(_mm256_castsi256_si128(s),
                            _mm256_extracti128_si256(s, 1));
  t = _mm_add_epi32(t, _mm_shuffle_epi32(t, _MM_SHUFFLE(1, 0, 3, 2)));
  t = _mm_add_epi32(t, _mm_shuffle_epi32(t, _MM_SHUFFLE(2, 3, 0, 1)));
  return static_cast<std::uint32_t>(_mm_cvtsi128_si32(t));
}

bool mul(const Exponent* a, const Exponent* b, Exponent* out) {
  __m256i va = load(a), vb = load(b);
  __m256i wrapped = _mm256_add_epi16(va, vb);
  __m256i saturated = _mm256_adds_epu16(va, vb);
  store(out, wrapped);
  return all_ones(_mm256_cmpeq_epi16(wrapped, saturated));
}

inline bool divides_v(__m256i va, __m256i vb) {
  return all_ones(_mm256_cmpeq_epi16(_mm256_max_epu16(va, vb), vb));
}

bool divides(const Exponent* a, const Exponent* b) {
  return divides_v(load(a), load(b));
}

void quotient(const Exponent* b, const Exponent* a, Exponent* out) {
  store(out, _mm256_sub_epi16(load(b), load(a)));
}

void lcm(const Exponent* a, const Exponent* b, Exponent* out) {
  store(out, _mm256_max_epu16(load(a), load(b)));
}

bool coprime(const Exponent* a, const Exponent* b) {
  __m256i m = _mm256_min_epu16(load(a), load(b));
  return _mm256_testz_si256(m, m) != 0;
}

std::uint32_t degree(const Exponent* a, std::size_t begin, std::size_t end) {
  if (begin == 0 && end == kLanes) return hsum_u16(load(a));
  return hsum_u16(_mm256_and_si256(load(a), lane_mask(begin, end)));
}

int compare_grevlex(const Exponent* a, const Exponent* b, std::size_t begin,
                    std::size_t end) {
  __m256i va = load(a), vb = load(b);
  std::uint32_t da = degree(a, begin, end);
  std::uint32_t db = degree(b, begin, end);
  if (da != db) return da > db ? 1 : -1;
  std::uint32_t eq =
      static_cast<std::uint32_t>(_mm256_movemask_epi8(_mm256_cmpeq_epi16(va, vb)));
  std::uint32_t diff = ~eq & lane_bits(begin, end);
  if (diff == 0) return 0;
  std::size_t i = static_cast<std::size_t>(31 - __builtin_clz(diff)) / 2;
  return a[i] < b[i] ? 1 : -1;
}

int compare_lex(const Exponent* a, const Exponent* b) {
  std::uint32_t eq = static_cast<std::uint32_t>(
      _mm256_movemask_epi8(_mm256_cmpeq_epi16(load(a), load(b))));
  std::uint32_t diff = ~eq;
  if (diff == 0) return 0;
  std::size_t i = static_cast<std::size_t>(__builtin_ctz(diff)) / 2;
  return a[i] > b[i] ? 1 : -1;
}

std::ptrdiff_t find_divisor(const Exponent* table, std::size_t count,
                            const Exponent* m) {
  __m256i vm = load(m);
  std::size_t k = 0;
  for (; k + 2 <= count; k += 2) {
    __m256i t0 = load(table + k * kLanes);
    __m256i t1 = load(table + (k + 1) * kLanes);
    bool d0 = divides_v(t0, vm);
    bool d1 = divides_v(t1, vm);
    if (d0) return static_cast<std::ptrdiff_t>(k);
    if (d1) return static_cast<std::ptrdiff_t>(k + 1);
  }
  if (k < count && divides_v(load(table + k * kLanes), vm))
    return static_cast<std::ptrdiff_t>(k);
  return -1;
}

void axpy_mod(std::uint32_t* dst, const std::uint32_t* src,
              std::uint32_t scalar, std::uint32_t p, std::size_t n) {
  if (p >= kSimdAxpyMaxPrime) {
    axpy_mod_scalar(dst, src, scalar, p, n);
    return;
  }
  // a = dst + scalar*src < p + p^2 < 2^31. The float quotient is off by at
  // most one for p < 2^15, corrected below.
  const __m256i vs = _mm256_set1_epi32(static_cast<int>(scalar));
  const __m256i vp = _mm256_set1_epi32(static_cast<int>(p));
  const __m256i zero = _mm256_setzero_si256();
  const __m256 inv = _mm256_set1_ps(1.0f / static_cast<float>(p));
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    __m256i d = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(dst + i));
    __m256i s = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + i));
    __m256i a = _mm256_add_epi32(d, _mm256_mullo_epi32(s, vs));
    __m256i q = _mm256_cvttps_epi32(_mm256_mul_ps(_mm256_cvtepi32_ps(a), inv));
    __m256i r = _mm256_sub_epi32(a, _mm256_mullo_epi32(q, vp));
    r = _mm256_add_epi32(r, _mm256_and_si256(_mm256_cmpgt_epi32(zero, r), vp));
    __m256i ge = _mm256_cmpgt_epi32(r, _mm256_sub_epi32(vp, _mm256_set1_epi32(1)));
    r = _mm256_sub_epi32(r, _mm256_and_si256(ge, vp));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i), r);
  }
  axpy_mod_scalar(dst + i, src + i, scalar, p, n - i);
}

}  // namespace

const KernelTable* avx2_table_unchecked() {
  static const KernelTable table{"avx2",        mul,          divides,
                                 quotient,      lcm,          coprime,
                                 degree,        compare_grevlex, compare_lex,
                                 find_divisor,  axpy_mod};
  return &table;
}

}  // namespace ccl::kernels

#else

namespace ccl::kernels {
const KernelTable* avx2_table_unchecked() { return nullptr; }
}  // namespace ccl::kernels

#endif
