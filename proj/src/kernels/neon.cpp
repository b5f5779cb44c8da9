// NEON kernels for AArch64. Each exponent vector is two uint16x8_t halves.

#include "kernels_impl.hpp"

#if defined(__aarch64__) && defined(__ARM_NEON)

#include <arm_neon.h>

namespace ccl::kernels {
namespace {

struct Pair {
  uint16x8_t lo, hi;
};

inline Pair load(const Exponent* p) { return {vld1q_u16(p), vld1q_u16(p + 8)}; }

inline void store(Exponent* p, Pair v) {
  vst1q_u16(p, v.lo);
  vst1q_u16(p + 8, v.hi);
}

inline bool all_set(uint16x8_t lo, uint16x8_t hi) {
  return vminvq_u16(vandq_u16(lo, hi)) == 0xFFFF;
}

bool mul(const Exponent* a, const Exponent* b, Exponent* out) {
  Pair va = load(a), vb = load(b);
  Pair wrapped{vaddq_u16(va.lo, vb.lo), vaddq_u16(va.hi, vb.hi)};
  Pair saturated{vqaddq_u16(va.lo, vb.lo), vqaddq_u16(va.hi, vb.hi)};
  store(out, wrapped);
  return all_set(vceqq_u16(wrapped.lo, saturated.lo),
                 vceqq_u16(wrapped.hi, saturated.hi));
}

inline bool divides_v(Pair a, Pair b) {
  return all_set(vcleq_u16(a.lo, b.lo), vcleq_u16(a.hi, b.hi));
}

bool divides(const Exponent* a, const Exponent* b) {
  return divides_v(load(a), load(b));
}

void quotient(const Exponent* b, const Exponent* a, Exponent* out) {
  Pair vb = load(b), va = load(a);
  store(out, {vsubq_u16(vb.lo, va.lo), vsubq_u16(vb.hi, va.hi)});
}

void lcm(const Exponent* a, const Exponent* b, Exponent* out) {
  Pair va = load(a), vb = load(b);
  store(out, {vmaxq_u16(va.lo, vb.lo), vmaxq_u16(va.hi, vb.hi)});
}

bool coprime(const Exponent* a, const Exponent* b) {
  Pair va = load(a), vb = load(b);
  uint16x8_t m = vorrq_u16(vminq_u16(va.lo, vb.lo), vminq_u16(va.hi, vb.hi));
  return vmaxvq_u16(m) == 0;
}

std::uint32_t degree(const Exponent* a, std::size_t begin, std::size_t end) {
  alignas(16) static const std::uint16_t idx[kLanes] = {
      0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15};
  Pair va = load(a);
  uint16x8_t b = vdupq_n_u16(static_cast<std::uint16_t>(begin));
  uint16x8_t e = vdupq_n_u16(static_cast<std::uint16_t>(end));
  uint16x8_t i0 = vld1q_u16(idx), i1 = vld1q_u16(idx + 8);
  uint16x8_t m0 = vandq_u16(vcgeq_u16(i0, b), vcltq_u16(i0, e));
  uint16x8_t m1 = vandq_u16(vcgeq_u16(i1, b), vcltq_u16(i1, e));
  return vaddlvq_u16(vandq_u16(va.lo, m0)) + vaddlvq_u16(vandq_u16(va.hi, m1));
}

int compare_grevlex(const Exponent* a, const Exponent* b, std::size_t begin,
                    std::size_t end) {
  std::uint32_t da = degree(a, begin, end);
  std::uint32_t db = degree(b, begin, end);
  if (da != db) return da > db ? 1 : -1;
  for (std::size_t i = end; i-- > begin;) {
    if (a[i] != b[i]) return a[i] < b[i] ? 1 : -1;
  }
  return 0;
}

int compare_lex(const Exponent* a, const Exponent* b) {
  for (std::size_t i = 0; i < kLanes; ++i) {
    if (a[i] != b[i]) return a[i] > b[i] ? 1 : -1;
  }
  return 0;
}

std::ptrdiff_t find_divisor(const Exponent* table, std::size_t count,
                            const Exponent* m) {
  Pair vm = load(m);
  for (std::size_t k = 0; k < count; ++k) {
    if (divides_v(load(table + k * kLanes), vm))
      return static_cast<std::ptrdiff_t>(k);
  }
  return -1;
}

void axpy_mod(std::uint32_t* dst, const std::uint32_t* src,
              std::uint32_t scalar, std::uint32_t p, std::size_t n) {
  if (p >= kSimdAxpyMaxPrime) {
    axpy_mod_scalar(dst, src, scalar, p, n);
    return;
  }
  const uint32x4_t vp = vdupq_n_u32(p);
  const float32x4_t inv = vdupq_n_f32(1.0f / static_cast<float>(p));
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    uint32x4_t a = vmlaq_n_u32(vld1q_u32(dst + i), vld1q_u32(src + i), scalar);
    uint32x4_t q = vcvtq_u32_f32(vmulq_f32(vcvtq_f32_u32(a), inv));
    int32x4_t r = vreinterpretq_s32_u32(vmlsq_u32(a, q, vp));
    int32x4_t sp = vreinterpretq_s32_u32(vp);
    r = vaddq_s32(r, vandq_s32(vreinterpretq_s32_u32(vcltq_s32(r, vdupq_n_s32(0))), sp));
    r = vsubq_s32(r, vandq_s32(vreinterpretq_s32_u32(vcgeq_s32(r, sp)), sp));
    vst1q_u32(dst + i, vreinterpretq_u32_s32(r));
  }
  axpy_mod_scalar(dst + i, src + i, scalar, p, n - i);
}

}  // namespace

const KernelTable* neon_table_unchecked() {
  static const KernelTable table{"neon",        mul,          divides,
                                 quotient,      lcm,          coprime,
                                 degree,        compare_grevlex, compare_lex,
                                 find_divisor,  axpy_mod};
  return &table;
}

}  // namespace ccl::kernels

#else

namespace ccl::kernels {
const KernelTable* neon_table_unchecked() { return nullptr; }
}  // namespace ccl::kernels

#endif
