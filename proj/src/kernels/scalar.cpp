#include "kernels_impl.hpp"

namespace ccl::kernels {
namespace {

bool mul(const Exponent* a, const Exponent* b, Exponent* out) {
  bool ok = true;
  for (std::size_t i = 0; i < kLanes; ++i) {
    std::uint32_t s = std::uint32_t{a[i]} + b[i];
    ok &= s <= 0xFFFFu;
    out[i] = static_cast<Exponent>(s);
  }
  return ok;
}

bool divides(const Exponent* a, const Exponent* b) {
  for (std::size_t i = 0; i < kLanes; ++i)
    if (a[i] > b[i]) return false;
  return true;
}

void quotient(const Exponent* b, const Exponent* a, Exponent* out) {
  for (std::size_t i = 0; i < kLanes; ++i)
    out[i] = static_cast<Exponent>(b[i] - a[i]);
}

void lcm(const Exponent* a, const Exponent* b, Exponent* out) {
  for (std::size_t i = 0; i < kLanes; ++i) out[i] = a[i] > b[i] ? a[i] : b[i];
}

bool coprime(const Exponent* a, const Exponent* b) {
  for (std::size_t i = 0; i < kLanes; ++i)
    if (a[i] != 0 && b[i] != 0) return false;
  return true;
}

std::uint32_t degree(const Exponent* a, std::size_t begin, std::size_t end) {
  std::uint32_t d = 0;
  for (std::size_t i = begin; i < end; ++i) d += a[i];
  return d;
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
  for (std::size_t k = 0; k < count; ++k) {
    if (divides(table + k * kLanes, m)) return static_cast<std::ptrdiff_t>(k);
  }
  return -1;
}

}  // namespace

void axpy_mod_scalar(std::uint32_t* dst, const std::uint32_t* src,
                     std::uint32_t scalar, std::uint32_t p, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    dst[i] = static_cast<std::uint32_t>(
        (std::uint64_t{dst[i]} + std::uint64_t{scalar} * src[i]) % p);
  }
}

const KernelTable& scalar_kernels() {
  static const KernelTable table{"scalar",      mul,          divides,
                                 quotient,      lcm,          coprime,
                                 degree,        compare_grevlex, compare_lex,
                                 find_divisor,  axpy_mod_scalar};
  return table;
}

}  // namespace ccl::kernels
