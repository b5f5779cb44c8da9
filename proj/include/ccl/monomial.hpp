#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>

#include "ccl/kernels.hpp"

namespace ccl {

using Exponent = kernels::Exponent;
inline constexpr std::size_t kMaxVariables = kernels::kLanes;
inline constexpr std::uint32_t kMaxExponent = 0xFFFF;

/// Exponent vector of fixed capacity kMaxVariables; lanes past the ring's
/// variable count stay zero. Arithmetic goes through the active kernel table.
class Monomial {
 public:
  Monomial() = default;
  Monomial(std::initializer_list<unsigned> exps);
  explicit Monomial(std::span<const Exponent> exps);

  Exponent operator[](std::size_t i) const { return exps_[i]; }
  void set(std::size_t i, std::uint64_t e);
  const Exponent* data() const { return exps_.data(); }

  std::uint32_t degree() const {
    return kernels::active().degree(exps_.data(), 0, kMaxVariables);
  }
  bool is_one() const { return degree() == 0; }

  bool divides(const Monomial& other) const {
    return kernels::active().divides(exps_.data(), other.exps_.data());
  }
  bool coprime(const Monomial& other) const {
    return kernels::active().coprime(exps_.data(), other.exps_.data());
  }

  /// Throws OverflowError if an exponent exceeds kMaxExponent.
  Monomial operator*(const Monomial& other) const;
  /// this / divisor. Requires divisor.divides(*this).
  Monomial operator/(const Monomial& divisor) const;
  Monomial lcm(const Monomial& other) const;
  /// Throws OverflowError on exponent overflow.
  Monomial pow(std::uint64_t k) const;

  /// Canonical internal key order (lexicographic, variable 0 most
  /// significant). Independent of any term order used for Gröbner bases.
  friend int compare_lex(const Monomial& a, const Monomial& b) {
    return kernels::active().compare_lex(a.exps_.data(), b.exps_.data());
  }
  friend bool operator==(const Monomial& a, const Monomial& b) {
    return a.exps_ == b.exps_;
  }
  friend bool operator<(const Monomial& a, const Monomial& b) {
    return compare_lex(a, b) < 0;
  }

  std::size_t hash() const;

 private:
  std::array<Exponent, kMaxVariables> exps_{};
};

/// Graded reverse lexicographic comparison on the first `nvars` variables.
inline int compare_grevlex(const Monomial& a, const Monomial& b, std::size_t nvars) {
  return kernels::active().compare_grevlex(a.data(), b.data(), 0, nvars);
}

}  // namespace ccl

template <>
struct std::hash<ccl::Monomial> {
  std::size_t operator()(const ccl::Monomial& m) const noexcept { return m.hash(); }
};
