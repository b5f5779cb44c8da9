#include "ccl/monomial.hpp"

#include <string>

#include "ccl/errors.hpp"

namespace ccl {

Monomial::Monomial(std::initializer_list<unsigned> exps) {
  if (exps.size() > kMaxVariables) {
    throw InvalidArgument("monomial has more than " +
                          std::to_string(kMaxVariables) + " variables");
  }
  std::size_t i = 0;
  for (unsigned e : exps) set(i++, e);
}

Monomial::Monomial(std::span<const Exponent> exps) {
  if (exps.size() > kMaxVariables) {
    throw InvalidArgument("monomial has more than " +
                          std::to_string(kMaxVariables) + " variables");
  }
  for (std::size_t i = 0; i < exps.size(); ++i) exps_[i] = exps[i];
}

void Monomial::set(std::size_t i, std::uint64_t e) {
  if (e > kMaxExponent) {
    throw OverflowError("exponent " + std::to_string(e) + " exceeds " +
                        std::to_string(kMaxExponent));
  }
  exps_.at(i) = static_cast<Exponent>(e);
}

Monomial Monomial::operator*(const Monomial& other) const {
  Monomial out;
  if (!kernels::active().mul(exps_.data(), other.exps_.data(), out.exps_.data())) {
    throw OverflowError("exponent overflow in monomial product");
  }
  return out;
}

Monomial Monomial::operator/(const Monomial& divisor) const {
  Monomial out;
  kernels::active().quotient(exps_.data(), divisor.exps_.data(), out.exps_.data());
  return out;
}

Monomial Monomial::lcm(const Monomial& other) const {
  Monomial out;
  kernels::active().lcm(exps_.data(), other.exps_.data(), out.exps_.data());
  return out;
}

Monomial Monomial::pow(std::uint64_t k) const {
  Monomial out;
  for (std::size_t i = 0; i < kMaxVariables; ++i) {
    if (exps_[i] == 0) continue;
    if (k > kMaxExponent / exps_[i]) {
      throw OverflowError("exponent overflow raising monomial to power " +
                          std::to_string(k));
    }
    out.exps_[i] = static_cast<Exponent>(exps_[i] * k);
  }
  return out;
}

std::size_t Monomial::hash() const {
  // FNV-1a over the exponent bytes.
  std::uint64_t h = 1469598103934665603ull;
  for (Exponent e : exps_) {
    h ^= e;
    h *= 1099511628211ull;
  }
  return static_cast<std::size_t>(h);
}

}  // namespace ccl
