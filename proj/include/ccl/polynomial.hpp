#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ccl/field.hpp"
#include "ccl/monomial.hpp"

namespace ccl {

class PolyRing;
using RingPtr = std::shared_ptr<const PolyRing>;

/// Polynomial ring F_p[x_1, ..., x_n] with named variables.
class PolyRing {
 public:
  /// Validates the prime and the variable names (distinct, nonempty, at most
  /// kMaxVariables).
  static RingPtr make(std::uint32_t prime, std::vector<std::string> variables);

  std::uint32_t prime() const { return field_.prime(); }
  const PrimeField& field() const { return field_; }
  std::size_t num_vars() const { return vars_.size(); }
  const std::vector<std::string>& variables() const { return vars_; }
  const std::string& variable(std::size_t i) const { return vars_.at(i); }
  std::optional<std::size_t> index_of(const std::string& name) const;

  /// Same prime, with `names` prepended to the variable list.
  RingPtr with_leading_variables(const std::vector<std::string>& names) const;

  friend bool operator==(const PolyRing& a, const PolyRing& b) {
    return a.field_ == b.field_ && a.vars_ == b.vars_;
  }

  std::string to_string() const;

 private:
  PolyRing(PrimeField field, std::vector<std::string> vars)
      : field_(field), vars_(std::move(vars)) {}

  PrimeField field_;
  std::vector<std::string> vars_;
};

bool same_ring(const RingPtr& a, const RingPtr& b);

struct Term {
  Monomial mono;
  Coeff coeff;
};

/// Sparse polynomial in canonical form: terms sorted by the internal key
/// order (compare_lex ascending), no zero coefficients. Immutable value type.
class Polynomial {
 public:
  explicit Polynomial(RingPtr ring) : ring_(std::move(ring)) {}

  static Polynomial constant(RingPtr ring, std::int64_t c);
  static Polynomial variable(RingPtr ring, std::size_t index);
  static Polynomial variable(RingPtr ring, const std::string& name);
  static Polynomial monomial(RingPtr ring, const Monomial& m, Coeff c = 1);
  /// Builds from arbitrary (possibly repeated, possibly zero) terms.
  static Polynomial from_terms(RingPtr ring, std::vector<Term> terms);

  const PolyRing& ring() const { return *ring_; }
  const RingPtr& ring_ptr() const { return ring_; }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  std::size_t size() const { return terms_.size(); }
  std::span<const Term> terms() const { return terms_; }
  /// -1 for the zero polynomial.
  std::int64_t total_degree() const;
  Coeff coefficient(const Monomial& m) const;
  /// Variables occurring with positive exponent.
  std::vector<std::size_t> support() const;
  bool is_monomial() const { return terms_.size() == 1; }

  Polynomial operator-() const;
  Polynomial scaled(Coeff c) const;
  Polynomial times_monomial(const Monomial& m, Coeff c) const;
  Polynomial pow(std::uint64_t n) const;

  friend Polynomial operator+(const Polynomial& f, const Polynomial& g);
  friend Polynomial operator-(const Polynomial& f, const Polynomial& g);
  friend Polynomial operator*(const Polynomial& f, const Polynomial& g);
  friend bool operator==(const Polynomial& f, const Polynomial& g);

  /// Canonical text: terms by graded reverse lexicographic order, descending;
  /// coefficients as symmetric representatives.
  std::string to_string() const;

  /// Moves the polynomial into another ring of the same characteristic,
  /// matching variables by name. Throws RingMismatch if a variable that
  /// actually occurs is missing from the target.
  Polynomial map_to(const RingPtr& target) const;

  /// Replaces variable `index` by zero.
  Polynomial substitute_zero(std::size_t index) const;

 private:
  Polynomial(RingPtr ring, std::vector<Term> terms)
      : ring_(std::move(ring)), terms_(std::move(terms)) {}

  void check_same_ring(const Polynomial& other) const;

  RingPtr ring_;
  std::vector<Term> terms_;
};

/// f^(p^e) computed term by term (the Frobenius endomorphism). For small
/// inputs the result is cross-checked against repeated multiplication.
/// Throws OverflowError if an exponent leaves the representable range.
Polynomial frobenius_power(const Polynomial& f, unsigned e);

/// p^e, throwing OverflowError if it exceeds `cap`.
std::uint64_t prime_power(std::uint32_t p, unsigned e,
                          std::uint64_t cap = UINT64_MAX);

/// If q = p^e returns e, otherwise nullopt.
std::optional<unsigned> log_base(std::uint64_t q, std::uint32_t p);

std::string format_monomial(const PolyRing& ring, const Monomial& m);

}  // namespace ccl
