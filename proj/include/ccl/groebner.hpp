#pragma once
// Buchberger engine: reduced Gröbner bases over F_p and the ideal operations
// built on them (membership, colon, intersection, elimination, minimal primes
// of square-free monomial ideals, standard-monomial bases of finite
// quotients).

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ccl/polynomial.hpp"
#include "ccl/ring_spec.hpp"

namespace ccl {

enum class OrderKind { GRevLex, Lex, Elimination };

/// Term order. Elimination(k) compares the graded reverse lexicographic order
/// on the first k variables (degree first) and breaks ties with grevlex on
/// the rest, so any monomial involving one of the first k variables beats any
/// monomial free of them.
class MonomialOrder {
 public:
  static MonomialOrder grevlex() { return MonomialOrder(OrderKind::GRevLex, 0); }
  static MonomialOrder lex() { return MonomialOrder(OrderKind::Lex, 0); }
  static MonomialOrder elimination(std::size_t k) {
    return MonomialOrder(OrderKind::Elimination, k);
  }

  OrderKind kind() const { return kind_; }
  std::size_t block() const { return block_; }

  int compare(const Monomial& a, const Monomial& b, std::size_t nvars) const {
    const auto& K = kernels::active();
    switch (kind_) {
      case OrderKind::GRevLex:
        return K.compare_grevlex(a.data(), b.data(), 0, nvars);
      case OrderKind::Lex:
        return K.compare_lex(a.data(), b.data());
      case OrderKind::Elimination:
        if (int c = K.compare_grevlex(a.data(), b.data(), 0, block_)) return c;
        return K.compare_grevlex(a.data(), b.data(), block_, nvars);
    }
    return 0;
  }

  std::string name() const;
  friend bool operator==(const MonomialOrder&, const MonomialOrder&) = default;

 private:
  MonomialOrder(OrderKind kind, std::size_t block) : kind_(kind), block_(block) {}
  OrderKind kind_;
  std::size_t block_;
};

/// Resource limits for one basis computation. Exceeding either raises
/// BudgetExceeded.
struct GbBudget {
  std::size_t max_basis_size = 4000;
  std::size_t max_reductions = 50'000'000;
};

GbBudget default_budget();
void set_default_budget(const GbBudget& budget);

namespace detail {
struct BasisData;
}

/// Reduced, monic Gröbner basis, elements sorted by leading monomial
/// (descending in the basis order).
class GroebnerBasis {
 public:
  const MonomialOrder& order() const;
  const RingPtr& ring_ptr() const;
  const std::vector<Polynomial>& elements() const;
  const std::vector<Monomial>& leading_monomials() const;
  bool is_unit() const;
  bool is_zero_ideal() const { return elements().empty(); }

 private:
  friend class GbAccess;
  explicit GroebnerBasis(std::shared_ptr<const detail::BasisData> data)
      : data_(std::move(data)) {}
  std::shared_ptr<const detail::BasisData> data_;
};

/// Finitely generated ideal with a write-once cache of Gröbner bases per
/// order. Copies share the cache.
class Ideal {
 public:
  explicit Ideal(RingPtr ring, std::vector<Polynomial> generators = {});

  static Ideal zero(RingPtr ring) { return Ideal(std::move(ring)); }
  static Ideal unit(RingPtr ring);

  const RingPtr& ring_ptr() const { return ring_; }
  const PolyRing& ring() const { return *ring_; }
  const std::vector<Polynomial>& generators() const { return gens_; }
  /// True when every generator is zero.
  bool is_zero() const;

  GroebnerBasis groebner(const MonomialOrder& order = MonomialOrder::grevlex()) const;
  GroebnerBasis groebner(const MonomialOrder& order, const GbBudget& budget) const;

 private:
  struct Cache;
  RingPtr ring_;
  std::vector<Polynomial> gens_;
  std::shared_ptr<Cache> cache_;
};

GroebnerBasis groebner_basis(const Ideal& I,
                             const MonomialOrder& order = MonomialOrder::grevlex());
GroebnerBasis groebner_basis(const Ideal& I, const MonomialOrder& order,
                             const GbBudget& budget);

/// Remainder of f on full reduction by B.
Polynomial normal_form(const Polynomial& f, const GroebnerBasis& B);

bool ideal_member(const Polynomial& f, const Ideal& I);
/// J ⊆ I, generator-wise.
bool ideal_contains(const Ideal& I, const Ideal& J);
bool ideals_equal(const Ideal& I, const Ideal& J);

Ideal operator+(const Ideal& I, const Ideal& J);
/// Ideal generated by pairwise generator products.
Ideal operator*(const Ideal& I, const Ideal& J);
Ideal operator*(const Polynomial& f, const Ideal& I);
Ideal ideal_power(const Ideal& I, unsigned k);
/// I + (defining ideal of R).
Ideal extend(const Ideal& I, const RingSpec& R);
Ideal defining_ideal(const RingSpec& R);

/// f / g when g divides f exactly, otherwise nullopt.
std::optional<Polynomial> divide_exact(const Polynomial& f, const Polynomial& g);

struct ColonDiagnostics {
  // Set when the divisor ideal is zero; the colon is then the unit ideal.
  bool divisor_was_zero = false;
};

/// (I : J) = {f : f J ⊆ I}, as the intersection of the colons by each
/// generator of J.
Ideal colon_ideal(const Ideal& I, const Ideal& J, ColonDiagnostics* diag = nullptr);
Ideal colon_by_element(const Ideal& I, const Polynomial& g);

/// I ∩ J via elimination of an auxiliary variable from tI + (1 - t)J.
Ideal intersect_ideals(const Ideal& I, const Ideal& J);

/// I ∩ F_p[x_{k+1}, ..., x_n], returned as an ideal of the same ring.
Ideal eliminate(const Ideal& I, std::size_t k);

/// Minimal primes of a square-free monomial ideal as minimal vertex covers of
/// the generators' supports. Throws UnsupportedInput otherwise.
std::vector<Ideal> minimal_primes_squarefree(const Ideal& I);

/// Standard monomials of F_p[x]/(I + defining). Throws DimensionError naming
/// a variable without a pure-power leading term when the quotient is not
/// finite-dimensional.
std::vector<Monomial> quotient_vector_basis(const RingSpec& R, const Ideal& I);

/// True when F_p[x]/I is finite-dimensional (every variable has a pure power
/// among the leading monomials).
bool is_zero_dimensional(const Ideal& I);

/// Cofactors h_i with f = sum h_i * generators[i], or nullopt when f is not
/// in the ideal.
std::optional<std::vector<Polynomial>> lift(const Polynomial& f,
                                            const std::vector<Polynomial>& generators);

/// Canonical text: the reduced grevlex basis, generators by ascending degree
/// and then descending lex order of leading monomials.
std::string to_string(const Ideal& I);

/// As to_string, but for an ideal of R: basis elements of I + J that already
/// lie in the defining ideal J are omitted.
std::string to_string(const Ideal& I, const RingSpec& R);

/// Generators of the reduced grevlex basis in the canonical display order.
std::vector<Polynomial> canonical_generators(const Ideal& I);

/// Canonical generators of (I + J) / J for the defining ideal J of R.
std::vector<Polynomial> canonical_generators(const Ideal& I, const RingSpec& R);

}  // namespace ccl
