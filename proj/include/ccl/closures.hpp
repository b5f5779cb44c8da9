#pragma once
// Frobenius bracket powers, tight closure and test ideals.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ccl/groebner.hpp"
#include "ccl/ring_spec.hpp"

namespace ccl {

/// Limits on the Frobenius exponents tried by the bounded routes.
struct FrobeniusBounds {
  unsigned e_max = 3;
  std::uint64_t q_cap = 343;
};

/// Ideal generated by the q-th powers of the generators of I. Throws
/// InvalidArgument unless q is a power of the characteristic.
Ideal bracket_power(const Ideal& I, std::uint64_t q);

enum class ClosureStatus { Member, NonMember, UnknownUpToBound };
std::string to_string(ClosureStatus s);

struct FrobeniusCheck {
  std::uint64_t q;
  bool holds;  // c * x^q in I^[q] + J
};

struct ClosureVerdict {
  ClosureStatus status = ClosureStatus::UnknownUpToBound;
  std::optional<std::uint64_t> witness_q;
  std::uint64_t checked_up_to = 0;
  Polynomial multiplier;
  std::vector<FrobeniusCheck> checks;
};

/// Whether c * x^q lies in I^[q] + J.
bool frobenius_check(const Polynomial& x, const Ideal& I, const Polynomial& c, const RingSpec& R,
                     std::uint64_t q);

/// Checks c * x^q in I^[q] + J for q = p, ..., p^e_max (stopping at the cap).
/// The multiplier is taken to be a test element, so one failure proves
/// x not in I*. Passing every check only yields UnknownUpToBound; this route
/// never reports Member. Throws InvalidArgument when c is zero in R.
ClosureVerdict tc_membership_bounded(const Polynomial& x, const Ideal& I, const Polynomial& c,
                                     const RingSpec& R, const FrobeniusBounds& bounds = {});

/// Minimal primes of the defining ideal of a Stanley-Reisner ring; the zero
/// ideal for a polynomial ring. Throws UnsupportedInput otherwise.
std::vector<Ideal> stanley_reisner_primes(const RingSpec& R);

/// I* = intersection of (I + P) over the minimal primes P of R. The result
/// contains the defining ideal.
Ideal tight_closure_sr(const Ideal& I, const RingSpec& R);

/// Sum over minimal primes P_i of the intersection of the other primes.
Ideal test_ideal_sr(const RingSpec& R);

/// Returns an ideal containing I* for an ideal of R.
using ClosureOracle = std::function<Ideal(const Ideal&)>;

struct ParameterTestResult {
  /// The limit ideal L when the colon pattern was verified, otherwise the
  /// finite intersection.
  Ideal ideal;
  /// Intersection of the colons for t = 1..t_max.
  Ideal finite_intersection;
  /// The last two colons and the running intersection agree.
  bool stabilized = false;
  /// Every colon equals L + m^t, m the ideal of the variables; the
  /// intersection over all t is then L.
  bool limit_pattern_verified = false;
  /// (I_t : I_t*) for t = 1..t_max.
  std::vector<Ideal> colons;
};

/// Intersection over t of (I_t : I_t*), I_t = (f_1^t, ..., f_d^t) + J,
/// computed for t = 1..t_max. Uses tight_closure_sr when no oracle is given.
/// Throws DimensionError when the sop does not cut out a zero-dimensional
/// quotient and UnsupportedInput when no closure is available.
ParameterTestResult parameter_test_ideal(const RingSpec& R, const std::vector<Polynomial>& sop,
                                         unsigned t_max, const ClosureOracle& oracle = nullptr);

struct BoundedClosure {
  /// Contains I*: elements failing some checked q are excluded.
  Ideal upper_bound;
  std::size_t quotient_dimension = 0;
  std::vector<std::uint64_t> qs;
};

/// The F_p-linear maps x -> c x^q from R/I to R/(I^[q] + J), q = p..p^e_max,
/// have a common kernel containing I*/I when c is a test element. Requires
/// R/I to be finite-dimensional.
BoundedClosure bounded_tight_closure(const Ideal& I, const RingSpec& R, const Polynomial& c,
                                     const FrobeniusBounds& bounds = {});

struct IntegralDependenceCertificate {
  std::size_t degree = 0;
  /// a_ij in I with x t_i = sum_j a_ij t_j modulo J.
  std::vector<std::vector<Polynomial>> matrix_entries;
  /// Ring with one extra leading variable for the characteristic polynomial.
  RingPtr polynomial_ring;
  Polynomial characteristic_polynomial;
  /// coefficients[k] multiplies X^(n-k); coefficients[0] = 1.
  std::vector<Polynomial> coefficients;
  /// Generators of T used as the module basis.
  std::vector<Polynomial> module_generators;
};

/// Determinant trick for x T in I T. Throws PreconditionFailed when the
/// containment fails and InternalError when a verification step fails.
IntegralDependenceCertificate integral_dependence_certificate(const Polynomial& x,
                                                              const Ideal& I, const Ideal& T,
                                                              const RingSpec& R);

/// Re-checks a certificate: chi(x) in J and coefficient k in I^k + J.
bool verify_certificate(const IntegralDependenceCertificate& cert, const Polynomial& x,
                        const Ideal& I, const RingSpec& R);

}  // namespace ccl
