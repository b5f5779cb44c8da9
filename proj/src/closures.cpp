#include "ccl/closures.hpp"

#include <map>

#include "ccl/errors.hpp"
#include "ccl/linalg.hpp"

namespace ccl {

namespace {

unsigned exponent_of(std::uint64_t q, std::uint32_t p) {
  auto e = log_base(q, p);
  if (!e) {
    throw InvalidArgument(std::to_string(q) + " is not a power of the characteristic " +
                          std::to_string(p));
  }
  return *e;
}

void check_ring(const RingPtr& ring, const RingSpec& R) {
  if (!same_ring(ring, R.ambient())) {
    throw RingMismatch("ideal is not in the ambient ring of " + R.to_string());
  }
}

Ideal tidy(const Ideal& I, const RingSpec& R) {
  return extend(Ideal(I.ring_ptr(), canonical_generators(I, R)), R);
}

// Frobenius exponents to visit: q = p^e for e = 1..e_max while q <= q_cap.
std::vector<std::uint64_t> frobenius_levels(std::uint32_t p, const FrobeniusBounds& bounds) {
  if (bounds.e_max == 0) throw InvalidArgument("e_max must be at least 1");
  std::vector<std::uint64_t> qs;
  std::uint64_t q = 1;
  for (unsigned e = 1; e <= bounds.e_max; ++e) {
    q *= p;
    if (q > bounds.q_cap) break;
    qs.push_back(q);
  }
  if (qs.empty()) {
    throw InvalidArgument("q cap " + std::to_string(bounds.q_cap) + " is below p = " +
                          std::to_string(p));
  }
  return qs;
}

void require_nonzero_multiplier(const Polynomial& c, const RingSpec& R) {
  if (ideal_member(c, defining_ideal(R))) {
    throw InvalidArgument("invalid multiplier: " + c.to_string() + " is zero in " +
                          R.to_string());
  }
}

Polynomial determinant(const std::vector<std::vector<Polynomial>>& M,
                       const std::vector<std::size_t>& idx, const RingPtr& ring) {
  if (idx.empty()) return Polynomial::constant(ring, 1);
  if (idx.size() == 1) return M[idx[0]][idx[0]];
  // Laplace expansion along the first row of the principal submatrix.
  Polynomial det(ring);
  const std::size_t row = idx[0];
  std::vector<std::size_t> rows(idx.begin() + 1, idx.end());
  for (std::size_t k = 0; k < idx.size(); ++k) {
    const Polynomial& a = M[row][idx[k]];
    if (a.is_zero()) continue;
    std::vector<std::size_t> cols;
    for (std::size_t j = 0; j < idx.size(); ++j)
      if (j != k) cols.push_back(idx[j]);
    // Minor with rows `rows` and columns `cols`.
    std::vector<std::vector<Polynomial>> sub(rows.size(), std::vector<Polynomial>());
    for (std::size_t r = 0; r < rows.size(); ++r)
      for (std::size_t c : cols) sub[r].push_back(M[rows[r]][c]);
    std::vector<std::size_t> all(rows.size());
    for (std::size_t r = 0; r < all.size(); ++r) all[r] = r;
    Polynomial minor = determinant(sub, all, ring);
    det = (k % 2 == 0) ? det + a * minor : det - a * minor;
  }
  return det;
}

}  // namespace

Ideal bracket_power(const Ideal& I, std::uint64_t q) {
  const unsigned e = exponent_of(q, I.ring().prime());
  std::vector<Polynomial> gens;
  for (const Polynomial& g : I.generators())
    if (!g.is_zero()) gens.push_back(frobenius_power(g, e));
  return Ideal(I.ring_ptr(), std::move(gens));
}

std::string to_string(ClosureStatus s) {
  switch (s) {
    case ClosureStatus::Member:
      return "MEMBER";
    case ClosureStatus::NonMember:
      return "NON_MEMBER";
    case ClosureStatus::UnknownUpToBound:
      return "UNKNOWN_UP_TO_BOUND";
  }
  return "?";
}

bool frobenius_check(const Polynomial& x, const Ideal& I, const Polynomial& c, const RingSpec& R,
                     std::uint64_t q) {
  check_ring(I.ring_ptr(), R);
  const unsigned e = exponent_of(q, R.prime());
  return ideal_member(c * frobenius_power(x, e), extend(bracket_power(I, q), R));
}

ClosureVerdict tc_membership_bounded(const Polynomial& x, const Ideal& I, const Polynomial& c,
                                     const RingSpec& R, const FrobeniusBounds& bounds) {
  check_ring(I.ring_ptr(), R);
  check_ring(x.ring_ptr(), R);
  check_ring(c.ring_ptr(), R);
  require_nonzero_multiplier(c, R);
  ClosureVerdict verdict{ClosureStatus::UnknownUpToBound, std::nullopt, 0, c, {}};
  for (std::uint64_t q : frobenius_levels(R.prime(), bounds)) {
    bool holds = frobenius_check(x, I, c, R, q);
    verdict.checks.push_back({q, holds});
    verdict.checked_up_to = q;
    if (!holds) {
      verdict.status = ClosureStatus::NonMember;
      verdict.witness_q = q;
      break;
    }
  }
  return verdict;
}

std::vector<Ideal> stanley_reisner_primes(const RingSpec& R) {
  if (!R.is_quotient()) return {Ideal::zero(R.ambient())};
  return minimal_primes_squarefree(defining_ideal(R));
}

Ideal tight_closure_sr(const Ideal& I, const RingSpec& R) {
  check_ring(I.ring_ptr(), R);
  std::vector<Ideal> primes = stanley_reisner_primes(R);
  Ideal meet = I + primes.front();
  for (std::size_t i = 1; i < primes.size(); ++i) meet = intersect_ideals(meet, I + primes[i]);
  return tidy(meet, R);
}

Ideal test_ideal_sr(const RingSpec& R) {
  std::vector<Ideal> primes = stanley_reisner_primes(R);
  if (primes.size() == 1) return Ideal::unit(R.ambient());
  Ideal sum = Ideal::zero(R.ambient());
  for (std::size_t i = 0; i < primes.size(); ++i) {
    std::optional<Ideal> others;
    for (std::size_t j = 0; j < primes.size(); ++j) {
      if (j == i) continue;
      others = others ? intersect_ideals(*others, primes[j]) : primes[j];
    }
    sum = sum + *others;
  }
  return tidy(sum, R);
}

ParameterTestResult parameter_test_ideal(const RingSpec& R, const std::vector<Polynomial>& sop,
                                         unsigned t_max, const ClosureOracle& oracle) {
  if (t_max == 0) throw InvalidArgument("t_max must be at least 1");
  for (const Polynomial& f : sop) check_ring(f.ring_ptr(), R);
  if (!is_zero_dimensional(extend(Ideal(R.ambient(), sop), R))) {
    throw DimensionError("the given elements are not a system of parameters: the quotient by "
                         "them is not zero-dimensional");
  }
  ClosureOracle closure = oracle;
  if (!closure) {
    try {
      stanley_reisner_primes(R);
    } catch (const UnsupportedInput& e) {
      throw UnsupportedInput(std::string("no exact tight closure for ") + R.to_string() +
                             " and no closure oracle given (" + e.what() + ")");
    }
    closure = [&R](const Ideal& I) { return tight_closure_sr(I, R); };
  }

  std::vector<Ideal> colons;
  std::optional<Ideal> meet, previous_meet;
  for (unsigned t = 1; t <= t_max; ++t) {
    std::vector<Polynomial> gens;
    for (const Polynomial& f : sop) gens.push_back(f.pow(t));
    Ideal It = extend(Ideal(R.ambient(), gens), R);
    Ideal star = closure(It);
    Ideal divisor(R.ambient(), canonical_generators(star, R));
    Ideal col = divisor.is_zero() ? Ideal::unit(R.ambient()) : colon_ideal(It, divisor);
    colons.push_back(tidy(col, R));
    previous_meet = meet;
    meet = meet ? intersect_ideals(*meet, colons.back()) : colons.back();
  }
  bool stabilized = t_max >= 2 && ideals_equal(colons[t_max - 1], colons[t_max - 2]) &&
                    ideals_equal(*previous_meet, *meet);

  // Candidate limit: generators of the last colon outside m^t_max.
  std::vector<Polynomial> vars;
  for (std::size_t v = 0; v < R.num_vars(); ++v) vars.push_back(Polynomial::variable(R.ambient(), v));
  Ideal m(R.ambient(), vars);
  Ideal deep = ideal_power(m, t_max);
  std::vector<Polynomial> kept;
  for (const Polynomial& g : canonical_generators(colons.back(), R))
    if (!ideal_member(g, deep)) kept.push_back(g);
  Ideal limit = extend(Ideal(R.ambient(), kept), R);
  bool pattern = true;
  for (unsigned t = 1; t <= t_max && pattern; ++t)
    pattern = ideals_equal(colons[t - 1], extend(limit + ideal_power(m, t), R));

  Ideal finite = tidy(*meet, R);
  return {pattern ? tidy(limit, R) : finite, finite, stabilized, pattern, std::move(colons)};
}

BoundedClosure bounded_tight_closure(const Ideal& I, const RingSpec& R, const Polynomial& c,
                                     const FrobeniusBounds& bounds) {
  check_ring(I.ring_ptr(), R);
  check_ring(c.ring_ptr(), R);
  require_nonzero_multiplier(c, R);
  const RingPtr& ring = R.ambient();
  Ideal base = extend(I, R);
  std::vector<Monomial> basis = quotient_vector_basis(R, base);
  BoundedClosure out{base, basis.size(), {}};
  if (basis.empty()) return out;

  // Column k holds the coordinates of NF(c * b_k^q), stacked over all q.
  std::map<std::pair<std::uint64_t, Monomial>, std::size_t> row_of;
  std::vector<std::vector<std::pair<std::size_t, Coeff>>> columns(basis.size());
  for (std::uint64_t q : frobenius_levels(R.prime(), bounds)) {
    out.qs.push_back(q);
    GroebnerBasis B = extend(bracket_power(I, q), R).groebner();
    for (std::size_t k = 0; k < basis.size(); ++k) {
      Polynomial image = normal_form(c * Polynomial::monomial(ring, basis[k].pow(q)), B);
      for (const Term& t : image.terms()) {
        auto [it, inserted] = row_of.try_emplace({q, t.mono}, row_of.size());
        columns[k].push_back({it->second, t.coeff});
      }
    }
  }
  FpMatrix A(row_of.size(), basis.size());
  for (std::size_t k = 0; k < basis.size(); ++k)
    for (auto [r, v] : columns[k]) A.at(r, k) = v;

  std::vector<Polynomial> gens = base.generators();
  for (const auto& v : nullspace(std::move(A), ring->field())) {
    std::vector<Term> terms;
    for (std::size_t k = 0; k < basis.size(); ++k)
      if (v[k] != 0) terms.push_back({basis[k], v[k]});
    gens.push_back(Polynomial::from_terms(ring, std::move(terms)));
  }
  out.upper_bound = tidy(Ideal(ring, std::move(gens)), R);
  return out;
}

IntegralDependenceCertificate integral_dependence_certificate(const Polynomial& x,
                                                              const Ideal& I, const Ideal& T,
                                                              const RingSpec& R) {
  check_ring(x.ring_ptr(), R);
  check_ring(I.ring_ptr(), R);
  check_ring(T.ring_ptr(), R);
  const RingPtr& ring = R.ambient();
  std::vector<Polynomial> tgens = canonical_generators(T, R);
  if (tgens.empty()) throw PreconditionFailed("T is the zero ideal of " + R.to_string());
  Ideal Tm(ring, tgens);
  if (!ideal_contains(extend(I * Tm, R), x * Tm)) {
    throw PreconditionFailed("x*T is not contained in I*T for x = " + x.to_string());
  }

  std::vector<Polynomial> igens;
  for (const Polynomial& u : I.generators())
    if (!u.is_zero()) igens.push_back(u);
  const std::size_t n = tgens.size();
  const std::size_t m = igens.size();
  std::vector<Polynomial> lift_gens;
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < m; ++k) lift_gens.push_back(igens[k] * tgens[j]);
  for (const Polynomial& g : R.defining()) lift_gens.push_back(g);

  IntegralDependenceCertificate cert{n, {}, nullptr, Polynomial(ring), {}, tgens};
  cert.matrix_entries.assign(n, std::vector<Polynomial>(n, Polynomial(ring)));
  for (std::size_t i = 0; i < n; ++i) {
    auto cof = lift(x * tgens[i], lift_gens);
    if (!cof) throw InternalError("lifting x*t_" + std::to_string(i + 1) + " failed");
    for (std::size_t j = 0; j < n; ++j) {
      Polynomial a(ring);
      for (std::size_t k = 0; k < m; ++k) a = a + (*cof)[j * m + k] * igens[k];
      cert.matrix_entries[i][j] = a;
    }
  }

  // det(X*Id - A) = sum_k (-1)^k e_k(A) X^(n-k), e_k = sum of principal k-minors.
  cert.coefficients.assign(n + 1, Polynomial(ring));
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (1u << i)) idx.push_back(i);
    Polynomial minor = determinant(cert.matrix_entries, idx, ring);
    Polynomial& slot = cert.coefficients[idx.size()];
    slot = (idx.size() % 2 == 0) ? slot + minor : slot - minor;
  }

  std::string name = "X";
  while (ring->index_of(name)) name += "_";
  cert.polynomial_ring = ring->with_leading_variables({name});
  Polynomial X = Polynomial::variable(cert.polynomial_ring, 0);
  Polynomial chi(cert.polynomial_ring);
  for (std::size_t k = 0; k <= n; ++k)
    chi = chi + cert.coefficients[k].map_to(cert.polynomial_ring) * X.pow(n - k);
  cert.characteristic_polynomial = chi;

  if (!verify_certificate(cert, x, I, R)) {
    throw InternalError("determinant-trick certificate failed verification for x = " +
                        x.to_string());
  }
  return cert;
}

bool verify_certificate(const IntegralDependenceCertificate& cert, const Polynomial& x,
                        const Ideal& I, const RingSpec& R) {
  const RingPtr& ring = R.ambient();
  const std::size_t n = cert.degree;
  if (cert.coefficients.size() != n + 1 || cert.module_generators.size() != n) return false;
  Ideal J = defining_ideal(R);
  Ideal IR = extend(I, R);
  for (std::size_t i = 0; i < n; ++i) {
    Polynomial row = x * cert.module_generators[i];
    for (std::size_t j = 0; j < n; ++j) {
      if (!ideal_member(cert.matrix_entries[i][j], IR)) return false;
      row = row - cert.matrix_entries[i][j] * cert.module_generators[j];
    }
    if (!ideal_member(row, J)) return false;
  }
  if (!(cert.coefficients[0] == Polynomial::constant(ring, 1))) return false;
  Polynomial value(ring);
  for (std::size_t k = 0; k <= n; ++k) value = value + cert.coefficients[k] * x.pow(n - k);
  if (!ideal_member(value, J)) return false;
  for (std::size_t k = 1; k <= n; ++k) {
    if (!ideal_member(cert.coefficients[k], extend(ideal_power(I, static_cast<unsigned>(k)), R)))
      return false;
  }
  return true;
}

}  // namespace ccl
