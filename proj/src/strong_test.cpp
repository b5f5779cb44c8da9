#include "ccl/strong_test.hpp"

#include <algorithm>
#include <functional>

#include "ccl/errors.hpp"

namespace ccl {

namespace {

ClosureOracle closure_for(const RingSpec& R, const ClosureOracle& oracle) {
  if (oracle) return oracle;
  try {
    stanley_reisner_primes(R);
  } catch (const UnsupportedInput& e) {
    throw UnsupportedInput("no exact tight closure for " + R.to_string() + " (" + e.what() + ")");
  }
  return [R](const Ideal& I) { return tight_closure_sr(I, R); };
}

bool is_monomial_ideal(const Ideal& I) {
  const GroebnerBasis B = I.groebner();
  return std::all_of(B.elements().begin(), B.elements().end(),
                     [](const Polynomial& g) { return g.is_monomial(); });
}

std::string describe(const std::vector<Polynomial>& gens) {
  std::string out = "(";
  for (std::size_t i = 0; i < gens.size(); ++i) out += (i ? ", " : "") + gens[i].to_string();
  return out + ")";
}

}  // namespace

StrongTestReport check_strong_property(const Ideal& T, const std::vector<Ideal>& family,
                                       const RingSpec& R, const ClosureOracle& oracle) {
  ClosureOracle closure = closure_for(R, oracle);
  StrongTestReport report{T, family, {}, true, canonical_generators(T, R).empty(), !oracle};
  for (const Ideal& I : family) {
    Ideal star = closure(I);
    Ideal ti = extend(T * I, R);
    Ideal tstar = extend(T * star, R);
    if (!ideal_contains(tstar, ti)) {
      throw InternalError("T*I is not contained in T*I* for I = " + to_string(I, R));
    }
    bool equal = ideals_equal(ti, tstar);
    report.all_equal = report.all_equal && equal;
    report.per_ideal.push_back({I, star, ti, tstar, equal});
  }
  return report;
}

bool is_parameter_test_element(const Polynomial& f, const RingSpec& R) {
  if (!ideal_member(f, test_ideal_sr(R))) return false;
  for (const Ideal& P : stanley_reisner_primes(R))
    if (ideal_member(f, P)) return false;
  return true;
}

ParamFamily build_param_family(const std::vector<Polynomial>& c, const std::vector<Polynomial>& d,
                               const std::vector<Polynomial>& tail, const RingSpec& R) {
  if (c.size() != 2 || d.size() != 2) {
    throw InvalidArgument("a parameter family takes exactly two c and two d elements");
  }
  Ideal tau = test_ideal_sr(R);
  std::vector<Ideal> primes = stanley_reisner_primes(R);
  auto check_element = [&](const Polynomial& f, const std::string& name) {
    if (!ideal_member(f, tau)) {
      throw PreconditionFailed(name + " = " + f.to_string() + " is not in the parameter test ideal " +
                               to_string(tau, R));
    }
    for (const Ideal& P : primes) {
      if (ideal_member(f, P)) {
        throw PreconditionFailed(name + " = " + f.to_string() + " lies in the minimal prime " +
                                 to_string(P));
      }
    }
  };
  check_element(c[0], "c1");
  check_element(c[1], "c2");
  check_element(d[0], "d1");
  check_element(d[1], "d2");

  auto checked_sop = [&](std::vector<Polynomial> gens, const std::string& name) {
    std::shared_ptr<const SopData> S;
    try {
      S = std::make_shared<const SopData>(make_sop(R, gens));
    } catch (const DimensionError& e) {
      throw PreconditionFailed(name + " = " + describe(gens) +
                               " is not a system of parameters: " + e.what());
    }
    if (!S->regularity_checked) {
      throw PreconditionFailed(name + " = " + describe(gens) + " is not a regular sequence");
    }
    return S;
  };
  std::vector<Polynomial> gens{c[0] * d[0], c[1] * d[1]};
  gens.insert(gens.end(), tail.begin(), tail.end());
  auto S = checked_sop(gens, "(c1 d1, c2 d2, tail)");
  std::vector<Polynomial> cgens{c[0], c[1]};
  cgens.insert(cgens.end(), tail.begin(), tail.end());
  auto CS = checked_sop(cgens, "(c1, c2, tail)");
  return {c, d, tail, extend(Ideal(R.ambient(), gens), R), S, CS};
}

std::vector<Polynomial> find_parameter_test_elements(const RingSpec& R, unsigned degree_bound,
                                                     std::size_t max_results) {
  if (degree_bound < 1) throw InvalidArgument("degree bound must be at least 1");
  const RingPtr& ring = R.ambient();
  const std::size_t n = ring->num_vars();
  Ideal J = defining_ideal(R);
  Ideal tau = test_ideal_sr(R);
  std::vector<Ideal> primes = stanley_reisner_primes(R);
  const bool monomial_tau = is_monomial_ideal(tau);
  const GroebnerBasis JB = J.groebner();

  // Standard monomials of degree <= degree_bound, by degree.
  std::vector<Monomial> monos;
  std::function<void(std::size_t, unsigned, Monomial&)> walk = [&](std::size_t v, unsigned left,
                                                                   Monomial& m) {
    if (v == n) {
      bool standard = std::none_of(JB.leading_monomials().begin(), JB.leading_monomials().end(),
                                   [&](const Monomial& lead) { return lead.divides(m); });
      Polynomial f = Polynomial::monomial(ring, m);
      if (standard && (!monomial_tau || ideal_member(f, tau))) monos.push_back(m);
      return;
    }
    for (unsigned e = 0; e <= left; ++e) {
      m.set(v, e);
      walk(v + 1, left - e, m);
    }
    m.set(v, 0);
  };
  Monomial start;
  walk(0, degree_bound, start);
  std::stable_sort(monos.begin(), monos.end(), [](const Monomial& a, const Monomial& b) {
    return a.degree() < b.degree();
  });

  const std::uint32_t p = R.prime();
  std::vector<Polynomial> found;
  std::vector<std::size_t> pick;
  std::vector<Coeff> coeffs;
  auto consider = [&]() {
    std::vector<Term> terms;
    for (std::size_t i = 0; i < pick.size(); ++i) terms.push_back({monos[pick[i]], coeffs[i]});
    Polynomial f = Polynomial::from_terms(ring, std::move(terms));
    if (!monomial_tau && !ideal_member(f, tau)) return;
    for (const Ideal& P : primes)
      if (ideal_member(f, P)) return;
    found.push_back(f);
  };
  // Coefficient vectors with the first entry 1 (monic up to scaling).
  std::function<bool(std::size_t)> scale = [&](std::size_t i) {
    if (max_results && found.size() >= max_results) return false;
    if (i == pick.size()) {
      consider();
      return true;
    }
    for (Coeff a = 1; a < p; ++a) {
      coeffs[i] = a;
      if (!scale(i + 1)) return false;
      if (i == 0) break;
    }
    return true;
  };
  std::function<bool(std::size_t, std::size_t)> choose = [&](std::size_t from, std::size_t k) {
    if (k == 0) {
      coeffs.assign(pick.size(), 1);
      return scale(0);
    }
    for (std::size_t i = from; i + k <= monos.size(); ++i) {
      pick.push_back(i);
      bool go_on = choose(i + 1, k - 1);
      pick.pop_back();
      if (!go_on) return false;
    }
    return true;
  };
  for (std::size_t k = 1; k <= monos.size(); ++k)
    if (!choose(0, k)) break;
  return found;
}

bool verify_lemma_containment(const ParamFamily& family, const RingSpec& R) {
  Ideal star = tight_closure_sr(family.ideal, R);
  std::vector<Polynomial> cgens{family.c[0], family.c[1]};
  cgens.insert(cgens.end(), family.tail.begin(), family.tail.end());
  Ideal cstar = tight_closure_sr(Ideal(R.ambient(), cgens), R);
  Ideal rhs = extend(family.ideal + (family.d[0] * family.d[1]) * cstar, R);
  return ideal_contains(rhs, star);
}

}  // namespace ccl
