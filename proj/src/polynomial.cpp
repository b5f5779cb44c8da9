#include "ccl/polynomial.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "ccl/errors.hpp"

namespace ccl {

RingPtr PolyRing::make(std::uint32_t prime, std::vector<std::string> variables) {
  PrimeField field(prime);
  if (variables.size() > kMaxVariables) {
    throw InvalidArgument("at most " + std::to_string(kMaxVariables) +
                          " variables are supported");
  }
  std::set<std::string> seen;
  for (const auto& v : variables) {
    if (v.empty()) throw InvalidArgument("empty variable name");
    if (!seen.insert(v).second) throw InvalidArgument("duplicate variable " + v);
  }
  return RingPtr(new PolyRing(field, std::move(variables)));
}

std::optional<std::size_t> PolyRing::index_of(const std::string& name) const {
  auto it = std::find(vars_.begin(), vars_.end(), name);
  if (it == vars_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - vars_.begin());
}

RingPtr PolyRing::with_leading_variables(const std::vector<std::string>& names) const {
  std::vector<std::string> vars = names;
  vars.insert(vars.end(), vars_.begin(), vars_.end());
  return make(prime(), std::move(vars));
}

std::string PolyRing::to_string() const {
  std::ostringstream os;
  os << "Fp(" << prime() << ")[";
  for (std::size_t i = 0; i < vars_.size(); ++i) os << (i ? "," : "") << vars_[i];
  os << "]";
  return os.str();
}

bool same_ring(const RingPtr& a, const RingPtr& b) {
  return a == b || (a && b && *a == *b);
}

namespace {

// Sorts by key and merges equal monomials, dropping zeros.
std::vector<Term> canonicalize(const PrimeField& F, std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(),
            [](const Term& a, const Term& b) { return a.mono < b.mono; });
  std::vector<Term> out;
  out.reserve(terms.size());
  for (const Term& t : terms) {
    if (!out.empty() && out.back().mono == t.mono) {
      out.back().coeff = F.add(out.back().coeff, t.coeff);
    } else {
      out.push_back(t);
    }
    if (out.back().coeff == 0) out.pop_back();
  }
  return out;
}

std::vector<Term> merge_add(const PrimeField& F, std::span<const Term> a,
                            std::span<const Term> b, Coeff scale_b) {
  std::vector<Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    int c = i == a.size() ? 1 : j == b.size() ? -1 : compare_lex(a[i].mono, b[j].mono);
    if (c < 0) {
      out.push_back(a[i++]);
    } else if (c > 0) {
      out.push_back({b[j].mono, F.mul(b[j].coeff, scale_b)});
      ++j;
    } else {
      Coeff s = F.add(a[i].coeff, F.mul(b[j].coeff, scale_b));
      if (s != 0) out.push_back({a[i].mono, s});
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

Polynomial Polynomial::constant(RingPtr ring, std::int64_t c) {
  Coeff v = ring->field().reduce(c);
  std::vector<Term> terms;
  if (v != 0) terms.push_back({Monomial{}, v});
  return Polynomial(std::move(ring), std::move(terms));
}

Polynomial Polynomial::variable(RingPtr ring, std::size_t index) {
  if (index >= ring->num_vars()) throw InvalidArgument("variable index out of range");
  Monomial m;
  m.set(index, 1);
  return Polynomial(std::move(ring), {{m, 1}});
}

Polynomial Polynomial::variable(RingPtr ring, const std::string& name) {
  auto idx = ring->index_of(name);
  if (!idx) throw InvalidArgument("unknown variable " + name);
  return variable(std::move(ring), *idx);
}

Polynomial Polynomial::monomial(RingPtr ring, const Monomial& m, Coeff c) {
  return from_terms(std::move(ring), {{m, c}});
}

Polynomial Polynomial::from_terms(RingPtr ring, std::vector<Term> terms) {
  const std::size_t n = ring->num_vars();
  for (auto& t : terms) {
    for (std::size_t i = n; i < kMaxVariables; ++i) {
      if (t.mono[i] != 0) throw InvalidArgument("monomial uses undeclared variable");
    }
    t.coeff %= ring->prime();
  }
  auto canon = canonicalize(ring->field(), std::move(terms));
  return Polynomial(std::move(ring), std::move(canon));
}

bool Polynomial::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one());
}

std::int64_t Polynomial::total_degree() const {
  std::int64_t d = -1;
  for (const Term& t : terms_) d = std::max<std::int64_t>(d, t.mono.degree());
  return d;
}

Coeff Polynomial::coefficient(const Monomial& m) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                             [](const Term& t, const Monomial& k) { return t.mono < k; });
  return it != terms_.end() && it->mono == m ? it->coeff : 0;
}

std::vector<std::size_t> Polynomial::support() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < ring_->num_vars(); ++i) {
    for (const Term& t : terms_) {
      if (t.mono[i] != 0) {
        out.push_back(i);
        break;
      }
    }
  }
  return out;
}

void Polynomial::check_same_ring(const Polynomial& other) const {
  if (!same_ring(ring_, other.ring_)) {
    throw RingMismatch("incompatible operands: " + ring_->to_string() + " vs " +
                       other.ring_->to_string());
  }
}

Polynomial Polynomial::operator-() const { return scaled(ring_->prime() - 1); }

Polynomial Polynomial::scaled(Coeff c) const {
  const PrimeField& F = ring_->field();
  c %= F.prime();
  if (c == 0) return Polynomial(ring_);
  std::vector<Term> out = terms_;
  for (Term& t : out) t.coeff = F.mul(t.coeff, c);
  return Polynomial(ring_, std::move(out));
}

Polynomial Polynomial::times_monomial(const Monomial& m, Coeff c) const {
  const PrimeField& F = ring_->field();
  c %= F.prime();
  if (c == 0) return Polynomial(ring_);
  std::vector<Term> out;
  out.reserve(terms_.size());
  // Multiplying by a monomial preserves the lex order.
  for (const Term& t : terms_) out.push_back({t.mono * m, F.mul(t.coeff, c)});
  return Polynomial(ring_, std::move(out));
}

Polynomial operator+(const Polynomial& f, const Polynomial& g) {
  f.check_same_ring(g);
  return Polynomial(f.ring_, merge_add(f.ring_->field(), f.terms_, g.terms_, 1));
}

Polynomial operator-(const Polynomial& f, const Polynomial& g) {
  f.check_same_ring(g);
  return Polynomial(f.ring_, merge_add(f.ring_->field(), f.terms_, g.terms_,
                                       f.ring_->prime() - 1));
}

Polynomial operator*(const Polynomial& f, const Polynomial& g) {
  f.check_same_ring(g);
  if (f.is_zero() || g.is_zero()) return Polynomial(f.ring_);
  const PrimeField& F = f.ring_->field();
  const Polynomial& small = f.size() <= g.size() ? f : g;
  const Polynomial& big = f.size() <= g.size() ? g : f;
  std::vector<Term> acc;
  for (const Term& t : small.terms_) {
    std::vector<Term> row;
    row.reserve(big.size());
    for (const Term& u : big.terms_) row.push_back({u.mono * t.mono, F.mul(u.coeff, t.coeff)});
    acc = merge_add(F, acc, row, 1);
  }
  return Polynomial(f.ring_, std::move(acc));
}

bool operator==(const Polynomial& f, const Polynomial& g) {
  if (!same_ring(f.ring_, g.ring_) || f.terms_.size() != g.terms_.size()) return false;
  for (std::size_t i = 0; i < f.terms_.size(); ++i) {
    if (!(f.terms_[i].mono == g.terms_[i].mono) || f.terms_[i].coeff != g.terms_[i].coeff)
      return false;
  }
  return true;
}

Polynomial Polynomial::pow(std::uint64_t n) const {
  Polynomial result = constant(ring_, 1);
  Polynomial base = *this;
  while (n != 0) {
    if (n & 1) result = result * base;
    n >>= 1;
    if (n != 0) base = base * base;
  }
  return result;
}

std::string format_monomial(const PolyRing& ring, const Monomial& m) {
  std::string out;
  for (std::size_t i = 0; i < ring.num_vars(); ++i) {
    if (m[i] == 0) continue;
    if (!out.empty()) out += '*';
    out += ring.variable(i);
    if (m[i] > 1) out += "^" + std::to_string(m[i]);
  }
  return out.empty() ? "1" : out;
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::vector<const Term*> order;
  order.reserve(terms_.size());
  for (const Term& t : terms_) order.push_back(&t);
  const std::size_t n = ring_->num_vars();
  std::sort(order.begin(), order.end(), [n](const Term* a, const Term* b) {
    return compare_grevlex(a->mono, b->mono, n) > 0;
  });
  std::string out;
  bool first = true;
  for (const Term* t : order) {
    std::int64_t c = ring_->field().symmetric(t->coeff);
    bool negative = c < 0;
    std::uint64_t mag = static_cast<std::uint64_t>(negative ? -c : c);
    if (first) {
      if (negative) out += '-';
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;
    if (t->mono.is_one()) {
      out += std::to_string(mag);
    } else {
      if (mag != 1) out += std::to_string(mag) + "*";
      out += format_monomial(*ring_, t->mono);
    }
  }
  return out;
}

Polynomial Polynomial::map_to(const RingPtr& target) const {
  if (target->prime() != ring_->prime()) {
    throw RingMismatch("cannot map between characteristics " +
                       std::to_string(ring_->prime()) + " and " +
                       std::to_string(target->prime()));
  }
  constexpr std::size_t kAbsent = kMaxVariables;
  std::vector<std::size_t> dest(ring_->num_vars(), kAbsent);
  for (std::size_t i = 0; i < ring_->num_vars(); ++i) {
    if (auto idx = target->index_of(ring_->variable(i))) dest[i] = *idx;
  }
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const Term& t : terms_) {
    Monomial m;
    for (std::size_t i = 0; i < dest.size(); ++i) {
      if (t.mono[i] == 0) continue;
      if (dest[i] == kAbsent) {
        throw RingMismatch("variable " + ring_->variable(i) + " missing in target ring");
      }
      m.set(dest[i], t.mono[i]);
    }
    out.push_back({m, t.coeff});
  }
  return from_terms(target, std::move(out));
}

Polynomial Polynomial::substitute_zero(std::size_t index) const {
  std::vector<Term> out;
  for (const Term& t : terms_) {
    if (t.mono[index] == 0) out.push_back(t);
  }
  return Polynomial(ring_, std::move(out));
}

std::uint64_t prime_power(std::uint32_t p, unsigned e, std::uint64_t cap) {
  std::uint64_t q = 1;
  for (unsigned i = 0; i < e; ++i) {
    if (q > cap / p) {
      throw OverflowError(std::to_string(p) + "^" + std::to_string(e) +
                          " exceeds the configured cap " + std::to_string(cap));
    }
    q *= p;
  }
  return q;
}

std::optional<unsigned> log_base(std::uint64_t q, std::uint32_t p) {
  if (q == 0 || p < 2) return std::nullopt;
  unsigned e = 0;
  while (q % p == 0) {
    q /= p;
    ++e;
  }
  if (q != 1) return std::nullopt;
  return e;
}

Polynomial frobenius_power(const Polynomial& f, unsigned e) {
  const std::uint32_t p = f.ring().prime();
  const std::uint64_t q = prime_power(p, e, kMaxExponent);
  std::vector<Term> out;
  out.reserve(f.size());
  // c^q = c in F_p, so only the monomials move.
  for (const Term& t : f.terms()) out.push_back({t.mono.pow(q), t.coeff});
  Polynomial result = Polynomial::from_terms(f.ring_ptr(), std::move(out));

  if (f.size() <= 4 && p <= 13 && e <= 2) {
    Polynomial check = f;
    for (unsigned i = 0; i < e; ++i) check = check.pow(p);
    if (!(check == result)) {
      throw InternalError("Frobenius term-wise map disagrees with repeated powering for " +
                          f.to_string());
    }
  }
  return result;
}

}  // namespace ccl
