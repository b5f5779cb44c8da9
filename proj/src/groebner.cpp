#include "ccl/groebner.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>

#include "ccl/errors.hpp"

namespace ccl {

static_assert(sizeof(Monomial) == sizeof(Exponent) * kMaxVariables,
              "leading-monomial tables are scanned as contiguous exponent rows");

namespace detail {

using Poly = std::vector<Term>;  // descending in the engine's order

struct BasisData {
  RingPtr ring;
  MonomialOrder order = MonomialOrder::grevlex();
  std::vector<Polynomial> elements;
  std::vector<Poly> sorted;
  std::vector<Monomial> leads;
};

}  // namespace detail

using detail::Poly;

class GbAccess {
 public:
  static GroebnerBasis make(std::shared_ptr<const detail::BasisData> d) {
    return GroebnerBasis(std::move(d));
  }
  static const detail::BasisData& data(const GroebnerBasis& B) { return *B.data_; }
};

namespace {

std::atomic<std::size_t> g_max_basis{GbBudget{}.max_basis_size};
std::atomic<std::size_t> g_max_reductions{GbBudget{}.max_reductions};

const Exponent* rows(const std::vector<Monomial>& leads) {
  return leads.empty() ? nullptr : leads.front().data();
}

// Polynomial arithmetic in a fixed term order.
class Engine {
 public:
  Engine(RingPtr ring, MonomialOrder order)
      : ring_(std::move(ring)), order_(order), n_(ring_->num_vars()), F_(ring_->field()) {}

  const RingPtr& ring() const { return ring_; }
  const MonomialOrder& order() const { return order_; }
  const PrimeField& field() const { return F_; }

  int cmp(const Monomial& a, const Monomial& b) const { return order_.compare(a, b, n_); }

  Poly sorted(const Polynomial& f) const {
    if (!same_ring(f.ring_ptr(), ring_)) {
      throw RingMismatch("polynomial " + f.to_string() + " is not in " + ring_->to_string());
    }
    Poly p(f.terms().begin(), f.terms().end());
    std::sort(p.begin(), p.end(),
              [this](const Term& a, const Term& b) { return cmp(a.mono, b.mono) > 0; });
    return p;
  }

  Polynomial unsorted(const Poly& p) const { return Polynomial::from_terms(ring_, p); }

  // Monomial multiples keep the order because term orders are multiplicative.
  Poly times(const Poly& g, Coeff c, const Monomial& m) const {
    Poly out;
    out.reserve(g.size());
    for (const Term& t : g) out.push_back({t.mono * m, F_.mul(t.coeff, c)});
    return out;
  }

  // f[from..] - c*m*g.
  Poly sub_mul(const Poly& f, std::size_t from, Coeff c, const Monomial& m,
               const Poly& g) const {
    Poly out;
    out.reserve(f.size() - from + g.size());
    const Coeff neg_c = F_.neg(c);
    std::size_t i = from, j = 0;
    while (i < f.size() && j < g.size()) {
      Monomial gm = g[j].mono * m;
      int s = cmp(f[i].mono, gm);
      if (s > 0) {
        out.push_back(f[i++]);
      } else if (s < 0) {
        out.push_back({gm, F_.mul(g[j].coeff, neg_c)});
        ++j;
      } else {
        Coeff v = F_.add(f[i].coeff, F_.mul(g[j].coeff, neg_c));
        if (v != 0) out.push_back({gm, v});
        ++i;
        ++j;
      }
    }
    for (; i < f.size(); ++i) out.push_back(f[i]);
    for (; j < g.size(); ++j) out.push_back({g[j].mono * m, F_.mul(g[j].coeff, neg_c)});
    return out;
  }

  Poly add(const Poly& a, const Poly& b) const {
    return sub_mul(a, 0, F_.neg(1), Monomial{}, b);
  }

  void scale(Poly& p, Coeff c) const {
    for (Term& t : p) t.coeff = F_.mul(t.coeff, c);
  }

 private:
  RingPtr ring_;
  MonomialOrder order_;
  std::size_t n_;
  const PrimeField& F_;
};

struct Counter {
  std::size_t reductions = 0;
  std::size_t max_reductions;
  std::size_t basis_size = 0;
  std::size_t pending = 0;

  void step() {
    if (++reductions > max_reductions) {
      throw BudgetExceeded("Groebner budget exceeded: more than " +
                               std::to_string(max_reductions) + " reduction steps",
                           basis_size, pending, reductions);
    }
  }
};

// Fully reduces f by the rows (basis[k], leads[k]); on_step(k, c, m) is called
// for each step f -= c*m*basis[k]. Basis elements are monic.
template <class OnStep>
Poly reduce_full(const Engine& E, Poly f, const std::vector<const Poly*>& basis,
                 const std::vector<Monomial>& leads, Counter& counter, OnStep&& on_step) {
  const auto& K = kernels::active();
  Poly rem;
  std::size_t pos = 0;
  while (pos < f.size()) {
    const Term lt = f[pos];
    std::ptrdiff_t k = K.find_divisor(rows(leads), leads.size(), lt.mono.data());
    if (k < 0) {
      rem.push_back(lt);
      ++pos;
      continue;
    }
    Monomial m = lt.mono / leads[static_cast<std::size_t>(k)];
    on_step(static_cast<std::size_t>(k), lt.coeff, m);
    f = E.sub_mul(f, pos, lt.coeff, m, *basis[static_cast<std::size_t>(k)]);
    pos = 0;
    counter.step();
  }
  return rem;
}

struct Element {
  Poly poly;
  std::vector<Poly> cof;  // empty unless tracking
};

struct Pair {
  std::size_t i, j;
  Monomial lcm;
};

class Buchberger {
 public:
  Buchberger(const Engine& E, const GbBudget& budget, bool track)
      : E_(E), budget_(budget), track_(track) {
    counter_.max_reductions = budget.max_reductions;
  }

  void run(const std::vector<Polynomial>& gens) {
    ngens_ = gens.size();
    for (std::size_t k = 0; k < gens.size() && !unit_; ++k) {
      if (gens[k].is_zero()) continue;
      Element e;
      e.poly = E_.sorted(gens[k]);
      if (track_) {
        e.cof.assign(ngens_, Poly{});
        e.cof[k] = Poly{{Monomial{}, 1}};
      }
      insert_reduced(std::move(e));
    }
    while (!pairs_.empty() && !unit_) {
      std::size_t best = 0;
      for (std::size_t k = 1; k < pairs_.size(); ++k) {
        if (E_.cmp(pairs_[k].lcm, pairs_[best].lcm) < 0) best = k;
      }
      Pair pr = pairs_[best];
      pairs_.erase(pairs_.begin() + static_cast<std::ptrdiff_t>(best));
      counter_.pending = pairs_.size();
      insert_reduced(spoly(pr));
    }
  }

  // Indices of the minimal basis (or the unit element).
  std::vector<std::size_t> result_indices() const {
    if (unit_) return {*unit_};
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k < G_.size(); ++k)
      if (active_[k]) out.push_back(k);
    return out;
  }

  const Element& element(std::size_t k) const { return G_[k]; }
  Counter& counter() { return counter_; }
  std::size_t ngens() const { return ngens_; }

 private:
  Element spoly(const Pair& pr) {
    const Element& a = G_[pr.i];
    const Element& b = G_[pr.j];
    Monomial ma = pr.lcm / a.poly.front().mono;
    Monomial mb = pr.lcm / b.poly.front().mono;
    Element s;
    s.poly = E_.sub_mul(E_.times(a.poly, 1, ma), 0, 1, mb, b.poly);
    if (track_) {
      s.cof.resize(ngens_);
      for (std::size_t k = 0; k < ngens_; ++k) {
        s.cof[k] = E_.sub_mul(E_.times(a.cof[k], 1, ma), 0, 1, mb, b.cof[k]);
      }
    }
    return s;
  }

  void insert_reduced(Element e) {
    std::vector<const Poly*> basis;
    std::vector<Monomial> leads;
    std::vector<std::size_t> index;
    for (std::size_t k = 0; k < G_.size(); ++k) {
      if (!active_[k]) continue;
      basis.push_back(&G_[k].poly);
      leads.push_back(G_[k].poly.front().mono);
      index.push_back(k);
    }
    e.poly = reduce_full(E_, std::move(e.poly), basis, leads, counter_,
                         [&](std::size_t k, Coeff c, const Monomial& m) {
                           if (!track_) return;
                           const Element& g = G_[index[k]];
                           for (std::size_t t = 0; t < ngens_; ++t) {
                             e.cof[t] = E_.sub_mul(e.cof[t], 0, c, m, g.cof[t]);
                           }
                         });
    if (e.poly.empty()) return;
    Coeff inv = E_.field().inv(e.poly.front().coeff);
    E_.scale(e.poly, inv);
    for (Poly& c : e.cof) E_.scale(c, inv);
    add(std::move(e));
  }

  // Gebauer-Moeller update.
  void add(Element e) {
    const std::size_t h = G_.size();
    const Monomial lh = e.poly.front().mono;
    G_.push_back(std::move(e));
    active_.push_back(1);
    if (lh.is_one()) {
      unit_ = h;
      return;
    }

    std::vector<Pair> C;
    for (std::size_t g = 0; g < h; ++g) {
      if (active_[g]) C.push_back({g, h, G_[g].poly.front().mono.lcm(lh)});
    }
    std::vector<Pair> D;
    for (std::size_t k = 0; k < C.size(); ++k) {
      const Pair& p = C[k];
      bool keep = lh.coprime(G_[p.i].poly.front().mono);
      if (!keep) {
        keep = true;
        for (std::size_t r = k + 1; r < C.size() && keep; ++r)
          if (C[r].lcm.divides(p.lcm)) keep = false;
        for (const Pair& q : D)
          if (keep && q.lcm.divides(p.lcm)) keep = false;
      }
      if (keep) D.push_back(p);
    }
    std::vector<Pair> next;
    for (const Pair& p : pairs_) {
      bool drop = lh.divides(p.lcm) && !(G_[p.i].poly.front().mono.lcm(lh) == p.lcm) &&
                  !(G_[p.j].poly.front().mono.lcm(lh) == p.lcm);
      if (!drop) next.push_back(p);
    }
    for (const Pair& p : D) {
      if (!lh.coprime(G_[p.i].poly.front().mono)) next.push_back(p);
    }
    pairs_ = std::move(next);
    for (std::size_t g = 0; g < h; ++g) {
      if (active_[g] && lh.divides(G_[g].poly.front().mono)) active_[g] = 0;
    }

    std::size_t live = std::count(active_.begin(), active_.end(), 1);
    counter_.basis_size = live;
    counter_.pending = pairs_.size();
    if (live > budget_.max_basis_size) {
      throw BudgetExceeded("Groebner budget exceeded: basis grew past " +
                               std::to_string(budget_.max_basis_size) + " elements",
                           live, pairs_.size(), counter_.reductions);
    }
  }

  const Engine& E_;
  GbBudget budget_;
  bool track_;
  std::size_t ngens_ = 0;
  std::vector<Element> G_;
  std::vector<char> active_;
  std::vector<Pair> pairs_;
  std::optional<std::size_t> unit_;
  Counter counter_;
};

std::shared_ptr<const detail::BasisData> compute_basis(const Ideal& I,
                                                       const MonomialOrder& order,
                                                       const GbBudget& budget) {
  Engine E(I.ring_ptr(), order);
  Buchberger bb(E, budget, false);
  bb.run(I.generators());

  std::vector<Poly> minimal;
  for (std::size_t k : bb.result_indices()) minimal.push_back(bb.element(k).poly);

  // Interreduce tails; leading monomials are already pairwise non-divisible.
  std::vector<Poly> reduced(minimal.size());
  for (std::size_t k = 0; k < minimal.size(); ++k) {
    std::vector<const Poly*> basis;
    std::vector<Monomial> leads;
    for (std::size_t r = 0; r < minimal.size(); ++r) {
      if (r == k) continue;
      basis.push_back(&minimal[r]);
      leads.push_back(minimal[r].front().mono);
    }
    Poly tail(minimal[k].begin() + 1, minimal[k].end());
    Poly out{minimal[k].front()};
    Poly rt = reduce_full(E, std::move(tail), basis, leads, bb.counter(),
                          [](std::size_t, Coeff, const Monomial&) {});
    out.insert(out.end(), rt.begin(), rt.end());
    reduced[k] = std::move(out);
  }
  std::sort(reduced.begin(), reduced.end(), [&E](const Poly& a, const Poly& b) {
    return E.cmp(a.front().mono, b.front().mono) > 0;
  });

  auto data = std::make_shared<detail::BasisData>();
  data->ring = I.ring_ptr();
  data->order = order;
  for (Poly& p : reduced) {
    data->leads.push_back(p.front().mono);
    data->elements.push_back(E.unsorted(p));
    data->sorted.push_back(std::move(p));
  }
  return data;
}

// Canonical display order: ascending degree, then descending lex.
bool display_before(const Monomial& a, const Monomial& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  return compare_lex(a, b) > 0;
}

std::string fresh_name(const PolyRing& ring, std::string base) {
  while (ring.index_of(base)) base += "_";
  return base;
}

}  // namespace

std::string MonomialOrder::name() const {
  switch (kind_) {
    case OrderKind::GRevLex:
      return "grevlex";
    case OrderKind::Lex:
      return "lex";
    case OrderKind::Elimination:
      return "elimination(" + std::to_string(block_) + ")";
  }
  return "?";
}

GbBudget default_budget() {
  return {g_max_basis.load(std::memory_order_relaxed),
          g_max_reductions.load(std::memory_order_relaxed)};
}

void set_default_budget(const GbBudget& budget) {
  g_max_basis.store(budget.max_basis_size, std::memory_order_relaxed);
  g_max_reductions.store(budget.max_reductions, std::memory_order_relaxed);
}

const MonomialOrder& GroebnerBasis::order() const { return data_->order; }
const RingPtr& GroebnerBasis::ring_ptr() const { return data_->ring; }
const std::vector<Polynomial>& GroebnerBasis::elements() const { return data_->elements; }
const std::vector<Monomial>& GroebnerBasis::leading_monomials() const { return data_->leads; }
bool GroebnerBasis::is_unit() const {
  return data_->leads.size() == 1 && data_->leads[0].is_one();
}

struct Ideal::Cache {
  std::mutex mu;
  std::vector<std::pair<MonomialOrder, std::unique_ptr<GroebnerBasis>>> entries;
};

Ideal::Ideal(RingPtr ring, std::vector<Polynomial> generators)
    : ring_(std::move(ring)), gens_(std::move(generators)), cache_(std::make_shared<Cache>()) {
  for (const Polynomial& g : gens_) {
    if (!same_ring(g.ring_ptr(), ring_)) {
      throw RingMismatch("generator " + g.to_string() + " is not in " + ring_->to_string());
    }
  }
}

Ideal Ideal::unit(RingPtr ring) {
  Polynomial one = Polynomial::constant(ring, 1);
  return Ideal(std::move(ring), {one});
}

bool Ideal::is_zero() const {
  return std::all_of(gens_.begin(), gens_.end(), [](const Polynomial& g) { return g.is_zero(); });
}

GroebnerBasis Ideal::groebner(const MonomialOrder& order) const {
  return groebner(order, default_budget());
}

GroebnerBasis Ideal::groebner(const MonomialOrder& order, const GbBudget& budget) const {
  {
    std::lock_guard<std::mutex> lock(cache_->mu);
    for (const auto& [o, b] : cache_->entries)
      if (o == order) return *b;
  }
  auto computed = std::make_unique<GroebnerBasis>(GbAccess::make(compute_basis(*this, order, budget)));
  std::lock_guard<std::mutex> lock(cache_->mu);
  for (const auto& [o, b] : cache_->entries)
    if (o == order) return *b;
  cache_->entries.emplace_back(order, std::move(computed));
  return *cache_->entries.back().second;
}

GroebnerBasis groebner_basis(const Ideal& I, const MonomialOrder& order) {
  return I.groebner(order);
}

GroebnerBasis groebner_basis(const Ideal& I, const MonomialOrder& order, const GbBudget& budget) {
  return I.groebner(order, budget);
}

Polynomial normal_form(const Polynomial& f, const GroebnerBasis& B) {
  const detail::BasisData& d = GbAccess::data(B);
  Engine E(d.ring, d.order);
  std::vector<const Poly*> basis;
  for (const Poly& p : d.sorted) basis.push_back(&p);
  Counter counter;
  counter.max_reductions = default_budget().max_reductions;
  Poly r = reduce_full(E, E.sorted(f), basis, d.leads, counter,
                       [](std::size_t, Coeff, const Monomial&) {});
  return E.unsorted(r);
}

bool ideal_member(const Polynomial& f, const Ideal& I) {
  if (f.is_zero()) return true;
  return normal_form(f, I.groebner()).is_zero();
}

bool ideal_contains(const Ideal& I, const Ideal& J) {
  for (const Polynomial& g : J.generators())
    if (!ideal_member(g, I)) return false;
  return true;
}

bool ideals_equal(const Ideal& I, const Ideal& J) {
  if (!same_ring(I.ring_ptr(), J.ring_ptr())) throw RingMismatch("ideals live in different rings");
  const auto& a = I.groebner().elements();
  const auto& b = J.groebner().elements();
  return a == b;
}

Ideal operator+(const Ideal& I, const Ideal& J) {
  if (!same_ring(I.ring_ptr(), J.ring_ptr())) throw RingMismatch("ideals live in different rings");
  std::vector<Polynomial> gens = I.generators();
  gens.insert(gens.end(), J.generators().begin(), J.generators().end());
  return Ideal(I.ring_ptr(), std::move(gens));
}

Ideal operator*(const Ideal& I, const Ideal& J) {
  if (!same_ring(I.ring_ptr(), J.ring_ptr())) throw RingMismatch("ideals live in different rings");
  std::vector<Polynomial> gens;
  for (const Polynomial& a : I.generators()) {
    if (a.is_zero()) continue;
    for (const Polynomial& b : J.generators()) {
      if (!b.is_zero()) gens.push_back(a * b);
    }
  }
  return Ideal(I.ring_ptr(), std::move(gens));
}

Ideal operator*(const Polynomial& f, const Ideal& I) {
  return Ideal(I.ring_ptr(), {f}) * I;
}

Ideal ideal_power(const Ideal& I, unsigned k) {
  Ideal out = Ideal::unit(I.ring_ptr());
  for (unsigned i = 0; i < k; ++i) out = out * I;
  return out;
}

Ideal defining_ideal(const RingSpec& R) { return Ideal(R.ambient(), R.defining()); }

Ideal extend(const Ideal& I, const RingSpec& R) {
  if (!R.is_quotient()) return I;
  return I + defining_ideal(R);
}

std::optional<Polynomial> divide_exact(const Polynomial& f, const Polynomial& g) {
  if (g.is_zero()) throw InvalidArgument("division by zero polynomial");
  Engine E(f.ring_ptr(), MonomialOrder::grevlex());
  Poly r = E.sorted(f);
  Poly d = E.sorted(g);
  const Coeff inv = E.field().inv(d.front().coeff);
  Poly q;
  while (!r.empty()) {
    if (!d.front().mono.divides(r.front().mono)) return std::nullopt;
    Monomial m = r.front().mono / d.front().mono;
    Coeff c = E.field().mul(r.front().coeff, inv);
    q.push_back({m, c});
    r = E.sub_mul(r, 0, c, m, d);
  }
  return E.unsorted(q);
}

Ideal intersect_ideals(const Ideal& I, const Ideal& J) {
  if (!same_ring(I.ring_ptr(), J.ring_ptr())) throw RingMismatch("ideals live in different rings");
  if (I.is_zero() || J.is_zero()) return Ideal::zero(I.ring_ptr());
  const RingPtr& ring = I.ring_ptr();
  if (ring->num_vars() >= kMaxVariables) {
    throw UnsupportedInput("intersection needs one spare variable slot");
  }
  RingPtr ext = ring->with_leading_variables({fresh_name(*ring, "_t")});
  Polynomial t = Polynomial::variable(ext, 0);
  Polynomial one_minus_t = Polynomial::constant(ext, 1) - t;
  std::vector<Polynomial> gens;
  for (const Polynomial& g : I.generators()) gens.push_back(t * g.map_to(ext));
  for (const Polynomial& g : J.generators()) gens.push_back(one_minus_t * g.map_to(ext));
  Ideal big(ext, std::move(gens));
  const GroebnerBasis& B = big.groebner(MonomialOrder::elimination(1));
  std::vector<Polynomial> out;
  for (std::size_t k = 0; k < B.elements().size(); ++k) {
    if (B.leading_monomials()[k][0] == 0) out.push_back(B.elements()[k].map_to(ring));
  }
  return Ideal(ring, std::move(out));
}

Ideal eliminate(const Ideal& I, std::size_t k) {
  if (k >= I.ring().num_vars()) {
    throw InvalidArgument("cannot eliminate " + std::to_string(k) + " of " +
                          std::to_string(I.ring().num_vars()) + " variables");
  }
  if (k == 0) return I;
  const GroebnerBasis& B = I.groebner(MonomialOrder::elimination(k));
  std::vector<Polynomial> out;
  for (std::size_t e = 0; e < B.elements().size(); ++e) {
    const Monomial& lm = B.leading_monomials()[e];
    bool free = true;
    for (std::size_t v = 0; v < k; ++v) free &= lm[v] == 0;
    if (free) out.push_back(B.elements()[e]);
  }
  return Ideal(I.ring_ptr(), std::move(out));
}

Ideal colon_by_element(const Ideal& I, const Polynomial& g) {
  if (g.is_zero() || ideal_member(g, I)) return Ideal::unit(I.ring_ptr());
  Ideal meet = intersect_ideals(I, Ideal(I.ring_ptr(), {g}));
  std::vector<Polynomial> out;
  for (const Polynomial& h : meet.generators()) {
    auto q = divide_exact(h, g);
    if (!q) throw InternalError("element of I ∩ (g) not divisible by g");
    out.push_back(*q);
  }
  return Ideal(I.ring_ptr(), std::move(out));
}

Ideal colon_ideal(const Ideal& I, const Ideal& J, ColonDiagnostics* diag) {
  if (!same_ring(I.ring_ptr(), J.ring_ptr())) throw RingMismatch("ideals live in different rings");
  std::optional<Ideal> acc;
  for (const Polynomial& g : J.generators()) {
    if (g.is_zero()) continue;
    Ideal c = colon_by_element(I, g);
    acc = acc ? intersect_ideals(*acc, c) : c;
  }
  if (!acc) {
    if (diag) diag->divisor_was_zero = true;
    return Ideal::unit(I.ring_ptr());
  }
  return *acc;
}

std::vector<Ideal> minimal_primes_squarefree(const Ideal& I) {
  const RingPtr& ring = I.ring_ptr();
  const std::size_t n = ring->num_vars();
  std::vector<std::uint32_t> edges;
  for (const Polynomial& g : I.generators()) {
    if (g.is_zero()) continue;
    if (!g.is_monomial()) {
      throw UnsupportedInput("generator " + g.to_string() + " is not a monomial");
    }
    const Monomial& m = g.terms()[0].mono;
    std::uint32_t mask = 0;
    for (std::size_t v = 0; v < n; ++v) {
      if (m[v] > 1) {
        throw UnsupportedInput("generator " + g.to_string() + " is not square-free");
      }
      if (m[v] == 1) mask |= 1u << v;
    }
    if (mask == 0) return {};  // unit ideal has no primes
    edges.push_back(mask);
  }
  if (edges.empty()) return {Ideal::zero(ring)};

  std::vector<std::uint32_t> covers;
  for (std::uint32_t s = 0; s < (1u << n); ++s) {
    bool covers_all = std::all_of(edges.begin(), edges.end(),
                                  [s](std::uint32_t e) { return (e & s) != 0; });
    if (!covers_all) continue;
    bool minimal = true;
    for (std::size_t v = 0; v < n && minimal; ++v) {
      if (!(s & (1u << v))) continue;
      std::uint32_t t = s & ~(1u << v);
      minimal = !std::all_of(edges.begin(), edges.end(),
                             [t](std::uint32_t e) { return (e & t) != 0; });
    }
    if (minimal) covers.push_back(s);
  }

  std::vector<Ideal> primes;
  for (std::uint32_t s : covers) {
    std::vector<Polynomial> gens;
    for (std::size_t v = 0; v < n; ++v)
      if (s & (1u << v)) gens.push_back(Polynomial::variable(ring, v));
    primes.emplace_back(ring, std::move(gens));
  }

  Ideal meet = primes.front();
  for (std::size_t k = 1; k < primes.size(); ++k) meet = intersect_ideals(meet, primes[k]);
  if (!ideals_equal(meet, I)) {
    throw InternalError("intersection of computed minimal primes differs from the input ideal");
  }
  return primes;
}

bool is_zero_dimensional(const Ideal& I) {
  const GroebnerBasis& B = I.groebner();
  if (B.is_unit()) return true;
  const std::size_t n = I.ring().num_vars();
  for (std::size_t v = 0; v < n; ++v) {
    bool found = false;
    for (const Monomial& m : B.leading_monomials()) {
      if (m[v] != 0 && m.degree() == m[v]) found = true;
    }
    if (!found) return false;
  }
  return true;
}

std::vector<Monomial> quotient_vector_basis(const RingSpec& R, const Ideal& I) {
  Ideal full = extend(I, R);
  const GroebnerBasis& B = full.groebner();
  if (B.is_unit()) return {};
  const std::size_t n = R.num_vars();
  const std::vector<Monomial> leads = B.leading_monomials();
  std::vector<std::uint32_t> bound(n, 0);
  for (std::size_t v = 0; v < n; ++v) {
    for (const Monomial& m : leads) {
      if (m[v] != 0 && m.degree() == m[v]) {
        bound[v] = bound[v] == 0 ? m[v] : std::min<std::uint32_t>(bound[v], m[v]);
      }
    }
    if (bound[v] == 0) {
      throw DimensionError("quotient is not zero-dimensional: no pure power of " +
                           R.ambient()->variable(v) + " among leading terms");
    }
  }
  const auto& K = kernels::active();
  std::vector<Monomial> out;
  Monomial cur;
  // Odometer over the box of exponents below each pure-power bound.
  while (true) {
    if (K.find_divisor(rows(leads), leads.size(), cur.data()) < 0) out.push_back(cur);
    std::size_t v = 0;
    for (; v < n; ++v) {
      if (cur[v] + 1u < bound[v]) {
        cur.set(v, cur[v] + 1u);
        break;
      }
      cur.set(v, 0);
    }
    if (v == n) break;
  }
  std::sort(out.begin(), out.end(), display_before);
  return out;
}

std::optional<std::vector<Polynomial>> lift(const Polynomial& f,
                                            const std::vector<Polynomial>& generators) {
  const RingPtr& ring = f.ring_ptr();
  std::vector<Polynomial> zero(generators.size(), Polynomial(ring));
  if (f.is_zero()) return zero;
  Engine E(ring, MonomialOrder::grevlex());
  Buchberger bb(E, default_budget(), true);
  bb.run(generators);

  std::vector<std::size_t> idx = bb.result_indices();
  std::vector<const Poly*> basis;
  std::vector<Monomial> leads;
  for (std::size_t k : idx) {
    basis.push_back(&bb.element(k).poly);
    leads.push_back(bb.element(k).poly.front().mono);
  }
  std::vector<Poly> quot(idx.size());
  Poly rem = reduce_full(E, E.sorted(f), basis, leads, bb.counter(),
                         [&](std::size_t k, Coeff c, const Monomial& m) {
                           quot[k] = E.add(quot[k], Poly{{m, c}});
                         });
  if (!rem.empty()) return std::nullopt;

  std::vector<Poly> cof(generators.size());
  for (std::size_t k = 0; k < idx.size(); ++k) {
    const Element& el = bb.element(idx[k]);
    for (const Term& t : quot[k]) {
      for (std::size_t g = 0; g < generators.size(); ++g) {
        cof[g] = E.add(cof[g], E.times(el.cof[g], t.coeff, t.mono));
      }
    }
  }
  std::vector<Polynomial> out;
  for (const Poly& c : cof) out.push_back(E.unsorted(c));
  return out;
}

std::vector<Polynomial> canonical_generators(const Ideal& I) {
  const GroebnerBasis& B = I.groebner();
  std::vector<std::size_t> order(B.elements().size());
  for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
  const auto leads = B.leading_monomials();
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return display_before(leads[a], leads[b]);
  });
  std::vector<Polynomial> out;
  for (std::size_t k : order) out.push_back(B.elements()[k]);
  return out;
}

namespace {
std::string join(const std::vector<Polynomial>& gens) {
  if (gens.empty()) return "(0)";
  std::string out = "(";
  for (std::size_t k = 0; k < gens.size(); ++k) {
    if (k) out += ", ";
    out += gens[k].to_string();
  }
  return out + ")";
}
}  // namespace

std::string to_string(const Ideal& I) { return join(canonical_generators(I)); }

std::vector<Polynomial> canonical_generators(const Ideal& I, const RingSpec& R) {
  if (!R.is_quotient()) return canonical_generators(I);
  Ideal J = defining_ideal(R);
  std::vector<Polynomial> gens;
  for (const Polynomial& g : canonical_generators(extend(I, R))) {
    if (!ideal_member(g, J)) gens.push_back(g);
  }
  return gens;
}

std::string to_string(const Ideal& I, const RingSpec& R) {
  return join(canonical_generators(I, R));
}

}  // namespace ccl
