#include "ccl/local_cohomology.hpp"

#include <algorithm>

#include "ccl/closures.hpp"
#include "ccl/errors.hpp"
#include "ccl/field.hpp"

namespace ccl {

SopData::SopData(RingSpec r, std::vector<Polynomial> s, Polynomial prod)
    : ring(std::move(r)),
      sop(std::move(s)),
      product(std::move(prod)),
      cache_(std::make_shared<LevelCache>()) {}

Ideal SopData::level_ideal(std::uint64_t t) const {
  {
    std::lock_guard<std::mutex> lock(cache_->mu);
    auto it = cache_->ideals.find(t);
    if (it != cache_->ideals.end()) return it->second;
  }
  std::vector<Polynomial> gens;
  for (const Polynomial& f : sop) gens.push_back(f.pow(t));
  Ideal I = extend(Ideal(ring.ambient(), std::move(gens)), ring);
  std::lock_guard<std::mutex> lock(cache_->mu);
  return cache_->ideals.try_emplace(t, I).first->second;
}

SopData make_sop(const RingSpec& R, std::vector<Polynomial> sop) {
  for (const Polynomial& f : sop) {
    if (!same_ring(f.ring_ptr(), R.ambient())) {
      throw RingMismatch("system of parameters is not in the ambient ring of " + R.to_string());
    }
  }
  auto quotient = [&](std::size_t skip) {
    std::vector<Polynomial> gens;
    for (std::size_t i = 0; i < sop.size(); ++i)
      if (i != skip) gens.push_back(sop[i]);
    return extend(Ideal(R.ambient(), std::move(gens)), R);
  };
  if (!is_zero_dimensional(quotient(sop.size()))) {
    throw DimensionError("quotient by the system of parameters is not zero-dimensional");
  }
  for (std::size_t i = 0; i < sop.size(); ++i) {
    if (is_zero_dimensional(quotient(i))) {
      throw DimensionError("parameter " + sop[i].to_string() +
                           " is redundant: the others already give a zero-dimensional quotient");
    }
  }

  Polynomial product = Polynomial::constant(R.ambient(), 1);
  for (const Polynomial& f : sop) product = product * f;
  SopData S(R, sop, product);

  bool regular = true;
  std::vector<Polynomial> prefix;
  for (const Polynomial& f : sop) {
    Ideal base = extend(Ideal(R.ambient(), prefix), R);
    if (!ideals_equal(colon_by_element(base, f), base)) {
      regular = false;
      break;
    }
    prefix.push_back(f);
  }
  S.regularity_checked = regular;
  return S;
}

std::string LocalCohomClass::to_string() const {
  return "[" + rep_.to_string() + ", " + std::to_string(level_) + "]";
}

LocalCohomClass make_class(const Polynomial& r, std::uint64_t t,
                           std::shared_ptr<const SopData> S) {
  if (t < 1) throw InvalidArgument("level must be at least 1");
  if (!same_ring(r.ring_ptr(), S->ring.ambient())) {
    throw RingMismatch("representative is not in the ambient ring of " + S->ring.to_string());
  }
  Polynomial nf = normal_form(r, S->level_ideal(t).groebner());
  return LocalCohomClass(std::move(nf), t, std::move(S));
}

namespace {

void require_regular(const SopData& S) {
  if (!S.regularity_checked) {
    throw PreconditionFailed(
        "system of parameters is not a verified regular sequence; transition maps may not be "
        "injective");
  }
}

}  // namespace

bool class_is_zero(const LocalCohomClass& eta) {
  require_regular(eta.sop());
  return eta.representative().is_zero();
}

bool classes_equal(const LocalCohomClass& a, const LocalCohomClass& b) {
  if (a.sop_ptr() != b.sop_ptr()) throw RingMismatch("classes use different systems of parameters");
  require_regular(a.sop());
  const LocalCohomClass& lo = a.level() <= b.level() ? a : b;
  const LocalCohomClass& hi = a.level() <= b.level() ? b : a;
  Polynomial raised = lo.sop().product.pow(hi.level() - lo.level()) * lo.representative();
  return ideal_member(raised - hi.representative(), hi.sop().level_ideal(hi.level()));
}

LocalCohomClass frobenius_class(const LocalCohomClass& eta, std::uint64_t level_cap) {
  const std::uint32_t p = eta.sop().ring.prime();
  const std::uint64_t level = eta.level() * p;
  if (level > level_cap) {
    throw BudgetExceeded("Frobenius would raise the level to " + std::to_string(level) +
                         ", above the cap " + std::to_string(level_cap));
  }
  return make_class(frobenius_power(eta.representative(), 1), level, eta.sop_ptr());
}

bool annihilates(const Ideal& J, const LocalCohomClass& eta) {
  if (!same_ring(J.ring_ptr(), eta.sop().ring.ambient())) {
    throw RingMismatch("ideal and class live in different rings");
  }
  const Ideal It = eta.sop().level_ideal(eta.level());
  return std::all_of(J.generators().begin(), J.generators().end(), [&](const Polynomial& g) {
    return ideal_member(g * eta.representative(), It);
  });
}

bool CounterexampleReport::all_hold() const { return first_failure() == nullptr; }

const AuditRecord* CounterexampleReport::first_failure() const {
  for (const AuditRecord& r : records)
    if (!r.verdict) return &r;
  return nullptr;
}

namespace {

class Recorder {
 public:
  Recorder(CounterexampleReport& report, bool throw_on_failure)
      : report_(report), throw_(throw_on_failure) {}

  void add(AuditRecord rec) {
    const bool ok = rec.verdict;
    const std::string name = rec.assertion;
    report_.records.push_back(std::move(rec));
    if (!ok && throw_) {
      throw CounterexampleFailed("p = " + std::to_string(report_.prime) + ": " + name);
    }
  }

 private:
  CounterexampleReport& report_;
  bool throw_;
};

std::string yes_no(bool b) { return b ? "true" : "false"; }

}  // namespace

CounterexampleReport fstability_counterexample(std::uint32_t p, bool throw_on_failure) {
  if (!is_prime(p) || p > kMaxCounterexamplePrime) {
    throw UnsupportedInput("the counterexample is supported for primes up to " +
                           std::to_string(kMaxCounterexamplePrime) + ", got " +
                           std::to_string(p));
  }
  CounterexampleReport report;
  report.prime = p;
  Recorder rec(report, throw_on_failure);

  RingPtr A = PolyRing::make(p, {"x", "y", "z", "w"});
  Polynomial x = Polynomial::variable(A, 0), y = Polynomial::variable(A, 1),
             z = Polynomial::variable(A, 2), w = Polynomial::variable(A, 3);
  RingSpec R(A, {x * y, y * z, z * w});
  const std::string ring_text = R.to_string();
  const std::uint64_t q = std::uint64_t{p} * p;

  auto S = std::make_shared<const SopData>(make_sop(R, {x - w, x - y - z}));
  rec.add({"system of parameters (x - w, x - y - z) is a regular sequence",
           {{"ring", ring_text}},
           S->regularity_checked,
           "the ring is Cohen-Macaulay with parameters x - w, x - y - z"});

  Ideal tau = test_ideal_sr(R);
  const std::string tau_text = to_string(tau, R);
  Ideal expected_tau = extend(Ideal(A, {y, z, x * w}), R);
  rec.add({"test ideal equals (y, z, x*w)",
           {{"ring", ring_text}, {"observed", tau_text}},
           ideals_equal(tau, expected_tau),
           "test ideal of the path ring as a sum of intersections of minimal primes"});

  auto eta = make_class((x * w).pow(p - 1), p, S);
  Ideal Ip = Ideal(A, {x.pow(p) - w.pow(p), x.pow(p) - y.pow(p) - z.pow(p), x * y, y * z, z * w});
  bool direct = ideal_member((x * w).pow(p), Ip);
  rec.add({"(x*w)^p lies in (x^p - w^p, x^p - y^p - z^p, x*y, y*z, z*w)",
           {{"element", (x * w).pow(p).to_string()}, {"ideal", to_string(Ip)}},
           direct,
           "x*w kills eta because (xw)^p lies in the level-p ideal"});

  std::vector<std::pair<std::string, std::string>> per_gen{{"eta", eta.to_string()}};
  for (const Polynomial& g : canonical_generators(tau, R)) {
    Ideal single(A, {g});
    per_gen.push_back({"kills by " + g.to_string(), yes_no(annihilates(single, eta))});
  }
  rec.add({"test ideal annihilates eta", per_gen, annihilates(tau, eta),
           "the test ideal annihilates eta, so eta lies in N"});

  bool eta_zero = class_is_zero(eta);
  rec.add({"eta is nonzero",
           {{"eta", eta.to_string()}, {"in level ideal", yes_no(eta_zero)}},
           !eta_zero,
           "eta is a nonzero class of top local cohomology"});

  auto feta = frobenius_class(eta);
  auto expected_feta = make_class((x * w).pow(std::uint64_t{p} * (p - 1)), q, S);
  rec.add({"F(eta) = [(x*w)^(p(p-1)), p^2]",
           {{"observed", feta.to_string()}, {"expected", expected_feta.to_string()}},
           feta.level() == q && classes_equal(feta, expected_feta),
           "Frobenius raises the representative to the p-th power and the level to p^2"});

  Polynomial f = x * w * (x * w).pow(std::uint64_t{p} * (p - 1));
  Ideal Iq = Ideal(A, {x.pow(q) - w.pow(q), x.pow(q) - y.pow(q) - z.pow(q), x * y, y * z, z * w});
  bool member_grevlex = ideal_member(f, Iq);
  bool member_lex = normal_form(f, Iq.groebner(MonomialOrder::lex())).is_zero();
  rec.add({"x*w*(x*w)^(p(p-1)) is not in (x^q - w^q, x^q - y^q - z^q, x*y, y*z, z*w), q = p^2",
           {{"degree", std::to_string(f.total_degree())},
            {"bracket exponent", std::to_string(q)},
            {"member (grevlex)", yes_no(member_grevlex)},
            {"member (lex)", yes_no(member_lex)}},
           !member_grevlex && !member_lex,
           "x*w does not kill F(eta)"});

  bool kills_feta = annihilates(tau, feta);
  rec.add({"test ideal does not annihilate F(eta)",
           {{"F(eta)", feta.to_string()}, {"annihilated", yes_no(kills_feta)}},
           !kills_feta,
           "annihilator of the test ideal in top local cohomology is not Frobenius-stable"});

  // Independent oracle: y = z = 0 is a ring map, so non-membership of the
  // image in the image ideal implies non-membership upstairs.
  std::vector<Polynomial> images;
  for (const Polynomial& g : Iq.generators()) {
    Polynomial h = g.substitute_zero(1).substitute_zero(2);
    if (!h.is_zero()) images.push_back(h);
  }
  bool shape = images.size() == 2 && images[0] == x.pow(q) - w.pow(q) && images[1] == x.pow(q);
  Monomial image_mono = f.substitute_zero(1).substitute_zero(2).terms()[0].mono;
  // (x^q - w^q, x^q) = (x^q, w^q): a monomial ideal, decided by divisibility.
  bool divisible = image_mono[0] >= q || image_mono[3] >= q;
  rec.add({"after y = z = 0 the question becomes x^k*w^k in (x^q, w^q) with k < q, which fails",
           {{"image element", f.substitute_zero(1).substitute_zero(2).to_string()},
            {"image ideal", "(x^" + std::to_string(q) + ", w^" + std::to_string(q) + ")"}},
           shape && f.is_monomial() && !divisible,
           "setting y = z = 0 reduces the membership to an impossible one in two variables"});
  return report;
}

}  // namespace ccl
