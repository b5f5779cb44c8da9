#include "ccl/dsl/interpreter.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>

#include "ccl/closures.hpp"
#include "ccl/dsl/parser.hpp"
#include "ccl/dsl/reproduce.hpp"
#include "ccl/errors.hpp"
#include "ccl/field.hpp"
#include "ccl/local_cohomology.hpp"
#include "ccl/strong_test.hpp"

namespace ccl::dsl {

namespace {

[[noreturn]] void usage(SourceLoc loc, const std::string& msg) {
  throw RuntimeError(loc, msg, kExitUsage);
}

std::string error_kind(const std::exception& e) {
  if (dynamic_cast<const RingMismatch*>(&e)) return "ring mismatch";
  if (dynamic_cast<const OverflowError*>(&e)) return "overflow";
  if (dynamic_cast<const InvalidArgument*>(&e)) return "invalid argument";
  if (dynamic_cast<const UnsupportedInput*>(&e)) return "unsupported input";
  if (dynamic_cast<const DimensionError*>(&e)) return "dimension error";
  if (dynamic_cast<const PreconditionFailed*>(&e)) return "precondition failed";
  if (dynamic_cast<const CounterexampleFailed*>(&e)) return "counterexample failed";
  if (dynamic_cast<const InternalError*>(&e)) return "internal error";
  return "error";
}

bool same_spec(const RingSpec& a, const RingSpec& b) {
  if (!same_ring(a.ambient(), b.ambient())) return false;
  if (a.defining() == b.defining()) return true;
  return ideals_equal(defining_ideal(a), defining_ideal(b));
}

void require_same(const RingSpec& a, const RingSpec& b, SourceLoc loc) {
  if (!same_spec(a, b)) {
    usage(loc, "operands live in different rings: " + a.to_string() + " and " + b.to_string());
  }
}

Value make(bool b) { return Value{b}; }
Value make(std::int64_t i) { return Value{i}; }
Value make(const RingSpec& R, Polynomial f) { return Value{PolyValue{R, std::move(f)}}; }
Value make(const RingSpec& R, Ideal I) { return Value{IdealValue{R, std::move(I)}}; }

std::optional<RingSpec> ring_of(const Value& v) {
  if (v.is<RingValue>()) return v.as<RingValue>().ring;
  if (v.is<PolyValue>()) return v.as<PolyValue>().ring;
  if (v.is<IdealValue>()) return v.as<IdealValue>().ring;
  if (v.is<SopValue>()) return v.as<SopValue>().sop->ring;
  if (v.is<ClassValue>()) return v.as<ClassValue>().cls.sop().ring;
  if (v.is<ListValue>()) {
    for (const Value& item : v.as<ListValue>().items)
      if (auto r = ring_of(item)) return r;
  }
  return std::nullopt;
}

std::string pad(const std::string& s, std::size_t width) {
  return s + std::string(width > s.size() ? width - s.size() : 0, ' ');
}

}  // namespace

// Command implementations; a friend of Interpreter.
struct Commands {
  using Args = std::vector<Value>;
  using Handler = std::function<Value(Interpreter&, const Expr&, Args&)>;

  static const std::map<std::string, Handler>& table();

  static void arity(const Expr& call, const Args& args, std::size_t lo, std::size_t hi) {
    if (args.size() < lo || args.size() > hi) {
      std::string want = lo == hi ? std::to_string(lo)
                                  : std::to_string(lo) + " to " + std::to_string(hi);
      usage(call.loc, call.text + " takes " + want + " argument" + (hi == 1 ? "" : "s") +
                          ", got " + std::to_string(args.size()));
    }
  }

  [[noreturn]] static void type_error(const Expr& call, std::size_t index, const char* want,
                                      const Value& got) {
    usage(call.children.size() > index ? call.children[index]->loc : call.loc,
          call.text + ": argument " + std::to_string(index + 1) + " must be " + want + ", got " +
              type_name(got));
  }

  static RingSpec active_ring(const Interpreter& in, SourceLoc loc) {
    if (in.quotient_scope_) return *in.quotient_scope_;
    if (in.current_ring_) return *in.current_ring_;
    usage(loc, "no ring is defined yet; bind one with `ring R = Fp(p)[vars];`");
  }

  static std::int64_t to_int(const Expr& call, const Args& args, std::size_t i) {
    if (!args[i].is<std::int64_t>()) type_error(call, i, "an integer", args[i]);
    return args[i].as<std::int64_t>();
  }

  static std::uint64_t to_count(const Expr& call, const Args& args, std::size_t i,
                                std::uint64_t min = 0) {
    std::int64_t v = to_int(call, args, i);
    if (v < static_cast<std::int64_t>(min)) {
      usage(call.children[i]->loc,
            call.text + ": argument " + std::to_string(i + 1) + " must be at least " +
                std::to_string(min));
    }
    return static_cast<std::uint64_t>(v);
  }

  static const std::string& to_text(const Expr& call, const Args& args, std::size_t i) {
    if (!args[i].is<std::string>()) type_error(call, i, "a string", args[i]);
    return args[i].as<std::string>();
  }

  /// Polynomial in R; integers become constants.
  static Polynomial to_poly(const Value& v, const RingSpec& R, const Expr& call, std::size_t i) {
    if (v.is<std::int64_t>()) return Polynomial::constant(R.ambient(), v.as<std::int64_t>());
    if (!v.is<PolyValue>()) type_error(call, i, "a polynomial", v);
    require_same(v.as<PolyValue>().ring, R, call.children[i]->loc);
    return v.as<PolyValue>().poly;
  }

  static Ideal to_ideal(const Value& v, const RingSpec& R, const Expr& call, std::size_t i) {
    if (v.is<IdealValue>()) {
      require_same(v.as<IdealValue>().ring, R, call.children[i]->loc);
      return v.as<IdealValue>().ideal;
    }
    if (v.is<PolyValue>() || v.is<std::int64_t>()) return Ideal(R.ambient(), {to_poly(v, R, call, i)});
    if (v.is<ListValue>()) {
      std::vector<Polynomial> gens;
      for (const Value& item : v.as<ListValue>().items) {
        if (item.is<IdealValue>()) {
          const auto& g = to_ideal(item, R, call, i).generators();
          gens.insert(gens.end(), g.begin(), g.end());
        } else {
          gens.push_back(to_poly(item, R, call, i));
        }
      }
      return Ideal(R.ambient(), gens);
    }
    type_error(call, i, "an ideal", v);
  }

  /// Ring of the first argument carrying one, else the active ring.
  static RingSpec ring_for(const Interpreter& in, const Expr& call, const Args& args) {
    for (const Value& v : args)
      if (auto r = ring_of(v)) return *r;
    return active_ring(in, call.loc);
  }

  static std::vector<Polynomial> flatten_gens(const Args& args, std::size_t from,
                                              const RingSpec& R, const Expr& call) {
    std::vector<Polynomial> gens;
    for (std::size_t i = from; i < args.size(); ++i) {
      if (args[i].is<IdealValue>() || args[i].is<ListValue>()) {
        const auto& g = to_ideal(args[i], R, call, i).generators();
        gens.insert(gens.end(), g.begin(), g.end());
      } else {
        gens.push_back(to_poly(args[i], R, call, i));
      }
    }
    return gens;
  }

  static std::shared_ptr<const SopData> to_sop(const Value& v, const RingSpec& R,
                                               const Expr& call, std::size_t i) {
    if (v.is<SopValue>()) {
      require_same(v.as<SopValue>().sop->ring, R, call.children[i]->loc);
      return v.as<SopValue>().sop;
    }
    if (v.is<IdealValue>() || v.is<ListValue>()) {
      return std::make_shared<const SopData>(make_sop(R, to_ideal(v, R, call, i).generators()));
    }
    type_error(call, i, "a system of parameters", v);
  }

  static const LocalCohomClass& to_class(const Value& v, const Expr& call, std::size_t i) {
    if (!v.is<ClassValue>()) type_error(call, i, "a local cohomology class", v);
    return v.as<ClassValue>().cls;
  }

  static FrobeniusBounds bounds(const Interpreter& in) {
    return {in.config_.e_max, in.config_.q_cap};
  }

  static Value list_of(const RingSpec& R, const std::vector<Polynomial>& polys) {
    ListValue l;
    for (const Polynomial& f : polys) l.items.push_back(make(R, f));
    return Value{l};
  }

  static Value list_of(const RingSpec& R, const std::vector<Ideal>& ideals) {
    ListValue l;
    for (const Ideal& I : ideals) l.items.push_back(make(R, I));
    return Value{l};
  }

  static Polynomial default_test_element(const RingSpec& R, const Expr& call) {
    std::vector<Polynomial> found;
    try {
      found = find_parameter_test_elements(R, 3, 1);
    } catch (const UnsupportedInput&) {
    }
    if (found.empty()) {
      usage(call.loc, call.text + ": no default test element for " + R.to_string() +
                          "; pass one as the last argument");
    }
    return found.front();
  }

  // --- commands ------------------------------------------------------------

  static Value gb(Interpreter& in, const Expr& call, Args& a) {
    arity(call, a, 1, 2);
    RingSpec R = ring_for(in, call, a);
    MonomialOrder order = MonomialOrder::grevlex();
    if (a.size() == 2) {
      const std::string& name = to_text(call, a, 1);
      if (name == "lex") {
        order = MonomialOrder::lex();
      } else if (name != "grevlex") {
        usage(call.children[1]->loc, "gb: order must be \"grevlex\" or \"lex\"");
      }
    }
    GroebnerBasis B = extend(to_ideal(a[0], R, call, 0), R).groebner(order);
    return list_of(R, B.elements());
  }

  static Value nf(Interpreter& in, const Expr& call, Args& a) {
    arity(call, a, 1, 2);
    RingSpec R = ring_for(in, call, a);
    Ideal I = a.size() == 2 ? to_ideal(a[1], R, call, 1) : Ideal::zero(R.ambient());
    return make(R, normal_form(to_poly(a[0], R, call, 0), extend(I, R).groebner()));
  }

  static Value member(Interpreter& in, const Expr& call, Args& a) {
    arity(call, a, 2, 2);
    RingSpec R = ring_for(in, call, a);
    return make(ideal_member(to_poly(a[0], R, call, 0), extend(to_ideal(a[1], R, call, 1), R)));
  }

  static Value colon(Interpreter& in, const Expr& call, Args& a) {
    arity(call, a, 2, 2);
    RingSpec R = ring_for(in, call, a);
    return make(R, colon_ideal(extend(to_ideal(a[0], R, call, 0), R), to_ideal(a[1], R, call, 1)));
  }

  static Value intersect(Interpreter& in, const Expr& call, Args& a) {
    arity(call, a, 1, 64);
    RingSpec R = ring_for(in, call, a);
    Ideal acc = extend(to_ideal(a[0], R, call, 0), R);
    for (std::size_t i = 1; i < a.size(); ++i)
      acc = intersect_ideals(acc, extend(to_ideal(a[i], R, call, i), R));
    return make(R, acc);
  }

  static Value eliminate_cmd(Interpreter& in, const Expr& call, Args& a) {
    arity(call, a, 2, 2);
    RingSpec R = ring_for(in, call, a);
    std::uint64_t k = to_count(call, a, 1);
    if (k > R.num_vars()) usage(call.children[1]->loc, "eliminate: more variables than the ring has");
    return make(R, eliminate(extend(to_ideal(a[0], R, call, 0), R), k));
  }

  static Value bracket(Interpreter& in, const Expr& call, Args& a) {
    arity(call, a, 2, 2);
    RingSpec R = ring_for(in, call, a);
    return make(R, bracket_power(to_ideal(a[0], R, call, 0), to_count(call, a, 1, 1)));
  }

  static Value tc(Interpreter& in, const Expr& call, Args& a) {
    arity(call, a, 1, 1);
    RingSpec R = ring_for(in, call, a);
    return make(R, tight_closure_sr(to_ideal(a[0], R, call, 0), R));
  }

  static Value tcmember(Interpreter& in, const Expr& call, Args& a) {
    arity(call, a, 2, 3);
    RingSpec R = ring_for(in, call, a);
    Polynomial x = to_poly(a[0], R, call, 0);
    Ideal I = to_ideal(a[1], R, call, 1);
    Polynomial c = a.size() == 3 ? to_poly(a[2], R, call, 2) : default_test_element(R, call);
    ClosureVerdict v = tc_membership_bounded(x, I, c, R, bounds(in));
    ReportValue r;
    r.kind = "tcmember";
    Json checks = Json::array();
    std::string detail;
    for (const FrobeniusCheck& ch : v.checks) {
      checks.push_back(Json{{"q", ch.q}, {"holds", ch.holds}});
      detail += (detail.empty() ? "" : ", ") + std::string("q = ") + std::to_string(ch.q) + ": " +
                (ch.holds ? "holds" : "fails");
    }
    if (v.status == ClosureStatus::NonMember) {
      r.text = "non-member (witness q = " + std::to_string(*v.witness_q) + ")";
    } else {
      r.text = "unknown up to q = " + std::to_string(v.checked_up_to);
    }
    r.text += " [c = " + v.multiplier.to_string() + "; " + detail + "]";
    r.data = Json{{"status", to_string(v.status)},
                  {"witness_q", v.witness_q ? Json(*v.witness_q) : Json(nullptr)},
                  {"checked_up_to", v.checked_up_to},
                  {"multiplier", v.multiplier.to_string()},
                  {"checks", checks}};
    return Value{r};
  }

  static Value testideal(Interpreter& in, const Expr& call, Args& a) {
    arity(call, a, 0, 1);
    RingSpec R = ring_for(in, call, a);
    return make(R, test_ideal_sr(R));
  }

  static Value partestideal(Interpreter& in, const Expr& call, Args& a) {
    arity(call, a, 1, 2);
    RingSpec R = ring_for(in, call, a);
    auto S = to_sop(a[0], R, call, 0);
    unsigned t_max = a.size() == 2 ? static_cast<unsigned>(to_count(call, a, 1, 1)) : 4;
    ParameterTestResult res = parameter_test_ideal(R, S->sop, t_max);
    if (!res.limit_pattern_verified) {
      in.err_ << in.source_name_ << ":" << call.loc.line << ":" << call.loc.column
              << ": warning: colon pattern not verified; returning the intersection for t <= "
              << t_max << "\n";
    }
    return make(R, res.ideal);
  }

  static Value sop(Interpreter& in, const Expr& call, Args& a) {
    arity(call, a, 1, 16);
    RingSpec R = ring_for(in, call, a);
    return Value{SopValue{std::make_shared<const SopData>(make_sop(R, flatten_gens(a, 0, R, call)))}};
  }

  static Value lcclass(Interpreter& in, const Expr& call, Args& a) {
    arity(call, a, 3, 3);
    RingSpec R = ring_for(in, call, a);
    auto S = to_sop(a[0], R, call, 0);
    return Value{ClassValue{make_class(to_poly(a[1], R, call, 1), to_count(call, a, 2, 1), S)}};
  }

  static Value frob(Interpreter& in, const Expr& call, Args& a) {
    arity(call, a, 1, 1);
    if (a[0].is<ClassValue>()) return Value{ClassValue{frobenius_class(a[0].as<ClassValue>().cls, in.config_.level_cap)}};
    RingSpec R = ring_for(in, call, a);
    if (a[0].is<IdealValue>()) return make(R, bracket_power(a[0].as<IdealValue>().ideal, R.prime()));
    return make(R, frobenius_power(to_poly(a[0], R, call, 0), 1));
  }

  static Value annihilates_cmd(Interpreter&, const Expr& call, Args& a) {
    arity(call, a, 2, 2);
    const LocalCohomClass& eta = to_class(a[1], call, 1);
    return make(annihilates(to_ideal(a[0], eta.sop().ring, call, 0), eta));
  }

  static Value iszero(Interpreter&, const Expr& call, Args& a) {
    arity(call, a, 1, 1);
    return make(class_is_zero(to_class(a[0], call, 0)));
  }

  static Value strongcheck(Interpreter& in, const Expr& call, Args& a) {
    arity(call, a, 2, 3);
    RingSpec R = ring_for(in, call, a);
    Ideal T = to_ideal(a[0], R, call, 0);
    std::vector<Ideal> family;
    if (a[1].is<ListValue>()) {
      for (const Value& item : a[1].as<ListValue>().items) family.push_back(to_ideal(item, R, call, 1));
    } else {
      family.push_back(to_ideal(a[1], R, call, 1));
    }
    ClosureOracle oracle;
    if (a.size() == 3) {
      Polynomial c = to_poly(a[2], R, call, 2);
      FrobeniusBounds b = bounds(in);
      oracle = [R, c, b](const Ideal& I) { return bounded_tight_closure(I, R, c, b).upper_bound; };
    }
    StrongTestReport rep = check_strong_property(T, family, R, oracle);

    std::vector<std::array<std::string, 4>> rows{{"I", "I*", "T I", "T I* = T I"}};
    Json entries = Json::array();
    for (const StrongTestEntry& e : rep.per_ideal) {
      rows.push_back({to_string(e.ideal, R), to_string(e.closure, R), to_string(e.t_times_ideal, R),
                      e.equal ? "equal" : "unequal"});
      entries.push_back(Json{{"ideal", rows.back()[0]},
                             {"closure", rows.back()[1]},
                             {"t_times_ideal", rows.back()[2]},
                             {"t_times_closure", to_string(e.t_times_closure, R)},
                             {"equal", e.equal}});
    }
    std::array<std::size_t, 4> width{};
    for (const auto& row : rows)
      for (std::size_t k = 0; k < 4; ++k) width[k] = std::max(width[k], row[k].size());
    ReportValue r;
    r.kind = "strongcheck";
    r.text = "T = " + to_string(T, R) + "\n";
    for (const auto& row : rows) {
      std::string line;
      for (std::size_t k = 0; k < 4; ++k) line += (k ? " | " : "") + (k < 3 ? pad(row[k], width[k]) : row[k]);
      r.text += line + "\n";
    }
    r.text += std::string("all equal: ") + (rep.all_equal ? "true" : "false");
    if (rep.degenerate_T) r.text += " (T is zero in R)";
    if (!rep.closure_exact) r.text += " (closures are upper bounds)";
    r.ok = rep.all_equal;
    r.data = Json{{"T", to_string(T, R)},
                  {"entries", entries},
                  {"all_equal", rep.all_equal},
                  {"degenerate_T", rep.degenerate_T},
                  {"closure_exact", rep.closure_exact}};
    return Value{r};
  }

  static Value idcert(Interpreter& in, const Expr& call, Args& a) {
    arity(call, a, 3, 3);
    RingSpec R = ring_for(in, call, a);
    Polynomial x = to_poly(a[0], R, call, 0);
    Ideal I = to_ideal(a[1], R, call, 1);
    IntegralDependenceCertificate cert =
        integral_dependence_certificate(x, I, to_ideal(a[2], R, call, 2), R);
    bool ok = verify_certificate(cert, x, I, R);
    Json coeffs = Json::array();
    for (const Polynomial& c : cert.coefficients) coeffs.push_back(c.to_string());
    Json gens = Json::array();
    for (const Polynomial& g : cert.module_generators) gens.push_back(g.to_string());
    ReportValue r;
    r.kind = "idcert";
    r.ok = ok;
    r.text = "degree: " + std::to_string(cert.degree) +
             "\ncharacteristic polynomial: " + cert.characteristic_polynomial.to_string() +
             "\nverified: " + (ok ? "true" : "false");
    r.data = Json{{"degree", cert.degree},
                  {"characteristic_polynomial", cert.characteristic_polynomial.to_string()},
                  {"coefficients", coeffs},
                  {"module_generators", gens},
                  {"verified", ok}};
    return Value{r};
  }

  static Value reproduce(Interpreter&, const Expr& call, Args& a) {
    arity(call, a, 1, 1);
    std::uint64_t p = to_count(call, a, 0, 2);
    if (!is_prime(p)) usage(call.children[0]->loc, "reproduce: " + std::to_string(p) + " is not prime");
    CounterexampleReport rep = reproduce_example(static_cast<std::uint32_t>(p));
    ReportValue r;
    r.kind = "reproduce";
    r.ok = rep.all_hold();
    r.text = audit_log_text(rep);
    if (!r.text.empty() && r.text.back() == '\n') r.text.pop_back();
    r.data = Json::array();
    for (const AuditRecord& rec : rep.records) r.data.push_back(audit_record_json(rec));
    return Value{r};
  }

  static Value print(Interpreter& in, const Expr& call, Args& a) {
    arity(call, a, 1, 1);
    if (in.json_) {
      in.out_ << Json{{"line", call.loc.line}, {"column", call.loc.column}, {"command", "print"},
                      {"result", value_to_json(a[0])}}.dump()
              << "\n";
    } else {
      in.out_ << format_value(a[0]) << "\n";
    }
    return Value{};
  }

  static Value save(Interpreter& in, const Expr& call, Args& a) {
    arity(call, a, 1, 1);
    in.save_session(to_text(call, a, 0));
    return Value{};
  }

  static Value load(Interpreter& in, const Expr& call, Args& a) {
    arity(call, a, 1, 1);
    in.load_session(to_text(call, a, 0));
    return Value{};
  }

  static Value minprimes(Interpreter& in, const Expr& call, Args& a) {
    arity(call, a, 0, 1);
    RingSpec R = ring_for(in, call, a);
    if (a.empty() || a[0].is<RingValue>()) return list_of(R, stanley_reisner_primes(R));
    return list_of(R, minimal_primes_squarefree(extend(to_ideal(a[0], R, call, 0), R)));
  }

  static Value equal(Interpreter& in, const Expr& call, Args& a) {
    arity(call, a, 2, 2);
    if (a[0].is<IdealValue>() || a[1].is<IdealValue>()) {
      RingSpec R = ring_for(in, call, a);
      return make(ideals_equal(extend(to_ideal(a[0], R, call, 0), R),
                               extend(to_ideal(a[1], R, call, 1), R)));
    }
    if (a[0].is<PolyValue>() || a[1].is<PolyValue>()) {
      RingSpec R = ring_for(in, call, a);
      Polynomial d = to_poly(a[0], R, call, 0) - to_poly(a[1], R, call, 1);
      return make(ideal_member(d, defining_ideal(R)));
    }
    if (a[0].is<ClassValue>() && a[1].is<ClassValue>() &&
        a[0].as<ClassValue>().cls.sop_ptr() == a[1].as<ClassValue>().cls.sop_ptr()) {
      return make(classes_equal(a[0].as<ClassValue>().cls, a[1].as<ClassValue>().cls));
    }
    return make(values_equal(a[0], a[1]));
  }

  static Value quotbasis(Interpreter& in, const Expr& call, Args& a) {
    arity(call, a, 1, 1);
    RingSpec R = ring_for(in, call, a);
    std::vector<Polynomial> basis;
    for (const Monomial& m : quotient_vector_basis(R, to_ideal(a[0], R, call, 0)))
      basis.push_back(Polynomial::monomial(R.ambient(), m));
    return list_of(R, basis);
  }

  static Value testelements(Interpreter& in, const Expr& call, Args& a) {
    arity(call, a, 1, 2);
    RingSpec R = active_ring(in, call.loc);
    std::size_t cap = a.size() == 2 ? to_count(call, a, 1) : 0;
    return list_of(R, find_parameter_test_elements(R, static_cast<unsigned>(to_count(call, a, 0, 1)), cap));
  }

  static Value assert_cmd(Interpreter&, const Expr& call, Args& a) {
    arity(call, a, 1, 2);
    bool ok;
    if (a[0].is<bool>()) {
      ok = a[0].as<bool>();
    } else if (a[0].is<ReportValue>()) {
      ok = a[0].as<ReportValue>().ok;
    } else {
      type_error(call, 0, "a boolean or a report", a[0]);
    }
    if (!ok) {
      std::string msg = a.size() == 2 ? to_text(call, a, 1) : "assertion failed";
      throw RuntimeError(call.loc, msg, kExitVerdict);
    }
    return Value{};
  }
};

const std::map<std::string, Commands::Handler>& Commands::table() {
  static const std::map<std::string, Handler> t{
      {"gb", gb},
      {"nf", nf},
      {"member", member},
      {"colon", colon},
      {"intersect", intersect},
      {"eliminate", eliminate_cmd},
      {"bracket", bracket},
      {"tc", tc},
      {"tcmember", tcmember},
      {"testideal", testideal},
      {"partestideal", partestideal},
      {"sop", sop},
      {"lcclass", lcclass},
      {"frob", frob},
      {"annihilates", annihilates_cmd},
      {"strongcheck", strongcheck},
      {"idcert", idcert},
      {"reproduce", reproduce},
      {"print", print},
      {"save", save},
      {"load", load},
      {"iszero", iszero},
      {"minprimes", minprimes},
      {"equal", equal},
      {"quotbasis", quotbasis},
      {"testelements", testelements},
      {"assert", assert_cmd},
  };
  return t;
}

Interpreter::Interpreter(std::ostream& out, std::ostream& err, ConfigLayer flags, ConfigLayer env,
                         bool json)
    : out_(out), err_(err), flags_(flags), env_(env), json_(json) {
  apply_config();
}

void Interpreter::apply_config() {
  config_ = resolve_config(flags_, env_, session_);
  GbBudget b;
  b.max_basis_size = config_.gb_max_basis;
  b.max_reductions = config_.gb_max_reductions;
  set_default_budget(b);
}

void Interpreter::bind(const std::string& name, Value v) {
  if (v.is<RingValue>()) current_ring_ = v.as<RingValue>().ring;
  auto [it, inserted] = bindings_.insert_or_assign(name, std::move(v));
  (void)it;
  if (inserted) order_.push_back(name);
}

const Value* Interpreter::lookup(const std::string& name) const {
  auto it = bindings_.find(name);
  return it == bindings_.end() ? nullptr : &it->second;
}

Value Interpreter::eval_name(const Expr& e) {
  if (quotient_scope_ && quotient_scope_->ambient()->index_of(e.text)) {
    return make(*quotient_scope_, Polynomial::variable(quotient_scope_->ambient(), e.text));
  }
  if (!pure_) {
    if (const Value* v = lookup(e.text)) return *v;
  }
  if (current_ring_ && current_ring_->ambient()->index_of(e.text)) {
    return make(*current_ring_, Polynomial::variable(current_ring_->ambient(), e.text));
  }
  if (e.text == "true" || e.text == "false") return make(e.text == "true");
  usage(e.loc, "unbound name '" + e.text + "'");
}

namespace {

std::int64_t checked(bool overflow, std::int64_t v, SourceLoc loc) {
  if (overflow) usage(loc, "integer overflow");
  return v;
}

}  // namespace

Value Interpreter::eval_binary(const Expr& e) {
  const char op = e.text[0];
  Value lhs = eval(*e.children[0]);

  if (op == '/' && lhs.is<RingValue>()) {
    const RingSpec base = lhs.as<RingValue>().ring;
    auto saved = quotient_scope_;
    quotient_scope_ = base;
    Value rhs;
    try {
      rhs = eval(*e.children[1]);
    } catch (...) {
      quotient_scope_ = saved;
      throw;
    }
    quotient_scope_ = saved;
    Expr wrapper{ExprKind::Call, e.loc, "/", {e.children[1]}, {}};
    Ideal I = Commands::to_ideal(rhs, base, wrapper, 0);
    std::vector<Polynomial> defining = base.defining();
    for (const Polynomial& g : I.generators())
      if (!g.is_zero()) defining.push_back(g);
    return Value{RingValue{RingSpec(base.ambient(), defining)}};
  }

  Value rhs = eval(*e.children[1]);
  if (lhs.is<std::int64_t>() && rhs.is<std::int64_t>()) {
    std::int64_t a = lhs.as<std::int64_t>(), b = rhs.as<std::int64_t>(), r = 0;
    switch (op) {
      case '+':
        return make(checked(__builtin_add_overflow(a, b, &r), r, e.loc));
      case '-':
        return make(checked(__builtin_sub_overflow(a, b, &r), r, e.loc));
      case '*':
        return make(checked(__builtin_mul_overflow(a, b, &r), r, e.loc));
      default:
        usage(e.loc, "integer division is not supported");
    }
  }

  Expr wrapper{ExprKind::Call, e.loc, std::string("'") + op + "'", {e.children[0], e.children[1]}, {}};
  const bool ideal_side = lhs.is<IdealValue>() || rhs.is<IdealValue>();
  std::optional<RingSpec> R = ring_of(lhs);
  if (!R) R = ring_of(rhs);
  if (!R || lhs.is<RingValue>() || rhs.is<RingValue>() || lhs.is<ListValue>() ||
      rhs.is<ListValue>()) {
    usage(e.loc, std::string("operator '") + op + "' does not apply to " + type_name(lhs) +
                     " and " + type_name(rhs));
  }
  if (ideal_side) {
    Ideal a = Commands::to_ideal(lhs, *R, wrapper, 0);
    Ideal b = Commands::to_ideal(rhs, *R, wrapper, 1);
    if (op == '+') return make(*R, a + b);
    if (op == '*') return make(*R, a * b);
    usage(e.loc, std::string("operator '") + op + "' does not apply to ideals");
  }
  Polynomial a = Commands::to_poly(lhs, *R, wrapper, 0);
  Polynomial b = Commands::to_poly(rhs, *R, wrapper, 1);
  switch (op) {
    case '+':
      return make(*R, a + b);
    case '-':
      return make(*R, a - b);
    case '*':
      return make(*R, a * b);
    default: {
      if (b.is_zero()) usage(e.loc, "division by zero");
      std::optional<Polynomial> q = divide_exact(a, b);
      if (!q) usage(e.loc, b.to_string() + " does not divide " + a.to_string());
      return make(*R, *q);
    }
  }
}

Value Interpreter::eval_call(const Expr& e) {
  const auto& table = Commands::table();
  auto it = table.find(e.text);
  if (it == table.end()) usage(e.loc, "unknown command '" + e.text + "'");
  std::vector<Value> args;
  args.reserve(e.children.size());
  for (const ExprPtr& c : e.children) args.push_back(eval(*c));
  return it->second(*this, e, args);
}

Value Interpreter::eval(const Expr& e) {
  try {
    switch (e.kind) {
      case ExprKind::Integer: {
        std::int64_t v = 0;
        auto [ptr, ec] = std::from_chars(e.text.data(), e.text.data() + e.text.size(), v);
        if (ec != std::errc() || ptr != e.text.data() + e.text.size()) {
          usage(e.loc, "integer literal " + e.text + " is too large");
        }
        return make(v);
      }
      case ExprKind::String:
        return Value{e.text};
      case ExprKind::Name:
        return eval_name(e);
      case ExprKind::Call:
        return eval_call(e);
      case ExprKind::Tuple: {
        std::vector<Value> items;
        for (const ExprPtr& c : e.children) items.push_back(eval(*c));
        std::optional<RingSpec> R;
        for (const Value& v : items)
          if ((R = ring_of(v))) break;
        if (!R) R = Commands::active_ring(*this, e.loc);
        Expr wrapper{ExprKind::Call, e.loc, "ideal", e.children, {}};
        std::vector<Polynomial> gens;
        for (std::size_t i = 0; i < items.size(); ++i) {
          if (items[i].is<IdealValue>()) {
            const auto& g = Commands::to_ideal(items[i], *R, wrapper, i).generators();
            gens.insert(gens.end(), g.begin(), g.end());
          } else {
            gens.push_back(Commands::to_poly(items[i], *R, wrapper, i));
          }
        }
        return make(*R, Ideal(R->ambient(), gens));
      }
      case ExprKind::List: {
        ListValue l;
        for (const ExprPtr& c : e.children) l.items.push_back(eval(*c));
        return Value{l};
      }
      case ExprKind::Negate: {
        Value v = eval(*e.children[0]);
        if (v.is<std::int64_t>()) {
          std::int64_t i = v.as<std::int64_t>();
          if (i == INT64_MIN) usage(e.loc, "integer overflow");
          return make(-i);
        }
        if (v.is<PolyValue>()) return make(v.as<PolyValue>().ring, -v.as<PolyValue>().poly);
        usage(e.loc, "cannot negate " + type_name(v));
      }
      case ExprKind::Binary:
        return eval_binary(e);
      case ExprKind::Power: {
        Value base = eval(*e.children[0]);
        Value ex = eval(*e.children[1]);
        if (!ex.is<std::int64_t>() || ex.as<std::int64_t>() < 0) {
          usage(e.children[1]->loc, "exponent must be a non-negative integer");
        }
        const auto n = static_cast<std::uint64_t>(ex.as<std::int64_t>());
        if (base.is<std::int64_t>()) {
          std::int64_t acc = 1;
          for (std::uint64_t i = 0; i < n; ++i)
            acc = checked(__builtin_mul_overflow(acc, base.as<std::int64_t>(), &acc), acc, e.loc);
          return make(acc);
        }
        if (base.is<PolyValue>()) {
          return make(base.as<PolyValue>().ring, base.as<PolyValue>().poly.pow(n));
        }
        if (base.is<IdealValue>()) {
          if (n > 64) usage(e.loc, "ideal power exponent is too large");
          return make(base.as<IdealValue>().ring,
                      ideal_power(base.as<IdealValue>().ideal, static_cast<unsigned>(n)));
        }
        usage(e.loc, "cannot raise " + type_name(base) + " to a power");
      }
      case ExprKind::RingLiteral: {
        Value p = eval(*e.children[0]);
        if (!p.is<std::int64_t>() || p.as<std::int64_t>() < 2) {
          usage(e.children[0]->loc, "characteristic must be a prime integer");
        }
        std::int64_t prime = p.as<std::int64_t>();
        if (!is_prime(static_cast<std::uint64_t>(prime))) {
          usage(e.children[0]->loc, std::to_string(prime) + " is not prime");
        }
        if (static_cast<std::uint64_t>(prime) > config_.prime_cap) {
          usage(e.children[0]->loc, "characteristic " + std::to_string(prime) +
                                        " exceeds the prime cap " +
                                        std::to_string(config_.prime_cap));
        }
        return Value{RingValue{RingSpec(PolyRing::make(static_cast<std::uint32_t>(prime), e.names))}};
      }
    }
  } catch (const RuntimeError&) {
    throw;
  } catch (const BudgetExceeded& ex) {
    throw RuntimeError(e.loc,
                       std::string("budget exceeded: ") + ex.what() + " (basis size " +
                           std::to_string(ex.basis_size()) + ", pending pairs " +
                           std::to_string(ex.pending_pairs()) + ", reductions " +
                           std::to_string(ex.reductions()) + ")",
                       kExitBudget);
  } catch (const Error& ex) {
    throw RuntimeError(e.loc, error_kind(ex) + ": " + ex.what(), kExitVerdict);
  }
  usage(e.loc, "unsupported expression");
}

void Interpreter::execute(const Statement& st, std::string_view source_name) {
  Value v = eval(*st.expr);
  if (st.keyword.empty()) {
    std::string command = st.expr->kind == ExprKind::Call ? st.expr->text : "value";
    if (!v.is<std::monostate>()) {
      if (json_) {
        out_ << Json{{"line", st.loc.line}, {"column", st.loc.column}, {"command", command},
                     {"result", value_to_json(v)}}.dump()
             << "\n";
      } else {
        out_ << format_value(v) << "\n";
      }
    }
    trace_.push_back({st.loc, command, std::move(v)});
    return;
  }

  const std::string& kw = st.keyword;
  Expr wrapper{ExprKind::Call, st.expr->loc, kw, {st.expr}, {}};
  if (kw == "ring" && !v.is<RingValue>()) Commands::type_error(wrapper, 0, "a ring", v);
  if (kw == "class" && !v.is<ClassValue>()) Commands::type_error(wrapper, 0, "a class", v);
  if (kw == "list" && !v.is<ListValue>()) Commands::type_error(wrapper, 0, "a list", v);
  if (kw == "poly") {
    if (v.is<std::int64_t>()) {
      RingSpec R = Commands::active_ring(*this, st.loc);
      v = make(R, Polynomial::constant(R.ambient(), v.as<std::int64_t>()));
    } else if (!v.is<PolyValue>()) {
      Commands::type_error(wrapper, 0, "a polynomial", v);
    }
  }
  if (kw == "ideal" && !v.is<IdealValue>()) {
    std::optional<RingSpec> R = ring_of(v);
    if (!R) R = Commands::active_ring(*this, st.loc);
    v = make(*R, Commands::to_ideal(v, *R, wrapper, 0));
  }
  if (lookup(st.name)) {
    err_ << source_name << ":" << st.loc.line << ":" << st.loc.column << ": warning: rebinding '"
         << st.name << "' shadows the previous value\n";
  }
  bind(st.name, std::move(v));
}

int Interpreter::run(const Program& program, std::string_view source_name) {
  source_name_ = std::string(source_name);
  for (const Statement& st : program.statements) {
    try {
      execute(st, source_name);
    } catch (const RuntimeError& e) {
      err_ << source_name << ":" << e.loc().line << ":" << e.loc().column << ": error: " << e.what()
           << "\n";
      return e.exit_code();
    } catch (const std::exception& e) {
      err_ << source_name << ":" << st.loc.line << ":" << st.loc.column << ": error: " << e.what()
           << "\n";
      return kExitVerdict;
    }
  }
  return kExitOk;
}

int Interpreter::run_source(std::string_view source, std::string_view source_name) {
  ParseResult parsed = parse_program(source);
  if (auto* diag = std::get_if<Diagnostic>(&parsed)) {
    err_ << diag->format(source_name) << "\n";
    return kExitUsage;
  }
  return run(std::get<Program>(parsed), source_name);
}

Value Interpreter::evaluate(std::string_view expression) {
  auto parsed = parse_expression(expression);
  if (auto* diag = std::get_if<Diagnostic>(&parsed)) {
    throw RuntimeError(diag->loc, diag->format("<expr>"), kExitUsage);
  }
  return eval(*std::get<ExprPtr>(parsed));
}

// --- sessions ---------------------------------------------------------------

Json Interpreter::session_json() const {
  Json bindings = Json::array();
  for (const std::string& name : order_)
    bindings.push_back(Json{{"name", name}, {"value", value_to_json(bindings_.at(name))}});
  return Json{{"version", kSessionVersion},
              {"config", config_to_json(config_)},
              {"current_ring", current_ring_ ? Json(current_ring_->to_string()) : Json(nullptr)},
              {"bindings", bindings}};
}

void Interpreter::save_session(const std::string& path) const {
  std::ofstream f(path);
  if (!f) throw InvalidArgument("cannot write session file " + path);
  f << session_json().dump(2) << "\n";
  if (!f) throw InvalidArgument("failed writing session file " + path);
}

void Interpreter::load_session(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw InvalidArgument("cannot read session file " + path);
  Json j;
  try {
    j = Json::parse(f);
  } catch (const Json::exception& e) {
    throw InvalidArgument("session file " + path + " is not valid JSON: " + e.what());
  }
  load_session_json(j);
}

namespace {

struct PureScope {
  explicit PureScope(bool& flag) : flag_(flag), saved_(flag) { flag_ = true; }
  ~PureScope() { flag_ = saved_; }
  bool& flag_;
  bool saved_;
};

}  // namespace

Value Interpreter::decode(const Json& j) {
  if (!j.is_object() || !j.contains("type")) throw InvalidArgument("session value without a type");
  const std::string type = j.at("type").get<std::string>();
  auto ring_from_text = [&](const std::string& text) -> RingSpec {
    auto it = ring_memo_.find(text);
    if (it != ring_memo_.end()) return it->second;
    Value v = in_ring_scope(text, std::nullopt);
    if (!v.is<RingValue>()) throw InvalidArgument("session ring '" + text + "' is not a ring");
    ring_memo_.emplace(text, v.as<RingValue>().ring);
    return v.as<RingValue>().ring;
  };
  auto poly_in = [&](const RingSpec& R, const std::string& text) -> Polynomial {
    Value v = in_ring_scope(text, R);
    if (v.is<std::int64_t>()) return Polynomial::constant(R.ambient(), v.as<std::int64_t>());
    if (!v.is<PolyValue>()) throw InvalidArgument("session polynomial '" + text + "' is malformed");
    return v.as<PolyValue>().poly;
  };
  auto polys_in = [&](const RingSpec& R, const Json& arr) {
    std::vector<Polynomial> out;
    for (const Json& t : arr) out.push_back(poly_in(R, t.get<std::string>()));
    return out;
  };
  auto sop_in = [&](const RingSpec& R, const Json& arr) {
    std::string key = R.to_string() + "|" + arr.dump();
    auto it = sop_memo_.find(key);
    if (it != sop_memo_.end()) return it->second;
    auto S = std::make_shared<const SopData>(make_sop(R, polys_in(R, arr)));
    sop_memo_.emplace(key, S);
    return S;
  };

  if (type == "none") return Value{};
  if (type == "bool") return Value{j.at("value").get<bool>()};
  if (type == "int") return Value{j.at("value").get<std::int64_t>()};
  if (type == "string") return Value{j.at("value").get<std::string>()};
  if (type == "ring") return Value{RingValue{ring_from_text(j.at("text").get<std::string>())}};
  if (type == "poly") {
    RingSpec R = ring_from_text(j.at("ring").get<std::string>());
    return make(R, poly_in(R, j.at("value").get<std::string>()));
  }
  if (type == "ideal") {
    RingSpec R = ring_from_text(j.at("ring").get<std::string>());
    return make(R, Ideal(R.ambient(), polys_in(R, j.at("generators"))));
  }
  if (type == "sop") {
    RingSpec R = ring_from_text(j.at("ring").get<std::string>());
    return Value{SopValue{sop_in(R, j.at("generators"))}};
  }
  if (type == "class") {
    RingSpec R = ring_from_text(j.at("ring").get<std::string>());
    auto S = sop_in(R, j.at("sop"));
    return Value{ClassValue{make_class(poly_in(R, j.at("representative").get<std::string>()),
                                       j.at("level").get<std::uint64_t>(), S)}};
  }
  if (type == "list") {
    ListValue l;
    for (const Json& item : j.at("items")) l.items.push_back(decode(item));
    return Value{l};
  }
  if (type == "report") {
    ReportValue r;
    r.kind = j.at("kind").get<std::string>();
    r.ok = j.at("ok").get<bool>();
    r.text = j.at("text").get<std::string>();
    r.data = j.at("data");
    return Value{r};
  }
  throw InvalidArgument("unknown session value type '" + type + "'");
}

Value Interpreter::in_ring_scope(const std::string& text, const std::optional<RingSpec>& R) {
  PureScope pure(pure_);
  auto saved_scope = quotient_scope_;
  auto saved_current = current_ring_;
  quotient_scope_ = R;
  current_ring_.reset();
  try {
    auto parsed = parse_expression(text);
    if (auto* diag = std::get_if<Diagnostic>(&parsed)) {
      throw InvalidArgument("cannot parse '" + text + "': " + diag->format("<session>"));
    }
    Value v = eval(*std::get<ExprPtr>(parsed));
    quotient_scope_ = saved_scope;
    current_ring_ = saved_current;
    return v;
  } catch (...) {
    quotient_scope_ = saved_scope;
    current_ring_ = saved_current;
    throw;
  }
}

void Interpreter::load_session_json(const Json& j) {
  try {
    if (!j.is_object() || !j.contains("version") || j.at("version") != kSessionVersion) {
      throw InvalidArgument(std::string("session file is not tagged ") + kSessionVersion);
    }
    ConfigLayer layer = j.contains("config") ? config_from_json(j.at("config")) : ConfigLayer{};
    std::map<std::string, Value> bindings;
    std::vector<std::string> order;
    ring_memo_.clear();
    sop_memo_.clear();
    for (const Json& b : j.at("bindings")) {
      std::string name = b.at("name").get<std::string>();
      if (!bindings.count(name)) order.push_back(name);
      bindings.insert_or_assign(name, decode(b.at("value")));
    }
    std::optional<RingSpec> current;
    if (j.contains("current_ring") && !j.at("current_ring").is_null()) {
      std::string text = j.at("current_ring").get<std::string>();
      Value v = in_ring_scope(text, std::nullopt);
      if (!v.is<RingValue>()) throw InvalidArgument("current_ring is not a ring");
      auto it = ring_memo_.find(text);
      current = it != ring_memo_.end() ? it->second : v.as<RingValue>().ring;
    }
    session_ = layer;
    bindings_ = std::move(bindings);
    order_ = std::move(order);
    current_ring_ = current;
    apply_config();
  } catch (const Json::exception& e) {
    throw InvalidArgument(std::string("malformed session file: ") + e.what());
  }
}

}  // namespace ccl::dsl
