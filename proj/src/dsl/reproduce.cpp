#include "ccl/dsl/reproduce.hpp"

#include <algorithm>

#include "ccl/closures.hpp"
#include "ccl/field.hpp"

namespace ccl::dsl {

namespace {

std::string join(const std::vector<Ideal>& ideals) {
  std::string out = "{";
  for (std::size_t i = 0; i < ideals.size(); ++i) out += (i ? ", " : "") + to_string(ideals[i]);
  return out + "}";
}

bool same_ideal_sets(const std::vector<Ideal>& a, const std::vector<Ideal>& b) {
  if (a.size() != b.size()) return false;
  return std::all_of(a.begin(), a.end(), [&](const Ideal& I) {
    return std::any_of(b.begin(), b.end(), [&](const Ideal& K) { return ideals_equal(I, K); });
  });
}

}  // namespace

CounterexampleReport reproduce_example(std::uint32_t p) {
  // Validates p before any work.
  CounterexampleReport core = fstability_counterexample(p, false);

  CounterexampleReport report;
  report.prime = p;
  RingPtr A = PolyRing::make(p, {"x", "y", "z", "w"});
  Polynomial x = Polynomial::variable(A, 0), y = Polynomial::variable(A, 1),
             z = Polynomial::variable(A, 2), w = Polynomial::variable(A, 3);
  RingSpec R(A, {x * y, y * z, z * w});
  const std::string ring_text = R.to_string();

  Ideal P1(A, {x, z}), P2(A, {y, z}), P3(A, {y, w});
  std::vector<Ideal> primes = stanley_reisner_primes(R);
  report.records.push_back({"minimal primes are {(x, z), (y, z), (y, w)}",
                            {{"ring", ring_text}, {"observed", join(primes)}},
                            same_ideal_sets(primes, {P1, P2, P3}),
                            "minimal primes of the path ring"});

  struct Pair {
    const char* name;
    const Ideal& a;
    const Ideal& b;
    Ideal expected;
  };
  const Pair pairs[] = {
      {"P1 & P2 = (x*y, z)", P1, P2, Ideal(A, {x * y, z})},
      {"P2 & P3 = (y, z*w)", P2, P3, Ideal(A, {y, z * w})},
      {"P1 & P3 = (x*y, x*w, z*y, z*w)", P1, P3, Ideal(A, {x * y, x * w, z * y, z * w})},
  };
  for (const Pair& pr : pairs) {
    Ideal meet = intersect_ideals(pr.a, pr.b);
    report.records.push_back({pr.name,
                              {{"left", to_string(pr.a)},
                               {"right", to_string(pr.b)},
                               {"observed", to_string(meet)}},
                              ideals_equal(meet, pr.expected),
                              "pairwise intersections of the minimal primes"});
  }

  Ideal tau = test_ideal_sr(R);
  Ideal expected_tau = extend(Ideal(A, {y, z, x * w}), R);
  ParameterTestResult colon = parameter_test_ideal(R, {x - w, x - y - z}, kReproduceColonDepth);
  std::vector<std::pair<std::string, std::string>> inputs{
      {"sop", "(x - w, x - y - z)"},
      {"t_max", std::to_string(kReproduceColonDepth)},
      {"formula route", to_string(tau, R)},
      {"finite intersection", to_string(colon.finite_intersection, R)},
      {"limit pattern verified", colon.limit_pattern_verified ? "true" : "false"},
      {"colon route", to_string(colon.ideal, R)}};
  for (std::size_t t = 0; t < colon.colons.size(); ++t)
    inputs.push_back({"I_" + std::to_string(t + 1) + " : I_" + std::to_string(t + 1) + "*",
                      to_string(colon.colons[t], R)});
  report.records.push_back({"parameter test ideal by the colon route equals the formula route, "
                            "both (y, z, x*w)",
                            inputs,
                            colon.limit_pattern_verified && ideals_equal(colon.ideal, tau) &&
                                ideals_equal(tau, expected_tau),
                            "parameter test ideal equals the test ideal (y, z, xw)"});

  for (AuditRecord& r : core.records) report.records.push_back(std::move(r));
  return report;
}

Json audit_record_json(const AuditRecord& r) {
  Json inputs = Json::object();
  for (const auto& [k, v] : r.inputs) inputs[k] = v;
  return Json{{"assertion", r.assertion},
              {"inputs", inputs},
              {"verdict", r.verdict},
              {"paper_anchor", r.paper_anchor}};
}

std::string audit_log_jsonl(const CounterexampleReport& report) {
  std::string out;
  for (const AuditRecord& r : report.records) out += audit_record_json(r).dump() + "\n";
  return out;
}

std::string audit_log_text(const CounterexampleReport& report) {
  std::string out;
  for (const AuditRecord& r : report.records) {
    out += std::string(r.verdict ? "PASS  " : "FAIL  ") + r.assertion + "\n";
    for (const auto& [k, v] : r.inputs) out += "        " + k + ": " + v + "\n";
  }
  if (const AuditRecord* bad = report.first_failure()) {
    out += "p = " + std::to_string(report.prime) + ": first failing assertion: " +
           bad->assertion + "\n";
  } else {
    out += "p = " + std::to_string(report.prime) + ": all " +
           std::to_string(report.records.size()) + " assertions hold\n";
  }
  return out;
}

}  // namespace ccl::dsl
