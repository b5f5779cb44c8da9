#pragma once
// End-to-end reproduction of the path-ring counterexample with a structured
// audit log.

#include <cstdint>
#include <string>

#include "ccl/dsl/value.hpp"
#include "ccl/local_cohomology.hpp"

namespace ccl::dsl {

/// Colon-route depth used by reproduce.
inline constexpr unsigned kReproduceColonDepth = 4;

/// Minimal primes, pairwise intersections, both test-ideal routes and every
/// step of fstability_counterexample(p), in that order. Throws
/// UnsupportedInput for primes outside the supported range.
CounterexampleReport reproduce_example(std::uint32_t p);

/// {assertion, inputs, verdict, paper_anchor}.
Json audit_record_json(const AuditRecord& r);

/// One JSON object per line.
std::string audit_log_jsonl(const CounterexampleReport& report);

/// "PASS|FAIL  assertion" lines followed by the inputs, then a summary.
std::string audit_log_text(const CounterexampleReport& report);

}  // namespace ccl::dsl
