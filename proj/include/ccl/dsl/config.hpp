#pragma once
// Executor configuration. Precedence: command-line flags, then CCL_*
// environment variables, then the session file, then defaults.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>

#include "ccl/dsl/value.hpp"

namespace ccl::dsl {

struct Config {
  unsigned e_max = 3;
  std::uint64_t q_cap = 343;
  std::size_t gb_max_basis = 4000;
  std::size_t gb_max_reductions = 50'000'000;
  /// Largest characteristic accepted by Fp(p).
  std::uint32_t prime_cap = 65521;
  /// Largest local cohomology level frob may produce.
  std::uint64_t level_cap = 4096;
};

/// One configuration source; unset fields defer to the next source.
struct ConfigLayer {
  std::optional<unsigned> e_max;
  std::optional<std::uint64_t> q_cap;
  std::optional<std::size_t> gb_max_basis;
  std::optional<std::size_t> gb_max_reductions;
  std::optional<std::uint32_t> prime_cap;
  std::optional<std::uint64_t> level_cap;
};

Config resolve_config(const ConfigLayer& flags, const ConfigLayer& env,
                      const ConfigLayer& session);

using EnvLookup = std::function<std::optional<std::string>(const std::string&)>;

/// Reads CCL_EMAX, CCL_QCAP, CCL_GB_BUDGET (reductions), CCL_GB_MAX_BASIS,
/// CCL_PRIME_CAP and CCL_LEVEL_CAP. Throws InvalidArgument on a malformed
/// value.
ConfigLayer config_from_env(const EnvLookup& lookup);
ConfigLayer config_from_process_env();

/// Every field of a resolved configuration, as written to session files.
Json config_to_json(const Config& c);
/// Fields present in a session file. Throws InvalidArgument on bad types.
ConfigLayer config_from_json(const Json& j);

}  // namespace ccl::dsl
