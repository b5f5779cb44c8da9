#include "ccl/dsl/config.hpp"

#include <charconv>
#include <cstdlib>
#include <limits>

#include "ccl/errors.hpp"

namespace ccl::dsl {

namespace {

template <class T>
void pick(T& out, const std::optional<T>& a, const std::optional<T>& b,
          const std::optional<T>& c) {
  if (a) {
    out = *a;
  } else if (b) {
    out = *b;
  } else if (c) {
    out = *c;
  }
}

template <class T>
std::optional<T> parse_env(const EnvLookup& lookup, const std::string& name) {
  std::optional<std::string> text = lookup(name);
  if (!text) return std::nullopt;
  std::uint64_t v = 0;
  const char* end = text->data() + text->size();
  auto [ptr, ec] = std::from_chars(text->data(), end, v);
  if (ec != std::errc() || ptr != end || text->empty() ||
      v > std::numeric_limits<T>::max()) {
    throw InvalidArgument(name + " must be a non-negative integer, got '" + *text + "'");
  }
  return static_cast<T>(v);
}

template <class T>
std::optional<T> parse_json(const Json& j, const char* key) {
  if (!j.contains(key)) return std::nullopt;
  const Json& v = j.at(key);
  if (!v.is_number_unsigned() || v.get<std::uint64_t>() > std::numeric_limits<T>::max()) {
    throw InvalidArgument(std::string("session config field '") + key +
                          "' must be a non-negative integer");
  }
  return v.get<T>();
}

}  // namespace

Config resolve_config(const ConfigLayer& flags, const ConfigLayer& env,
                      const ConfigLayer& session) {
  Config c;
  pick(c.e_max, flags.e_max, env.e_max, session.e_max);
  pick(c.q_cap, flags.q_cap, env.q_cap, session.q_cap);
  pick(c.gb_max_basis, flags.gb_max_basis, env.gb_max_basis, session.gb_max_basis);
  pick(c.gb_max_reductions, flags.gb_max_reductions, env.gb_max_reductions,
       session.gb_max_reductions);
  pick(c.prime_cap, flags.prime_cap, env.prime_cap, session.prime_cap);
  pick(c.level_cap, flags.level_cap, env.level_cap, session.level_cap);
  return c;
}

ConfigLayer config_from_env(const EnvLookup& lookup) {
  ConfigLayer l;
  l.e_max = parse_env<unsigned>(lookup, "CCL_EMAX");
  l.q_cap = parse_env<std::uint64_t>(lookup, "CCL_QCAP");
  l.gb_max_reductions = parse_env<std::size_t>(lookup, "CCL_GB_BUDGET");
  l.gb_max_basis = parse_env<std::size_t>(lookup, "CCL_GB_MAX_BASIS");
  l.prime_cap = parse_env<std::uint32_t>(lookup, "CCL_PRIME_CAP");
  l.level_cap = parse_env<std::uint64_t>(lookup, "CCL_LEVEL_CAP");
  return l;
}

ConfigLayer config_from_process_env() {
  return config_from_env([](const std::string& name) -> std::optional<std::string> {
    const char* v = std::getenv(name.c_str());
    if (!v) return std::nullopt;
    return std::string(v);
  });
}

Json config_to_json(const Config& c) {
  return Json{{"e_max", c.e_max},
              {"q_cap", c.q_cap},
              {"gb_max_basis", c.gb_max_basis},
              {"gb_max_reductions", c.gb_max_reductions},
              {"prime_cap", c.prime_cap},
              {"level_cap", c.level_cap}};
}

ConfigLayer config_from_json(const Json& j) {
  if (!j.is_object()) throw InvalidArgument("session config must be an object");
  ConfigLayer l;
  l.e_max = parse_json<unsigned>(j, "e_max");
  l.q_cap = parse_json<std::uint64_t>(j, "q_cap");
  l.gb_max_basis = parse_json<std::size_t>(j, "gb_max_basis");
  l.gb_max_reductions = parse_json<std::size_t>(j, "gb_max_reductions");
  l.prime_cap = parse_json<std::uint32_t>(j, "prime_cap");
  l.level_cap = parse_json<std::uint64_t>(j, "level_cap");
  return l;
}

}  // namespace ccl::dsl
