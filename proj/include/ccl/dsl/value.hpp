#pragma once
// Runtime values of the ideal-expression language and their canonical text
// and JSON forms.

#include <cstdint>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "ccl/groebner.hpp"
#include "ccl/local_cohomology.hpp"
#include "ccl/ring_spec.hpp"
#include "json.hpp"

namespace ccl::dsl {

using Json = nlohmann::ordered_json;

struct RingValue {
  RingSpec ring;
};

struct PolyValue {
  RingSpec ring;
  Polynomial poly;
};

/// An ideal of `ring`; the stored generators need not include the defining
/// ideal.
struct IdealValue {
  RingSpec ring;
  Ideal ideal;
};

struct SopValue {
  std::shared_ptr<const SopData> sop;
};

struct ClassValue {
  LocalCohomClass cls;
};

/// Structured result of a command (strongcheck, idcert, reproduce, ...).
struct ReportValue {
  std::string kind;
  std::string text;
  Json data;
  bool ok = true;
};

struct Value;

struct ListValue {
  std::vector<Value> items;
};

struct Value {
  using Data = std::variant<std::monostate, bool, std::int64_t, std::string, RingValue, PolyValue,
                            IdealValue, SopValue, ClassValue, ListValue, ReportValue>;
  Data data;

  template <class T>
  bool is() const {
    return std::holds_alternative<T>(data);
  }
  template <class T>
  const T& as() const {
    return std::get<T>(data);
  }
};

/// "bool", "int", "ring", "ideal", ...
std::string type_name(const Value& v);

/// Canonical text. Rings, polynomials, ideals, systems of parameters and
/// lists of them print in a form the parser reads back to an equal value.
/// Classes print as [representative, level].
std::string format_value(const Value& v);

/// Stable JSON for --json output and session files.
Json value_to_json(const Value& v);

/// Structural equality on canonical forms (ideals compared as ideals of
/// their ring).
bool values_equal(const Value& a, const Value& b);

}  // namespace ccl::dsl
