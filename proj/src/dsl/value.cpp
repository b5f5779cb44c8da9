#include "ccl/dsl/value.hpp"

namespace ccl::dsl {

namespace {

template <class... F>
struct Overload : F... {
  using F::operator()...;
};
template <class... F>
Overload(F...) -> Overload<F...>;

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    if (c == '\n') {
      out += "\\n";
      continue;
    }
    out += c;
  }
  return out + "\"";
}

Json poly_list(const std::vector<Polynomial>& gens) {
  Json out = Json::array();
  for (const Polynomial& g : gens) out.push_back(g.to_string());
  return out;
}

bool same_spec(const RingSpec& a, const RingSpec& b) {
  if (!same_ring(a.ambient(), b.ambient())) return false;
  return ideals_equal(defining_ideal(a), defining_ideal(b));
}

}  // namespace

std::string type_name(const Value& v) {
  return std::visit(Overload{
                        [](const std::monostate&) { return "none"; },
                        [](bool) { return "bool"; },
                        [](std::int64_t) { return "int"; },
                        [](const std::string&) { return "string"; },
                        [](const RingValue&) { return "ring"; },
                        [](const PolyValue&) { return "poly"; },
                        [](const IdealValue&) { return "ideal"; },
                        [](const SopValue&) { return "sop"; },
                        [](const ClassValue&) { return "class"; },
                        [](const ListValue&) { return "list"; },
                        [](const ReportValue&) { return "report"; },
                    },
                    v.data);
}

std::string format_value(const Value& v) {
  return std::visit(
      Overload{
          [](const std::monostate&) -> std::string { return "none"; },
          [](bool b) -> std::string { return b ? "true" : "false"; },
          [](std::int64_t i) -> std::string { return std::to_string(i); },
          [](const std::string& s) -> std::string { return quote(s); },
          [](const RingValue& r) -> std::string { return r.ring.to_string(); },
          [](const PolyValue& p) -> std::string { return p.poly.to_string(); },
          [](const IdealValue& I) -> std::string { return to_string(I.ideal, I.ring); },
          [](const SopValue& s) -> std::string {
            std::string out = "sop(";
            for (std::size_t i = 0; i < s.sop->sop.size(); ++i)
              out += (i ? ", " : "") + s.sop->sop[i].to_string();
            return out + ")";
          },
          [](const ClassValue& c) -> std::string { return c.cls.to_string(); },
          [](const ListValue& l) -> std::string {
            std::string out = "[";
            for (std::size_t i = 0; i < l.items.size(); ++i)
              out += (i ? ", " : "") + format_value(l.items[i]);
            return out + "]";
          },
          [](const ReportValue& r) -> std::string { return r.text; },
      },
      v.data);
}

Json value_to_json(const Value& v) {
  return std::visit(
      Overload{
          [](const std::monostate&) -> Json { return Json{{"type", "none"}}; },
          [](bool b) -> Json { return Json{{"type", "bool"}, {"value", b}}; },
          [](std::int64_t i) -> Json { return Json{{"type", "int"}, {"value", i}}; },
          [](const std::string& s) -> Json { return Json{{"type", "string"}, {"value", s}}; },
          [](const RingValue& r) -> Json {
            return Json{{"type", "ring"},
                        {"prime", r.ring.prime()},
                        {"variables", r.ring.ambient()->variables()},
                        {"defining", poly_list(r.ring.defining())},
                        {"text", r.ring.to_string()}};
          },
          [](const PolyValue& p) -> Json {
            return Json{{"type", "poly"}, {"ring", p.ring.to_string()},
                        {"value", p.poly.to_string()}};
          },
          [](const IdealValue& I) -> Json {
            return Json{{"type", "ideal"},
                        {"ring", I.ring.to_string()},
                        {"generators", poly_list(canonical_generators(I.ideal, I.ring))}};
          },
          [](const SopValue& s) -> Json {
            return Json{{"type", "sop"},
                        {"ring", s.sop->ring.to_string()},
                        {"generators", poly_list(s.sop->sop)},
                        {"regular", s.sop->regularity_checked}};
          },
          [](const ClassValue& c) -> Json {
            return Json{{"type", "class"},
                        {"ring", c.cls.sop().ring.to_string()},
                        {"sop", poly_list(c.cls.sop().sop)},
                        {"representative", c.cls.representative().to_string()},
                        {"level", c.cls.level()}};
          },
          [](const ListValue& l) -> Json {
            Json items = Json::array();
            for (const Value& item : l.items) items.push_back(value_to_json(item));
            return Json{{"type", "list"}, {"items", items}};
          },
          [](const ReportValue& r) -> Json {
            return Json{{"type", "report"},
                        {"kind", r.kind},
                        {"ok", r.ok},
                        {"text", r.text},
                        {"data", r.data}};
          },
      },
      v.data);
}

bool values_equal(const Value& a, const Value& b) {
  if (a.data.index() != b.data.index()) return false;
  return std::visit(
      Overload{
          [](const std::monostate&) { return true; },
          [&](bool x) { return x == b.as<bool>(); },
          [&](std::int64_t x) { return x == b.as<std::int64_t>(); },
          [&](const std::string& x) { return x == b.as<std::string>(); },
          [&](const RingValue& x) { return same_spec(x.ring, b.as<RingValue>().ring); },
          [&](const PolyValue& x) {
            const auto& y = b.as<PolyValue>();
            return same_spec(x.ring, y.ring) && x.poly == y.poly;
          },
          [&](const IdealValue& x) {
            const auto& y = b.as<IdealValue>();
            return same_spec(x.ring, y.ring) &&
                   ideals_equal(extend(x.ideal, x.ring), extend(y.ideal, y.ring));
          },
          [&](const SopValue& x) {
            const auto& y = b.as<SopValue>();
            return same_spec(x.sop->ring, y.sop->ring) && x.sop->sop == y.sop->sop;
          },
          [&](const ClassValue& x) {
            const auto& y = b.as<ClassValue>();
            return same_spec(x.cls.sop().ring, y.cls.sop().ring) &&
                   x.cls.sop().sop == y.cls.sop().sop && x.cls.level() == y.cls.level() &&
                   x.cls.representative() == y.cls.representative();
          },
          [&](const ListValue& x) {
            const auto& y = b.as<ListValue>();
            if (x.items.size() != y.items.size()) return false;
            for (std::size_t i = 0; i < x.items.size(); ++i)
              if (!values_equal(x.items[i], y.items[i])) return false;
            return true;
          },
          [&](const ReportValue& x) {
            const auto& y = b.as<ReportValue>();
            return x.kind == y.kind && x.text == y.text && x.ok == y.ok;
          },
      },
      a.data);
}

}  // namespace ccl::dsl
