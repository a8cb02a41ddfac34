#include "graphsite/tmpl/value.hpp"

#include <cstdio>

namespace graphsite::tmpl {

namespace {

std::string format_float(double d) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", d);
  return buf;
}

}  // namespace

std::string Value::display() const {
  struct Visitor {
    std::string operator()(std::monostate) const { return ""; }
    std::string operator()(bool b) const { return b ? "true" : "false"; }
    std::string operator()(std::int64_t i) const { return std::to_string(i); }
    std::string operator()(double d) const { return format_float(d); }
    std::string operator()(const std::string& s) const { return s; }
    std::string operator()(const Array& a) const {
      std::string out;
      for (const Value& v : a) out += v.display();
      return out;
    }
    std::string operator()(const ValueMap&) const { return ""; }
    std::string operator()(const Resource& r) const {
      if (rdf::is_iri(r.node)) return rdf::as_iri(r.node).value;
      return "_:" + rdf::as_blank(r.node).label;
    }
    std::string operator()(const rdf::Literal& l) const { return l.lexical; }
  };
  return std::visit(Visitor{}, data_);
}

bool values_equal(const Value& a, const Value& b) {
  if (a == b) return true;
  auto textual = [](const Value& v) {
    return v.is_text() || v.is_literal() || v.is_resource() || v.is_integer() || v.is_float();
  };
  if (textual(a) && textual(b)) return a.display() == b.display();
  return false;
}

Value term_to_value(const rdf::Term& term) {
  if (rdf::is_literal(term)) return Value(rdf::as_literal(term));
  return Value(Resource{term});
}

}  // namespace graphsite::tmpl
