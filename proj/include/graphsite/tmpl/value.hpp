#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "graphsite/rdf/term.hpp"

namespace graphsite::tmpl {

class Value;
using Array = std::vector<Value>;
using ValueMap = std::map<std::string, Value>;

// Handle to a node of the graph a page is rendered from.
struct Resource {
  rdf::Term node;  // Iri or BlankNode

  friend bool operator==(const Resource&, const Resource&) = default;
};

// Dynamic value flowing through filter chains. Nil and false are the only
// falsy values.
class Value {
 public:
  using Data = std::variant<std::monostate, bool, std::int64_t, double, std::string, Array,
                            ValueMap, Resource, rdf::Literal>;

  Value() = default;
  Value(bool b) : data_(b) {}
  Value(std::int64_t i) : data_(i) {}
  Value(int i) : data_(static_cast<std::int64_t>(i)) {}
  Value(double d) : data_(d) {}
  Value(const char* s) : data_(std::string(s)) {}
  Value(std::string s) : data_(std::move(s)) {}
  Value(Array a) : data_(std::move(a)) {}
  Value(ValueMap m) : data_(std::move(m)) {}
  Value(Resource r) : data_(std::move(r)) {}
  Value(rdf::Literal l) : data_(std::move(l)) {}

  static Value nil() { return Value(); }

  bool is_nil() const { return std::holds_alternative<std::monostate>(data_); }
  bool is_bool() const { return std::holds_alternative<bool>(data_); }
  bool is_integer() const { return std::holds_alternative<std::int64_t>(data_); }
  bool is_float() const { return std::holds_alternative<double>(data_); }
  bool is_text() const { return std::holds_alternative<std::string>(data_); }
  bool is_array() const { return std::holds_alternative<Array>(data_); }
  bool is_map() const { return std::holds_alternative<ValueMap>(data_); }
  bool is_resource() const { return std::holds_alternative<Resource>(data_); }
  bool is_literal() const { return std::holds_alternative<rdf::Literal>(data_); }

  bool truthy() const {
    if (is_nil()) return false;
    if (is_bool()) return std::get<bool>(data_);
    return true;
  }

  // Text a value renders as: resources yield their IRI (or blank label),
  // literals their lexical form, arrays the concatenation of their elements.
  std::string display() const;

  bool as_bool() const { return std::get<bool>(data_); }
  std::int64_t as_integer() const { return std::get<std::int64_t>(data_); }
  double as_float() const { return std::get<double>(data_); }
  const std::string& as_text() const { return std::get<std::string>(data_); }
  const Array& as_array() const { return std::get<Array>(data_); }
  Array& as_array() { return std::get<Array>(data_); }
  const ValueMap& as_map() const { return std::get<ValueMap>(data_); }
  ValueMap& as_map() { return std::get<ValueMap>(data_); }
  const Resource& as_resource() const { return std::get<Resource>(data_); }
  const rdf::Literal& as_literal() const { return std::get<rdf::Literal>(data_); }

  const Data& data() const { return data_; }

  friend bool operator==(const Value&, const Value&) = default;

 private:
  Data data_;
};

// Equality used by {% if a == b %}: structural, except that textual kinds
// (text, literal, resource, numbers) compare by their display form when the
// variants differ.
bool values_equal(const Value& a, const Value& b);

// Literal -> LiteralValue, IRI / blank node -> Resource.
Value term_to_value(const rdf::Term& term);

}  // namespace graphsite::tmpl
