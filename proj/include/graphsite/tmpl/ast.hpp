#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "graphsite/tmpl/value.hpp"

namespace graphsite::tmpl {

struct Node;
using NodeList = std::vector<Node>;

// Dotted variable reference, e.g. page.rdf -> {"page", "rdf"}.
struct VarPath {
  std::vector<std::string> segments;
};

// A constant or a variable reference inside an expression or filter argument.
struct Operand {
  std::variant<Value, VarPath> v;

  bool is_constant() const { return std::holds_alternative<Value>(v); }
  const Value& constant() const { return std::get<Value>(v); }
  const VarPath& path() const { return std::get<VarPath>(v); }
};

struct FilterCall {
  std::string name;
  std::vector<Operand> args;
  int line = 0;
};

// base | filter1 | filter2: arg, ...
struct Expression {
  Operand base;
  std::vector<FilterCall> filters;
  int line = 0;
};

// {% if %} conditions: truthiness, == / != comparison, and / or chains.
struct Condition {
  enum class Kind { Truthy, Compare, And, Or };

  Kind kind = Kind::Truthy;
  Operand lhs;
  Operand rhs;      // Compare only
  std::string op;   // "==" or "!="
  std::vector<Condition> children;  // And / Or operands (exactly two)
};

struct RawText {
  std::string text;
};

struct Output {
  Expression expr;
};

struct AssignTag {
  std::string var;
  Expression expr;
};

struct ForTag {
  std::string var;
  Expression iterable;
  NodeList body;
};

struct IfBranch {
  Condition cond;
  NodeList body;
};

struct IfTag {
  std::vector<IfBranch> branches;  // if + elsif*
  NodeList else_body;
};

struct IncludeTag {
  std::string name;
};

struct Node {
  std::variant<RawText, Output, AssignTag, ForTag, IfTag, IncludeTag> data;
  int line = 0;
};

// Header between "---" delimiter lines at the top of a template or page.
struct FrontMatter {
  std::optional<std::string> layout;
  ValueMap extra;
};

struct Template {
  FrontMatter front;
  NodeList nodes;
  std::string name;  // diagnostic label, set by the loader
};

}  // namespace graphsite::tmpl
