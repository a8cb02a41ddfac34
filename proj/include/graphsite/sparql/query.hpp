#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "graphsite/rdf/graph.hpp"
#include "graphsite/rdf/term.hpp"

namespace graphsite::sparql {

struct Variable {
  std::string name;  // without the leading '?'

  friend bool operator==(const Variable&, const Variable&) = default;
  friend auto operator<=>(const Variable&, const Variable&) = default;
};

using PatternTerm = std::variant<rdf::Term, Variable>;

inline bool is_variable(const PatternTerm& p) { return std::holds_alternative<Variable>(p); }
inline const Variable& as_variable(const PatternTerm& p) { return std::get<Variable>(p); }
inline const rdf::Term& as_term(const PatternTerm& p) { return std::get<rdf::Term>(p); }

struct TriplePattern {
  PatternTerm subject;
  PatternTerm predicate;
  PatternTerm object;
};

// Expression tree for FILTER: regex(), str(), comparisons, and &&/||/!.
struct FilterExpr {
  enum class Kind { Term, Var, Str, Regex, Compare, And, Or, Not };

  Kind kind = Kind::Term;
  rdf::Term term;                    // Kind::Term
  Variable var;                      // Kind::Var
  std::string op;                    // Kind::Compare: = != < <= > >=
  std::vector<FilterExpr> children;  // operands / function arguments

  static FilterExpr leaf(rdf::Term t);
  static FilterExpr variable(Variable v);
  static FilterExpr str(FilterExpr arg);
  static FilterExpr regex(FilterExpr text, FilterExpr pattern,
                          std::optional<FilterExpr> flags);
  static FilterExpr compare(std::string op, FilterExpr lhs, FilterExpr rhs);
  static FilterExpr logical_and(FilterExpr lhs, FilterExpr rhs);
  static FilterExpr logical_or(FilterExpr lhs, FilterExpr rhs);
  static FilterExpr logical_not(FilterExpr arg);
};

struct SelectQuery {
  rdf::PrefixMap prefixes;
  bool star = false;
  std::vector<Variable> projection;  // empty iff star
  std::vector<TriplePattern> patterns;
  std::vector<FilterExpr> filters;
  bool distinct = false;
  std::optional<std::pair<Variable, bool>> order_by;  // second: ascending
};

// One result row: variable name -> bound term.
using SolutionMapping = std::map<std::string, rdf::Term>;

// Parses the supported subset:
//   PREFIX* SELECT [DISTINCT] (?var+ | *) WHERE { pattern* FILTER* } [ORDER BY [ASC|DESC] ?var]
// Prefixed names are expanded during parsing. Constructs outside the subset
// (OPTIONAL, UNION, GRAPH, subqueries, ...) raise UnsupportedFeatureError.
SelectQuery parse_select(std::string_view text);

// Basic graph pattern join restricted by filters. `seed` pre-binds variables.
// Type errors inside a filter make that filter false for the row. Rows come
// back deterministically ordered: by ORDER BY when given, otherwise by the
// full-row serialization.
std::vector<SolutionMapping> evaluate(const rdf::Graph& graph, const SelectQuery& query,
                                      const SolutionMapping& seed);

// All variable names appearing in the query's patterns.
std::vector<std::string> pattern_variables(const SelectQuery& query);

}  // namespace graphsite::sparql
