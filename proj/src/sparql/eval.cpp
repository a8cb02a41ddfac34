#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <regex>

#include "graphsite/errors.hpp"
#include "graphsite/sparql/query.hpp"

namespace graphsite::sparql {

namespace {

// Raised inside filter evaluation for type errors; callers turn it into
// "filter is false" per the error-as-false rule.
struct FilterTypeError {};

bool is_numeric_datatype(const rdf::Iri& dt) {
  using namespace rdf::vocab;
  static const rdf::Iri kExtra[] = {
      rdf::Iri{std::string(kXsdNs) + "int"},  rdf::Iri{std::string(kXsdNs) + "long"},
      rdf::Iri{std::string(kXsdNs) + "short"}, rdf::Iri{std::string(kXsdNs) + "byte"},
      rdf::Iri{std::string(kXsdNs) + "nonNegativeInteger"},
      rdf::Iri{std::string(kXsdNs) + "positiveInteger"},
      rdf::Iri{std::string(kXsdNs) + "unsignedInt"},
      rdf::Iri{std::string(kXsdNs) + "unsignedLong"}};
  if (dt == kXsdInteger || dt == kXsdDecimal || dt == kXsdDouble || dt == kXsdFloat) return true;
  for (const rdf::Iri& e : kExtra) {
    if (dt == e) return true;
  }
  return false;
}

bool parse_double(const std::string& lexical, double& out) {
  const char* begin = lexical.c_str();
  char* end = nullptr;
  out = std::strtod(begin, &end);
  return end != begin && end == begin + lexical.size() && !std::isnan(out);
}

std::string term_string_form(const rdf::Term& t) {
  if (rdf::is_iri(t)) return rdf::as_iri(t).value;
  if (rdf::is_blank(t)) return rdf::as_blank(t).label;
  return rdf::as_literal(t).lexical;
}

class FilterEvaluator {
 public:
  explicit FilterEvaluator(const SolutionMapping& row) : row_(row) {}

  // Error-as-false at the top level.
  bool keeps_row(const FilterExpr& e) const {
    try {
      return effective_boolean(e);
    } catch (const FilterTypeError&) {
      return false;
    }
  }

 private:
  rdf::Term term_of(const FilterExpr& e) const {
    switch (e.kind) {
      case FilterExpr::Kind::Term:
        return e.term;
      case FilterExpr::Kind::Var: {
        auto it = row_.find(e.var.name);
        if (it == row_.end()) throw FilterTypeError{};
        return it->second;
      }
      case FilterExpr::Kind::Str: {
        rdf::Term inner = term_of(e.children[0]);
        return rdf::Literal::plain(term_string_form(inner));
      }
      case FilterExpr::Kind::Regex:
        return bool_term(regex_matches(e));
      case FilterExpr::Kind::Compare:
        return bool_term(compare(e));
      case FilterExpr::Kind::And:
      case FilterExpr::Kind::Or:
      case FilterExpr::Kind::Not:
        return bool_term(effective_boolean(e));
    }
    throw FilterTypeError{};
  }

  static rdf::Term bool_term(bool b) {
    return rdf::Literal::typed(b ? "true" : "false", rdf::vocab::kXsdBoolean);
  }

  bool regex_matches(const FilterExpr& e) const {
    rdf::Term text = term_of(e.children[0]);
    rdf::Term pattern = term_of(e.children[1]);
    if (!rdf::is_literal(text) || !rdf::is_literal(pattern)) throw FilterTypeError{};
    auto syntax = std::regex_constants::ECMAScript;
    if (e.children.size() > 2) {
      rdf::Term flags = term_of(e.children[2]);
      if (!rdf::is_literal(flags)) throw FilterTypeError{};
      for (char c : rdf::as_literal(flags).lexical) {
        if (c == 'i') {
          syntax |= std::regex_constants::icase;
        } else {
          throw FilterTypeError{};  // unsupported flag
        }
      }
    }
    try {
      std::regex re(rdf::as_literal(pattern).lexical, syntax);
      return std::regex_search(rdf::as_literal(text).lexical, re);
    } catch (const std::regex_error&) {
      throw FilterTypeError{};
    }
  }

  // Numeric comparison when both operands carry numeric XSD datatypes,
  // otherwise by string on the lexical / string forms.
  bool compare(const FilterExpr& e) const {
    rdf::Term lhs = term_of(e.children[0]);
    rdf::Term rhs = term_of(e.children[1]);
    int cmp;
    if (rdf::is_literal(lhs) && rdf::is_literal(rhs) &&
        is_numeric_datatype(rdf::as_literal(lhs).datatype) &&
        is_numeric_datatype(rdf::as_literal(rhs).datatype)) {
      double a, b;
      if (!parse_double(rdf::as_literal(lhs).lexical, a) ||
          !parse_double(rdf::as_literal(rhs).lexical, b)) {
        throw FilterTypeError{};
      }
      cmp = a < b ? -1 : (a > b ? 1 : 0);
    } else {
      const std::string a = term_string_form(lhs);
      const std::string b = term_string_form(rhs);
      cmp = a < b ? -1 : (a > b ? 1 : 0);
    }
    if (e.op == "=") return cmp == 0;
    if (e.op == "!=") return cmp != 0;
    if (e.op == "<") return cmp < 0;
    if (e.op == "<=") return cmp <= 0;
    if (e.op == ">") return cmp > 0;
    return cmp >= 0;  // ">="
  }

  // SPARQL effective boolean value with three-valued and/or error handling.
  bool effective_boolean(const FilterExpr& e) const {
    switch (e.kind) {
      case FilterExpr::Kind::And: {
        std::optional<bool> l = try_ebv(e.children[0]);
        std::optional<bool> r = try_ebv(e.children[1]);
        if (l && !*l) return false;
        if (r && !*r) return false;
        if (l && r) return true;
        throw FilterTypeError{};
      }
      case FilterExpr::Kind::Or: {
        std::optional<bool> l = try_ebv(e.children[0]);
        std::optional<bool> r = try_ebv(e.children[1]);
        if (l && *l) return true;
        if (r && *r) return true;
        if (l && r) return false;
        throw FilterTypeError{};
      }
      case FilterExpr::Kind::Not:
        return !effective_boolean(e.children[0]);
      case FilterExpr::Kind::Regex:
        return regex_matches(e);
      case FilterExpr::Kind::Compare:
        return compare(e);
      default: {
        rdf::Term t = term_of(e);
        if (!rdf::is_literal(t)) throw FilterTypeError{};
        const rdf::Literal& lit = rdf::as_literal(t);
        if (lit.datatype == rdf::vocab::kXsdBoolean) {
          return lit.lexical == "true" || lit.lexical == "1";
        }
        if (is_numeric_datatype(lit.datatype)) {
          double v;
          if (!parse_double(lit.lexical, v)) return false;
          return v != 0.0;
        }
        if (lit.datatype == rdf::vocab::kXsdString || lit.language) {
          return !lit.lexical.empty();
        }
        throw FilterTypeError{};
      }
    }
  }

  std::optional<bool> try_ebv(const FilterExpr& e) const {
    try {
      return effective_boolean(e);
    } catch (const FilterTypeError&) {
      return std::nullopt;
    }
  }

  const SolutionMapping& row_;
};

std::optional<rdf::Term> bound_value(const PatternTerm& p, const SolutionMapping& row) {
  if (!is_variable(p)) return as_term(p);
  auto it = row.find(as_variable(p).name);
  if (it != row.end()) return it->second;
  return std::nullopt;
}

// Extends `row` with the bindings this triple induces; nullopt on conflict.
std::optional<SolutionMapping> unify(const TriplePattern& pattern, const rdf::Triple& triple,
                                     const SolutionMapping& row) {
  SolutionMapping extended = row;
  auto bind = [&](const PatternTerm& p, const rdf::Term& value) {
    if (!is_variable(p)) {
      return as_term(p) == value;
    }
    auto [it, inserted] = extended.emplace(as_variable(p).name, value);
    return inserted || it->second == value;
  };
  if (!bind(pattern.subject, triple.subject)) return std::nullopt;
  if (!bind(pattern.predicate, rdf::Term{triple.predicate})) return std::nullopt;
  if (!bind(pattern.object, triple.object)) return std::nullopt;
  return extended;
}

std::string row_serialization(const SolutionMapping& row) {
  std::string s;
  for (const auto& [name, term] : row) {
    s += name;
    s += '=';
    s += rdf::to_ntriples(term);
    s += ';';
  }
  return s;
}

}  // namespace

std::vector<SolutionMapping> evaluate(const rdf::Graph& graph, const SelectQuery& query,
                                      const SolutionMapping& seed) {
  std::vector<SolutionMapping> rows{seed};

  for (const TriplePattern& pattern : query.patterns) {
    std::vector<SolutionMapping> next;
    for (const SolutionMapping& row : rows) {
      std::optional<rdf::Term> s = bound_value(pattern.subject, row);
      std::optional<rdf::Term> p = bound_value(pattern.predicate, row);
      std::optional<rdf::Term> o = bound_value(pattern.object, row);
      std::optional<rdf::Iri> pred;
      if (p) {
        if (!rdf::is_iri(*p)) continue;  // a non-IRI predicate can never match
        pred = rdf::as_iri(*p);
      }
      for (const rdf::Triple& t : graph.match(s, pred, o)) {
        if (auto extended = unify(pattern, t, row)) {
          next.push_back(std::move(*extended));
        }
      }
    }
    rows = std::move(next);
    if (rows.empty()) break;
  }

  for (const FilterExpr& filter : query.filters) {
    std::vector<SolutionMapping> kept;
    for (SolutionMapping& row : rows) {
      if (FilterEvaluator(row).keeps_row(filter)) kept.push_back(std::move(row));
    }
    rows = std::move(kept);
  }

  // Projection: explicit variables, or star = every pattern variable plus the
  // seeded ones.
  std::vector<std::string> projected;
  if (query.star) {
    projected = pattern_variables(query);
    for (const auto& [name, term] : seed) {
      if (std::find(projected.begin(), projected.end(), name) == projected.end()) {
        projected.push_back(name);
      }
    }
    std::sort(projected.begin(), projected.end());
  } else {
    for (const Variable& v : query.projection) projected.push_back(v.name);
  }

  std::vector<SolutionMapping> result;
  result.reserve(rows.size());
  for (const SolutionMapping& row : rows) {
    SolutionMapping out;
    for (const std::string& name : projected) {
      auto it = row.find(name);
      if (it != row.end()) out.emplace(name, it->second);
    }
    result.push_back(std::move(out));
  }

  std::sort(result.begin(), result.end(),
            [](const SolutionMapping& a, const SolutionMapping& b) {
              return row_serialization(a) < row_serialization(b);
            });

  if (query.distinct) {
    result.erase(std::unique(result.begin(), result.end()), result.end());
  }

  if (query.order_by) {
    const std::string& key = query.order_by->first.name;
    const bool ascending = query.order_by->second;
    std::stable_sort(result.begin(), result.end(),
                     [&](const SolutionMapping& a, const SolutionMapping& b) {
                       auto ia = a.find(key);
                       auto ib = b.find(key);
                       const std::string ka = ia == a.end() ? "" : rdf::to_ntriples(ia->second);
                       const std::string kb = ib == b.end() ? "" : rdf::to_ntriples(ib->second);
                       return ascending ? ka < kb : kb < ka;
                     });
  }

  return result;
}

}  // namespace graphsite::sparql
