#include <cctype>
#include <sstream>

#include "graphsite/errors.hpp"
#include "graphsite/sparql/query.hpp"

namespace graphsite::sparql {

FilterExpr FilterExpr::leaf(rdf::Term t) {
  FilterExpr e;
  e.kind = Kind::Term;
  e.term = std::move(t);
  return e;
}

FilterExpr FilterExpr::variable(Variable v) {
  FilterExpr e;
  e.kind = Kind::Var;
  e.var = std::move(v);
  return e;
}

FilterExpr FilterExpr::str(FilterExpr arg) {
  FilterExpr e;
  e.kind = Kind::Str;
  e.children.push_back(std::move(arg));
  return e;
}

FilterExpr FilterExpr::regex(FilterExpr text, FilterExpr pattern,
                             std::optional<FilterExpr> flags) {
  FilterExpr e;
  e.kind = Kind::Regex;
  e.children.push_back(std::move(text));
  e.children.push_back(std::move(pattern));
  if (flags) e.children.push_back(std::move(*flags));
  return e;
}

FilterExpr FilterExpr::compare(std::string op, FilterExpr lhs, FilterExpr rhs) {
  FilterExpr e;
  e.kind = Kind::Compare;
  e.op = std::move(op);
  e.children.push_back(std::move(lhs));
  e.children.push_back(std::move(rhs));
  return e;
}

FilterExpr FilterExpr::logical_and(FilterExpr lhs, FilterExpr rhs) {
  FilterExpr e;
  e.kind = Kind::And;
  e.children.push_back(std::move(lhs));
  e.children.push_back(std::move(rhs));
  return e;
}

FilterExpr FilterExpr::logical_or(FilterExpr lhs, FilterExpr rhs) {
  FilterExpr e;
  e.kind = Kind::Or;
  e.children.push_back(std::move(lhs));
  e.children.push_back(std::move(rhs));
  return e;
}

FilterExpr FilterExpr::logical_not(FilterExpr arg) {
  FilterExpr e;
  e.kind = Kind::Not;
  e.children.push_back(std::move(arg));
  return e;
}

namespace {

const char* kUnsupportedKeywords[] = {
    "OPTIONAL", "UNION",  "GRAPH",  "MINUS",  "SERVICE",   "BIND",
    "VALUES",   "EXISTS", "LIMIT",  "OFFSET", "GROUP",     "HAVING",
    "CONSTRUCT", "ASK",   "DESCRIBE"};

class QueryParser {
 public:
  explicit QueryParser(std::string_view text) : text_(text) {}

  SelectQuery run() {
    while (keyword_ahead("PREFIX")) {
      consume_keyword("PREFIX");
      prefix_decl();
    }
    if (keyword_ahead("BASE")) unsupported("BASE");
    reject_unsupported_keyword();
    if (!keyword_ahead("SELECT")) fail("expected SELECT");
    consume_keyword("SELECT");
    if (keyword_ahead("DISTINCT")) {
      consume_keyword("DISTINCT");
      query_.distinct = true;
    }
    projection();
    if (!keyword_ahead("WHERE")) fail("expected WHERE");
    consume_keyword("WHERE");
    group_graph_pattern();
    if (keyword_ahead("ORDER")) {
      consume_keyword("ORDER");
      if (!keyword_ahead("BY")) fail("expected BY after ORDER");
      consume_keyword("BY");
      order_condition();
    }
    reject_unsupported_keyword();
    skip_ws();
    if (!eof()) fail("unexpected trailing content");
    if (query_.patterns.empty()) fail("WHERE clause has no triple patterns");
    return std::move(query_);
  }

 private:
  bool eof() const { return pos_ >= text_.size(); }
  char peek(size_t ahead = 0) const {
    return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0';
  }
  char advance() {
    char c = text_[pos_++];
    if (c == '\n') ++line_;
    return c;
  }

  void skip_ws() {
    while (!eof()) {
      char c = peek();
      if (c == '#') {
        while (!eof() && peek() != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  [[noreturn]] void fail(const std::string& message) {
    std::ostringstream os;
    os << "query syntax error at offset " << pos_ << " (line " << line_ << "): " << message;
    throw ParseError(os.str(), line_);
  }

  [[noreturn]] void unsupported(const std::string& construct) {
    throw UnsupportedFeatureError("unsupported query feature: " + construct);
  }

  static bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  }

  bool keyword_ahead(std::string_view kw) {
    skip_ws();
    if (pos_ + kw.size() > text_.size()) return false;
    for (size_t i = 0; i < kw.size(); ++i) {
      if (std::toupper(static_cast<unsigned char>(text_[pos_ + i])) != kw[i]) return false;
    }
    char after = pos_ + kw.size() < text_.size() ? text_[pos_ + kw.size()] : '\0';
    return !ident_char(after) && after != ':';  // "a:x" is a prefixed name, not the keyword
  }

  void consume_keyword(std::string_view kw) {
    skip_ws();
    for (size_t i = 0; i < kw.size(); ++i) advance();
  }

  void reject_unsupported_keyword() {
    for (const char* kw : kUnsupportedKeywords) {
      if (keyword_ahead(kw)) unsupported(kw);
    }
  }

  void prefix_decl() {
    skip_ws();
    std::string label;
    while (!eof() && (ident_char(peek()) || peek() == '-' || peek() == '.')) {
      label += advance();
    }
    skip_ws();
    if (peek() != ':') fail("expected ':' in PREFIX declaration");
    advance();
    rdf::Iri ns = iriref();
    query_.prefixes.set(label, ns);
  }

  void projection() {
    skip_ws();
    if (peek() == '*') {
      advance();
      query_.star = true;
      return;
    }
    while (true) {
      skip_ws();
      if (peek() != '?' && peek() != '$') break;
      query_.projection.push_back(variable());
    }
    if (query_.projection.empty()) fail("SELECT needs at least one variable or *");
  }

  Variable variable() {
    skip_ws();
    if (peek() != '?' && peek() != '$') fail("expected variable");
    advance();
    std::string name;
    while (!eof() && ident_char(peek())) name += advance();
    if (name.empty()) fail("empty variable name");
    return Variable{name};
  }

  void group_graph_pattern() {
    skip_ws();
    if (peek() != '{') fail("expected '{'");
    advance();
    while (true) {
      skip_ws();
      if (eof()) fail("unterminated WHERE block");
      if (peek() == '}') {
        advance();
        return;
      }
      if (peek() == '{') unsupported("nested group pattern / subquery");
      reject_unsupported_keyword();
      if (keyword_ahead("SELECT")) unsupported("subquery");
      if (keyword_ahead("FILTER")) {
        consume_keyword("FILTER");
        query_.filters.push_back(filter_constraint());
        continue;
      }
      triple_pattern();
      skip_ws();
      if (peek() == '.') advance();
    }
  }

  void triple_pattern() {
    PatternTerm s = pattern_term(/*position=*/0);
    PatternTerm p = pattern_term(/*position=*/1);
    PatternTerm o = pattern_term(/*position=*/2);
    query_.patterns.push_back(TriplePattern{std::move(s), std::move(p), std::move(o)});
  }

  PatternTerm pattern_term(int position) {
    skip_ws();
    char c = peek();
    if (c == '?' || c == '$') return variable();
    if (c == '<') return rdf::Term{iriref()};
    if (c == '"' || c == '\'') {
      if (position != 2) fail("literal not allowed in subject or predicate position");
      return rdf::Term{string_literal()};
    }
    if (c == '+' || c == '-' || std::isdigit(static_cast<unsigned char>(c))) {
      if (position != 2) fail("literal not allowed in subject or predicate position");
      return rdf::Term{numeric_literal()};
    }
    if (c == '_') unsupported("blank node in query pattern");
    if (c == '(' || c == '[') unsupported("collection / blank node syntax in query pattern");
    if (position == 1 && keyword_ahead("A")) {
      consume_keyword("A");
      return rdf::Term{rdf::vocab::kRdfType};
    }
    if (keyword_ahead("TRUE")) {
      consume_keyword("TRUE");
      return rdf::Term{rdf::Literal::typed("true", rdf::vocab::kXsdBoolean)};
    }
    if (keyword_ahead("FALSE")) {
      consume_keyword("FALSE");
      return rdf::Term{rdf::Literal::typed("false", rdf::vocab::kXsdBoolean)};
    }
    return rdf::Term{prefixed_name()};
  }

  rdf::Iri iriref() {
    skip_ws();
    if (peek() != '<') fail("expected IRI");
    advance();
    std::string value;
    while (!eof() && peek() != '>') value += advance();
    if (eof()) fail("unterminated IRI");
    advance();
    if (!rdf::is_absolute_iri(value)) fail("not an absolute IRI: <" + value + ">");
    return rdf::Iri{value};
  }

  rdf::Iri prefixed_name() {
    skip_ws();
    std::string label;
    while (!eof() && (ident_char(peek()) || peek() == '-')) label += advance();
    if (peek() != ':') fail("expected a prefixed name, variable, IRI, or literal");
    advance();
    std::string local;
    while (!eof() && (ident_char(peek()) || peek() == '-' ||
                      (peek() == '.' && (ident_char(peek(1)) || peek(1) == '-')))) {
      local += advance();
    }
    const rdf::Iri* ns = query_.prefixes.find(label);
    if (!ns) throw UndefinedPrefixError("undefined prefix '" + label + "' in query");
    return rdf::Iri{ns->value + local};
  }

  rdf::Literal string_literal() {
    skip_ws();
    char quote = peek();
    if (quote != '"' && quote != '\'') fail("expected string literal");
    advance();
    std::string lexical;
    while (!eof() && peek() != quote) {
      if (peek() == '\\') {
        advance();
        if (eof()) fail("dangling escape");
        char e = advance();
        switch (e) {
          case 't': lexical += '\t'; break;
          case 'n': lexical += '\n'; break;
          case 'r': lexical += '\r'; break;
          case '"': lexical += '"'; break;
          case '\'': lexical += '\''; break;
          case '\\': lexical += '\\'; break;
          default: fail(std::string("unknown escape '\\") + e + "'");
        }
      } else {
        lexical += advance();
      }
    }
    if (eof()) fail("unterminated string literal");
    advance();
    if (peek() == '@') {
      advance();
      std::string tag;
      while (!eof() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '-')) {
        tag += advance();
      }
      if (tag.empty()) fail("empty language tag");
      return rdf::Literal::tagged(lexical, tag);
    }
    if (peek() == '^' && peek(1) == '^') {
      advance();
      advance();
      skip_ws();
      rdf::Iri dt = peek() == '<' ? iriref() : prefixed_name();
      return rdf::Literal::typed(lexical, dt);
    }
    return rdf::Literal::plain(lexical);
  }

  rdf::Literal numeric_literal() {
    std::string lex;
    if (peek() == '+' || peek() == '-') lex += advance();
    bool has_dot = false, has_exp = false, has_digits = false;
    while (!eof()) {
      char c = peek();
      if (std::isdigit(static_cast<unsigned char>(c))) {
        lex += advance();
        has_digits = true;
      } else if (c == '.' && !has_dot && !has_exp) {
        lex += advance();
        has_dot = true;
      } else if ((c == 'e' || c == 'E') && has_digits && !has_exp) {
        lex += advance();
        has_exp = true;
        if (peek() == '+' || peek() == '-') lex += advance();
      } else {
        break;
      }
    }
    if (!has_digits) fail("malformed number");
    const rdf::Iri& dt = has_exp ? rdf::vocab::kXsdDouble
                                 : (has_dot ? rdf::vocab::kXsdDecimal : rdf::vocab::kXsdInteger);
    return rdf::Literal::typed(lex, dt);
  }

  // FILTER ( expr ) or FILTER regex(...) / FILTER str(...) style calls.
  FilterExpr filter_constraint() {
    skip_ws();
    if (peek() == '(') {
      advance();
      FilterExpr e = or_expression();
      expect_char(')');
      return e;
    }
    return primary_expression();
  }

  void expect_char(char c) {
    skip_ws();
    if (peek() != c) fail(std::string("expected '") + c + "'");
    advance();
  }

  FilterExpr or_expression() {
    FilterExpr lhs = and_expression();
    while (true) {
      skip_ws();
      if (peek() == '|' && peek(1) == '|') {
        advance();
        advance();
        lhs = FilterExpr::logical_or(std::move(lhs), and_expression());
      } else {
        return lhs;
      }
    }
  }

  FilterExpr and_expression() {
    FilterExpr lhs = relational_expression();
    while (true) {
      skip_ws();
      if (peek() == '&' && peek(1) == '&') {
        advance();
        advance();
        lhs = FilterExpr::logical_and(std::move(lhs), relational_expression());
      } else {
        return lhs;
      }
    }
  }

  FilterExpr relational_expression() {
    FilterExpr lhs = unary_expression();
    skip_ws();
    std::string op;
    if (peek() == '!' && peek(1) == '=') {
      op = "!=";
    } else if (peek() == '<' && peek(1) == '=') {
      op = "<=";
    } else if (peek() == '>' && peek(1) == '=') {
      op = ">=";
    } else if (peek() == '=') {
      op = "=";
    } else if (peek() == '<') {
      op = "<";
    } else if (peek() == '>') {
      op = ">";
    } else {
      return lhs;
    }
    for (size_t i = 0; i < op.size(); ++i) advance();
    return FilterExpr::compare(op, std::move(lhs), unary_expression());
  }

  FilterExpr unary_expression() {
    skip_ws();
    if (peek() == '!' && peek(1) != '=') {
      advance();
      return FilterExpr::logical_not(unary_expression());
    }
    return primary_expression();
  }

  FilterExpr primary_expression() {
    skip_ws();
    if (peek() == '(') {
      advance();
      FilterExpr e = or_expression();
      expect_char(')');
      return e;
    }
    if (peek() == '?' || peek() == '$') return FilterExpr::variable(variable());
    if (keyword_ahead("REGEX")) {
      consume_keyword("REGEX");
      expect_char('(');
      FilterExpr text = or_expression();
      expect_char(',');
      FilterExpr pattern = or_expression();
      std::optional<FilterExpr> flags;
      skip_ws();
      if (peek() == ',') {
        advance();
        flags = or_expression();
      }
      expect_char(')');
      return FilterExpr::regex(std::move(text), std::move(pattern), std::move(flags));
    }
    if (keyword_ahead("STR")) {
      consume_keyword("STR");
      expect_char('(');
      FilterExpr arg = or_expression();
      expect_char(')');
      return FilterExpr::str(std::move(arg));
    }
    if (keyword_ahead("EXISTS") || keyword_ahead("NOT")) unsupported("EXISTS");
    if (peek() == '"' || peek() == '\'') return FilterExpr::leaf(string_literal());
    if (peek() == '+' || peek() == '-' || std::isdigit(static_cast<unsigned char>(peek()))) {
      return FilterExpr::leaf(numeric_literal());
    }
    if (keyword_ahead("TRUE")) {
      consume_keyword("TRUE");
      return FilterExpr::leaf(rdf::Literal::typed("true", rdf::vocab::kXsdBoolean));
    }
    if (keyword_ahead("FALSE")) {
      consume_keyword("FALSE");
      return FilterExpr::leaf(rdf::Literal::typed("false", rdf::vocab::kXsdBoolean));
    }
    if (peek() == '<') return FilterExpr::leaf(iriref());
    // anything identifier-like that is not str/regex is outside the subset
    std::string word;
    size_t save = pos_;
    while (!eof() && ident_char(peek())) word += advance();
    pos_ = save;
    if (!word.empty()) {
      if (!eof()) {
        size_t after = pos_ + word.size();
        if (after < text_.size() && text_[after] == '(') {
          unsupported("function " + word);
        }
      }
      return FilterExpr::leaf(prefixed_name());
    }
    fail("expected filter expression");
  }

  void order_condition() {
    skip_ws();
    bool ascending = true;
    if (keyword_ahead("ASC")) {
      consume_keyword("ASC");
      expect_char('(');
      query_.order_by = {variable(), true};
      expect_char(')');
      return;
    }
    if (keyword_ahead("DESC")) {
      consume_keyword("DESC");
      expect_char('(');
      query_.order_by = {variable(), false};
      expect_char(')');
      return;
    }
    query_.order_by = {variable(), ascending};
  }

  std::string_view text_;
  size_t pos_ = 0;
  int line_ = 1;
  SelectQuery query_;
};

void collect_filter_variables(const FilterExpr& e, std::vector<std::string>& out) {
  if (e.kind == FilterExpr::Kind::Var) out.push_back(e.var.name);
  for (const FilterExpr& child : e.children) collect_filter_variables(child, out);
}

}  // namespace

std::vector<std::string> pattern_variables(const SelectQuery& query) {
  std::vector<std::string> names;
  auto add = [&](const PatternTerm& p) {
    if (is_variable(p)) names.push_back(as_variable(p).name);
  };
  for (const TriplePattern& tp : query.patterns) {
    add(tp.subject);
    add(tp.predicate);
    add(tp.object);
  }
  std::sort(names.begin(), names.end());
  names.erase(std::unique(names.begin(), names.end()), names.end());
  return names;
}

SelectQuery parse_select(std::string_view text) {
  return QueryParser(text).run();
}

}  // namespace graphsite::sparql
