#include <cctype>
#include <sstream>
#include <string>
#include <unordered_set>

#include "graphsite/errors.hpp"
#include "graphsite/rdf/parse.hpp"

namespace graphsite::rdf {

namespace {

bool is_pn_char(char c) {
  unsigned char u = static_cast<unsigned char>(c);
  return std::isalnum(u) || c == '_' || c == '-' || u >= 0x80;
}

// Recursive-descent parser for the Turtle subset.
class TurtleParser {
 public:
  TurtleParser(std::string_view text, std::optional<Iri> base)
      : text_(text), base_(std::move(base)) {}

  Graph run() {
    skip_ws();
    while (!eof()) {
      statement();
      skip_ws();
    }
    return std::move(graph_);
  }

 private:
  // ---- lexing primitives -------------------------------------------------

  bool eof() const { return pos_ >= text_.size(); }
  char peek(size_t ahead = 0) const {
    return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0';
  }

  char advance() {
    char c = text_[pos_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }

  void skip_ws() {
    while (!eof()) {
      char c = peek();
      if (c == '#') {
        while (!eof() && peek() != '\n') advance();
      } else if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        advance();
      } else {
        break;
      }
    }
  }

  [[noreturn]] void fail(const std::string& message) const {
    std::ostringstream os;
    os << "Turtle syntax error at line " << line_ << ", column " << col_ << ": " << message;
    throw ParseError(os.str(), line_, col_);
  }

  bool try_consume(char c) {
    skip_ws();
    if (!eof() && peek() == c) {
      advance();
      return true;
    }
    return false;
  }

  void expect(char c) {
    skip_ws();
    if (eof() || peek() != c) fail(std::string("expected '") + c + "'");
    advance();
  }

  bool keyword_ahead(std::string_view kw, bool case_insensitive = false) {
    skip_ws();
    if (pos_ + kw.size() > text_.size()) return false;
    for (size_t i = 0; i < kw.size(); ++i) {
      char a = text_[pos_ + i];
      char b = kw[i];
      if (case_insensitive) {
        a = static_cast<char>(std::tolower(static_cast<unsigned char>(a)));
        b = static_cast<char>(std::tolower(static_cast<unsigned char>(b)));
      }
      if (a != b) return false;
    }
    char after = pos_ + kw.size() < text_.size() ? text_[pos_ + kw.size()] : '\0';
    return !is_pn_char(after) && after != ':';
  }

  void consume_keyword(std::string_view kw) {
    for (size_t i = 0; i < kw.size(); ++i) advance();
  }

  // ---- directives and statements ----------------------------------------

  void statement() {
    if (keyword_ahead("@prefix")) {
      consume_keyword("@prefix");
      prefix_directive();
      expect('.');
      return;
    }
    if (keyword_ahead("@base")) {
      consume_keyword("@base");
      base_directive();
      expect('.');
      return;
    }
    if (keyword_ahead("PREFIX", /*case_insensitive=*/true)) {
      consume_keyword("PREFIX");
      prefix_directive();  // SPARQL form, no trailing dot
      return;
    }
    if (keyword_ahead("BASE", /*case_insensitive=*/true)) {
      consume_keyword("BASE");
      base_directive();
      return;
    }
    triples();
    expect('.');
  }

  void prefix_directive() {
    skip_ws();
    std::string label = pname_prefix_label();
    Iri ns = iriref();
    prefixes_.set(label, ns);
    graph_.prefixes().set(label, ns);
  }

  void base_directive() {
    skip_ws();
    base_ = iriref();
  }

  std::string pname_prefix_label() {
    skip_ws();
    std::string label;
    while (!eof() && is_pn_char(peek())) label += advance();
    // dots are legal inside prefix labels
    while (!eof() && peek() == '.' && is_pn_char(peek(1))) {
      label += advance();
      while (!eof() && is_pn_char(peek())) label += advance();
    }
    expect(':');
    return label;
  }

  void triples() {
    skip_ws();
    Term subject = peek() == '[' ? blank_node_property_list() : subject_term();
    skip_ws();
    if (peek() == '.' ) {
      // "[ ... ] ." is a complete statement; anything else needs predicates.
      if (is_blank(subject)) return;
      fail("expected predicate");
    }
    predicate_object_list(subject);
  }

  Term subject_term() {
    skip_ws();
    char c = peek();
    if (c == '(') return collection();
    if (c == '_') return blank_node_label();
    return iri_term();
  }

  void predicate_object_list(const Term& subject) {
    while (true) {
      Iri predicate = verb();
      object_list(subject, predicate);
      bool any_semicolon = false;
      while (try_consume(';')) any_semicolon = true;
      if (!any_semicolon) break;
      skip_ws();
      // A dangling ';' before '.' or ']' is allowed.
      if (eof() || peek() == '.' || peek() == ']') break;
    }
  }

  Iri verb() {
    skip_ws();
    if (keyword_ahead("a")) {
      consume_keyword("a");
      return vocab::kRdfType;
    }
    Term t = iri_term();
    return as_iri(t);
  }

  void object_list(const Term& subject, const Iri& predicate) {
    while (true) {
      Term object = object_term();
      graph_.add(Triple(subject, predicate, object));
      if (!try_consume(',')) break;
    }
  }

  Term object_term() {
    skip_ws();
    char c = peek();
    if (c == '(') return collection();
    if (c == '[') return blank_node_property_list();
    if (c == '_') return blank_node_label();
    if (c == '"' || c == '\'') return literal();
    if (c == '+' || c == '-' || std::isdigit(static_cast<unsigned char>(c))) {
      return numeric_literal();
    }
    if (keyword_ahead("true")) {
      consume_keyword("true");
      return Literal::typed("true", vocab::kXsdBoolean);
    }
    if (keyword_ahead("false")) {
      consume_keyword("false");
      return Literal::typed("false", vocab::kXsdBoolean);
    }
    return iri_term();
  }

  // ---- node syntaxes ------------------------------------------------------

  Term iri_term() {
    skip_ws();
    if (peek() == '<') return iriref();
    return prefixed_name();
  }

  Iri iriref() {
    skip_ws();
    if (peek() != '<') fail("expected IRI");
    advance();
    std::string value;
    while (!eof() && peek() != '>') {
      char c = peek();
      if (c == '\\') {
        advance();
        char e = eof() ? '\0' : advance();
        if (e == 'u') {
          value += unicode_escape(4);
        } else if (e == 'U') {
          value += unicode_escape(8);
        } else {
          fail("only \\u / \\U escapes are allowed in IRIs");
        }
      } else if (c == ' ' || c == '\n' || c == '\t') {
        fail("whitespace inside IRI");
      } else {
        value += advance();
      }
    }
    if (eof()) fail("unterminated IRI");
    advance();
    return resolve(value);
  }

  Iri resolve(const std::string& ref) {
    if (is_absolute_iri(ref)) return Iri{ref};
    if (!base_) fail("relative IRI <" + ref + "> with no base");
    const std::string& base = base_->value;
    std::string out;
    if (ref.empty()) {
      out = base;
    } else if (ref[0] == '#') {
      out = base.substr(0, base.find('#')) + ref;
    } else if (ref.rfind("//", 0) == 0) {
      out = base.substr(0, base.find(':') + 1) + ref;
    } else if (ref[0] == '/') {
      size_t scheme_end = base.find("://");
      if (scheme_end == std::string::npos) {
        out = base.substr(0, base.find(':') + 1) + ref;
      } else {
        size_t authority_end = base.find('/', scheme_end + 3);
        out = (authority_end == std::string::npos ? base : base.substr(0, authority_end)) + ref;
      }
    } else {
      // merge with the base path's directory
      std::string stripped = base.substr(0, base.find('#'));
      stripped = stripped.substr(0, stripped.find('?'));
      size_t slash = stripped.rfind('/');
      size_t scheme_end = stripped.find("://");
      if (slash == std::string::npos ||
          (scheme_end != std::string::npos && slash < scheme_end + 3)) {
        out = stripped + "/" + ref;
      } else {
        out = stripped.substr(0, slash + 1) + ref;
      }
    }
    if (!is_absolute_iri(out)) fail("IRI resolution produced an invalid IRI: <" + out + ">");
    return Iri{out};
  }

  Term prefixed_name() {
    skip_ws();
    std::string label;
    while (!eof() && (is_pn_char(peek()) || (peek() == '.' && is_pn_char(peek(1))))) {
      label += advance();
    }
    if (eof() || peek() != ':') {
      fail("expected a prefixed name" + (label.empty() ? "" : " after '" + label + "'"));
    }
    advance();  // ':'
    std::string local;
    while (!eof()) {
      char c = peek();
      if (is_pn_char(c) || c == ':' || c == '%') {
        local += advance();
      } else if (c == '\\') {
        advance();
        if (eof()) fail("dangling escape in local name");
        local += advance();
      } else if (c == '.' && (is_pn_char(peek(1)) || peek(1) == ':' || peek(1) == '%')) {
        local += advance();  // dot inside, not as the final character
      } else {
        break;
      }
    }
    const Iri* ns = prefixes_.find(label);
    if (!ns) {
      std::ostringstream os;
      os << "undefined prefix '" << label << "' at line " << line_;
      throw UndefinedPrefixError(os.str());
    }
    return Iri{ns->value + local};
  }

  Term blank_node_label() {
    skip_ws();
    if (peek() != '_' || peek(1) != ':') fail("expected blank node label");
    advance();
    advance();
    std::string label;
    while (!eof() && (is_pn_char(peek()) || (peek() == '.' && is_pn_char(peek(1))))) {
      label += advance();
    }
    if (label.empty()) fail("empty blank node label");
    used_blank_labels_.insert(label);
    return BlankNode{label};
  }

  BlankNode fresh_blank() {
    while (true) {
      std::string label = "genid" + std::to_string(next_blank_++);
      if (used_blank_labels_.insert(label).second) return BlankNode{label};
    }
  }

  Term blank_node_property_list() {
    expect('[');
    BlankNode node = fresh_blank();
    skip_ws();
    if (peek() == ']') {
      advance();
      return node;
    }
    predicate_object_list(node);
    expect(']');
    return node;
  }

  Term collection() {
    expect('(');
    std::vector<Term> items;
    while (true) {
      skip_ws();
      if (peek() == ')') {
        advance();
        break;
      }
      if (eof()) fail("unterminated collection");
      items.push_back(object_term());
    }
    if (items.empty()) return vocab::kRdfNil;
    // ( a b ) becomes a two-cell rdf:first/rdf:rest chain ending in rdf:nil.
    std::vector<BlankNode> cells;
    cells.reserve(items.size());
    for (size_t i = 0; i < items.size(); ++i) cells.push_back(fresh_blank());
    for (size_t i = 0; i < items.size(); ++i) {
      graph_.add(Triple(cells[i], vocab::kRdfFirst, items[i]));
      Term rest = i + 1 < items.size() ? Term{cells[i + 1]} : Term{vocab::kRdfNil};
      graph_.add(Triple(cells[i], vocab::kRdfRest, rest));
    }
    return cells.front();
  }

  // ---- literals -----------------------------------------------------------

  Term literal() {
    char quote = peek();
    std::string lexical = string_body(quote);
    // the language tag / datatype marker must follow the closing quote directly
    if (peek() == '@') {
      advance();
      std::string tag;
      while (!eof() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '-')) {
        tag += advance();
      }
      if (tag.empty()) fail("empty language tag");
      return Literal::tagged(lexical, tag);
    }
    if (peek() == '^' && peek(1) == '^') {
      advance();
      advance();
      Term dt = iri_term();
      return Literal::typed(lexical, as_iri(dt));
    }
    return Literal::plain(lexical);
  }

  std::string string_body(char quote) {
    advance();  // opening quote
    bool long_form = false;
    if (peek() == quote && peek(1) == quote) {
      advance();
      advance();
      long_form = true;
    } else if (peek() == quote) {
      // empty short string
      advance();
      return "";
    }
    std::string out;
    while (true) {
      if (eof()) fail("unterminated string literal");
      char c = peek();
      if (c == quote) {
        if (!long_form) {
          advance();
          return out;
        }
        if (peek(1) == quote && peek(2) == quote) {
          advance();
          advance();
          advance();
          return out;
        }
        out += advance();
        continue;
      }
      if (!long_form && c == '\n') fail("newline in short string literal");
      if (c == '\\') {
        advance();
        if (eof()) fail("dangling escape");
        char e = advance();
        switch (e) {
          case 't': out += '\t'; break;
          case 'b': out += '\b'; break;
          case 'n': out += '\n'; break;
          case 'r': out += '\r'; break;
          case 'f': out += '\f'; break;
          case '"': out += '"'; break;
          case '\'': out += '\''; break;
          case '\\': out += '\\'; break;
          case 'u': out += unicode_escape(4); break;
          case 'U': out += unicode_escape(8); break;
          default: fail(std::string("unknown escape '\\") + e + "'");
        }
        continue;
      }
      out += advance();
    }
  }

  std::string unicode_escape(int digits) {
    unsigned long cp = 0;
    for (int i = 0; i < digits; ++i) {
      if (eof() || !std::isxdigit(static_cast<unsigned char>(peek()))) {
        fail("bad unicode escape");
      }
      char c = advance();
      cp = cp * 16 + static_cast<unsigned long>(
                         std::isdigit(static_cast<unsigned char>(c))
                             ? c - '0'
                             : std::tolower(static_cast<unsigned char>(c)) - 'a' + 10);
    }
    std::string out;
    if (cp < 0x80) {
      out += static_cast<char>(cp);
    } else if (cp < 0x800) {
      out += static_cast<char>(0xC0 | (cp >> 6));
      out += static_cast<char>(0x80 | (cp & 0x3F));
    } else if (cp < 0x10000) {
      out += static_cast<char>(0xE0 | (cp >> 12));
      out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
      out += static_cast<char>(0x80 | (cp & 0x3F));
    } else {
      out += static_cast<char>(0xF0 | (cp >> 18));
      out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
      out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
      out += static_cast<char>(0x80 | (cp & 0x3F));
    }
    return out;
  }

  Term numeric_literal() {
    std::string lex;
    if (peek() == '+' || peek() == '-') lex += advance();
    bool has_digits = false, has_dot = false, has_exp = false;
    while (!eof()) {
      char c = peek();
      if (std::isdigit(static_cast<unsigned char>(c))) {
        lex += advance();
        has_digits = true;
      } else if (c == '.' && !has_dot && !has_exp &&
                 std::isdigit(static_cast<unsigned char>(peek(1)))) {
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
    const Iri& dt = has_exp ? vocab::kXsdDouble : (has_dot ? vocab::kXsdDecimal : vocab::kXsdInteger);
    return Literal::typed(lex, dt);
  }

  std::string_view text_;
  size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
  std::optional<Iri> base_;
  PrefixMap prefixes_;
  Graph graph_;
  std::unordered_set<std::string> used_blank_labels_;
  unsigned next_blank_ = 0;
};

}  // namespace

Graph parse_turtle(std::string_view text, const std::optional<Iri>& base) {
  return TurtleParser(text, base).run();
}

}  // namespace graphsite::rdf
