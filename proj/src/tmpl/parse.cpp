#include "graphsite/tmpl/parse.hpp"

#include <yaml-cpp/yaml.h>

#include <cctype>
#include <sstream>

#include "graphsite/errors.hpp"

namespace graphsite::tmpl {

namespace {

Value yaml_scalar_to_value(const YAML::Node& node) {
  // YAML scalars are untyped text; recover booleans and integers that tests
  // and templates care about, keep everything else as a string.
  if (node.IsNull()) return Value::nil();
  const std::string s = node.Scalar();
  if (node.Tag() != "!") {  // unquoted
    if (s == "true") return Value(true);
    if (s == "false") return Value(false);
    if (!s.empty() && (std::isdigit(static_cast<unsigned char>(s[0])) ||
                       ((s[0] == '-' || s[0] == '+') && s.size() > 1))) {
      try {
        size_t used = 0;
        long long v = std::stoll(s, &used);
        if (used == s.size()) return Value(static_cast<std::int64_t>(v));
      } catch (...) {
      }
    }
  }
  return Value(s);
}

Value yaml_to_value(const YAML::Node& node) {
  switch (node.Type()) {
    case YAML::NodeType::Scalar:
      return yaml_scalar_to_value(node);
    case YAML::NodeType::Sequence: {
      Array a;
      for (const auto& item : node) a.push_back(yaml_to_value(item));
      return Value(std::move(a));
    }
    case YAML::NodeType::Map: {
      ValueMap m;
      for (const auto& kv : node) m[kv.first.Scalar()] = yaml_to_value(kv.second);
      return Value(std::move(m));
    }
    default:
      return Value::nil();
  }
}

// Returns the body once front matter (if any) is consumed.
std::string_view split_front_matter(std::string_view text, FrontMatter& front,
                                    int& body_start_line) {
  body_start_line = 1;
  auto line_at = [&](size_t pos) {
    size_t end = text.find('\n', pos);
    std::string_view line =
        text.substr(pos, end == std::string_view::npos ? text.size() - pos : end - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    return line;
  };
  if (line_at(0) != "---") return text;

  size_t pos = text.find('\n');
  if (pos == std::string_view::npos) return text;
  ++pos;
  int line_no = 2;
  size_t yaml_begin = pos;
  while (pos <= text.size()) {
    std::string_view line = line_at(pos);
    size_t end = text.find('\n', pos);
    if (line == "---") {
      std::string yaml_text(text.substr(yaml_begin, pos - yaml_begin));
      try {
        YAML::Node doc = YAML::Load(yaml_text);
        if (doc.IsMap()) {
          for (const auto& kv : doc) {
            const std::string key = kv.first.Scalar();
            if (key == "layout") {
              front.layout = kv.second.Scalar();
            } else {
              front.extra[key] = yaml_to_value(kv.second);
            }
          }
        }
      } catch (const YAML::Exception& e) {
        throw ParseError("front matter is not valid YAML: " + std::string(e.what()), 2);
      }
      body_start_line = line_no + 1;
      if (end == std::string_view::npos) return text.substr(text.size());
      return text.substr(end + 1);
    }
    if (end == std::string_view::npos) break;
    pos = end + 1;
    ++line_no;
  }
  throw ParseError("unterminated front matter (missing closing ---)", 1);
}

// Tokenizer for the inside of {{ ... }} and {% ... %} markers.
class ExprCursor {
 public:
  ExprCursor(std::string_view text, int line) : text_(text), line_(line) {}

  void skip_ws() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
  }

  bool eof() {
    skip_ws();
    return pos_ >= text_.size();
  }

  char peek(size_t ahead = 0) const {
    return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0';
  }

  [[noreturn]] void fail(const std::string& message) const {
    std::ostringstream os;
    os << "template syntax error on line " << line_ << ": " << message;
    throw ParseError(os.str(), line_);
  }

  bool try_consume(char c) {
    skip_ws();
    if (peek() == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!try_consume(c)) fail(std::string("expected '") + c + "'");
  }

  static bool ident_start(char c) {
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
  }
  static bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
  }

  std::string identifier() {
    skip_ws();
    if (!ident_start(peek())) fail("expected identifier");
    std::string out;
    while (pos_ < text_.size() && ident_char(text_[pos_])) out += text_[pos_++];
    return out;
  }

  // word made of non-space characters; used for include names
  std::string bare_word() {
    skip_ws();
    std::string out;
    while (pos_ < text_.size() &&
           !std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      out += text_[pos_++];
    }
    if (out.empty()) fail("expected a name");
    return out;
  }

  std::string quoted_string() {
    skip_ws();
    char quote = peek();
    ++pos_;
    std::string out;
    while (pos_ < text_.size() && text_[pos_] != quote) {
      if (text_[pos_] == '\\' && pos_ + 1 < text_.size()) {
        ++pos_;
        char e = text_[pos_++];
        switch (e) {
          case 'n': out += '\n'; break;
          case 't': out += '\t'; break;
          default: out += e;
        }
      } else {
        out += text_[pos_++];
      }
    }
    if (pos_ >= text_.size()) fail("unterminated string");
    ++pos_;
    return out;
  }

  Operand operand() {
    skip_ws();
    char c = peek();
    if (c == '"' || c == '\'') return Operand{Value(quoted_string())};
    if (std::isdigit(static_cast<unsigned char>(c)) ||
        ((c == '-' || c == '+') && std::isdigit(static_cast<unsigned char>(peek(1))))) {
      return Operand{number()};
    }
    if (!ident_start(c)) fail("expected a value or variable");
    std::string first = identifier();
    if (first == "true") return Operand{Value(true)};
    if (first == "false") return Operand{Value(false)};
    if (first == "nil" || first == "null") return Operand{Value::nil()};
    VarPath path;
    path.segments.push_back(first);
    while (peek() == '.') {
      ++pos_;
      path.segments.push_back(identifier());
    }
    return Operand{std::move(path)};
  }

  Value number() {
    std::string lex;
    if (peek() == '-' || peek() == '+') lex += text_[pos_++];
    bool has_dot = false;
    while (pos_ < text_.size() &&
           (std::isdigit(static_cast<unsigned char>(text_[pos_])) ||
            (text_[pos_] == '.' && !has_dot &&
             std::isdigit(static_cast<unsigned char>(peek(1)))))) {
      if (text_[pos_] == '.') has_dot = true;
      lex += text_[pos_++];
    }
    if (has_dot) return Value(std::stod(lex));
    return Value(static_cast<std::int64_t>(std::stoll(lex)));
  }

  // operand followed by an optional | filter chain
  Expression expression() {
    Expression e;
    e.line = line_;
    e.base = operand();
    while (try_consume('|')) {
      FilterCall call;
      call.line = line_;
      call.name = identifier();
      if (try_consume(':')) {
        while (true) {
          call.args.push_back(operand());
          if (!try_consume(',')) break;
        }
      }
      e.filters.push_back(std::move(call));
    }
    return e;
  }

  Condition condition() {
    Condition lhs = comparison();
    while (true) {
      skip_ws();
      size_t save = pos_;
      if (ident_start(peek())) {
        std::string word = identifier();
        if (word == "and" || word == "or") {
          Condition parent;
          parent.kind = word == "and" ? Condition::Kind::And : Condition::Kind::Or;
          parent.children.push_back(std::move(lhs));
          parent.children.push_back(comparison());
          lhs = std::move(parent);
          continue;
        }
        pos_ = save;
      }
      return lhs;
    }
  }

  Condition comparison() {
    Condition c;
    c.lhs = operand();
    skip_ws();
    if ((peek() == '=' && peek(1) == '=') || (peek() == '!' && peek(1) == '=')) {
      c.kind = Condition::Kind::Compare;
      c.op = std::string(1, peek()) + "=";
      pos_ += 2;
      c.rhs = operand();
    } else {
      c.kind = Condition::Kind::Truthy;
    }
    return c;
  }

 private:
  std::string_view text_;
  size_t pos_ = 0;
  int line_;
};

struct Tag {
  std::string keyword;
  std::string rest;
  int line = 0;
};

class TemplateParser {
 public:
  TemplateParser(std::string_view body, int start_line)
      : body_(body), line_(start_line) {}

  NodeList run() {
    NodeList nodes = parse_nodes({});
    return nodes;
  }

 private:
  // Parses until one of `closers` appears as a tag keyword (which is consumed
  // and reported through closed_by_) or input ends.
  NodeList parse_nodes(const std::vector<std::string>& closers) {
    NodeList nodes;
    while (pos_ < body_.size()) {
      size_t marker = find_marker(pos_);
      if (marker > pos_) {
        nodes.push_back(raw_node(pos_, marker));
        advance_lines(pos_, marker);
        pos_ = marker;
        if (pos_ >= body_.size()) break;
      }
      if (pos_ >= body_.size()) break;

      if (body_[pos_ + 1] == '{') {  // {{ output }}
        int line = line_;
        std::string inner = marker_body("{{", "}}");
        ExprCursor cur(inner, line);
        Output out{cur.expression()};
        if (!cur.eof()) cur.fail("unexpected content after expression");
        nodes.push_back(Node{std::move(out), line});
        continue;
      }

      // {% tag %}
      Tag tag = read_tag();
      if (!closers.empty()) {
        for (const std::string& c : closers) {
          if (tag.keyword == c) {
            closed_by_ = tag;
            return nodes;
          }
        }
      }
      nodes.push_back(tag_node(tag));
    }
    if (!closers.empty()) {
      std::ostringstream os;
      os << "unclosed tag: expected one of";
      for (const std::string& c : closers) os << " {% " << c << " %}";
      throw ParseError(os.str(), line_);
    }
    return nodes;
  }

  Node raw_node(size_t begin, size_t end) {
    return Node{RawText{std::string(body_.substr(begin, end - begin))}, line_};
  }

  // Position of the next {{ or {%, or end of input.
  size_t find_marker(size_t from) const {
    for (size_t i = from; i + 1 < body_.size(); ++i) {
      if (body_[i] == '{' && (body_[i + 1] == '{' || body_[i + 1] == '%')) return i;
    }
    return body_.size();
  }

  void advance_lines(size_t begin, size_t end) {
    for (size_t i = begin; i < end; ++i) {
      if (body_[i] == '\n') ++line_;
    }
  }

  // Extracts the inside of a {{ }} / {% %} pair, honoring quoted strings.
  std::string marker_body(std::string_view open, std::string_view close) {
    size_t start = pos_ + open.size();
    size_t i = start;
    char quote = '\0';
    while (i < body_.size()) {
      char c = body_[i];
      if (quote) {
        if (c == quote) quote = '\0';
      } else if (c == '"' || c == '\'') {
        quote = c;
      } else if (c == close[0] && i + 1 < body_.size() && body_[i + 1] == close[1]) {
        std::string inner(body_.substr(start, i - start));
        advance_lines(pos_, i + 2);
        pos_ = i + 2;
        return inner;
      }
      ++i;
    }
    std::ostringstream os;
    os << "unterminated " << open << " marker on line " << line_;
    throw ParseError(os.str(), line_);
  }

  Tag read_tag() {
    int line = line_;
    std::string inner = marker_body("{%", "%}");
    size_t i = 0;
    while (i < inner.size() && std::isspace(static_cast<unsigned char>(inner[i]))) ++i;
    size_t kw_begin = i;
    while (i < inner.size() && !std::isspace(static_cast<unsigned char>(inner[i]))) ++i;
    Tag tag;
    tag.keyword = inner.substr(kw_begin, i - kw_begin);
    tag.rest = i < inner.size() ? inner.substr(i + 1) : "";
    tag.line = line;
    if (tag.keyword.empty()) throw ParseError("empty tag", line);
    return tag;
  }

  Node tag_node(const Tag& tag) {
    if (tag.keyword == "assign") return assign_node(tag);
    if (tag.keyword == "for") return for_node(tag);
    if (tag.keyword == "if") return if_node(tag);
    if (tag.keyword == "include") return include_node(tag);
    std::ostringstream os;
    os << "unknown tag '" << tag.keyword << "' on line " << tag.line;
    throw ParseError(os.str(), tag.line);
  }

  Node assign_node(const Tag& tag) {
    ExprCursor cur(tag.rest, tag.line);
    std::string var = cur.identifier();
    cur.expect('=');
    AssignTag node{var, cur.expression()};
    if (!cur.eof()) cur.fail("unexpected content after assign");
    return Node{std::move(node), tag.line};
  }

  Node for_node(const Tag& tag) {
    ExprCursor cur(tag.rest, tag.line);
    std::string var = cur.identifier();
    std::string in = cur.identifier();
    if (in != "in") cur.fail("expected 'in' in for tag");
    ForTag node;
    node.var = var;
    node.iterable = cur.expression();
    if (!cur.eof()) cur.fail("unexpected content in for tag");
    node.body = parse_nodes({"endfor"});
    return Node{std::move(node), tag.line};
  }

  Node if_node(const Tag& tag) {
    IfTag node;
    ExprCursor cur(tag.rest, tag.line);
    Condition cond = cur.condition();
    if (!cur.eof()) cur.fail("unexpected content in if tag");

    while (true) {
      NodeList body = parse_nodes({"elsif", "else", "endif"});
      node.branches.push_back(IfBranch{std::move(cond), std::move(body)});
      if (closed_by_.keyword == "elsif") {
        ExprCursor branch_cur(closed_by_.rest, closed_by_.line);
        cond = branch_cur.condition();
        continue;
      }
      if (closed_by_.keyword == "else") {
        node.else_body = parse_nodes({"endif"});
        if (closed_by_.keyword != "endif") {
          throw ParseError("expected {% endif %}", closed_by_.line);
        }
      }
      break;
    }
    return Node{std::move(node), tag.line};
  }

  Node include_node(const Tag& tag) {
    ExprCursor cur(tag.rest, tag.line);
    std::string name;
    cur.skip_ws();
    if (cur.peek() == '"' || cur.peek() == '\'') {
      name = cur.quoted_string();
    } else {
      name = cur.bare_word();
    }
    if (!cur.eof()) cur.fail("unexpected content in include tag");
    return Node{IncludeTag{name}, tag.line};
  }

  std::string_view body_;
  size_t pos_ = 0;
  int line_;
  Tag closed_by_;
};

}  // namespace

Template parse_template(std::string_view text) {
  Template t;
  int body_start_line = 1;
  std::string_view body = split_front_matter(text, t.front, body_start_line);
  TemplateParser parser(body, body_start_line);
  t.nodes = parser.run();
  return t;
}

}  // namespace graphsite::tmpl
