#include <cctype>
#include <fstream>
#include <sstream>

#include "graphsite/errors.hpp"
#include "graphsite/rdf/parse.hpp"

namespace graphsite::rdf {

namespace {

// Scanner over one N-Triples statement line.
class LineScanner {
 public:
  LineScanner(std::string_view line, int line_no) : line_(line), line_no_(line_no) {}

  void skip_ws() {
    while (pos_ < line_.size() && (line_[pos_] == ' ' || line_[pos_] == '\t')) ++pos_;
  }

  bool eol() {
    skip_ws();
    return pos_ >= line_.size();
  }

  char peek() const { return pos_ < line_.size() ? line_[pos_] : '\0'; }

  [[noreturn]] void fail(const std::string& message) const {
    std::ostringstream os;
    os << "N-Triples syntax error on line " << line_no_ << ": " << message;
    throw ParseError(os.str(), line_no_, static_cast<int>(pos_) + 1);
  }

  void expect(char c) {
    skip_ws();
    if (pos_ >= line_.size() || line_[pos_] != c) {
      fail(std::string("expected '") + c + "'");
    }
    ++pos_;
  }

  Iri parse_iriref() {
    skip_ws();
    if (peek() != '<') fail("expected IRI");
    ++pos_;
    std::string value;
    while (pos_ < line_.size() && line_[pos_] != '>') {
      if (line_[pos_] == '\\') {
        value += parse_ucs_escape();
      } else {
        value += line_[pos_++];
      }
    }
    if (pos_ >= line_.size()) fail("unterminated IRI");
    ++pos_;
    if (!is_absolute_iri(value)) fail("not an absolute IRI: <" + value + ">");
    return Iri{value};
  }

  BlankNode parse_blank() {
    skip_ws();
    if (pos_ + 1 >= line_.size() || line_[pos_] != '_' || line_[pos_ + 1] != ':') {
      fail("expected blank node");
    }
    pos_ += 2;
    std::string label;
    while (pos_ < line_.size() && (std::isalnum(static_cast<unsigned char>(line_[pos_])) ||
                                   line_[pos_] == '_' || line_[pos_] == '-' ||
                                   line_[pos_] == '.')) {
      label += line_[pos_++];
    }
    while (!label.empty() && label.back() == '.') {  // trailing dot ends the statement
      label.pop_back();
      --pos_;
    }
    if (label.empty()) fail("empty blank node label");
    return BlankNode{label};
  }

  Literal parse_literal() {
    skip_ws();
    if (peek() != '"') fail("expected literal");
    ++pos_;
    std::string lexical;
    while (pos_ < line_.size() && line_[pos_] != '"') {
      if (line_[pos_] == '\\') {
        lexical += parse_string_escape();
      } else {
        lexical += line_[pos_++];
      }
    }
    if (pos_ >= line_.size()) fail("unterminated string literal");
    ++pos_;
    if (peek() == '@') {
      ++pos_;
      std::string tag;
      while (pos_ < line_.size() && (std::isalnum(static_cast<unsigned char>(line_[pos_])) ||
                                     line_[pos_] == '-')) {
        tag += line_[pos_++];
      }
      if (tag.empty()) fail("empty language tag");
      return Literal::tagged(lexical, tag);
    }
    if (pos_ + 1 < line_.size() && line_[pos_] == '^' && line_[pos_ + 1] == '^') {
      pos_ += 2;
      Iri dt = parse_iriref();
      return Literal::typed(lexical, dt);
    }
    return Literal::plain(lexical);
  }

  Term parse_subject() {
    skip_ws();
    if (peek() == '<') return parse_iriref();
    if (peek() == '_') return parse_blank();
    fail("subject must be an IRI or blank node");
  }

  Term parse_object() {
    skip_ws();
    if (peek() == '<') return parse_iriref();
    if (peek() == '_') return parse_blank();
    if (peek() == '"') return parse_literal();
    fail("object must be an IRI, blank node, or literal");
  }

 private:
  std::string parse_string_escape() {
    ++pos_;  // backslash
    if (pos_ >= line_.size()) fail("dangling escape");
    char c = line_[pos_++];
    switch (c) {
      case 't': return "\t";
      case 'b': return "\b";
      case 'n': return "\n";
      case 'r': return "\r";
      case 'f': return "\f";
      case '"': return "\"";
      case '\'': return "'";
      case '\\': return "\\";
      case 'u': return decode_unicode(4);
      case 'U': return decode_unicode(8);
      default: fail(std::string("unknown escape '\\") + c + "'");
    }
  }

  std::string parse_ucs_escape() {
    ++pos_;
    if (pos_ >= line_.size()) fail("dangling escape");
    char c = line_[pos_++];
    if (c == 'u') return decode_unicode(4);
    if (c == 'U') return decode_unicode(8);
    fail("only \\u / \\U escapes are allowed in IRIs");
  }

  std::string decode_unicode(int digits) {
    unsigned long cp = 0;
    for (int i = 0; i < digits; ++i) {
      if (pos_ >= line_.size() || !std::isxdigit(static_cast<unsigned char>(line_[pos_]))) {
        fail("bad unicode escape");
      }
      char c = line_[pos_++];
      cp = cp * 16 + static_cast<unsigned long>(
                         std::isdigit(static_cast<unsigned char>(c))
                             ? c - '0'
                             : std::tolower(static_cast<unsigned char>(c)) - 'a' + 10);
    }
    return encode_utf8(cp);
  }

  std::string encode_utf8(unsigned long cp) {
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

  std::string_view line_;
  size_t pos_ = 0;
  int line_no_;
};

}  // namespace

Graph parse_ntriples(std::string_view text) {
  Graph g;
  int line_no = 0;
  size_t start = 0;
  while (start <= text.size()) {
    size_t end = text.find('\n', start);
    std::string_view line = text.substr(
        start, end == std::string_view::npos ? text.size() - start : end - start);
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

    LineScanner sc(line, line_no);
    if (!sc.eol() && sc.peek() != '#') {
      Term s = sc.parse_subject();
      Iri p = sc.parse_iriref();
      Term o = sc.parse_object();
      sc.expect('.');
      if (!sc.eol() && sc.peek() != '#') sc.fail("trailing content after '.'");
      g.add(Triple(std::move(s), std::move(p), std::move(o)));
    }

    if (end == std::string_view::npos) break;
    start = end + 1;
  }
  return g;
}

std::string serialize_ntriples(const Graph& graph) {
  std::string out;
  for (const Triple& t : graph.triples()) {
    out += to_ntriples(t);
    out += '\n';
  }
  return out;
}

Graph load_graph_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error("cannot open data file: " + path.string());
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();

  const std::string ext = path.extension().string();
  if (ext == ".nt") return parse_ntriples(text);
  if (ext == ".ttl") return parse_turtle(text);
  throw Error("unsupported data file extension '" + ext + "' (expected .nt or .ttl): " +
              path.string());
}

}  // namespace graphsite::rdf
