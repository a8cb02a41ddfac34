#include "graphsite/rdf/term.hpp"

#include <cctype>

#include "graphsite/errors.hpp"

namespace graphsite::rdf {

Literal Literal::plain(std::string lexical) {
  Literal l;
  l.lexical = std::move(lexical);
  l.datatype = vocab::kXsdString;
  return l;
}

Literal Literal::typed(std::string lexical, Iri datatype) {
  Literal l;
  l.lexical = std::move(lexical);
  l.datatype = std::move(datatype);
  return l;
}

Literal Literal::tagged(std::string lexical, std::string language) {
  Literal l;
  l.lexical = std::move(lexical);
  l.datatype = vocab::kRdfLangString;
  for (char& c : language) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  l.language = std::move(language);
  return l;
}

Triple::Triple(Term s, Iri p, Term o)
    : subject(std::move(s)), predicate(std::move(p)), object(std::move(o)) {
  if (is_literal(subject)) {
    throw Error("triple subject must be an IRI or blank node, not a literal");
  }
}

std::string escape_ntriples_string(std::string_view s) {
  std::string out;
  out.reserve(s.size() + 2);
  for (char c : s) {
    switch (c) {
      case '\\': out += "\\\\"; break;
      case '"': out += "\\\""; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default: out += c;
    }
  }
  return out;
}

std::string to_ntriples(const Term& t) {
  if (is_iri(t)) {
    return "<" + as_iri(t).value + ">";
  }
  if (is_blank(t)) {
    return "_:" + as_blank(t).label;
  }
  const Literal& lit = as_literal(t);
  std::string out = "\"" + escape_ntriples_string(lit.lexical) + "\"";
  if (lit.language) {
    out += "@" + *lit.language;
  } else if (!lit.datatype.value.empty() && lit.datatype != vocab::kXsdString) {
    out += "^^<" + lit.datatype.value + ">";
  }
  return out;
}

std::string to_ntriples(const Triple& t) {
  return to_ntriples(t.subject) + " <" + t.predicate.value + "> " + to_ntriples(t.object) +
         " .";
}

bool term_less(const Term& a, const Term& b) {
  return to_ntriples(a) < to_ntriples(b);
}

bool triple_less(const Triple& a, const Triple& b) {
  const std::string sa = to_ntriples(a.subject), sb = to_ntriples(b.subject);
  if (sa != sb) return sa < sb;
  if (a.predicate != b.predicate) return a.predicate.value < b.predicate.value;
  return term_less(a.object, b.object);
}

bool is_absolute_iri(std::string_view s) {
  if (s.empty()) return false;
  // scheme = ALPHA *( ALPHA / DIGIT / "+" / "-" / "." )
  if (!std::isalpha(static_cast<unsigned char>(s[0]))) return false;
  size_t i = 1;
  while (i < s.size() &&
         (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '+' || s[i] == '-' ||
          s[i] == '.')) {
    ++i;
  }
  if (i >= s.size() || s[i] != ':') return false;
  for (char c : s) {
    unsigned char u = static_cast<unsigned char>(c);
    if (u <= 0x20) return false;  // controls and space
    if (c == '<' || c == '>' || c == '"' || c == '{' || c == '}' || c == '|' || c == '^' ||
        c == '`' || c == '\\') {
      return false;
    }
  }
  return true;
}

}  // namespace graphsite::rdf
