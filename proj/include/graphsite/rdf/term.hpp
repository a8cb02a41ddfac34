#pragma once

#include <compare>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

namespace graphsite::rdf {

struct Iri {
  std::string value;

  Iri() = default;
  explicit Iri(std::string v) : value(std::move(v)) {}

  friend bool operator==(const Iri&, const Iri&) = default;
  friend auto operator<=>(const Iri&, const Iri&) = default;
};

// Labels are document-scoped: two blank nodes are the same node iff their
// labels are equal within one graph.
struct BlankNode {
  std::string label;

  BlankNode() = default;
  explicit BlankNode(std::string l) : label(std::move(l)) {}

  friend bool operator==(const BlankNode&, const BlankNode&) = default;
  friend auto operator<=>(const BlankNode&, const BlankNode&) = default;
};

// Use the factories: a language tag implies rdf:langString, no explicit
// datatype implies xsd:string.
struct Literal {
  std::string lexical;
  Iri datatype;
  std::optional<std::string> language;  // lowercase tag

  static Literal plain(std::string lexical);
  static Literal typed(std::string lexical, Iri datatype);
  static Literal tagged(std::string lexical, std::string language);

  friend bool operator==(const Literal&, const Literal&) = default;
};

using Term = std::variant<Iri, BlankNode, Literal>;

inline bool is_iri(const Term& t) { return std::holds_alternative<Iri>(t); }
inline bool is_blank(const Term& t) { return std::holds_alternative<BlankNode>(t); }
inline bool is_literal(const Term& t) { return std::holds_alternative<Literal>(t); }

inline const Iri& as_iri(const Term& t) { return std::get<Iri>(t); }
inline const BlankNode& as_blank(const Term& t) { return std::get<BlankNode>(t); }
inline const Literal& as_literal(const Term& t) { return std::get<Literal>(t); }

struct Triple {
  Term subject;  // Iri or BlankNode; the constructor rejects literals
  Iri predicate;
  Term object;

  Triple(Term s, Iri p, Term o);

  friend bool operator==(const Triple&, const Triple&) = default;
};

// Canonical N-Triples spelling of a term. Doubles as the sort key for every
// deterministic ordering in this library.
std::string to_ntriples(const Term& t);
std::string to_ntriples(const Triple& t);  // "<s> <p> <o> ."

std::string escape_ntriples_string(std::string_view s);

bool term_less(const Term& a, const Term& b);
bool triple_less(const Triple& a, const Triple& b);

// Syntactic absoluteness check: a scheme, a colon, and no whitespace, control
// characters, or characters N-Triples forbids inside IRIs.
bool is_absolute_iri(std::string_view s);

namespace vocab {

inline const char* kRdfNs = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
inline const char* kRdfsNs = "http://www.w3.org/2000/01/rdf-schema#";
inline const char* kXsdNs = "http://www.w3.org/2001/XMLSchema#";

inline const Iri kRdfType{"http://www.w3.org/1999/02/22-rdf-syntax-ns#type"};
inline const Iri kRdfFirst{"http://www.w3.org/1999/02/22-rdf-syntax-ns#first"};
inline const Iri kRdfRest{"http://www.w3.org/1999/02/22-rdf-syntax-ns#rest"};
inline const Iri kRdfNil{"http://www.w3.org/1999/02/22-rdf-syntax-ns#nil"};
inline const Iri kRdfLangString{"http://www.w3.org/1999/02/22-rdf-syntax-ns#langString"};

inline const Iri kRdfsSubClassOf{"http://www.w3.org/2000/01/rdf-schema#subClassOf"};
inline const Iri kRdfsLabel{"http://www.w3.org/2000/01/rdf-schema#label"};

inline const Iri kXsdString{"http://www.w3.org/2001/XMLSchema#string"};
inline const Iri kXsdBoolean{"http://www.w3.org/2001/XMLSchema#boolean"};
inline const Iri kXsdInteger{"http://www.w3.org/2001/XMLSchema#integer"};
inline const Iri kXsdDecimal{"http://www.w3.org/2001/XMLSchema#decimal"};
inline const Iri kXsdDouble{"http://www.w3.org/2001/XMLSchema#double"};
inline const Iri kXsdFloat{"http://www.w3.org/2001/XMLSchema#float"};
inline const Iri kXsdDate{"http://www.w3.org/2001/XMLSchema#date"};
inline const Iri kXsdDateTime{"http://www.w3.org/2001/XMLSchema#dateTime"};

}  // namespace vocab

}  // namespace graphsite::rdf
