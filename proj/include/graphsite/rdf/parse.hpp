#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "graphsite/rdf/graph.hpp"

namespace graphsite::rdf {

// Line-oriented N-Triples. Blank node labels are preserved per document.
Graph parse_ntriples(std::string_view text);

// Turtle subset: @prefix/@base (and PREFIX/BASE), the `a` keyword, predicate
// lists (;), object lists (,), labeled and anonymous blank nodes, collections
// "( ... )" expanded to rdf:first/rdf:rest chains, language tags, datatypes,
// and numeric/boolean shorthand. Document prefixes populate Graph::prefixes.
Graph parse_turtle(std::string_view text, const std::optional<Iri>& base = std::nullopt);

// Canonical serialization: one sorted N-Triples line per triple.
std::string serialize_ntriples(const Graph& graph);

// Dispatches on extension: ".nt" -> N-Triples, ".ttl" -> Turtle.
Graph load_graph_file(const std::filesystem::path& path);

}  // namespace graphsite::rdf
