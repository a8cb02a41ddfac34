#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "graphsite/rdf/term.hpp"

namespace graphsite::rdf {

class PrefixMap {
 public:
  void set(std::string label, Iri ns) { entries_[std::move(label)] = std::move(ns); }

  const Iri* find(const std::string& label) const {
    auto it = entries_.find(label);
    return it == entries_.end() ? nullptr : &it->second;
  }

  // Expands "pfx:local" through the map; "<absolute-iri>" passes through with
  // the brackets stripped. Throws UndefinedPrefixError for unknown labels.
  Iri expand(const std::string& name) const;

  // Entries of `stronger` win on label conflicts.
  void merge_overriding(const PrefixMap& stronger);

  const std::map<std::string, Iri>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }

 private:
  std::map<std::string, Iri> entries_;
};

// Free-function form of PrefixMap::expand.
Iri expand_prefixed_name(const PrefixMap& prefixes, const std::string& name);

// Triple set with three lookup indexes: by subject, by (predicate, object),
// and by (subject, predicate). Triples live in one canonical order (sorted by
// term serialization) so every query result is deterministic.
//
// Mutation (add) and reads must not interleave across threads: the first read
// after an add re-sorts and re-indexes. Once loading is done the graph is
// effectively immutable and safe to read from any number of threads.
class Graph {
 public:
  void add(Triple t);

  std::size_t size() const;
  const std::vector<Triple>& triples() const;

  PrefixMap& prefixes() { return prefixes_; }
  const PrefixMap& prefixes() const { return prefixes_; }

  // All triples matching the bound positions; unbound positions match
  // anything. Result order follows the canonical triple order.
  std::vector<Triple> match(const std::optional<Term>& s, const std::optional<Iri>& p,
                            const std::optional<Term>& o) const;

  // Objects of (subject, predicate, ?), sorted by serialization, deduplicated.
  std::vector<Term> objects(const Term& subject, const Iri& predicate) const;

  // Subjects of (?, predicate, object), sorted by serialization, deduplicated.
  std::vector<Term> subjects(const Iri& predicate, const Term& object) const;

  // Members of the rdf:first/rdf:rest chain starting at `head`, in chain
  // order. Throws Error naming the offending node on a missing or duplicated
  // first/rest link or a cycle.
  std::vector<Term> collection_items(const Term& head) const;

  // True when `head` is rdf:nil or carries an rdf:first link.
  bool looks_like_collection(const Term& head) const;

  // Objects of rdf:_1, rdf:_2, ... on `node`, ordered by numeric index; gaps
  // are skipped. A node without membership properties yields an empty list.
  std::vector<Term> container_items(const Term& node) const;

 private:
  void ensure_frozen() const;

  PrefixMap prefixes_;
  mutable std::vector<Triple> triples_;
  mutable bool frozen_ = false;
  mutable std::unordered_map<std::string, std::vector<std::uint32_t>> by_s_;
  mutable std::unordered_map<std::string, std::vector<std::uint32_t>> by_po_;
  mutable std::unordered_map<std::string, std::vector<std::uint32_t>> by_sp_;
};

}  // namespace graphsite::rdf
