#include "graphsite/rdf/graph.hpp"

#include <algorithm>
#include <charconv>
#include <set>
#include <string_view>

#include "graphsite/errors.hpp"

namespace graphsite::rdf {

Iri PrefixMap::expand(const std::string& name) const {
  if (name.size() >= 2 && name.front() == '<' && name.back() == '>') {
    return Iri{name.substr(1, name.size() - 2)};
  }
  auto colon = name.find(':');
  if (colon == std::string::npos) {
    throw Error("not a prefixed name or bracketed IRI: '" + name + "'");
  }
  std::string label = name.substr(0, colon);
  const Iri* ns = find(label);
  if (!ns) {
    throw UndefinedPrefixError("undefined prefix '" + label + "' in '" + name + "'");
  }
  return Iri{ns->value + name.substr(colon + 1)};
}

void PrefixMap::merge_overriding(const PrefixMap& stronger) {
  for (const auto& [label, ns] : stronger.entries_) {
    entries_[label] = ns;
  }
}

Iri expand_prefixed_name(const PrefixMap& prefixes, const std::string& name) {
  return prefixes.expand(name);
}

void Graph::add(Triple t) {
  triples_.push_back(std::move(t));
  frozen_ = false;
}

void Graph::ensure_frozen() const {
  if (frozen_) return;

  // Decorate-sort by serialized (s, p, o) so the canonical order is cheap to
  // compute even for large graphs.
  struct Key {
    std::string s, p, o;
    std::uint32_t idx;
  };
  std::vector<Key> keys;
  keys.reserve(triples_.size());
  for (std::uint32_t i = 0; i < triples_.size(); ++i) {
    keys.push_back(Key{to_ntriples(triples_[i].subject), triples_[i].predicate.value,
                       to_ntriples(triples_[i].object), i});
  }
  std::sort(keys.begin(), keys.end(), [](const Key& a, const Key& b) {
    if (a.s != b.s) return a.s < b.s;
    if (a.p != b.p) return a.p < b.p;
    return a.o < b.o;
  });

  std::vector<Triple> sorted;
  sorted.reserve(keys.size());
  by_s_.clear();
  by_po_.clear();
  by_sp_.clear();
  const Key* prev = nullptr;
  for (const Key& k : keys) {
    if (prev && prev->s == k.s && prev->p == k.p && prev->o == k.o) continue;  // dedup
    std::uint32_t id = static_cast<std::uint32_t>(sorted.size());
    sorted.push_back(triples_[k.idx]);
    by_s_[k.s].push_back(id);
    by_po_[k.p + " " + k.o].push_back(id);
    by_sp_[k.s + " " + k.p].push_back(id);
    prev = &k;
  }
  triples_ = std::move(sorted);
  frozen_ = true;
}

std::size_t Graph::size() const {
  ensure_frozen();
  return triples_.size();
}

const std::vector<Triple>& Graph::triples() const {
  ensure_frozen();
  return triples_;
}

std::vector<Triple> Graph::match(const std::optional<Term>& s, const std::optional<Iri>& p,
                                 const std::optional<Term>& o) const {
  ensure_frozen();

  auto matches = [&](const Triple& t) {
    if (s && !(t.subject == *s)) return false;
    if (p && !(t.predicate == *p)) return false;
    if (o && !(t.object == *o)) return false;
    return true;
  };

  const std::vector<std::uint32_t>* ids = nullptr;
  static const std::vector<std::uint32_t> kEmpty;
  if (s && p) {
    auto it = by_sp_.find(to_ntriples(*s) + " " + p->value);
    ids = it == by_sp_.end() ? &kEmpty : &it->second;
  } else if (p && o) {
    auto it = by_po_.find(p->value + " " + to_ntriples(*o));
    ids = it == by_po_.end() ? &kEmpty : &it->second;
  } else if (s) {
    auto it = by_s_.find(to_ntriples(*s));
    ids = it == by_s_.end() ? &kEmpty : &it->second;
  }

  std::vector<Triple> out;
  if (ids) {
    for (std::uint32_t id : *ids) {
      if (matches(triples_[id])) out.push_back(triples_[id]);
    }
  } else {
    for (const Triple& t : triples_) {
      if (matches(t)) out.push_back(t);
    }
  }
  return out;
}

std::vector<Term> Graph::objects(const Term& subject, const Iri& predicate) const {
  std::vector<Term> out;
  for (const Triple& t : match(subject, predicate, std::nullopt)) {
    if (out.empty() || !(out.back() == t.object)) out.push_back(t.object);
  }
  return out;  // index order is already sorted by object serialization
}

std::vector<Term> Graph::subjects(const Iri& predicate, const Term& object) const {
  std::vector<Term> out;
  for (const Triple& t : match(std::nullopt, predicate, object)) {
    if (out.empty() || !(out.back() == t.subject)) out.push_back(t.subject);
  }
  return out;
}

bool Graph::looks_like_collection(const Term& head) const {
  if (is_iri(head) && as_iri(head) == vocab::kRdfNil) return true;
  return !objects(head, vocab::kRdfFirst).empty();
}

std::vector<Term> Graph::collection_items(const Term& head) const {
  std::vector<Term> out;
  std::set<std::string> seen;
  Term node = head;
  while (true) {
    if (is_iri(node) && as_iri(node) == vocab::kRdfNil) return out;
    const std::string key = to_ntriples(node);
    if (!seen.insert(key).second) {
      throw Error("collection chain contains a cycle at " + key);
    }
    std::vector<Term> firsts = objects(node, vocab::kRdfFirst);
    if (firsts.empty()) {
      throw Error("malformed collection chain: missing rdf:first at " + key);
    }
    if (firsts.size() > 1) {
      throw Error("malformed collection chain: multiple rdf:first at " + key);
    }
    out.push_back(firsts.front());
    std::vector<Term> rests = objects(node, vocab::kRdfRest);
    if (rests.empty()) {
      throw Error("malformed collection chain: missing rdf:rest at " + key);
    }
    if (rests.size() > 1) {
      throw Error("malformed collection chain: multiple rdf:rest at " + key);
    }
    node = rests.front();
  }
}

std::vector<Term> Graph::container_items(const Term& node) const {
  const std::string membership_prefix = std::string(vocab::kRdfNs) + "_";
  std::vector<std::pair<long long, Term>> indexed;
  for (const Triple& t : match(node, std::nullopt, std::nullopt)) {
    const std::string& p = t.predicate.value;
    if (p.size() <= membership_prefix.size() || p.compare(0, membership_prefix.size(), membership_prefix) != 0) {
      continue;
    }
    std::string_view digits(p.data() + membership_prefix.size(),
                            p.size() - membership_prefix.size());
    long long n = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), n);
    if (ec != std::errc() || ptr != digits.data() + digits.size() || n < 1) continue;
    indexed.emplace_back(n, t.object);
  }
  std::stable_sort(indexed.begin(), indexed.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<Term> out;
  out.reserve(indexed.size());
  for (auto& [n, term] : indexed) out.push_back(std::move(term));
  return out;
}

}  // namespace graphsite::rdf
