#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <shared_mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "graphsite/rdf/graph.hpp"

namespace graphsite::mapping {

struct MappingConfig {
  std::map<std::string, std::string> instance_map;  // resource IRI -> template
  std::map<std::string, std::string> class_map;     // class IRI -> template
  std::optional<std::string> default_template;
};

// Directed edges from a class to its direct superclasses. Cycles may occur in
// the data; traversal is guarded by visited sets.
class ClassGraph {
 public:
  void add_node(const std::string& class_iri) { nodes_.insert(class_iri); }

  void add_edge(const std::string& sub, const std::string& super) {
    nodes_.insert(sub);
    nodes_.insert(super);
    auto& targets = super_edges_[sub];
    if (std::find(targets.begin(), targets.end(), super) == targets.end()) {
      targets.push_back(super);
    }
  }

  const std::set<std::string>& nodes() const { return nodes_; }

  std::vector<std::string> supers(const std::string& class_iri) const {
    auto it = super_edges_.find(class_iri);
    if (it == super_edges_.end()) return {};
    std::vector<std::string> out = it->second;
    std::sort(out.begin(), out.end());
    return out;
  }

  std::size_t node_count() const { return nodes_.size(); }

 private:
  std::set<std::string> nodes_;
  std::map<std::string, std::vector<std::string>> super_edges_;
};

// Nodes: every subject/object of rdfs:subClassOf, every class used in
// rdf:type, and every class named in `extra_classes` (the mapping config).
// Edges mirror explicit rdfs:subClassOf triples only.
ClassGraph build_class_graph(const rdf::Graph& graph,
                             const std::vector<std::string>& extra_classes = {});

// True iff a directed rdfs:subClassOf path a -> b exists and none exists
// b -> a. a == b yields false.
bool is_more_specific(const std::string& a, const std::string& b, const ClassGraph& cg);

// Memo keyed by the sorted, deduplicated class set. Safe for concurrent
// lookups and inserts; racing writers store identical entries.
class SelectionCache {
 public:
  struct Entry {
    std::optional<std::string> template_name;  // class-stage outcome
    std::vector<std::string> warnings;
  };

  static std::string canonical_key(const std::vector<std::string>& types);

  std::optional<Entry> lookup(const std::string& key) const;
  void insert(const std::string& key, Entry entry);

  std::uint64_t hits() const { return hits_.load(); }
  std::uint64_t misses() const { return misses_.load(); }

 private:
  mutable std::shared_mutex mutex_;
  std::unordered_map<std::string, Entry> entries_;
  mutable std::atomic<std::uint64_t> hits_{0};
  mutable std::atomic<std::uint64_t> misses_{0};
};

struct SelectionResult {
  enum class Source { Instance, Class, Default, None };

  std::optional<std::string> template_name;
  Source source = Source::None;
  std::vector<std::string> warnings;
  std::uint64_t steps = 0;  // BFS node expansions, bounded by the node count
};

// Precedence: instance mapping, class mapping via breadth-first search up the
// hierarchy, default template. Equal-distance candidates with different
// templates are narrowed to the most specific classes; a remaining tie warns
// and picks the lexicographically smallest candidate IRI. `cache` may be null
// (cache disabled).
SelectionResult select_template(const std::string& resource_iri,
                                const std::vector<std::string>& types, const ClassGraph& cg,
                                const MappingConfig& config, SelectionCache* cache);

}  // namespace graphsite::mapping
