#include "graphsite/mapping/select.hpp"

#include <algorithm>
#include <deque>
#include <mutex>

namespace graphsite::mapping {

ClassGraph build_class_graph(const rdf::Graph& graph,
                             const std::vector<std::string>& extra_classes) {
  ClassGraph cg;
  for (const rdf::Triple& t :
       graph.match(std::nullopt, rdf::vocab::kRdfsSubClassOf, std::nullopt)) {
    if (rdf::is_iri(t.subject) && rdf::is_iri(t.object)) {
      cg.add_edge(rdf::as_iri(t.subject).value, rdf::as_iri(t.object).value);
    }
  }
  for (const rdf::Triple& t : graph.match(std::nullopt, rdf::vocab::kRdfType, std::nullopt)) {
    if (rdf::is_iri(t.object)) cg.add_node(rdf::as_iri(t.object).value);
  }
  for (const std::string& c : extra_classes) cg.add_node(c);
  return cg;
}

namespace {

bool path_exists(const std::string& from, const std::string& to, const ClassGraph& cg) {
  if (from == to) return true;
  std::set<std::string> visited{from};
  std::deque<std::string> queue{from};
  while (!queue.empty()) {
    std::string current = queue.front();
    queue.pop_front();
    for (const std::string& next : cg.supers(current)) {
      if (next == to) return true;
      if (visited.insert(next).second) queue.push_back(next);
    }
  }
  return false;
}

}  // namespace

bool is_more_specific(const std::string& a, const std::string& b, const ClassGraph& cg) {
  if (a == b) return false;
  return path_exists(a, b, cg) && !path_exists(b, a, cg);
}

std::string SelectionCache::canonical_key(const std::vector<std::string>& types) {
  std::vector<std::string> sorted = types;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  std::string key;
  for (const std::string& t : sorted) {
    key += t;
    key += '\n';
  }
  return key;
}

std::optional<SelectionCache::Entry> SelectionCache::lookup(const std::string& key) const {
  std::shared_lock lock(mutex_);
  auto it = entries_.find(key);
  if (it == entries_.end()) {
    misses_.fetch_add(1, std::memory_order_relaxed);
    return std::nullopt;
  }
  hits_.fetch_add(1, std::memory_order_relaxed);
  return it->second;
}

void SelectionCache::insert(const std::string& key, Entry entry) {
  std::unique_lock lock(mutex_);
  entries_[key] = std::move(entry);  // racing writers compute identical values
}

namespace {

// Class-stage selection: multi-source BFS up the hierarchy from the type set.
SelectionCache::Entry class_stage(const std::vector<std::string>& types, const ClassGraph& cg,
                                  const MappingConfig& config, std::uint64_t& steps) {
  SelectionCache::Entry entry;

  std::vector<std::string> level = types;
  std::sort(level.begin(), level.end());
  level.erase(std::unique(level.begin(), level.end()), level.end());

  std::set<std::string> visited(level.begin(), level.end());

  while (!level.empty()) {
    steps += level.size();

    std::vector<std::string> candidates;
    for (const std::string& c : level) {
      if (config.class_map.count(c)) candidates.push_back(c);
    }

    if (!candidates.empty()) {
      std::set<std::string> distinct_templates;
      for (const std::string& c : candidates) {
        distinct_templates.insert(config.class_map.at(c));
      }
      if (distinct_templates.size() == 1) {
        entry.template_name = *distinct_templates.begin();
        return entry;
      }

      // Same shortest distance but different templates: keep only candidates
      // no other candidate is more specific than.
      std::vector<std::string> maximal;
      for (const std::string& c : candidates) {
        bool dominated = false;
        for (const std::string& d : candidates) {
          if (d != c && is_more_specific(d, c, cg)) {
            dominated = true;
            break;
          }
        }
        if (!dominated) maximal.push_back(c);
      }

      std::set<std::string> maximal_templates;
      for (const std::string& c : maximal) maximal_templates.insert(config.class_map.at(c));
      if (maximal_templates.size() == 1) {
        entry.template_name = *maximal_templates.begin();
        return entry;
      }

      const std::string& chosen = *std::min_element(maximal.begin(), maximal.end());
      std::string warning = "ambiguous template mapping for class set {";
      for (size_t i = 0; i < maximal.size(); ++i) {
        if (i) warning += ", ";
        warning += maximal[i];
      }
      warning += "}; selected template '" + config.class_map.at(chosen) + "' from <" + chosen +
                 ">";
      entry.warnings.push_back(std::move(warning));
      entry.template_name = config.class_map.at(chosen);
      return entry;
    }

    std::set<std::string> next;
    for (const std::string& c : level) {
      for (const std::string& super : cg.supers(c)) {
        if (!visited.count(super)) next.insert(super);
      }
    }
    for (const std::string& n : next) visited.insert(n);
    level.assign(next.begin(), next.end());
  }

  return entry;  // no candidate reachable
}

}  // namespace

SelectionResult select_template(const std::string& resource_iri,
                                const std::vector<std::string>& types, const ClassGraph& cg,
                                const MappingConfig& config, SelectionCache* cache) {
  SelectionResult result;

  auto instance = config.instance_map.find(resource_iri);
  if (instance != config.instance_map.end()) {
    result.template_name = instance->second;
    result.source = SelectionResult::Source::Instance;
    return result;
  }

  SelectionCache::Entry entry;
  if (cache) {
    const std::string key = SelectionCache::canonical_key(types);
    if (auto cached = cache->lookup(key)) {
      entry = *cached;
    } else {
      entry = class_stage(types, cg, config, result.steps);
      cache->insert(key, entry);
    }
  } else {
    entry = class_stage(types, cg, config, result.steps);
  }

  result.warnings = entry.warnings;
  if (entry.template_name) {
    result.template_name = entry.template_name;
    result.source = SelectionResult::Source::Class;
    return result;
  }

  if (config.default_template) {
    result.template_name = config.default_template;
    result.source = SelectionResult::Source::Default;
    return result;
  }

  result.source = SelectionResult::Source::None;
  return result;
}

}  // namespace graphsite::mapping
