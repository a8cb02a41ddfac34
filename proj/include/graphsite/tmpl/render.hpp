#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "graphsite/rdf/graph.hpp"
#include "graphsite/tmpl/ast.hpp"
#include "graphsite/tmpl/value.hpp"

namespace graphsite::tmpl {

class RenderContext;

using FilterFn =
    std::function<Value(const Value& input, const std::vector<Value>& args, RenderContext& ctx)>;

class FilterRegistry {
 public:
  void add(std::string name, FilterFn fn) { fns_[std::move(name)] = std::move(fn); }

  const FilterFn* find(const std::string& name) const {
    auto it = fns_.find(name);
    return it == fns_.end() ? nullptr : &it->second;
  }

 private:
  std::map<std::string, FilterFn> fns_;
};

// date, join, first, last, size, append, prepend, default, downcase, upcase
// plus the graph filters (rdf_get, rdf_property, rdf_inverse_property,
// rdf_collection, rdf_container, sparql_query).
FilterRegistry make_default_registry();

// Per-page rendering state. Distinct pages own distinct contexts, so parallel
// renders never share one.
class RenderContext {
 public:
  const rdf::Graph* graph = nullptr;
  const rdf::PrefixMap* prefixes = nullptr;
  const FilterRegistry* filters = nullptr;
  const std::map<std::string, Template>* includes = nullptr;

  ValueMap page;                       // page.rdf, page.subResources, page.url, ...
  std::optional<std::string> content;  // fills {{ content }}
  std::string template_name;           // diagnostic label for errors
  std::vector<std::string>* warnings = nullptr;

  RenderContext() : scopes_(1) {}

  Value lookup(const VarPath& path) const;
  void assign(const std::string& name, Value v);  // writes the outermost scope
  void push_scope() { scopes_.emplace_back(); }
  void pop_scope() { scopes_.pop_back(); }
  ValueMap& current_scope() { return scopes_.back(); }

  void warn(std::string message) const;

 private:
  std::vector<ValueMap> scopes_;
};

// Renders nodes in order. Undefined variables render as empty text; a filter
// error aborts with RenderError carrying template name and line.
std::string render(const NodeList& nodes, RenderContext& ctx);

// Threads `rendered` through the layout chain named by front matter: each
// layout sees the previous result as {{ content }}. Detects cycles and
// missing layouts.
std::string resolve_layout_chain(const FrontMatter& front,
                                 const std::map<std::string, Template>& layouts,
                                 std::string rendered, RenderContext& ctx);

// Shared by the graph filters: resolves a Resource, "<iri>", "pfx:name", or
// bare absolute-IRI string to a graph node.
rdf::Term resolve_node(const Value& value, const RenderContext& ctx);

}  // namespace graphsite::tmpl
