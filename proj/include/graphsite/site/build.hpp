#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "graphsite/rdf/graph.hpp"
#include "graphsite/site/config.hpp"
#include "graphsite/tmpl/ast.hpp"

namespace graphsite::site {

// One output page. Resource pages carry the RDF resource they present;
// merged pages additionally carry the colliding static page's body.
struct Page {
  enum class Kind { Static, Resource, Merged };

  std::string output_path;  // relative to dest_dir
  Kind kind = Kind::Static;
  std::optional<std::string> resource;     // IRI (Resource / Merged)
  std::vector<std::string> sub_resources;  // fragment IRIs folded into this page
  std::optional<std::string> layout;       // first layout of the chain
  tmpl::FrontMatter front;                 // static front matter
  tmpl::NodeList body_nodes;               // static page body (pre-parsed)
};

struct BuildReport {
  std::size_t pages_written = 0;
  std::size_t resources_selected = 0;
  std::vector<std::string> warnings;  // canonicalized (sorted)
  std::uint64_t cache_hits = 0;
  std::uint64_t cache_misses = 0;
  double duration_seconds = 0.0;
};

struct BuildOptions {
  bool use_cache = true;
  int jobs = 0;  // 0 = all hardware threads, 1 = serial reference renderer
  bool verbose = false;
};

// Restriction query results: ?resourceUri bindings that are IRIs,
// deduplicated and sorted. Non-IRI bindings are dropped with a warning.
std::vector<std::string> collect_resources(const rdf::Graph& graph, const SiteConfig& config,
                                           std::vector<std::string>* warnings);

// Collision of a static page and a resource page on one output path: the
// static body becomes the {{ content }} of the resource's template; a layout
// declared by the static page overrides the resource's template.
Page merge_page_collision(const Page& static_page, Page resource_page);

// Everything the per-page renderer needs; shared, immutable during rendering.
struct RenderEnv {
  const rdf::Graph* graph = nullptr;
  const rdf::PrefixMap* prefixes = nullptr;
  const std::map<std::string, tmpl::Template>* layouts = nullptr;
  const std::map<std::string, tmpl::Template>* includes = nullptr;
  std::string baseurl = "/";
};

struct RenderedPage {
  std::string path;
  std::string html;
  std::vector<std::string> warnings;
};

RenderedPage render_page(const Page& page, const RenderEnv& env);

// Reference implementation: one page after another.
std::vector<RenderedPage> render_pages_serial(const std::vector<Page>& pages,
                                              const RenderEnv& env);

// OpenMP kernel over the page list. Output is byte-identical to the serial
// reference; jobs <= 0 uses all hardware threads.
std::vector<RenderedPage> render_pages_parallel(const std::vector<Page>& pages,
                                                const RenderEnv& env, int jobs);

// Full pipeline: load graph, select resources, map templates and paths, fold
// fragments, merge static collisions, render, write below dest_dir.
BuildReport build(const SiteConfig& config, const BuildOptions& options = {});

}  // namespace graphsite::site
