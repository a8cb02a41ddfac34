#include "graphsite/site/build.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "graphsite/errors.hpp"
#include "graphsite/mapping/select.hpp"
#include "graphsite/rdf/parse.hpp"
#include "graphsite/site/paths.hpp"
#include "graphsite/sparql/query.hpp"
#include "graphsite/tmpl/parse.hpp"
#include "graphsite/tmpl/render.hpp"

namespace graphsite::site {

namespace fs = std::filesystem;

std::vector<std::string> collect_resources(const rdf::Graph& graph, const SiteConfig& config,
                                           std::vector<std::string>* warnings) {
  auto warn = [&](std::string message) {
    if (warnings) warnings->push_back(std::move(message));
  };

  if (config.restriction.empty()) {
    warn("no restriction query configured; no resources selected");
    return {};
  }

  sparql::SelectQuery query = sparql::parse_select(config.restriction);
  bool projects_resource_uri = query.star;
  for (const sparql::Variable& v : query.projection) {
    if (v.name == "resourceUri") projects_resource_uri = true;
  }
  if (query.star) {
    auto vars = sparql::pattern_variables(query);
    projects_resource_uri =
        std::find(vars.begin(), vars.end(), "resourceUri") != vars.end();
  }
  if (!projects_resource_uri) {
    throw BuildError("restriction query does not project ?resourceUri");
  }

  std::vector<std::string> iris;
  for (const sparql::SolutionMapping& row : sparql::evaluate(graph, query, {})) {
    auto it = row.find("resourceUri");
    if (it == row.end()) continue;
    if (!rdf::is_iri(it->second)) {
      warn("restriction selected a non-IRI value " + rdf::to_ntriples(it->second) +
           "; dropped");
      continue;
    }
    iris.push_back(rdf::as_iri(it->second).value);
  }
  std::sort(iris.begin(), iris.end());
  iris.erase(std::unique(iris.begin(), iris.end()), iris.end());
  return iris;
}

Page merge_page_collision(const Page& static_page, Page resource_page) {
  Page merged = std::move(resource_page);
  merged.kind = Page::Kind::Merged;
  merged.front = static_page.front;
  merged.body_nodes = static_page.body_nodes;
  if (static_page.front.layout) {
    merged.layout = static_page.front.layout;  // static layout wins
  }
  return merged;
}

namespace {

tmpl::ValueMap page_map(const Page& page, const RenderEnv& env) {
  tmpl::ValueMap m;
  m["url"] = tmpl::Value(env.baseurl + page.output_path);
  for (const auto& [key, value] : page.front.extra) m[key] = value;
  if (page.resource) {
    m["rdf"] = tmpl::Value(tmpl::Resource{rdf::Iri{*page.resource}});
    tmpl::Array subs;
    for (const std::string& iri : page.sub_resources) {
      subs.push_back(tmpl::Value(tmpl::Resource{rdf::Iri{iri}}));
    }
    m["subResources"] = tmpl::Value(std::move(subs));
  }
  return m;
}

std::string page_label(const Page& page) {
  if (page.resource) return *page.resource;
  return page.output_path;
}

}  // namespace

RenderedPage render_page(const Page& page, const RenderEnv& env) {
  RenderedPage out;
  out.path = page.output_path;

  static const tmpl::FilterRegistry kRegistry = tmpl::make_default_registry();

  tmpl::RenderContext ctx;
  ctx.graph = env.graph;
  ctx.prefixes = env.prefixes;
  ctx.filters = &kRegistry;
  ctx.includes = env.includes;
  ctx.warnings = &out.warnings;
  ctx.page = page_map(page, env);
  ctx.template_name = page_label(page);

  if (page.kind == Page::Kind::Static) {
    std::string rendered = tmpl::render(page.body_nodes, ctx);
    out.html = tmpl::resolve_layout_chain(page.front, *env.layouts, std::move(rendered), ctx);
    return out;
  }

  // Resource and merged pages start their chain at the selected layout; the
  // merged static body renders first and becomes {{ content }}.
  std::string content;
  if (page.kind == Page::Kind::Merged) {
    content = tmpl::render(page.body_nodes, ctx);
  }
  tmpl::FrontMatter chain_start;
  chain_start.layout = page.layout;
  out.html = tmpl::resolve_layout_chain(chain_start, *env.layouts, std::move(content), ctx);
  return out;
}

std::vector<RenderedPage> render_pages_serial(const std::vector<Page>& pages,
                                              const RenderEnv& env) {
  std::vector<RenderedPage> out(pages.size());
  for (std::size_t i = 0; i < pages.size(); ++i) {
    out[i] = render_page(pages[i], env);
  }
  return out;
}

std::vector<RenderedPage> render_pages_parallel(const std::vector<Page>& pages,
                                                const RenderEnv& env, int jobs) {
  std::vector<RenderedPage> out(pages.size());
  std::vector<std::string> errors(pages.size());

#ifdef _OPENMP
  const int threads = jobs > 0 ? jobs : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(threads)
#else
  (void)jobs;
#endif
  for (long i = 0; i < static_cast<long>(pages.size()); ++i) {
    try {
      out[i] = render_page(pages[i], env);
    } catch (const std::exception& e) {
      errors[i] = e.what();
    }
  }

  for (const std::string& error : errors) {
    if (!error.empty()) throw BuildError(error);  // first page in order wins
  }
  return out;
}

namespace {

std::map<std::string, tmpl::Template> load_templates(const fs::path& dir, bool keep_extension) {
  std::map<std::string, tmpl::Template> out;
  if (!fs::is_directory(dir)) return out;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file() || entry.path().extension() != ".html") continue;
    std::ifstream in(entry.path(), std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    std::string name =
        keep_extension ? entry.path().filename().string() : entry.path().stem().string();
    try {
      tmpl::Template t = tmpl::parse_template(buf.str());
      t.name = name;
      out[name] = std::move(t);
    } catch (const ParseError& e) {
      throw BuildError("template " + entry.path().string() + ": " + e.what());
    }
  }
  return out;
}

struct StaticPageFile {
  std::string rel_path;
  fs::path full_path;
};

std::vector<StaticPageFile> find_static_pages(const SiteConfig& config) {
  std::vector<StaticPageFile> out;
  if (!fs::is_directory(config.source_dir)) return out;
  const fs::path dest_abs = fs::weakly_canonical(config.dest_dir);

  for (auto it = fs::recursive_directory_iterator(config.source_dir);
       it != fs::recursive_directory_iterator(); ++it) {
    const fs::path p = it->path();
    if (it->is_directory()) {
      const std::string name = p.filename().string();
      if ((!name.empty() && (name[0] == '_' || name[0] == '.')) ||
          fs::weakly_canonical(p) == dest_abs) {
        it.disable_recursion_pending();
      }
      continue;
    }
    if (!it->is_regular_file() || p.extension() != ".html") continue;
    out.push_back(StaticPageFile{fs::relative(p, config.source_dir).generic_string(), p});
  }
  std::sort(out.begin(), out.end(),
            [](const StaticPageFile& a, const StaticPageFile& b) {
              return a.rel_path < b.rel_path;
            });
  return out;
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw BuildError("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

BuildReport build(const SiteConfig& config, const BuildOptions& options) {
  const auto started = std::chrono::steady_clock::now();
  BuildReport report;
  std::vector<std::string> warnings;

  // Data graph; configuration prefixes override the document's.
  fs::path data = config.data_path;
  if (data.is_relative()) data = config.source_dir / data;
  if (!fs::exists(data)) throw BuildError("data file does not exist: " + data.string());
  rdf::Graph graph = rdf::load_graph_file(data);
  for (const auto& [label, ns] : config.prefixes) {
    graph.prefixes().set(label, rdf::Iri{ns});
  }
  graph.triples();  // freeze before any parallel phase

  std::vector<std::string> resources = collect_resources(graph, config, &warnings);
  report.resources_selected = resources.size();
  if (resources.empty()) {
    warnings.push_back("restriction selected no resources");
  }

  const auto layouts = load_templates(config.source_dir / "_layouts", /*keep_extension=*/false);
  const auto includes = load_templates(config.source_dir / "_includes", /*keep_extension=*/true);

  std::vector<std::string> class_names;
  for (const auto& [cls, tpl] : config.class_template_mappings) class_names.push_back(cls);
  const mapping::ClassGraph class_graph = mapping::build_class_graph(graph, class_names);

  mapping::MappingConfig mapping_config;
  mapping_config.instance_map = config.instance_template_mappings;
  mapping_config.class_map = config.class_template_mappings;
  mapping_config.default_template = config.default_template;

  mapping::SelectionCache cache;
  mapping::SelectionCache* cache_ptr = options.use_cache ? &cache : nullptr;

  // Resource pages; fragments fold into their parents below.
  std::vector<Page> resource_pages;
  std::vector<std::pair<std::string, std::string>> fragments;  // parent path, fragment IRI
  for (const std::string& iri : resources) {
    PathOutcome outcome = map_iri_to_path(iri, config);
    if (outcome.kind == PathOutcome::Kind::FragmentOf) {
      fragments.emplace_back(outcome.path, iri);
      continue;
    }

    std::vector<std::string> types;
    for (const rdf::Term& t : graph.objects(rdf::Iri{iri}, rdf::vocab::kRdfType)) {
      if (rdf::is_iri(t)) types.push_back(rdf::as_iri(t).value);
    }
    mapping::SelectionResult selection =
        mapping::select_template(iri, types, class_graph, mapping_config, cache_ptr);
    for (const std::string& w : selection.warnings) {
      warnings.push_back("resource <" + iri + ">: " + w);
    }
    if (selection.source == mapping::SelectionResult::Source::None) {
      warnings.push_back("resource <" + iri + ">: no template mapping applies; page skipped");
      continue;
    }
    if (!layouts.count(*selection.template_name)) {
      throw BuildError("resource <" + iri + "> selected template '" +
                       *selection.template_name + "' but _layouts/" +
                       *selection.template_name + ".html does not exist");
    }

    Page page;
    page.output_path = outcome.path;
    page.kind = Page::Kind::Resource;
    page.resource = iri;
    page.layout = selection.template_name;
    resource_pages.push_back(std::move(page));
  }

  // Distinct defragmented IRIs normally land on distinct paths; the query
  // string rule can still collide two. Keep the first in sorted IRI order.
  {
    std::map<std::string, std::size_t> by_path;
    std::vector<Page> unique_pages;
    for (Page& page : resource_pages) {
      auto [it, inserted] = by_path.emplace(page.output_path, unique_pages.size());
      if (!inserted) {
        warnings.push_back("resources <" + *unique_pages[it->second].resource + "> and <" +
                           *page.resource + "> map to the same path '" + page.output_path +
                           "'; keeping the first");
        continue;
      }
      unique_pages.push_back(std::move(page));
    }
    resource_pages = std::move(unique_pages);
  }

  // Fold fragment IRIs into page.subResources of their parents.
  {
    std::map<std::string, Page*> by_path;
    for (Page& page : resource_pages) by_path[page.output_path] = &page;
    for (const auto& [parent_path, iri] : fragments) {
      auto it = by_path.find(parent_path);
      if (it == by_path.end()) {
        warnings.push_back("fragment resource <" + iri + "> has no parent page at '" +
                           parent_path + "'; skipped");
        continue;
      }
      it->second->sub_resources.push_back(iri);
    }
    for (Page& page : resource_pages) {
      std::sort(page.sub_resources.begin(), page.sub_resources.end());
    }
  }

  // Static pages, merged into resource pages on path collision.
  std::vector<Page> pages;
  {
    std::map<std::string, std::size_t> resource_by_path;
    for (std::size_t i = 0; i < resource_pages.size(); ++i) {
      resource_by_path[resource_pages[i].output_path] = i;
    }
    std::vector<bool> merged(resource_pages.size(), false);

    for (const StaticPageFile& file : find_static_pages(config)) {
      tmpl::Template parsed;
      try {
        parsed = tmpl::parse_template(read_file(file.full_path));
      } catch (const ParseError& e) {
        throw BuildError("page " + file.full_path.string() + ": " + e.what());
      }
      if (parsed.front.layout && !layouts.count(*parsed.front.layout)) {
        throw BuildError("page " + file.rel_path + " uses missing layout '" +
                         *parsed.front.layout + "'");
      }
      Page page;
      page.output_path = file.rel_path;
      page.kind = Page::Kind::Static;
      page.front = std::move(parsed.front);
      page.layout = page.front.layout;
      page.body_nodes = std::move(parsed.nodes);

      auto it = resource_by_path.find(page.output_path);
      if (it != resource_by_path.end()) {
        pages.push_back(merge_page_collision(page, std::move(resource_pages[it->second])));
        merged[it->second] = true;
      } else {
        pages.push_back(std::move(page));
      }
    }
    for (std::size_t i = 0; i < resource_pages.size(); ++i) {
      if (!merged[i]) pages.push_back(std::move(resource_pages[i]));
    }
  }
  std::sort(pages.begin(), pages.end(),
            [](const Page& a, const Page& b) { return a.output_path < b.output_path; });

  RenderEnv env;
  env.graph = &graph;
  env.prefixes = &graph.prefixes();
  env.layouts = &layouts;
  env.includes = &includes;
  env.baseurl = config.baseurl;

  std::vector<RenderedPage> rendered = options.jobs == 1
                                           ? render_pages_serial(pages, env)
                                           : render_pages_parallel(pages, env, options.jobs);

  for (const RenderedPage& page : rendered) {
    const fs::path target = config.dest_dir / page.path;
    std::error_code ec;
    fs::create_directories(target.parent_path(), ec);
    std::ofstream out(target, std::ios::binary);
    if (!out) throw BuildError("cannot write " + target.string());
    out << page.html;
    if (!out) throw BuildError("write failure on " + target.string());
    ++report.pages_written;
    for (const std::string& w : page.warnings) {
      warnings.push_back("page " + page.path + ": " + w);
    }
  }

  std::sort(warnings.begin(), warnings.end());
  report.warnings = std::move(warnings);
  report.cache_hits = cache.hits();
  report.cache_misses = cache.misses();
  report.duration_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return report;
}

}  // namespace graphsite::site
