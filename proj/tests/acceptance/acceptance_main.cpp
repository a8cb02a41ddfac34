// Acceptance suite: runs every shipped criterion at its stated tolerance and
// prints one PASS/FAIL line per criterion. Exit code 0 iff all pass.

#include <unistd.h>

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <sstream>

#include "graphsite/errors.hpp"
#include "graphsite/mapping/select.hpp"
#include "graphsite/rdf/parse.hpp"
#include "graphsite/site/build.hpp"
#include "graphsite/site/config.hpp"
#include "graphsite/site/paths.hpp"
#include "graphsite/sparql/query.hpp"
#include "graphsite/tmpl/parse.hpp"
#include "graphsite/tmpl/render.hpp"
#include "support/oracles.hpp"

namespace fs = std::filesystem;
using namespace graphsite;
using Clock = std::chrono::steady_clock;

namespace {

struct Criterion {
  bool pass = true;
  std::ostringstream detail;

  void require(bool condition, const std::string& message) {
    if (!condition && pass) {
      pass = false;
      detail << message;
    }
  }
};

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw Error("cannot read " + p.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

fs::path data_dir() { return fs::path(GRAPHSITE_TEST_DATA_DIR); }

fs::path fresh_temp_dir(const std::string& tag) {
  static std::atomic<int> counter{0};
  fs::path p = fs::temp_directory_path() /
               ("graphsite_accept_" + std::to_string(::getpid()) + "_" + tag + "_" +
                std::to_string(counter.fetch_add(1)));
  fs::create_directories(p);
  return p;
}

std::map<std::string, std::string> snapshot_tree(const fs::path& root) {
  std::map<std::string, std::string> files;
  for (const auto& entry : fs::recursive_directory_iterator(root)) {
    if (entry.is_regular_file()) {
      files[fs::relative(entry.path(), root).generic_string()] = read_file(entry.path());
    }
  }
  return files;
}

// ---- criterion 1: template-selection oracle suite ---------------------------

Criterion criterion_template_selection() {
  Criterion c;
  const auto start = Clock::now();

  std::mt19937 rng(987654321);
  static const char* kTemplates[] = {"t1", "t2", "t3", "t4"};
  int agreements = 0;
  const int kCases = 1000;

  for (int round = 0; round < kCases; ++round) {
    const bool cycles = rng() % 2 == 0;
    oracles::RandomHierarchy h = oracles::random_hierarchy(rng, 20, 40, cycles);

    mapping::MappingConfig mc;
    for (const std::string& cls : h.classes) {
      if (rng() % 3 == 0) mc.class_map[cls] = kTemplates[rng() % 4];
    }
    if (rng() % 2) mc.default_template = "fallback";
    const std::string resource =
        "http://t.example/r" + std::to_string(rng() % 5);
    if (rng() % 4 == 0) mc.instance_map[resource] = "pinned";

    std::vector<std::string> types;
    const size_t n = rng() % 5;
    for (size_t i = 0; i < n && !h.classes.empty(); ++i) {
      types.push_back(h.classes[rng() % h.classes.size()]);
    }
    if (rng() % 6 == 0) types.push_back("http://t.example/Outsider");

    mapping::SelectionResult actual =
        mapping::select_template(resource, types, h.class_graph, mc, nullptr);
    oracles::SelectionOracleResult expected =
        oracles::select_template_brute_force(resource, types, h.class_graph, mc);

    const bool agree = actual.template_name == expected.template_name &&
                       (!actual.warnings.empty()) == expected.ambiguous;
    if (agree) {
      ++agreements;
    } else if (c.pass) {
      c.require(false, "disagreement at case " + std::to_string(round));
    }
  }

  const double elapsed = std::chrono::duration<double>(Clock::now() - start).count();
  c.require(agreements == kCases,
            std::to_string(agreements) + "/" + std::to_string(kCases) + " agreements");
  c.require(elapsed < 10.0, "took " + std::to_string(elapsed) + "s (limit 10s)");
  c.detail << agreements << "/" << kCases << " agree, " << elapsed << "s";
  return c;
}

// ---- criterion 2: SPARQL-subset oracle suite ---------------------------------

Criterion criterion_sparql_oracle() {
  Criterion c;
  std::mt19937 rng(13579);
  oracles::RandomGraphOptions options;
  options.min_triples = 15;
  options.max_triples = 30;

  const int kCases = 500;
  int agreements = 0;
  int nonempty = 0;
  for (int round = 0; round < kCases; ++round) {
    rdf::Graph g = oracles::random_graph(rng, options);
    sparql::SelectQuery q = oracles::random_query(rng, 3, 2);
    sparql::SolutionMapping seed;
    if (rng() % 4 == 0) {
      seed.emplace("resourceUri",
                   rdf::Term{rdf::Iri{"http://t.example/iri" + std::to_string(rng() % 8)}});
    }
    std::vector<sparql::SolutionMapping> actual = sparql::evaluate(g, q, seed);
    std::vector<sparql::SolutionMapping> expected = oracles::evaluate_brute_force(g, q, seed);
    if (actual == expected) {
      ++agreements;
    } else if (c.pass) {
      c.require(false, "mismatch at case " + std::to_string(round));
    }
    if (!actual.empty()) ++nonempty;
  }
  c.require(agreements == kCases,
            std::to_string(agreements) + "/" + std::to_string(kCases));
  c.detail << agreements << "/" << kCases << " agree (" << nonempty << " non-empty)";
  return c;
}

// ---- criterion 3: listing fidelity -------------------------------------------

Criterion criterion_listing_fidelity() {
  Criterion c;

  // configuration parses field for field
  std::vector<std::string> warnings;
  site::SiteConfig config = site::load_config(data_dir() / "listing_config.yml", &warnings);
  c.require(config.url == "http://pfarrerbuch.aksw.org", "url mismatch");
  c.require(config.baseurl == "/sachsen/", "baseurl mismatch");
  c.require(config.data_path == fs::path("sachsen.ttl"), "path mismatch");
  c.require(config.default_template == std::optional<std::string>("resource"),
            "default_template mismatch");
  c.require(config.class_template_mappings.size() == 3, "expected 3 class mappings");
  c.require(config.class_template_mappings.count("http://xmlns.com/foaf/0.1/Person") &&
                config.class_template_mappings.at("http://xmlns.com/foaf/0.1/Person") ==
                    "person",
            "foaf:Person mapping mismatch");
  c.require(config.class_template_mappings.count("http://purl.org/voc/hp/Place") &&
                config.class_template_mappings.at("http://purl.org/voc/hp/Place") == "place",
            "hp:Place mapping mismatch");
  c.require(config.class_template_mappings.count("http://purl.org/voc/hp/Position") &&
                config.class_template_mappings.at("http://purl.org/voc/hp/Position") ==
                    "position",
            "hp:Position mapping mismatch");
  c.require(config.instance_template_mappings.size() == 1, "expected 1 instance mapping");
  c.require(config.instance_template_mappings.count("http://pfarrerbuch.aksw.org/") &&
                config.instance_template_mappings.at("http://pfarrerbuch.aksw.org/") == "home",
            "home instance mapping mismatch");

  // the restriction string parses to one pattern plus one regex filter
  sparql::SelectQuery restriction = sparql::parse_select(config.restriction);
  c.require(restriction.projection.size() == 1 &&
                restriction.projection[0].name == "resourceUri",
            "restriction projection mismatch");
  c.require(restriction.patterns.size() == 1, "restriction pattern count mismatch");
  c.require(restriction.filters.size() == 1 &&
                restriction.filters[0].kind == sparql::FilterExpr::Kind::Regex,
            "restriction filter mismatch");

  // the template, over a one-resource graph with a two-element publication
  // container, renders byte-exactly to the golden file
  rdf::Graph graph = rdf::parse_turtle(R"(
@prefix rdf: <http://www.w3.org/1999/02/22-rdf-syntax-ns#> .
@prefix rdfs: <http://www.w3.org/2000/01/rdf-schema#> .
@prefix dc: <http://purl.org/dc/elements/1.1/> .
@prefix dct: <http://purl.org/dc/terms/> .
@prefix xsd: <http://www.w3.org/2001/XMLSchema#> .
@prefix ex: <http://ex.org/> .

ex:report rdfs:label "X"@en , "Xde"@de ;
          dct:created "2019-03-08"^^xsd:date .
ex:publicationlist rdf:_1 ex:pub1 ; rdf:_2 ex:pub2 .
ex:pub1 dc:title "First Study" ; dct:creator "Jane" , "Ada" .
ex:pub2 dc:title "Second Study" ; dct:creator "Bob" .
)");

  tmpl::Template t = tmpl::parse_template(read_file(data_dir() / "listing_template.html"));
  tmpl::FilterRegistry registry = tmpl::make_default_registry();
  std::map<std::string, tmpl::Template> includes;
  std::vector<std::string> render_warnings;

  tmpl::RenderContext ctx;
  ctx.graph = &graph;
  ctx.prefixes = &graph.prefixes();
  ctx.filters = &registry;
  ctx.includes = &includes;
  ctx.warnings = &render_warnings;
  ctx.template_name = "listing_template";
  ctx.page["rdf"] = tmpl::Value(tmpl::Resource{rdf::Iri{"http://ex.org/report"}});

  const std::string rendered = tmpl::render(t.nodes, ctx);
  const std::string golden = read_file(data_dir() / "golden" / "listing_render.html");
  c.require(rendered == golden, "rendered output differs from the golden file");

  c.detail << "config fields + restriction parse + golden render";
  return c;
}

// ---- criterion 4: path mapping table ------------------------------------------

Criterion criterion_path_mapping() {
  Criterion c;
  site::SiteConfig config;
  config.url = "http://pfarrerbuch.aksw.org";
  config.baseurl = "/sachsen/";

  using site::PathOutcome;
  PathOutcome a = site::map_iri_to_path("http://pfarrerbuch.aksw.org/sachsen/ort/3441", config);
  c.require(a.kind == PathOutcome::Kind::InBase && a.path == "ort/3441.html",
            "in-base mapping mismatch");

  PathOutcome b =
      site::map_iri_to_path("http://pfarrerbuch.aksw.org/sachsen/ort/3441#geburt", config);
  c.require(b.kind == PathOutcome::Kind::FragmentOf && b.path == "ort/3441.html" &&
                b.fragment == "geburt",
            "fragment folding mismatch");

  PathOutcome d = site::map_iri_to_path("http://pfarrerbuch.aksw.org/sachsen/", config);
  c.require(d.kind == PathOutcome::Kind::InBase && d.path == "index.html",
            "base IRI mapping mismatch");

  PathOutcome e = site::map_iri_to_path("http://example.org/x", config);
  c.require(e.kind == PathOutcome::Kind::External &&
                e.path == "rdfsites/http/example.org/x.html",
            "external mapping mismatch");

  c.detail << "4/4 table rows";
  return c;
}

// ---- criterion 5: end-to-end determinism --------------------------------------

Criterion criterion_determinism() {
  Criterion c;
  const fs::path site_dir = data_dir() / "sample_site";

  auto build_once = [&](bool use_cache, int jobs) {
    std::vector<std::string> warnings;
    site::SiteConfig config = site::load_config(site_dir / "_config.yml", &warnings);
    config.source_dir = site_dir;
    config.dest_dir = fresh_temp_dir("det");
    site::BuildOptions options;
    options.use_cache = use_cache;
    options.jobs = jobs;
    site::BuildReport report = site::build(config, options);
    auto tree = snapshot_tree(config.dest_dir);
    fs::remove_all(config.dest_dir);
    return std::make_pair(report, tree);
  };

  auto [report1, tree1] = build_once(true, 0);
  auto [report2, tree2] = build_once(true, 0);
  auto [report3, tree3] = build_once(false, 0);  // --no-cache
  auto [report4, tree4] = build_once(true, 1);   // serial reference renderer

  c.require(tree1 == tree2, "repeated builds differ");
  c.require(tree1 == tree3, "--no-cache build differs");
  c.require(tree1 == tree4, "serial build differs from parallel");
  c.require(report1.warnings == report2.warnings, "warning lists differ between runs");
  c.require(report1.warnings == report3.warnings, "warning lists differ under --no-cache");
  c.require(report3.cache_hits == 0, "cache disabled but hits recorded");
  c.require(report1.pages_written == tree1.size(), "pages_written != files on disk");
  c.require(report1.resources_selected >= 50, "sample site should select ~50 resources");

  c.detail << report1.resources_selected << " resources, " << report1.pages_written
           << " pages, identical across runs/cache/serial";
  return c;
}

// ---- criterion 6: desk-scale performance reference -----------------------------

Criterion criterion_performance() {
  Criterion c;
  const fs::path dir = fresh_temp_dir("perf_src");
  const fs::path dest = fresh_temp_dir("perf_out");

  // synthetic dataset: 10,000 resources, ~150,000 triples, 4 classes in a
  // depth-3 hierarchy
  {
    std::ostringstream nt;
    const std::string voc = "http://perf.example/vocab/";
    const std::string base = "http://perf.example/site/";
    nt << "<" << voc << "C1> <" << rdf::vocab::kRdfsSubClassOf.value << "> <" << voc
       << "C2> .\n";
    nt << "<" << voc << "C2> <" << rdf::vocab::kRdfsSubClassOf.value << "> <" << voc
       << "C3> .\n";
    nt << "<" << voc << "C4> <" << rdf::vocab::kRdfsSubClassOf.value << "> <" << voc
       << "C3> .\n";
    for (int i = 0; i < 10000; ++i) {
      const std::string r = "<" + base + "r" + std::to_string(i) + ">";
      nt << r << " <" << rdf::vocab::kRdfType.value << "> <" << voc << "C"
         << (1 + i % 4) << "> .\n";
      nt << r << " <" << rdf::vocab::kRdfsLabel.value << "> \"Resource " << i << "\" .\n";
      nt << r << " <http://perf.example/vocab/created> \"2019-03-08\" .\n";
      for (int k = 0; k < 3; ++k) {
        nt << r << " <http://perf.example/vocab/knows> <" << base << "r"
           << ((i + 37 * (k + 1)) % 10000) << "> .\n";
      }
      for (int k = 0; k < 9; ++k) {
        nt << r << " <http://perf.example/vocab/p" << k << "> \"v" << (i % 50) << "_" << k
           << "\" .\n";
      }
    }
    std::ofstream out(dir / "data.nt", std::ios::binary);
    out << nt.str();
  }

  {
    std::ofstream cfg(dir / "_config.yml");
    cfg << "url: \"http://perf.example\"\n"
           "baseurl: \"/site/\"\n"
           "jekyll_rdf:\n"
           "  path: \"data.nt\"\n"
           "  restriction: \"SELECT ?resourceUri WHERE {?resourceUri ?p ?o . FILTER "
           "regex(str(?resourceUri), '^http://perf.example/site/')}\"\n"
           "  default_template: \"resource\"\n"
           "  class_template_mappings:\n"
           "    \"http://perf.example/vocab/C2\": \"klass\"\n"
           "    \"http://perf.example/vocab/C4\": \"other\"\n";
  }
  fs::create_directories(dir / "_layouts");
  {
    std::ofstream base(dir / "_layouts" / "base.html");
    base << "<html><body>{{ content }}</body></html>\n";
    std::ofstream klass(dir / "_layouts" / "klass.html");
    klass << "---\nlayout: base\n---\n<h1>{{ page.rdf | rdf_property: "
             "\"rdfs:label\" }}</h1>\n<ul>{% for f in page.rdf | rdf_property: "
             "\"<http://perf.example/vocab/knows>\", false, true %}<li>{{ f }}</li>"
             "{% endfor %}</ul>\n";
    std::ofstream other(dir / "_layouts" / "other.html");
    other << "---\nlayout: base\n---\n<h2>{{ page.rdf | rdf_property: \"rdfs:label\" }}"
             "</h2>\n";
    std::ofstream res(dir / "_layouts" / "resource.html");
    res << "---\nlayout: base\n---\n<p>{{ page.rdf }} {{ page.rdf | rdf_property: "
           "\"rdfs:label\" }}</p>\n";
  }

  std::vector<std::string> warnings;
  site::SiteConfig config = site::load_config(dir / "_config.yml", &warnings);
  config.source_dir = dir;
  config.dest_dir = dest;

  // the data file carries no prefixes; templates use rdfs: via config
  config.prefixes["rdfs"] = std::string(rdf::vocab::kRdfsNs);

  const auto start = Clock::now();
  site::BuildReport report = site::build(config, {});
  const double elapsed = std::chrono::duration<double>(Clock::now() - start).count();

  c.require(report.resources_selected == 10000, "expected 10000 selected resources, got " +
                                                    std::to_string(report.resources_selected));
  c.require(report.pages_written == 10000, "expected 10000 pages");
  c.require(elapsed <= 300.0, "build took " + std::to_string(elapsed) + "s (limit 300s)");

  const double hit_rate =
      static_cast<double>(report.cache_hits) /
      static_cast<double>(report.cache_hits + report.cache_misses);
  c.require(hit_rate > 0.99,
            "cache hit rate " + std::to_string(hit_rate) + " (needs > 0.99)");

  fs::remove_all(dir);
  fs::remove_all(dest);

  c.detail << "10000 pages in " << elapsed << "s, hit rate " << hit_rate;
  return c;
}

// ---- criterion 7: module property suites ---------------------------------------

Criterion criterion_property_suites() {
  Criterion c;

  // filter chain associativity: {{ v | f | g }} == g(f(v)) for marker filters
  {
    tmpl::FilterRegistry registry = tmpl::make_default_registry();
    registry.add("mark_f",
                 [](const tmpl::Value& v, const std::vector<tmpl::Value>&,
                    tmpl::RenderContext&) { return tmpl::Value("f(" + v.display() + ")"); });
    registry.add("mark_g",
                 [](const tmpl::Value& v, const std::vector<tmpl::Value>&,
                    tmpl::RenderContext&) { return tmpl::Value("g(" + v.display() + ")"); });
    rdf::Graph g;
    std::map<std::string, tmpl::Template> includes;
    tmpl::Template t = tmpl::parse_template("{{ v | mark_f | mark_g }}");
    std::mt19937 rng(1);
    for (int i = 0; i < 200 && c.pass; ++i) {
      tmpl::RenderContext ctx;
      ctx.graph = &g;
      ctx.filters = &registry;
      ctx.includes = &includes;
      const std::string seed = "s" + std::to_string(rng());
      ctx.assign("v", tmpl::Value(seed));
      c.require(tmpl::render(t.nodes, ctx) == "g(f(" + seed + "))",
                "filter chain order violated");
    }
  }

  // cache transparency on random hierarchies
  {
    std::mt19937 rng(2);
    for (int round = 0; round < 200 && c.pass; ++round) {
      oracles::RandomHierarchy h = oracles::random_hierarchy(rng, 12, 20, true);
      mapping::MappingConfig mc;
      for (const std::string& cls : h.classes) {
        if (rng() % 3 == 0) mc.class_map[cls] = "t" + std::to_string(rng() % 3);
      }
      mc.default_template = "d";
      mapping::SelectionCache cache;
      std::vector<std::string> types;
      for (size_t i = 0; i < rng() % 3 && !h.classes.empty(); ++i) {
        types.push_back(h.classes[rng() % h.classes.size()]);
      }
      for (int repeat = 0; repeat < 2; ++repeat) {
        mapping::SelectionResult cached =
            mapping::select_template("http://r", types, h.class_graph, mc, &cache);
        mapping::SelectionResult plain =
            mapping::select_template("http://r", types, h.class_graph, mc, nullptr);
        c.require(cached.template_name == plain.template_name &&
                      cached.warnings == plain.warnings,
                  "cache changed a selection result");
      }
      c.require(cache.hits() == 1 && cache.misses() == 1, "cache counters off");
    }
  }

  // fragment folding: parent path of iri#f equals the defragmented mapping
  {
    site::SiteConfig config;
    config.url = "http://example.org";
    config.baseurl = "/demo/";
    std::mt19937 rng(3);
    for (int i = 0; i < 200 && c.pass; ++i) {
      std::string iri = "http://example.org/demo/a" + std::to_string(rng() % 1000);
      if (rng() % 3 == 0) iri += "?q=" + std::to_string(rng() % 10);
      if (rng() % 4 == 0) iri = "http://other.example/x" + std::to_string(rng() % 1000);
      site::PathOutcome parent = site::map_iri_to_path(iri, config);
      site::PathOutcome frag = site::map_iri_to_path(iri + "#sec", config);
      c.require(frag.kind == site::PathOutcome::Kind::FragmentOf &&
                    frag.path == parent.path && frag.fragment == "sec",
                "fragment folding violated for " + iri);
    }
  }

  // graph index consistency on random graphs
  {
    std::mt19937 rng(4);
    oracles::RandomGraphOptions options;
    options.max_triples = 40;
    for (int round = 0; round < 200 && c.pass; ++round) {
      rdf::Graph g = oracles::random_graph(rng, options);
      for (const rdf::Triple& t : g.triples()) {
        auto via_s = g.match(t.subject, std::nullopt, std::nullopt);
        auto via_po = g.match(std::nullopt, t.predicate, t.object);
        auto via_sp = g.match(t.subject, t.predicate, std::nullopt);
        const bool reachable =
            std::find(via_s.begin(), via_s.end(), t) != via_s.end() &&
            std::find(via_po.begin(), via_po.end(), t) != via_po.end() &&
            std::find(via_sp.begin(), via_sp.end(), t) != via_sp.end();
        c.require(reachable, "triple missing from an index");
        if (!c.pass) break;
      }
    }
  }

  // collection append law
  {
    std::mt19937 rng(5);
    for (int round = 0; round < 200 && c.pass; ++round) {
      const int members = static_cast<int>(rng() % 5);
      rdf::Graph g;
      std::vector<rdf::Term> cells;
      for (int i = 0; i < members; ++i) {
        cells.push_back(rdf::BlankNode{"c" + std::to_string(i)});
      }
      for (int i = 0; i < members; ++i) {
        rdf::Term rest = i + 1 < members ? cells[static_cast<size_t>(i) + 1]
                                         : rdf::Term{rdf::vocab::kRdfNil};
        g.add(rdf::Triple(cells[static_cast<size_t>(i)], rdf::vocab::kRdfFirst,
                          rdf::Iri{"http://m/" + std::to_string(i)}));
        g.add(rdf::Triple(cells[static_cast<size_t>(i)], rdf::vocab::kRdfRest, rest));
      }
      rdf::Term head = members ? cells[0] : rdf::Term{rdf::vocab::kRdfNil};
      std::vector<rdf::Term> before = g.collection_items(head);

      rdf::Term x = rdf::Iri{"http://m/x"};
      rdf::Term tail = rdf::BlankNode{"tail"};
      rdf::Graph extended;
      for (const rdf::Triple& t : g.triples()) {
        if (t.predicate == rdf::vocab::kRdfRest &&
            t.object == rdf::Term{rdf::vocab::kRdfNil}) {
          extended.add(rdf::Triple(t.subject, t.predicate, tail));
        } else {
          extended.add(t);
        }
      }
      extended.add(rdf::Triple(tail, rdf::vocab::kRdfFirst, x));
      extended.add(rdf::Triple(tail, rdf::vocab::kRdfRest, rdf::Term{rdf::vocab::kRdfNil}));
      if (members == 0) head = tail;

      std::vector<rdf::Term> expected = before;
      expected.push_back(x);
      c.require(extended.collection_items(head) == expected, "append law violated");
    }
  }

  c.detail << "5 suites x 200 cases";
  return c;
}

}  // namespace

int main() {
  struct Entry {
    const char* name;
    Criterion (*run)();
  };
  const Entry entries[] = {
      {"template-selection oracle suite (1000 randomized cases, <10s)",
       criterion_template_selection},
      {"SPARQL-subset oracle suite (500 randomized cases, exact multiplicities)",
       criterion_sparql_oracle},
      {"listing fidelity (config field-for-field, golden template render)",
       criterion_listing_fidelity},
      {"path-mapping table (in-base, fragment, base IRI, external)", criterion_path_mapping},
      {"end-to-end determinism (sample site, repeat/--no-cache/serial)",
       criterion_determinism},
      {"desk-scale performance (10k resources, 150k triples, <=300s, >99% cache hits)",
       criterion_performance},
      {"property suites (chains, cache, fragments, indexes, collections; 200 cases each)",
       criterion_property_suites},
  };

  bool all_pass = true;
  int index = 1;
  for (const Entry& entry : entries) {
    Criterion result;
    try {
      result = entry.run();
    } catch (const std::exception& e) {
      result.pass = false;
      result.detail << "exception: " << e.what();
    }
    std::cout << "criterion " << index << ": " << (result.pass ? "PASS" : "FAIL") << " — "
              << entry.name << " [" << result.detail.str() << "]" << std::endl;
    all_pass = all_pass && result.pass;
    ++index;
  }
  return all_pass ? 0 : 1;
}
