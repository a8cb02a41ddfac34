// Benchmark comparing the serial reference renderer with the OpenMP kernel
// on a synthetic site, verifying byte-identical output along the way.

#include <CLI11.hpp>

#include <chrono>
#include <iostream>

#include "graphsite/rdf/parse.hpp"
#include "graphsite/site/build.hpp"
#include "graphsite/tmpl/parse.hpp"

using Clock = std::chrono::steady_clock;

namespace {

constexpr const char* kLayout = R"(<html>
<head><title>{{ page.rdf | rdf_property: "rdfs:label" }}</title></head>
<body>
<h1>{{ page.rdf | rdf_property: "rdfs:label" }}</h1>
<p>{{ page.rdf | rdf_property: "ex:description" }}</p>
<ul>
{% for friend in page.rdf | rdf_property: "ex:knows", false, true %}
<li>{{ friend }}</li>
{% endfor %}
</ul>
</body>
</html>
)";

std::string synthetic_data(int n) {
  std::string ttl =
      "@prefix rdfs: <http://www.w3.org/2000/01/rdf-schema#> .\n"
      "@prefix ex: <http://bench.example.org/vocab/> .\n"
      "@prefix r: <http://bench.example.org/site/> .\n";
  for (int i = 0; i < n; ++i) {
    const std::string id = "r:item" + std::to_string(i);
    ttl += id + " rdfs:label \"Item " + std::to_string(i) + "\" ;\n";
    ttl += "  ex:description \"Synthetic benchmark resource number " + std::to_string(i) +
           "\" ;\n";
    for (int k = 1; k <= 4; ++k) {
      ttl += "  ex:knows r:item" + std::to_string((i + k * 37) % n) + " ;\n";
    }
    ttl += "  a ex:Item .\n";
  }
  return ttl;
}

double run(const std::vector<graphsite::site::Page>& pages,
           const graphsite::site::RenderEnv& env, int jobs, bool serial,
           std::vector<graphsite::site::RenderedPage>& out) {
  const auto start = Clock::now();
  out = serial ? graphsite::site::render_pages_serial(pages, env)
               : graphsite::site::render_pages_parallel(pages, env, jobs);
  return std::chrono::duration<double>(Clock::now() - start).count();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Render benchmark: serial reference vs OpenMP kernel"};
  int pages_count = 2000;
  int repeat = 3;
  int jobs = 0;
  app.add_option("--pages", pages_count, "Synthetic page count")->capture_default_str();
  app.add_option("--repeat", repeat, "Timing repetitions")->capture_default_str();
  app.add_option("--jobs", jobs, "Parallel worker count (0 = all cores)")
      ->capture_default_str();
  CLI11_PARSE(app, argc, argv);

  graphsite::rdf::Graph graph = graphsite::rdf::parse_turtle(synthetic_data(pages_count));
  graph.triples();

  std::map<std::string, graphsite::tmpl::Template> layouts;
  layouts["item"] = graphsite::tmpl::parse_template(kLayout);
  layouts["item"].name = "item";
  std::map<std::string, graphsite::tmpl::Template> includes;

  std::vector<graphsite::site::Page> pages;
  pages.reserve(pages_count);
  for (int i = 0; i < pages_count; ++i) {
    graphsite::site::Page page;
    page.kind = graphsite::site::Page::Kind::Resource;
    page.resource = "http://bench.example.org/site/item" + std::to_string(i);
    page.output_path = "item" + std::to_string(i) + ".html";
    page.layout = "item";
    pages.push_back(std::move(page));
  }

  graphsite::site::RenderEnv env;
  env.graph = &graph;
  env.prefixes = &graph.prefixes();
  env.layouts = &layouts;
  env.includes = &includes;

  std::vector<graphsite::site::RenderedPage> serial_out, parallel_out;
  double serial_best = 1e99, parallel_best = 1e99;
  for (int i = 0; i < repeat; ++i) {
    serial_best = std::min(serial_best, run(pages, env, jobs, true, serial_out));
    parallel_best = std::min(parallel_best, run(pages, env, jobs, false, parallel_out));
  }

  bool identical = serial_out.size() == parallel_out.size();
  for (size_t i = 0; identical && i < serial_out.size(); ++i) {
    identical = serial_out[i].path == parallel_out[i].path &&
                serial_out[i].html == parallel_out[i].html;
  }

  std::cout << "pages:     " << pages_count << "\n"
            << "serial:    " << serial_best << " s\n"
            << "parallel:  " << parallel_best << " s\n"
            << "speedup:   " << (parallel_best > 0 ? serial_best / parallel_best : 0) << "x\n"
            << "identical: " << (identical ? "yes" : "NO") << "\n";
  return identical ? 0 : 1;
}
