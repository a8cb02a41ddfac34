#include <CLI11.hpp>

#include <iostream>

#include "graphsite/errors.hpp"
#include "graphsite/site/build.hpp"
#include "graphsite/site/config.hpp"

namespace {

int run_build(const std::string& config_file, const std::string& source,
              const std::string& dest, bool verbose, bool no_cache, int jobs) {
  try {
    std::vector<std::string> config_warnings;
    graphsite::site::SiteConfig config =
        graphsite::site::load_config(config_file, &config_warnings);
    config.source_dir = source;
    config.dest_dir = dest;

    graphsite::site::BuildOptions options;
    options.use_cache = !no_cache;
    options.verbose = verbose;
    options.jobs = jobs;

    graphsite::site::BuildReport report = graphsite::site::build(config, options);

    for (const std::string& w : config_warnings) std::cerr << "warning: " << w << "\n";
    for (const std::string& w : report.warnings) std::cerr << "warning: " << w << "\n";

    if (verbose) {
      std::cerr << "resources selected: " << report.resources_selected << "\n"
                << "pages written:      " << report.pages_written << "\n"
                << "cache hits/misses:  " << report.cache_hits << "/" << report.cache_misses
                << "\n";
    }
    std::cout << "wrote " << report.pages_written << " pages to " << dest << " in "
              << report.duration_seconds << "s\n";
    return 0;
  } catch (const graphsite::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Static site generator for RDF graphs"};
  app.require_subcommand(1);

  std::string config_file = "_config.yml";
  std::string source = ".";
  std::string dest = "_site";
  bool verbose = false;
  bool no_cache = false;
  int jobs = 0;

  CLI::App* build = app.add_subcommand("build", "Render every selected resource to HTML");
  build->add_option("--config", config_file, "Configuration file")->capture_default_str();
  build->add_option("--source", source, "Site source directory")->capture_default_str();
  build->add_option("--dest", dest, "Output directory")->capture_default_str();
  build->add_flag("--verbose", verbose, "Report build statistics on stderr");
  build->add_flag("--no-cache", no_cache, "Disable the template selection cache");
  build->add_option("--jobs", jobs, "Render worker count (1 = serial, 0 = all cores)")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);  // prints help, exit 0
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;  // usage error
  }

  if (build->parsed()) {
    return run_build(config_file, source, dest, verbose, no_cache, jobs);
  }
  return 2;
}
