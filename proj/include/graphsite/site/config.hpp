#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace graphsite::site {

struct SiteConfig {
  std::string url;      // absolute, no trailing slash
  std::string baseurl;  // normalized to begin and end with "/" ("/" when empty)

  std::filesystem::path source_dir = ".";
  std::filesystem::path dest_dir = "_site";
  std::filesystem::path data_path;  // relative paths resolve against source_dir

  std::string restriction;
  std::optional<std::string> default_template;
  std::map<std::string, std::string> class_template_mappings;
  std::map<std::string, std::string> instance_template_mappings;
  std::map<std::string, std::string> prefixes;  // label -> namespace IRI

  // url + baseurl, e.g. "http://pfarrerbuch.aksw.org/sachsen/"
  std::string site_base() const { return url + baseurl; }
};

// Loads the YAML configuration (url, baseurl, jekyll_rdf.path,
// jekyll_rdf.restriction, jekyll_rdf.default_template,
// jekyll_rdf.class_template_mappings, jekyll_rdf.instance_template_mappings,
// prefixes). Unknown keys are ignored with a warning. Throws ConfigError when
// url or the data path is missing or the document is malformed.
SiteConfig load_config(const std::filesystem::path& file, std::vector<std::string>* warnings);

}  // namespace graphsite::site
