#include "graphsite/site/config.hpp"

#include <yaml-cpp/yaml.h>

#include <set>

#include "graphsite/errors.hpp"
#include "graphsite/rdf/term.hpp"

namespace graphsite::site {

namespace {

void warn(std::vector<std::string>* warnings, std::string message) {
  if (warnings) warnings->push_back(std::move(message));
}

std::string normalize_baseurl(std::string baseurl) {
  if (baseurl.empty()) return "/";
  if (baseurl.front() != '/') baseurl.insert(baseurl.begin(), '/');
  if (baseurl.back() != '/') baseurl.push_back('/');
  return baseurl;
}

std::map<std::string, std::string> read_string_map(const YAML::Node& node,
                                                   const std::string& key_name) {
  std::map<std::string, std::string> out;
  if (!node) return out;
  if (!node.IsMap()) {
    throw ConfigError("'" + key_name + "' must be a mapping");
  }
  for (const auto& kv : node) {
    out[kv.first.Scalar()] = kv.second.Scalar();
  }
  return out;
}

}  // namespace

SiteConfig load_config(const std::filesystem::path& file, std::vector<std::string>* warnings) {
  YAML::Node doc;
  try {
    doc = YAML::LoadFile(file.string());
  } catch (const YAML::BadFile&) {
    throw ConfigError("cannot open configuration file: " + file.string());
  } catch (const YAML::Exception& e) {
    throw ConfigError("malformed configuration: " + std::string(e.what()));
  }
  if (!doc.IsMap()) {
    throw ConfigError("configuration must be a YAML mapping: " + file.string());
  }

  SiteConfig config;

  static const std::set<std::string> known_top = {"url", "baseurl", "plugins", "jekyll_rdf",
                                                  "prefixes"};
  for (const auto& kv : doc) {
    const std::string key = kv.first.Scalar();
    if (!known_top.count(key)) {
      warn(warnings, "config: unknown key '" + key + "' ignored");
    }
  }

  if (!doc["url"]) {
    throw ConfigError("config: missing required key 'url'");
  }
  config.url = doc["url"].Scalar();
  while (!config.url.empty() && config.url.back() == '/') config.url.pop_back();
  if (!rdf::is_absolute_iri(config.url)) {
    throw ConfigError("config: 'url' must be an absolute IRI, got '" + config.url + "'");
  }

  config.baseurl = normalize_baseurl(doc["baseurl"] ? doc["baseurl"].Scalar() : "");

  const YAML::Node rdf = doc["jekyll_rdf"];
  if (!rdf || !rdf.IsMap()) {
    throw ConfigError("config: missing required 'jekyll_rdf' section");
  }

  static const std::set<std::string> known_rdf = {"path", "restriction", "default_template",
                                                  "class_template_mappings",
                                                  "instance_template_mappings"};
  for (const auto& kv : rdf) {
    const std::string key = kv.first.Scalar();
    if (!known_rdf.count(key)) {
      warn(warnings, "config: unknown key 'jekyll_rdf." + key + "' ignored");
    }
  }

  if (!rdf["path"]) {
    throw ConfigError("config: missing required key 'jekyll_rdf.path'");
  }
  config.data_path = rdf["path"].Scalar();

  if (rdf["restriction"]) config.restriction = rdf["restriction"].Scalar();
  if (rdf["default_template"]) config.default_template = rdf["default_template"].Scalar();
  config.class_template_mappings =
      read_string_map(rdf["class_template_mappings"], "jekyll_rdf.class_template_mappings");
  config.instance_template_mappings = read_string_map(
      rdf["instance_template_mappings"], "jekyll_rdf.instance_template_mappings");
  config.prefixes = read_string_map(doc["prefixes"], "prefixes");

  return config;
}

}  // namespace graphsite::site
