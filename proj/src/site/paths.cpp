#include "graphsite/site/paths.hpp"

#include <cctype>

namespace graphsite::site {

namespace {

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

std::string html_path_from_remainder(std::string remainder) {
  if (remainder.empty()) return "index.html";
  for (char& c : remainder) {
    if (c == '?') c = '/';
  }
  if (!ends_with(remainder, ".html")) remainder += ".html";
  return remainder;
}

bool unreserved(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '.' || c == '_' || c == '~' ||
         c == '-';
}

// Percent-encodes everything outside the unreserved set, keeping "/" as the
// segment separator.
std::string sanitize_external_path(const std::string& path) {
  static const char* hex = "0123456789ABCDEF";
  std::string out;
  for (char c : path) {
    if (c == '/' || unreserved(c)) {
      out += c;
    } else {
      unsigned char u = static_cast<unsigned char>(c);
      out += '%';
      out += hex[u >> 4];
      out += hex[u & 0xF];
    }
  }
  return out;
}

std::string external_path(const std::string& iri) {
  // scheme://authority/rest  or scheme:rest
  std::string scheme, authority, rest;
  size_t colon = iri.find(':');
  scheme = iri.substr(0, colon);
  std::string after = iri.substr(colon + 1);
  if (after.rfind("//", 0) == 0) {
    after = after.substr(2);
    size_t slash = after.find('/');
    if (slash == std::string::npos) {
      authority = after;
      rest = "";
    } else {
      authority = after.substr(0, slash);
      rest = after.substr(slash + 1);
    }
  } else {
    rest = after;
  }
  for (char& c : rest) {
    if (c == '?') c = '/';
  }
  std::string out = "rdfsites/" + sanitize_external_path(scheme) + "/" +
                    sanitize_external_path(authority) + "/";
  out += rest.empty() ? "index" : sanitize_external_path(rest);
  if (!ends_with(out, ".html")) out += ".html";
  return out;
}

PathOutcome map_defragmented(const std::string& iri, const SiteConfig& config) {
  const std::string base = config.site_base();
  if (iri.compare(0, base.size(), base) == 0) {
    return PathOutcome{PathOutcome::Kind::InBase,
                       html_path_from_remainder(iri.substr(base.size())), ""};
  }
  return PathOutcome{PathOutcome::Kind::External, external_path(iri), ""};
}

}  // namespace

PathOutcome map_iri_to_path(const std::string& iri, const SiteConfig& config) {
  const size_t hash = iri.find('#');
  if (hash != std::string::npos) {
    std::string fragment = iri.substr(hash + 1);
    PathOutcome parent = map_defragmented(iri.substr(0, hash), config);
    return PathOutcome{PathOutcome::Kind::FragmentOf, parent.path, std::move(fragment)};
  }
  return map_defragmented(iri, config);
}

}  // namespace graphsite::site
