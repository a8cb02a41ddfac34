#pragma once

#include <string>

#include "graphsite/site/config.hpp"

namespace graphsite::site {

// Where one resource IRI lands in the output tree.
//   InBase:     page under the site base, `path` relative to dest_dir
//   FragmentOf: folds into its defragmented parent's page; `path` is the
//               parent's relative path, `fragment` the anchor
//   External:   IRI outside the site base, under rdfsites/
struct PathOutcome {
  enum class Kind { InBase, FragmentOf, External };

  Kind kind = Kind::InBase;
  std::string path;      // never starts with "/", never contains "..", ends with ".html"
  std::string fragment;  // FragmentOf only

  friend bool operator==(const PathOutcome&, const PathOutcome&) = default;
};

// In-base IRIs: strip the site base, map "" to index.html, turn "?" into "/",
// add ".html". IRIs with fragments fold into the defragmented IRI's page.
// Everything else maps under rdfsites/<scheme>/<authority>/<path>.html with
// characters outside [A-Za-z0-9._~-] percent-encoded per segment.
PathOutcome map_iri_to_path(const std::string& iri, const SiteConfig& config);

}  // namespace graphsite::site
