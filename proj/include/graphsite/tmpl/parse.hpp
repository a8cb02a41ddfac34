#pragma once

#include <string_view>

#include "graphsite/tmpl/ast.hpp"

namespace graphsite::tmpl {

// Splits off front matter when the text starts with a "---" line, then parses
// the body: {{ output | filters }}, {% assign %}, {% for %}, {% if/elsif/else %},
// {% include %}. Errors carry 1-based line numbers.
Template parse_template(std::string_view text);

}  // namespace graphsite::tmpl
