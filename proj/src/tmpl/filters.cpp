#include <algorithm>
#include <cctype>
#include <cstdio>

#include "graphsite/errors.hpp"
#include "graphsite/sparql/query.hpp"
#include "graphsite/tmpl/render.hpp"

namespace graphsite::tmpl {

namespace {

const rdf::Graph& graph_of(const RenderContext& ctx) {
  if (!ctx.graph) throw Error("no graph attached to the render context");
  return *ctx.graph;
}

std::string ascii_lower(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

// Property arguments are prefixed names, "<iri>" strings, or bare IRIs.
rdf::Iri resolve_property(const Value& arg, const RenderContext& ctx) {
  rdf::Term t = resolve_node(arg, ctx);
  if (!rdf::is_iri(t)) throw Error("property argument must name an IRI");
  return rdf::as_iri(t);
}

Value wrap_terms(std::vector<rdf::Term> terms, bool as_array) {
  if (as_array) {
    Array out;
    out.reserve(terms.size());
    for (const rdf::Term& t : terms) out.push_back(term_to_value(t));
    return Value(std::move(out));
  }
  if (terms.empty()) return Value::nil();
  return term_to_value(terms.front());
}

// ---- graph filters ---------------------------------------------------------

Value filter_rdf_get(const Value& input, const std::vector<Value>&, RenderContext& ctx) {
  return Value(Resource{resolve_node(input, ctx)});
}

Value filter_rdf_property(const Value& input, const std::vector<Value>& args,
                          RenderContext& ctx) {
  if (args.empty()) throw Error("rdf_property needs a property argument");
  const rdf::Term subject = resolve_node(input, ctx);
  const rdf::Iri property = resolve_property(args[0], ctx);

  std::optional<std::string> language;
  if (args.size() > 1 && !args[1].is_nil() && !(args[1].is_bool() && !args[1].as_bool())) {
    language = ascii_lower(args[1].display());
  }
  const bool as_array = args.size() > 2 && args[2].truthy();

  std::vector<rdf::Term> candidates = graph_of(ctx).objects(subject, property);
  if (language) {
    std::erase_if(candidates, [&](const rdf::Term& t) {
      return !rdf::is_literal(t) || !rdf::as_literal(t).language ||
             *rdf::as_literal(t).language != *language;
    });
  }
  return wrap_terms(std::move(candidates), as_array);
}

Value filter_rdf_inverse_property(const Value& input, const std::vector<Value>& args,
                                  RenderContext& ctx) {
  if (args.empty()) throw Error("rdf_inverse_property needs a property argument");
  const rdf::Term object = resolve_node(input, ctx);
  const rdf::Iri property = resolve_property(args[0], ctx);
  const bool as_array = args.size() > 1 && args[1].truthy();
  return wrap_terms(graph_of(ctx).subjects(property, object), as_array);
}

// Shared head resolution: with a property argument the head is one hop away
// from the value node.
std::optional<rdf::Term> sequence_head(const Value& input, const std::vector<Value>& args,
                                       RenderContext& ctx, const char* filter_name) {
  rdf::Term node = resolve_node(input, ctx);
  if (args.empty()) return node;
  const rdf::Iri property = resolve_property(args[0], ctx);
  std::vector<rdf::Term> heads = graph_of(ctx).objects(node, property);
  if (heads.empty()) {
    ctx.warn(std::string(filter_name) + ": no value of " + rdf::to_ntriples(rdf::Term{property}) +
             " on " + rdf::to_ntriples(node));
    return std::nullopt;
  }
  return heads.front();
}

Value filter_rdf_collection(const Value& input, const std::vector<Value>& args,
                            RenderContext& ctx) {
  std::optional<rdf::Term> head = sequence_head(input, args, ctx, "rdf_collection");
  if (!head) return Value(Array{});
  if (!graph_of(ctx).looks_like_collection(*head)) {
    ctx.warn("rdf_collection: " + rdf::to_ntriples(*head) + " is not a collection head");
    return Value(Array{});
  }
  Array out;
  for (const rdf::Term& t : graph_of(ctx).collection_items(*head)) {
    out.push_back(term_to_value(t));
  }
  return Value(std::move(out));
}

Value filter_rdf_container(const Value& input, const std::vector<Value>& args,
                           RenderContext& ctx) {
  std::optional<rdf::Term> head = sequence_head(input, args, ctx, "rdf_container");
  if (!head) return Value(Array{});
  Array out;
  for (const rdf::Term& t : graph_of(ctx).container_items(*head)) {
    out.push_back(term_to_value(t));
  }
  return Value(std::move(out));
}

rdf::Term seed_term(const Value& v, RenderContext& ctx) {
  if (v.is_resource()) return v.as_resource().node;
  if (v.is_literal()) return v.as_literal();
  if (v.is_text()) {
    try {
      return resolve_node(v, ctx);
    } catch (const Error&) {
      return rdf::Literal::plain(v.as_text());
    }
  }
  return rdf::Literal::plain(v.display());
}

Value filter_sparql_query(const Value& input, const std::vector<Value>& args,
                          RenderContext& ctx) {
  if (args.empty()) throw Error("sparql_query needs a query argument");
  sparql::SelectQuery query = sparql::parse_select(args[0].display());

  sparql::SolutionMapping seed;
  if (input.is_array()) {
    const Array& items = input.as_array();
    for (size_t i = 0; i < items.size(); ++i) {
      seed.emplace("resourceUri_" + std::to_string(i), seed_term(items[i], ctx));
    }
  } else {
    seed.emplace("resourceUri", seed_term(input, ctx));
  }

  Array rows;
  for (const sparql::SolutionMapping& row : sparql::evaluate(graph_of(ctx), query, seed)) {
    ValueMap m;
    for (const auto& [name, term] : row) m.emplace(name, term_to_value(term));
    rows.push_back(Value(std::move(m)));
  }
  return Value(std::move(rows));
}

// ---- built-ins --------------------------------------------------------------

struct DateParts {
  int year = 0, month = 0, day = 0, hour = 0, minute = 0, second = 0;
};

bool parse_xsd_date(const std::string& lexical, DateParts& out) {
  // xsd:date YYYY-MM-DD and xsd:dateTime YYYY-MM-DDTHH:MM:SS[.fff][Z|+hh:mm]
  int n = std::sscanf(lexical.c_str(), "%4d-%2d-%2dT%2d:%2d:%2d", &out.year, &out.month,
                      &out.day, &out.hour, &out.minute, &out.second);
  if (n == 3) {
    if (lexical.size() != 10) return false;
    return out.month >= 1 && out.month <= 12 && out.day >= 1 && out.day <= 31;
  }
  if (n == 6) {
    return out.month >= 1 && out.month <= 12 && out.day >= 1 && out.day <= 31 &&
           out.hour <= 23 && out.minute <= 59 && out.second <= 60;
  }
  return false;
}

std::string format_date(const DateParts& d, const std::string& fmt) {
  std::string out;
  char buf[8];
  for (size_t i = 0; i < fmt.size(); ++i) {
    if (fmt[i] != '%' || i + 1 >= fmt.size()) {
      out += fmt[i];
      continue;
    }
    char code = fmt[++i];
    switch (code) {
      case 'Y': std::snprintf(buf, sizeof(buf), "%04d", d.year); out += buf; break;
      case 'm': std::snprintf(buf, sizeof(buf), "%02d", d.month); out += buf; break;
      case 'd': std::snprintf(buf, sizeof(buf), "%02d", d.day); out += buf; break;
      case 'H': std::snprintf(buf, sizeof(buf), "%02d", d.hour); out += buf; break;
      case 'M': std::snprintf(buf, sizeof(buf), "%02d", d.minute); out += buf; break;
      case 'S': std::snprintf(buf, sizeof(buf), "%02d", d.second); out += buf; break;
      case '%': out += '%'; break;
      default:
        out += '%';
        out += code;
    }
  }
  return out;
}

Value filter_date(const Value& input, const std::vector<Value>& args, RenderContext& ctx) {
  const std::string lexical = input.display();
  DateParts parts;
  if (!parse_xsd_date(lexical, parts)) {
    ctx.warn("date: cannot parse '" + lexical + "' as xsd:date or xsd:dateTime");
    return input;
  }
  const std::string fmt = args.empty() ? "%Y-%m-%d" : args[0].display();
  return Value(format_date(parts, fmt));
}

Value filter_join(const Value& input, const std::vector<Value>& args, RenderContext&) {
  if (!input.is_array()) return Value(input.display());
  const std::string sep = args.empty() ? " " : args[0].display();
  std::string out;
  const Array& items = input.as_array();
  for (size_t i = 0; i < items.size(); ++i) {
    if (i) out += sep;
    out += items[i].display();
  }
  return Value(std::move(out));
}

Value filter_first(const Value& input, const std::vector<Value>&, RenderContext&) {
  if (input.is_array() && !input.as_array().empty()) return input.as_array().front();
  return Value::nil();
}

Value filter_last(const Value& input, const std::vector<Value>&, RenderContext&) {
  if (input.is_array() && !input.as_array().empty()) return input.as_array().back();
  return Value::nil();
}

Value filter_size(const Value& input, const std::vector<Value>&, RenderContext&) {
  if (input.is_array()) return Value(static_cast<std::int64_t>(input.as_array().size()));
  if (input.is_map()) return Value(static_cast<std::int64_t>(input.as_map().size()));
  if (input.is_text()) return Value(static_cast<std::int64_t>(input.as_text().size()));
  if (input.is_literal()) {
    return Value(static_cast<std::int64_t>(input.as_literal().lexical.size()));
  }
  return Value(static_cast<std::int64_t>(0));
}

Value filter_append(const Value& input, const std::vector<Value>& args, RenderContext&) {
  return Value(input.display() + (args.empty() ? "" : args[0].display()));
}

Value filter_prepend(const Value& input, const std::vector<Value>& args, RenderContext&) {
  return Value((args.empty() ? "" : args[0].display()) + input.display());
}

Value filter_default(const Value& input, const std::vector<Value>& args, RenderContext&) {
  const Value fallback = args.empty() ? Value::nil() : args[0];
  if (input.is_nil()) return fallback;
  if (input.is_bool() && !input.as_bool()) return fallback;
  if (input.is_text() && input.as_text().empty()) return fallback;
  if (input.is_array() && input.as_array().empty()) return fallback;
  return input;
}

Value filter_downcase(const Value& input, const std::vector<Value>&, RenderContext&) {
  return Value(ascii_lower(input.display()));
}

Value filter_upcase(const Value& input, const std::vector<Value>&, RenderContext&) {
  std::string s = input.display();
  for (char& c : s) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return Value(std::move(s));
}

}  // namespace

FilterRegistry make_default_registry() {
  FilterRegistry registry;
  registry.add("rdf_get", filter_rdf_get);
  registry.add("rdf_property", filter_rdf_property);
  registry.add("rdf_inverse_property", filter_rdf_inverse_property);
  registry.add("rdf_collection", filter_rdf_collection);
  registry.add("rdf_container", filter_rdf_container);
  registry.add("sparql_query", filter_sparql_query);

  registry.add("date", filter_date);
  registry.add("join", filter_join);
  registry.add("first", filter_first);
  registry.add("last", filter_last);
  registry.add("size", filter_size);
  registry.add("append", filter_append);
  registry.add("prepend", filter_prepend);
  registry.add("default", filter_default);
  registry.add("downcase", filter_downcase);
  registry.add("upcase", filter_upcase);

  return registry;
}

}  // namespace graphsite::tmpl
