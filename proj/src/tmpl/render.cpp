#include "graphsite/tmpl/render.hpp"

#include <set>
#include <sstream>

#include "graphsite/errors.hpp"

namespace graphsite::tmpl {

Value RenderContext::lookup(const VarPath& path) const {
  if (path.segments.empty()) return Value::nil();
  const std::string& head = path.segments.front();

  Value current;
  bool found = false;
  for (auto it = scopes_.rbegin(); it != scopes_.rend(); ++it) {
    auto entry = it->find(head);
    if (entry != it->end()) {
      current = entry->second;
      found = true;
      break;
    }
  }
  if (!found) {
    if (head == "page") {
      current = Value(page);
    } else if (head == "content") {
      current = content ? Value(*content) : Value::nil();
    } else {
      return Value::nil();
    }
  }

  for (size_t i = 1; i < path.segments.size(); ++i) {
    if (!current.is_map()) return Value::nil();
    const ValueMap& m = current.as_map();
    auto it = m.find(path.segments[i]);
    if (it == m.end()) return Value::nil();
    current = it->second;
  }
  return current;
}

void RenderContext::assign(const std::string& name, Value v) {
  scopes_.front()[name] = std::move(v);
}

void RenderContext::warn(std::string message) const {
  if (warnings) warnings->push_back(std::move(message));
}

namespace {

Value eval_operand(const Operand& op, RenderContext& ctx) {
  if (op.is_constant()) return op.constant();
  return ctx.lookup(op.path());
}

[[noreturn]] void render_fail(const RenderContext& ctx, int line, const std::string& message) {
  std::ostringstream os;
  os << "render error in template '" << ctx.template_name << "' line " << line << ": "
     << message;
  throw RenderError(os.str());
}

Value eval_expression(const Expression& expr, RenderContext& ctx) {
  Value value = eval_operand(expr.base, ctx);
  for (const FilterCall& call : expr.filters) {
    if (!ctx.filters) render_fail(ctx, call.line, "no filter registry available");
    const FilterFn* fn = ctx.filters->find(call.name);
    if (!fn) render_fail(ctx, call.line, "unknown filter '" + call.name + "'");
    std::vector<Value> args;
    args.reserve(call.args.size());
    for (const Operand& arg : call.args) args.push_back(eval_operand(arg, ctx));
    try {
      value = (*fn)(value, args, ctx);
    } catch (const RenderError&) {
      throw;
    } catch (const Error& e) {
      render_fail(ctx, call.line, std::string("filter '") + call.name + "': " + e.what());
    }
  }
  return value;
}

bool eval_condition(const Condition& cond, RenderContext& ctx) {
  switch (cond.kind) {
    case Condition::Kind::Truthy:
      return eval_operand(cond.lhs, ctx).truthy();
    case Condition::Kind::Compare: {
      const bool eq = values_equal(eval_operand(cond.lhs, ctx), eval_operand(cond.rhs, ctx));
      return cond.op == "==" ? eq : !eq;
    }
    case Condition::Kind::And:
      return eval_condition(cond.children[0], ctx) && eval_condition(cond.children[1], ctx);
    case Condition::Kind::Or:
      return eval_condition(cond.children[0], ctx) || eval_condition(cond.children[1], ctx);
  }
  return false;
}

void render_nodes(const NodeList& nodes, RenderContext& ctx, std::string& out);

struct NodeRenderer {
  RenderContext& ctx;
  std::string& out;
  int line;

  void operator()(const RawText& raw) { out += raw.text; }

  void operator()(const Output& output) {
    out += eval_expression(output.expr, ctx).display();
  }

  void operator()(const AssignTag& assign) {
    ctx.assign(assign.var, eval_expression(assign.expr, ctx));
  }

  void operator()(const ForTag& loop) {
    Value iterable = eval_expression(loop.iterable, ctx);
    if (!iterable.is_array()) return;  // nothing to iterate
    for (const Value& item : iterable.as_array()) {
      ctx.push_scope();
      ctx.current_scope()[loop.var] = item;
      render_nodes(loop.body, ctx, out);
      ctx.pop_scope();
    }
  }

  void operator()(const IfTag& branching) {
    for (const IfBranch& branch : branching.branches) {
      if (eval_condition(branch.cond, ctx)) {
        render_nodes(branch.body, ctx, out);
        return;
      }
    }
    render_nodes(branching.else_body, ctx, out);
  }

  void operator()(const IncludeTag& include) {
    if (!ctx.includes) render_fail(ctx, line, "no includes available");
    auto it = ctx.includes->find(include.name);
    if (it == ctx.includes->end()) {
      render_fail(ctx, line, "missing include '" + include.name + "'");
    }
    render_nodes(it->second.nodes, ctx, out);
  }
};

void render_nodes(const NodeList& nodes, RenderContext& ctx, std::string& out) {
  for (const Node& node : nodes) {
    std::visit(NodeRenderer{ctx, out, node.line}, node.data);
  }
}

}  // namespace

std::string render(const NodeList& nodes, RenderContext& ctx) {
  std::string out;
  render_nodes(nodes, ctx, out);
  return out;
}

std::string resolve_layout_chain(const FrontMatter& front,
                                 const std::map<std::string, Template>& layouts,
                                 std::string rendered, RenderContext& ctx) {
  std::set<std::string> visited;
  const FrontMatter* current = &front;
  while (current->layout) {
    const std::string& name = *current->layout;
    if (!visited.insert(name).second) {
      throw RenderError("layout cycle involving '" + name + "'");
    }
    auto it = layouts.find(name);
    if (it == layouts.end()) {
      throw RenderError("missing layout '" + name + "' (referenced from '" +
                        ctx.template_name + "')");
    }
    ctx.content = std::move(rendered);
    std::string previous_name = ctx.template_name;
    ctx.template_name = name;
    rendered = render(it->second.nodes, ctx);
    ctx.template_name = std::move(previous_name);
    current = &it->second.front;
  }
  return rendered;
}

rdf::Term resolve_node(const Value& value, const RenderContext& ctx) {
  if (value.is_resource()) return value.as_resource().node;

  std::string s;
  if (value.is_text()) {
    s = value.as_text();
  } else if (value.is_literal()) {
    s = value.as_literal().lexical;
  } else {
    throw Error("cannot resolve a " + std::string(value.is_nil() ? "nil" : "non-text") +
                " value to a resource");
  }

  if (s.size() >= 2 && s.front() == '<' && s.back() == '>') {
    std::string inner = s.substr(1, s.size() - 2);
    if (!rdf::is_absolute_iri(inner)) throw Error("invalid IRI: " + s);
    return rdf::Iri{inner};
  }
  if (s.find("://") != std::string::npos) {
    if (!rdf::is_absolute_iri(s)) throw Error("invalid IRI: " + s);
    return rdf::Iri{s};
  }
  if (!ctx.prefixes) throw Error("no prefix map available to expand '" + s + "'");
  rdf::Iri expanded = ctx.prefixes->expand(s);  // throws UndefinedPrefixError
  if (!rdf::is_absolute_iri(expanded.value)) {
    throw Error("expansion of '" + s + "' is not an absolute IRI: " + expanded.value);
  }
  return expanded;
}

}  // namespace graphsite::tmpl
