#include "mjl/interpreter.hpp"

#include "mjl/errors.hpp"
#include "mjl/natives.hpp"
#include "mjl/parser.hpp"

namespace mjl {

const Method& define_method(MethodTable& table, const std::shared_ptr<const ast::MethodDef>& def) {
  std::vector<std::optional<std::string>> params;
  bool variadic = false;
  for (const auto& p : def->params) {
    params.push_back(p.type);
    variadic = p.variadic;
  }
  return table.define(def->name, Method(MethodSignature::make(params, variadic), def));
}

Interpreter::Interpreter(InterpreterOptions options) : options_(options), types_(TypeTable::prelude()) {
  methods_.set_cache_enabled(options_.cache);
  register_natives(methods_);
  if (options_.base_prelude) load(parse(prelude_text("base")));
  load(parse(rule_set_prelude(options_.rule)));
  prelude_end_site_ = next_site_;
}

ast::Program Interpreter::parse(std::string_view source) {
  ast::Program p = mjl::parse(source, ParseOptions{next_site_});
  next_site_ = p.end_site;
  return p;
}

void Interpreter::load(const ast::Program& program) {
  for (const auto& s : program.stmts) {
    const auto* def = std::get_if<std::shared_ptr<const ast::MethodDef>>(&s);
    if (!def) continue;
    for (const auto& p : (*def)->params) {
      if (p.type && !types_.contains(*p.type)) {
        TypeError err("unknown type " + *p.type + " in method " + (*def)->name);
        err.attach_location((*def)->loc);
        throw err;
      }
    }
    define_method(methods_, *def);
  }
}

std::vector<StatementResult> Interpreter::execute(const ast::Program& program, const ResultSink& sink) {
  std::vector<StatementResult> out;
  for (const auto& s : program.stmts) {
    if (const auto* a = std::get_if<ast::Assign>(&s)) {
      globals_.insert_or_assign(a->name, eval(*a->value, nullptr));
    } else if (const auto* e = std::get_if<ast::ExprStmt>(&s)) {
      out.push_back({e->expr->loc, eval(*e->expr, nullptr)});
      if (sink) sink(out.back());
    }
  }
  return out;
}

Value Interpreter::eval(const ast::Expr& e, const Frame* frame) {
  struct Visitor {
    Interpreter& self;
    const ast::Expr& e;
    const Frame* frame;

    Value operator()(const ast::IntLit& n) const { return n.value; }
    Value operator()(const ast::FloatLit& n) const { return n.value; }
    Value operator()(const ast::StringLit& n) const { return n.value; }
    Value operator()(const ast::Name& n) const {
      if (frame) {
        for (const auto& l : *frame) {
          if (*l.name == n.id) return l.value;
        }
      } else if (auto it = self.globals_.find(n.id); it != self.globals_.end()) {
        return it->second;
      }
      UndefVarError err(n.id);
      err.attach_location(e.loc);
      throw err;
    }
    Value operator()(const ast::Call& c) const { return self.eval_call(c, e, frame); }
    Value operator()(const ast::TupleExpr& t) const {
      std::vector<Value> items;
      self.eval_args(t.items, frame, items);
      return Value::tuple(std::move(items));
    }
  };
  return std::visit(Visitor{*this, e, frame}, e.node);
}

void Interpreter::eval_args(const std::vector<ast::Arg>& args, const Frame* frame, std::vector<Value>& out) {
  out.reserve(args.size());
  for (const auto& a : args) {
    Value v = eval(*a.value, frame);
    if (!a.splice) {
      out.push_back(std::move(v));
      continue;
    }
    try {
      auto items = splice_values(v);
      out.insert(out.end(), std::make_move_iterator(items.begin()), std::make_move_iterator(items.end()));
    } catch (Error& err) {
      err.attach_location(a.value->loc);
      throw;
    }
  }
}

Value Interpreter::eval_call(const ast::Call& c, const ast::Expr& e, const Frame* frame) {
  std::vector<Value> args;
  eval_args(c.args, frame, args);
  try {
    const Method* m = nullptr;
    MethodPtr keep;
    if (!devirtualized_.empty()) {
      if (auto it = devirtualized_.find(c.site); it != devirtualized_.end()) m = it->second.get();
    }
    if (!m) {
      const GenericFunction* gf = methods_.find(c.callee);
      if (!gf) throw UndefVarError(c.callee);
      keep = gf->select_for(args, types_);
      m = keep.get();
    }
    Value result = call_method(*m, args);
    if (options_.trace) trace_.push_back({c.site, c.callee, m->id(), type_of_args(args), result});
    return result;
  } catch (Error& err) {
    if (c.site >= prelude_end_site_) err.attach_location(e.loc);
    throw;
  }
}

Value Interpreter::call_method(const Method& m, std::span<const Value> args) {
  if (depth_ >= options_.max_depth) throw StackOverflowError();
  ++depth_;
  struct Guard {
    std::size_t& d;
    ~Guard() { --d; }
  } guard{depth_};
  return invoke(m, args, *this);
}

Value Interpreter::call(std::string_view function, std::span<const Value> args) {
  const GenericFunction* gf = methods_.find(function);
  if (!gf) throw UndefVarError(std::string(function));
  MethodPtr m = gf->select_for(args, types_);
  return call_method(*m, args);
}

Value Interpreter::run_body(const Method& m, std::span<const Value> args) {
  const ast::MethodDef& def = m.definition();
  Frame frame;
  frame.reserve(def.params.size());
  const bool variadic = m.signature().variadic();
  const std::size_t fixed = variadic ? def.params.size() - 1 : def.params.size();
  for (std::size_t i = 0; i < fixed; ++i) frame.push_back({&def.params[i].name, args[i]});
  if (variadic) {
    frame.push_back({&def.params.back().name, Value::tuple({args.begin() + static_cast<std::ptrdiff_t>(fixed), args.end()})});
  }
  return eval(*def.body, &frame);
}

}  // namespace mjl
