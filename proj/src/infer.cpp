#include "mjl/infer.hpp"

#include <algorithm>
#include <unordered_map>

#include "mjl/errors.hpp"

namespace mjl {

const CallSiteInfo* InferenceResult::site(int id) const {
  auto it = sites.find(id);
  return it == sites.end() ? nullptr : &it->second;
}

std::unordered_map<int, MethodPtr> InferenceResult::static_targets() const {
  std::unordered_map<int, MethodPtr> out;
  for (const auto& [id, s] : sites) {
    if (s.reached && s.kind == DispatchKind::Static) out.emplace(id, s.method);
  }
  return out;
}

TypeExpr splice_types(const TypeExpr& t) {
  if (t.is_bottom() || t.is_tuple()) return t;
  if (t.is_named("Range")) return TypeExpr::variadic(TypeExpr::named("Int"));
  return TypeExpr::variadic(TypeExpr::any());
}

namespace {

struct InstanceKey {
  const Method* method;
  TypeExpr args;
  friend bool operator==(const InstanceKey&, const InstanceKey&) = default;
};

struct InstanceKeyHash {
  std::size_t operator()(const InstanceKey& k) const {
    return std::hash<const void*>()(k.method) * 31 + k.args.hash();
  }
};

struct Instance {
  TypeExpr result;
  std::size_t evaluated_pass = static_cast<std::size_t>(-1);
  bool in_progress = false;
};

using TypeEnv = std::vector<std::pair<const std::string*, TypeExpr>>;

}  // namespace

struct Inferencer::Impl final : TransferContext {
  const MethodTable& methods;
  const TypeTable& table;
  InferOptions options;

  std::unordered_map<InstanceKey, Instance, InstanceKeyHash> instances;
  std::unordered_map<const GenericFunction*, std::size_t> instance_counts;
  // Generic functions with a body currently being evaluated, innermost last.
  std::vector<std::pair<const GenericFunction*, TypeExpr>> stack;
  std::map<std::string, TypeExpr, std::less<>> globals;
  std::map<int, CallSiteInfo> sites;
  std::size_t pass = 0;
  bool changed = false;
  bool give_up = false;
  bool budget_exceeded = false;

  Impl(const MethodTable& m, const TypeTable& t, InferOptions o) : methods(m), table(t), options(o) {}

  const TypeTable& types() const override { return table; }

  TypeExpr infer_call(std::string_view function, const TypeExpr& args) override {
    const GenericFunction* gf = methods.find(function);
    if (!gf) return TypeExpr::bottom();
    return call(*gf, args).type;
  }

  // Widens every tuple at every nesting level and replaces tuples nested
  // deeper than max_depth with Any.
  TypeExpr normalize(const TypeExpr& t, std::size_t level = 0) const {
    if (!t.is_tuple()) return t;
    if (level > options.max_depth) return TypeExpr::any();
    std::vector<TypeExpr> fixed;
    fixed.reserve(t.fixed().size());
    for (const auto& e : t.fixed()) fixed.push_back(normalize(e, level + 1));
    std::optional<TypeExpr> tail;
    if (t.has_tail()) tail = *t.tail();
    return widen(TypeExpr::tuple(std::move(fixed), std::move(tail)), options.max_fixed, table);
  }

  struct Outcome {
    TypeExpr type;
    const Method* target = nullptr;  // set when every concretization selects it
  };

  Outcome call(const GenericFunction& gf, TypeExpr args) {
    if (args.is_bottom()) return {};
    if (give_up) return {TypeExpr::any(), nullptr};
    args = normalize(args);
    for (auto it = stack.rbegin(); it != stack.rend(); ++it) {
      if (it->first != &gf) continue;
      const TypeExpr& prev = it->second;
      if (prev.is_tuple() && args.fixed().size() > prev.fixed().size() && !subtype(args, prev, table)) {
        args = normalize(join(prev, args, table));
      }
      break;
    }

    struct Candidate {
      const Method* method;
      TypeExpr narrowed;
    };
    std::vector<Candidate> candidates;
    for (const auto& m : gf.methods()) {
      TypeExpr n = meet(args, m->signature().as_tuple(), table);
      if (!n.is_bottom()) candidates.push_back({m.get(), std::move(n)});
    }
    // A candidate is dead when a more specific method accepts all of its
    // narrowed arguments: it can never win.
    std::vector<const Candidate*> live;
    for (const auto& c : candidates) {
      bool dead = false;
      for (const auto& o : candidates) {
        if (o.method != c.method && more_specific(o.method->signature(), c.method->signature(), table) &&
            subtype(c.narrowed, o.method->signature().as_tuple(), table)) {
          dead = true;
          break;
        }
      }
      if (!dead) live.push_back(&c);
    }

    Outcome out;
    for (const auto* c : live) out.type = join(out.type, infer_method(gf, *c->method, c->narrowed), table);
    out.type = normalize(out.type);
    // Static only if the survivor applies to every concretization and beats
    // every method that could also apply to some of them.
    if (live.size() == 1 && subtype(args, live[0]->method->signature().as_tuple(), table)) {
      const Method* m = live[0]->method;
      bool beats_all = true;
      for (const auto& c : candidates) {
        if (c.method != m && !more_specific(m->signature(), c.method->signature(), table)) beats_all = false;
      }
      if (beats_all) out.target = m;
    }
    return out;
  }

  TypeExpr infer_method(const GenericFunction& gf, const Method& m, TypeExpr args) {
    if (m.is_native()) return m.native().transfer(args, *this);

    InstanceKey key{&m, args};
    auto it = instances.find(key);
    if (it == instances.end()) {
      auto& count = instance_counts[&gf];
      if (count >= options.budget) {
        // Out of budget: one catch-all instance over the whole signature.
        budget_exceeded = true;
        key.args = normalize(m.signature().as_tuple());
        args = key.args;
        it = instances.find(key);
      }
      if (it == instances.end()) {
        ++count;
        it = instances.emplace(key, Instance{}).first;
      }
    }
    Instance* inst = &it->second;  // node addresses survive rehashing
    if (inst->in_progress || inst->evaluated_pass == pass) return inst->result;

    inst->in_progress = true;
    stack.emplace_back(&gf, args);
    TypeExpr r;
    try {
      r = eval_body(m, args);
    } catch (...) {
      stack.pop_back();
      inst->in_progress = false;
      throw;
    }
    stack.pop_back();
    inst->in_progress = false;
    inst->evaluated_pass = pass;
    TypeExpr next = normalize(join(inst->result, r, table));
    if (!(next == inst->result)) {
      inst->result = std::move(next);
      changed = true;
    }
    return inst->result;
  }

  TypeExpr eval_body(const Method& m, const TypeExpr& args) {
    const ast::MethodDef& def = m.definition();
    TypeEnv env;
    const bool variadic = m.signature().variadic();
    const std::size_t fixed = variadic ? def.params.size() - 1 : def.params.size();
    for (std::size_t i = 0; i < fixed; ++i) env.emplace_back(&def.params[i].name, args.element(i));
    if (variadic) env.emplace_back(&def.params.back().name, normalize(args.drop_front(fixed)));
    return eval(*def.body, &env);
  }

  TypeExpr eval(const ast::Expr& e, const TypeEnv* env) {
    struct Visitor {
      Impl& self;
      const ast::Expr& e;
      const TypeEnv* env;

      TypeExpr operator()(const ast::IntLit&) const { return TypeExpr::named("Int"); }
      TypeExpr operator()(const ast::FloatLit&) const { return TypeExpr::named("Float"); }
      TypeExpr operator()(const ast::StringLit&) const { return TypeExpr::named("String"); }
      TypeExpr operator()(const ast::Name& n) const {
        if (env) {
          for (const auto& [name, t] : *env) {
            if (*name == n.id) return t;
          }
          return TypeExpr::bottom();
        }
        auto it = self.globals.find(n.id);
        return it == self.globals.end() ? TypeExpr::bottom() : it->second;
      }
      TypeExpr operator()(const ast::Call& c) const { return self.eval_call(c, e, env); }
      TypeExpr operator()(const ast::TupleExpr& t) const {
        bool elidable = true;
        return self.normalize(self.eval_args(t.items, env, elidable));
      }
    };
    return std::visit(Visitor{*this, e, env}, e.node);
  }

  TypeExpr eval_args(const std::vector<ast::Arg>& args, const TypeEnv* env, bool& elidable) {
    TypeExpr acc = TypeExpr::tuple({});
    for (const auto& a : args) {
      TypeExpr t = eval(*a.value, env);
      if (a.splice) {
        TypeExpr s = splice_types(t);
        if (!s.is_tuple() || s.has_tail()) elidable = false;
        acc = concat(acc, s, table);
      } else {
        acc = concat(acc, TypeExpr::tuple({std::move(t)}), table);
      }
    }
    return acc;
  }

  TypeExpr eval_call(const ast::Call& c, const ast::Expr& e, const TypeEnv* env) {
    bool elidable = true;
    bool has_splice = false;
    for (const auto& a : c.args) has_splice = has_splice || a.splice;
    TypeExpr args = eval_args(c.args, env, elidable);

    auto& info = sites[c.site];
    info.site = c.site;
    info.callee = c.callee;
    info.loc = e.loc;
    if (args.is_bottom()) return TypeExpr::bottom();

    const GenericFunction* gf = methods.find(c.callee);
    Outcome out;
    if (gf) out = call(*gf, args);

    const bool first = !info.reached;
    info.type = join(info.type, out.type, table);
    const Method* prev = info.method.get();
    if (first) {
      info.reached = true;
      info.kind = out.target ? DispatchKind::Static : DispatchKind::Dynamic;
      info.splice_elidable = has_splice && elidable;
    } else {
      if (!out.target || prev != out.target) info.kind = DispatchKind::Dynamic;
      info.splice_elidable = info.splice_elidable && has_splice && elidable;
    }
    if (info.kind == DispatchKind::Static) {
      if (first) info.method = find_ptr(*gf, out.target);
    } else {
      info.method.reset();
    }
    return out.type;
  }

  static MethodPtr find_ptr(const GenericFunction& gf, const Method* m) {
    for (const auto& p : gf.methods()) {
      if (p.get() == m) return p;
    }
    return nullptr;
  }

  // Runs `body` once per pass until no instance result changes.
  template <class Body>
  void fixpoint(Body&& body) {
    for (pass = 0;; ++pass) {
      changed = false;
      sites.clear();
      globals.clear();
      body();
      if (!changed || give_up) break;
      if (pass + 1 >= options.max_passes) give_up = true;
    }
  }
};

Inferencer::Inferencer(const MethodTable& methods, const TypeTable& types, InferOptions options)
    : methods_(methods), types_(types), options_(options) {}

TypeExpr Inferencer::infer_call(std::string_view function, const TypeExpr& args) {
  Impl impl(methods_, types_, options_);
  TypeExpr result;
  impl.fixpoint([&] { result = impl.infer_call(function, args); });
  return result;
}

InferenceResult Inferencer::infer_program(const ast::Program& program) {
  Impl impl(methods_, types_, options_);
  impl.fixpoint([&] {
    for (const auto& s : program.stmts) {
      if (const auto* a = std::get_if<ast::Assign>(&s)) {
        impl.globals.insert_or_assign(a->name, impl.eval(*a->value, nullptr));
      } else if (const auto* e = std::get_if<ast::ExprStmt>(&s)) {
        impl.eval(*e->expr, nullptr);
      }
    }
  });

  InferenceResult result;
  result.sites = std::move(impl.sites);
  // Sites of the program that inference never reached.
  auto note = [&](const ast::Call& c, const SourceLoc& loc) {
    auto& info = result.sites[c.site];
    info.site = c.site;
    info.callee = c.callee;
    info.loc = loc;
  };
  for (const auto& s : program.stmts) {
    if (const auto* d = std::get_if<std::shared_ptr<const ast::MethodDef>>(&s)) {
      ast::for_each_call(*(*d)->body, note);
    } else if (const auto* a = std::get_if<ast::Assign>(&s)) {
      ast::for_each_call(*a->value, note);
    } else {
      ast::for_each_call(*std::get<ast::ExprStmt>(s).expr, note);
    }
  }
  for (const auto& [key, inst] : impl.instances) {
    result.instances.push_back({key.method->id(), key.args, inst.result});
  }
  std::sort(result.instances.begin(), result.instances.end(), [](const InstanceInfo& a, const InstanceInfo& b) {
    if (a.method != b.method) return a.method < b.method;
    return a.args.to_string() < b.args.to_string();
  });
  result.passes = impl.pass + 1;
  result.converged = !impl.give_up;
  result.budget_exceeded = impl.budget_exceeded;
  return result;
}

std::vector<const CallSiteInfo*> program_sites(const InferenceResult& result, const ast::Program& program) {
  std::vector<const CallSiteInfo*> own;
  for (const auto& [id, s] : result.sites) {
    if (id >= program.first_site && id < program.end_site) own.push_back(&s);
  }
  std::sort(own.begin(), own.end(), [](const CallSiteInfo* a, const CallSiteInfo* b) {
    if (a->loc.line != b->loc.line) return a->loc.line < b->loc.line;
    if (a->loc.column != b->loc.column) return a->loc.column < b->loc.column;
    return a->site < b->site;
  });
  return own;
}

std::string format_report(const InferenceResult& result, const ast::Program& program) {
  std::string out;
  for (const auto* s : program_sites(result, program)) {
    out += s->loc.to_string();
    if (s->kind == DispatchKind::Static) {
      out += " STATIC " + s->method->id();
    } else {
      out += " DYNAMIC " + s->callee;
    }
    out += " " + s->type.to_string();
    if (s->splice_elidable) out += " splice-elidable";
    out += "\n";
  }
  return out;
}

}  // namespace mjl
