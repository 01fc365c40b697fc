#include "mjl/dispatch.hpp"

#include <mutex>
#include <stdexcept>

#include "mjl/errors.hpp"

namespace mjl {

MethodSignature::MethodSignature(std::vector<Param> params, bool variadic)
    : params_(std::move(params)), variadic_(variadic) {
  if (variadic_ && params_.empty()) throw TypeError("variadic signature needs a repeated parameter");
  std::vector<TypeExpr> fixed;
  std::optional<TypeExpr> tail;
  for (std::size_t i = 0; i < params_.size(); ++i) {
    if (variadic_ && i + 1 == params_.size()) {
      tail = params_[i].type;
    } else {
      fixed.push_back(params_[i].type);
    }
  }
  tuple_ = TypeExpr::tuple(std::move(fixed), std::move(tail));
}

MethodSignature MethodSignature::make(const std::vector<std::optional<std::string>>& params, bool variadic) {
  std::vector<Param> ps;
  for (const auto& p : params) {
    ps.push_back(p ? Param{TypeExpr::named(*p), true} : Param{TypeExpr::any(), false});
  }
  return MethodSignature(std::move(ps), variadic);
}

std::size_t MethodSignature::specialized_count() const {
  std::size_t n = 0;
  for (const auto& p : params_) n += p.specialized ? 1 : 0;
  return n;
}

namespace {

// The tuple of Any accepting exactly the argument counts `t` accepts.
TypeExpr arity_of(const TypeExpr& t) {
  std::optional<TypeExpr> tail;
  if (t.has_tail()) tail = TypeExpr::any();
  return TypeExpr::tuple(std::vector<TypeExpr>(t.fixed().size(), TypeExpr::any()), std::move(tail));
}

}  // namespace

bool more_specific(const MethodSignature& a, const MethodSignature& b, const TypeTable& table) {
  const TypeExpr& ta = a.as_tuple();
  const TypeExpr& tb = b.as_tuple();
  const TypeExpr a_at_b = meet(ta, arity_of(tb), table);
  if (a_at_b.is_bottom() || !subtype(a_at_b, tb, table)) return false;
  if (!subtype(meet(tb, arity_of(ta), table), ta, table)) return true;
  // Same types wherever both apply: the one accepting fewer counts wins.
  const TypeExpr la = arity_of(ta), lb = arity_of(tb);
  return subtype(la, lb, table) && !subtype(lb, la, table);
}

// ---------------------------------------------------------------------------

namespace {

// Cache codes for values whose type is a fixed named type; 0 means the
// value's type is structural (tuples, shapes) and needs the TypeExpr key.
std::uint32_t type_code(const Value& v) {
  const auto& s = v.storage();
  if (std::holds_alternative<std::int64_t>(s)) return 1;
  if (std::holds_alternative<double>(s)) return 2;
  if (std::holds_alternative<std::string>(s)) return 3;
  if (std::holds_alternative<IndexRange>(s)) return 4;
  if (const auto* a = std::get_if<ArrayValue>(&s)) return a->integral ? 5 : 6;
  if (std::holds_alternative<ListValue>(s)) return 7;
  if (std::holds_alternative<units::Quantity>(s)) return 8;
  return 0;
}

}  // namespace

std::size_t GenericFunction::CodeHash::operator()(const std::vector<std::uint32_t>& key) const {
  std::size_t h = key.size();
  for (auto c : key) h = h * 31 + c;
  return h;
}

const Method& GenericFunction::define(Method m) {
  if (frozen_) throw std::logic_error("method table for " + name_ + " is frozen");
  m.function_ = name_;
  std::size_t slot = methods_.size();
  for (std::size_t i = 0; i < methods_.size(); ++i) {
    if (methods_[i]->signature() == m.signature()) slot = i;
  }
  m.id_ = name_ + "#" + std::to_string(slot + 1);
  auto ptr = std::make_shared<const Method>(std::move(m));
  if (slot == methods_.size()) {
    methods_.push_back(ptr);
  } else {
    methods_[slot] = ptr;
  }
  clear_cache();
  return *methods_[slot];
}

std::vector<MethodPtr> GenericFunction::applicable(const TypeExpr& arg_types, const TypeTable& table) const {
  std::vector<MethodPtr> out;
  for (const auto& m : methods_) {
    if (subtype(arg_types, m->signature().as_tuple(), table)) out.push_back(m);
  }
  return out;
}

MethodPtr GenericFunction::select_uncached(const TypeExpr& arg_types, const TypeTable& table) const {
  const auto candidates = applicable(arg_types, table);
  if (candidates.empty()) throw NoMethodError(name_, arg_types.to_string());
  for (const auto& m : candidates) {
    bool wins = true;
    for (const auto& other : candidates) {
      if (other != m && !more_specific(m->signature(), other->signature(), table)) {
        wins = false;
        break;
      }
    }
    if (wins) return m;
  }
  std::string names;
  for (const auto& m : candidates) names += " " + m->id() + m->signature().to_string();
  throw AmbiguityError(name_ + arg_types.to_string() + " is ambiguous among" + names);
}

MethodPtr GenericFunction::select(const TypeExpr& arg_types, const TypeTable& table) const {
  if (!cache_enabled_) return select_uncached(arg_types, table);
  {
    std::shared_lock lock(cache_mutex_);
    auto it = type_cache_.find(arg_types);
    if (it != type_cache_.end()) return it->second;
  }
  MethodPtr m = select_uncached(arg_types, table);
  std::unique_lock lock(cache_mutex_);
  type_cache_.emplace(arg_types, m);
  return m;
}

MethodPtr GenericFunction::select_for(std::span<const Value> args, const TypeTable& table) const {
  if (!cache_enabled_) return select_uncached(type_of_args(args), table);
  thread_local std::vector<std::uint32_t> key;
  key.clear();
  for (const auto& a : args) {
    const auto c = type_code(a);
    if (c == 0) return select(type_of_args(args), table);
    key.push_back(c);
  }
  {
    std::shared_lock lock(cache_mutex_);
    auto it = code_cache_.find(key);
    if (it != code_cache_.end()) return it->second;
  }
  MethodPtr m = select_uncached(type_of_args(args), table);
  std::unique_lock lock(cache_mutex_);
  code_cache_.emplace(key, m);
  return m;
}

void GenericFunction::set_cache_enabled(bool on) {
  cache_enabled_ = on;
  clear_cache();
}

void GenericFunction::clear_cache() const {
  std::unique_lock lock(cache_mutex_);
  code_cache_.clear();
  type_cache_.clear();
}

std::size_t GenericFunction::cache_size() const {
  std::shared_lock lock(cache_mutex_);
  return code_cache_.size() + type_cache_.size();
}

// ---------------------------------------------------------------------------

GenericFunction& MethodTable::function(const std::string& name) {
  auto it = functions_.find(name);
  if (it != functions_.end()) return *it->second;
  if (frozen_) throw std::logic_error("method table is frozen");
  auto gf = std::make_unique<GenericFunction>(name);
  gf->set_cache_enabled(cache_enabled_);
  return *functions_.emplace(name, std::move(gf)).first->second;
}

GenericFunction* MethodTable::find(std::string_view name) {
  auto it = functions_.find(name);
  return it == functions_.end() ? nullptr : it->second.get();
}

const GenericFunction* MethodTable::find(std::string_view name) const {
  auto it = functions_.find(name);
  return it == functions_.end() ? nullptr : it->second.get();
}

const Method& MethodTable::define(const std::string& name, Method m) { return function(name).define(std::move(m)); }

void MethodTable::freeze() {
  frozen_ = true;
  for (auto& [_, gf] : functions_) gf->freeze();
}

void MethodTable::set_cache_enabled(bool on) {
  cache_enabled_ = on;
  for (auto& [_, gf] : functions_) gf->set_cache_enabled(on);
}

std::vector<const GenericFunction*> MethodTable::functions() const {
  std::vector<const GenericFunction*> out;
  for (const auto& [_, gf] : functions_) out.push_back(gf.get());
  return out;
}

// ---------------------------------------------------------------------------

Value invoke(const Method& m, std::span<const Value> args, CallContext& ctx) {
  if (m.is_native()) return m.native().call(ctx, args);
  return ctx.run_body(m, args);
}

Value dispatch_call(const GenericFunction& gf, std::span<const Value> args, CallContext& ctx) {
  MethodPtr m = gf.select_for(args, ctx.types());
  return invoke(*m, args, ctx);
}

}  // namespace mjl
