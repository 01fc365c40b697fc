#pragma once

// Generic functions, method tables, and run-time method selection.
//
// A method's signature is viewed as a tuple type, with the repeated final
// parameter of a variadic method as the tuple's tail. Applicability is
// subtyping of the argument tuple type against that tuple. Selection returns
// the unique applicable method more specific than every other applicable
// method, or raises AmbiguityError.

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <variant>
#include <vector>

#include "mjl/types.hpp"
#include "mjl/value.hpp"

namespace mjl {

namespace ast {
struct MethodDef;
}

class Method;
class CallContext;

class MethodSignature {
 public:
  struct Param {
    TypeExpr type;
    bool specialized = false;
  };

  // Throws TypeError if variadic with no parameters.
  MethodSignature(std::vector<Param> params, bool variadic);

  // Convenience: nullopt entries are unspecialized (Any).
  static MethodSignature make(const std::vector<std::optional<std::string>>& params, bool variadic);

  const std::vector<Param>& params() const { return params_; }
  bool variadic() const { return variadic_; }
  std::size_t specialized_count() const;

  // (P1, ..., Pn) or (P1, ..., Pn-1, Pn...) when variadic.
  const TypeExpr& as_tuple() const { return tuple_; }
  std::string to_string() const { return tuple_.to_string(); }

  friend bool operator==(const MethodSignature& a, const MethodSignature& b) { return a.tuple_ == b.tuple_; }

 private:
  std::vector<Param> params_;
  bool variadic_;
  TypeExpr tuple_;
};

// What a native transfer function may ask of the inference engine.
class TransferContext {
 public:
  virtual ~TransferContext() = default;
  virtual const TypeTable& types() const = 0;
  // Result bound for a call the native makes back into the runtime.
  virtual TypeExpr infer_call(std::string_view function, const TypeExpr& args) = 0;
};

// Host-native method: `call` runs it, `transfer` maps an abstract argument
// tuple type (already narrowed to the signature) to a sound bound on the
// result type.
struct NativeBody {
  std::function<Value(CallContext&, std::span<const Value>)> call;
  std::function<TypeExpr(const TypeExpr& args, TransferContext&)> transfer;
};

using MethodBody = std::variant<NativeBody, std::shared_ptr<const ast::MethodDef>>;

class Method {
 public:
  Method(MethodSignature signature, MethodBody body) : signature_(std::move(signature)), body_(std::move(body)) {}

  const MethodSignature& signature() const { return signature_; }
  const MethodBody& body() const { return body_; }
  bool is_native() const { return std::holds_alternative<NativeBody>(body_); }
  const NativeBody& native() const { return std::get<NativeBody>(body_); }
  const ast::MethodDef& definition() const { return *std::get<std::shared_ptr<const ast::MethodDef>>(body_); }

  // "name#k", k = 1-based definition slot in the owning generic function.
  const std::string& id() const { return id_; }
  const std::string& function_name() const { return function_; }

 private:
  friend class GenericFunction;
  MethodSignature signature_;
  MethodBody body_;
  std::string function_;
  std::string id_;
};

using MethodPtr = std::shared_ptr<const Method>;

// a is more specific than b when a, restricted to the argument counts b
// accepts, is a non-empty subtype of b, and b restricted to a's counts is
// not a subtype of a; when both are, the signature accepting strictly fewer
// argument counts is the more specific. For signatures of equal arity this
// is strict subtyping. (Real...) is more specific than (Any, Any...).
bool more_specific(const MethodSignature& a, const MethodSignature& b, const TypeTable& table);

// Interface through which method bodies call back into the runtime.
class CallContext {
 public:
  virtual ~CallContext() = default;
  virtual const TypeTable& types() const = 0;
  virtual Value call(std::string_view function, std::span<const Value> args) = 0;
  virtual Value run_body(const Method& m, std::span<const Value> args) = 0;
};

class GenericFunction {
 public:
  explicit GenericFunction(std::string name) : name_(std::move(name)) {}
  GenericFunction(const GenericFunction&) = delete;
  GenericFunction& operator=(const GenericFunction&) = delete;

  const std::string& name() const { return name_; }
  const std::vector<MethodPtr>& methods() const { return methods_; }

  // Replaces the method with a structurally identical signature (keeping
  // its slot), otherwise appends. Clears the dispatch cache. Throws
  // std::logic_error once frozen.
  const Method& define(Method m);

  std::vector<MethodPtr> applicable(const TypeExpr& arg_types, const TypeTable& table) const;

  // Throws NoMethodError / AmbiguityError. Memoized in the cache per
  // argument tuple type when the cache is enabled.
  MethodPtr select(const TypeExpr& arg_types, const TypeTable& table) const;
  // Same as select(type_of_args(args)) with a cheaper cache key.
  MethodPtr select_for(std::span<const Value> args, const TypeTable& table) const;

  void freeze() { frozen_ = true; }
  bool frozen() const { return frozen_; }
  void set_cache_enabled(bool on);
  bool cache_enabled() const { return cache_enabled_; }
  void clear_cache() const;
  std::size_t cache_size() const;

 private:
  struct CodeHash {
    std::size_t operator()(const std::vector<std::uint32_t>& key) const;
  };

  MethodPtr select_uncached(const TypeExpr& arg_types, const TypeTable& table) const;

  std::string name_;
  std::vector<MethodPtr> methods_;
  bool frozen_ = false;
  bool cache_enabled_ = true;

  mutable std::shared_mutex cache_mutex_;
  mutable std::unordered_map<std::vector<std::uint32_t>, MethodPtr, CodeHash> code_cache_;
  mutable std::unordered_map<TypeExpr, MethodPtr, TypeExprHash> type_cache_;
};

class MethodTable {
 public:
  // Returns the named generic function, creating it if needed.
  GenericFunction& function(const std::string& name);
  GenericFunction* find(std::string_view name);
  const GenericFunction* find(std::string_view name) const;

  const Method& define(const std::string& name, Method m);

  void freeze();
  bool frozen() const { return frozen_; }
  void set_cache_enabled(bool on);

  // In name order.
  std::vector<const GenericFunction*> functions() const;

 private:
  std::map<std::string, std::unique_ptr<GenericFunction>, std::less<>> functions_;
  bool frozen_ = false;
  bool cache_enabled_ = true;
};

Value invoke(const Method& m, std::span<const Value> args, CallContext& ctx);
Value dispatch_call(const GenericFunction& gf, std::span<const Value> args, CallContext& ctx);

}  // namespace mjl
