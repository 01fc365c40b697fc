#pragma once

// The type lattice: named types in a single-inheritance tree rooted at Any,
// tuple types with an optional variadic tail, and Bottom.

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace mjl {

class TypeExpr {
 public:
  enum class Kind { Bottom, Named, Tuple };

  // Default-constructed TypeExpr is Bottom.
  TypeExpr() = default;

  static TypeExpr bottom() { return TypeExpr(); }
  static TypeExpr named(std::string name);
  static TypeExpr any() { return named("Any"); }

  // Canonicalizing constructor: a Bottom fixed element makes the whole
  // tuple Bottom, a Bottom tail is dropped, and a tuple-typed tail is
  // coarsened to Any (tails are never tuples).
  static TypeExpr tuple(std::vector<TypeExpr> fixed, std::optional<TypeExpr> tail = std::nullopt);
  static TypeExpr variadic(TypeExpr element) { return tuple({}, std::move(element)); }

  Kind kind() const { return kind_; }
  bool is_bottom() const { return kind_ == Kind::Bottom; }
  bool is_named() const { return kind_ == Kind::Named; }
  bool is_tuple() const { return kind_ == Kind::Tuple; }
  bool is_named(std::string_view n) const { return kind_ == Kind::Named && name_ == n; }

  const std::string& name() const { return name_; }
  const std::vector<TypeExpr>& fixed() const { return fixed_; }
  bool has_tail() const { return tail_ != nullptr; }
  const TypeExpr* tail() const { return tail_.get(); }

  // Element type at position i of a tuple (fixed element or tail), or
  // Bottom when the position cannot exist.
  TypeExpr element(std::size_t i) const;

  // The tuple of elements from position `start` on.
  TypeExpr drop_front(std::size_t start) const;

  // Nesting depth: 0 for Named/Bottom, 1 + max element depth for tuples.
  std::size_t depth() const;

  std::string to_string() const;
  std::size_t hash() const;

  friend bool operator==(const TypeExpr& a, const TypeExpr& b);

 private:
  Kind kind_ = Kind::Bottom;
  std::string name_;
  std::vector<TypeExpr> fixed_;
  std::shared_ptr<const TypeExpr> tail_;
};

struct TypeExprHash {
  std::size_t operator()(const TypeExpr& t) const { return t.hash(); }
};

// Parses the textual type syntax produced by TypeExpr::to_string, e.g.
// "(Int, Real...)", "(Int,)", "()", "Bottom". Throws TypeError.
TypeExpr parse_type(std::string_view text);

class TypeTable {
 public:
  // Empty table containing only Any.
  TypeTable();

  // Any > Real > {Integer > Int, Float}; Any > {Range, String, Shape, List,
  // Quantity}; Any > Array > {IntArray, FloatArray}.
  static TypeTable prelude();

  // Declares `name` under `super`. Throws TypeError on redeclaration,
  // unknown supertype, or a concrete supertype.
  void declare(const std::string& name, const std::string& super, bool is_abstract);

  bool contains(std::string_view name) const;
  bool is_abstract(std::string_view name) const;
  const std::string& supertype(std::string_view name) const;

  // Named-tree queries. Throw TypeError for undeclared names.
  bool is_descendant(std::string_view sub, std::string_view super) const;
  const std::string& common_ancestor(std::string_view a, std::string_view b) const;

  std::vector<std::string> names() const;

  // Throws TypeError if `t` mentions an undeclared name.
  void check_declared(const TypeExpr& t) const;

 private:
  struct Entry {
    std::string super;
    bool is_abstract = false;
    int depth = 0;
  };
  const Entry& entry(std::string_view name) const;

  std::unordered_map<std::string, Entry> entries_;
  std::vector<std::string> order_;
};

bool subtype(const TypeExpr& a, const TypeExpr& b, const TypeTable& table);

// Least upper bound for named types; for tuples an upper bound that keeps
// the shared fixed prefix and folds everything else into the tail.
TypeExpr join(const TypeExpr& a, const TypeExpr& b, const TypeTable& table);

// Exact intersection of the value sets of a and b.
TypeExpr meet(const TypeExpr& a, const TypeExpr& b, const TypeTable& table);

inline bool intersects(const TypeExpr& a, const TypeExpr& b, const TypeTable& table) {
  return !meet(a, b, table).is_bottom();
}

// Folds tuple elements beyond max_fixed (and any existing tail) into a
// single variadic tail. Always returns a supertype of t.
TypeExpr widen(const TypeExpr& t, std::size_t max_fixed, const TypeTable& table);

// Tuple type of the concatenation of two argument sequences.
TypeExpr concat(const TypeExpr& front, const TypeExpr& back, const TypeTable& table);

}  // namespace mjl
