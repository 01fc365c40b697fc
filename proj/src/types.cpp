#include "mjl/types.hpp"

#include <algorithm>
#include <cctype>
#include <functional>

#include "mjl/errors.hpp"

namespace mjl {

TypeExpr TypeExpr::named(std::string name) {
  TypeExpr t;
  t.kind_ = Kind::Named;
  t.name_ = std::move(name);
  return t;
}

TypeExpr TypeExpr::tuple(std::vector<TypeExpr> fixed, std::optional<TypeExpr> tail) {
  for (const auto& e : fixed) {
    if (e.is_bottom()) return bottom();
  }
  TypeExpr t;
  t.kind_ = Kind::Tuple;
  t.fixed_ = std::move(fixed);
  if (tail && !tail->is_bottom()) {
    if (tail->is_tuple()) {
      t.tail_ = std::make_shared<const TypeExpr>(any());
    } else {
      t.tail_ = std::make_shared<const TypeExpr>(std::move(*tail));
    }
  }
  return t;
}

TypeExpr TypeExpr::element(std::size_t i) const {
  if (!is_tuple()) return bottom();
  if (i < fixed_.size()) return fixed_[i];
  return tail_ ? *tail_ : bottom();
}

TypeExpr TypeExpr::drop_front(std::size_t start) const {
  if (!is_tuple()) return bottom();
  std::optional<TypeExpr> tail;
  if (tail_) tail = *tail_;
  if (start >= fixed_.size()) {
    if (start > fixed_.size() && !tail_) return bottom();
    return tuple({}, tail);
  }
  return tuple(std::vector<TypeExpr>(fixed_.begin() + static_cast<std::ptrdiff_t>(start), fixed_.end()),
               tail);
}

std::size_t TypeExpr::depth() const {
  if (!is_tuple()) return 0;
  std::size_t d = 0;
  for (const auto& e : fixed_) d = std::max(d, e.depth());
  if (tail_) d = std::max(d, tail_->depth());
  return d + 1;
}

std::string TypeExpr::to_string() const {
  switch (kind_) {
    case Kind::Bottom:
      return "Bottom";
    case Kind::Named:
      return name_;
    case Kind::Tuple:
      break;
  }
  std::string out = "(";
  for (std::size_t i = 0; i < fixed_.size(); ++i) {
    if (i) out += ", ";
    out += fixed_[i].to_string();
  }
  if (tail_) {
    if (!fixed_.empty()) out += ", ";
    out += tail_->to_string() + "...";
  } else if (fixed_.size() == 1) {
    out += ",";
  }
  return out + ")";
}

std::size_t TypeExpr::hash() const {
  std::size_t h = static_cast<std::size_t>(kind_) * 0x9e3779b97f4a7c15ULL;
  auto mix = [&h](std::size_t v) { h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2); };
  if (kind_ == Kind::Named) mix(std::hash<std::string>{}(name_));
  for (const auto& e : fixed_) mix(e.hash());
  mix(tail_ ? tail_->hash() + 1 : 0);
  return h;
}

bool operator==(const TypeExpr& a, const TypeExpr& b) {
  if (a.kind_ != b.kind_) return false;
  switch (a.kind_) {
    case TypeExpr::Kind::Bottom:
      return true;
    case TypeExpr::Kind::Named:
      return a.name_ == b.name_;
    case TypeExpr::Kind::Tuple:
      break;
  }
  if (a.fixed_ != b.fixed_) return false;
  if (a.has_tail() != b.has_tail()) return false;
  return !a.has_tail() || *a.tail_ == *b.tail_;
}

// ---------------------------------------------------------------------------
// parse_type

namespace {

class TypeParser {
 public:
  explicit TypeParser(std::string_view text) : text_(text) {}

  TypeExpr parse() {
    TypeExpr t = parse_type();
    skip_ws();
    if (pos_ != text_.size()) fail("trailing characters");
    return t;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw TypeError("cannot parse type '" + std::string(text_) + "': " + why);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool consume(std::string_view tok) {
    skip_ws();
    if (text_.substr(pos_, tok.size()) == tok) {
      pos_ += tok.size();
      return true;
    }
    return false;
  }

  TypeExpr parse_type() {
    skip_ws();
    if (consume("(")) return parse_tuple_rest();
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      ++pos_;
    }
    if (start == pos_) fail("expected a type");
    std::string name(text_.substr(start, pos_ - start));
    if (name == "Bottom") return TypeExpr::bottom();
    return TypeExpr::named(std::move(name));
  }

  TypeExpr parse_tuple_rest() {
    std::vector<TypeExpr> fixed;
    std::optional<TypeExpr> tail;
    if (consume(")")) return TypeExpr::tuple({});
    for (;;) {
      TypeExpr e = parse_type();
      if (consume("...")) {
        tail = std::move(e);
        if (!consume(")")) fail("variadic element must be last");
        break;
      }
      fixed.push_back(std::move(e));
      if (consume(")")) break;
      if (!consume(",")) fail("expected ',' or ')'");
      if (consume(")")) break;
    }
    return TypeExpr::tuple(std::move(fixed), std::move(tail));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

TypeExpr parse_type(std::string_view text) { return TypeParser(text).parse(); }

// ---------------------------------------------------------------------------
// TypeTable

TypeTable::TypeTable() {
  entries_.emplace("Any", Entry{"Any", true, 0});
  order_.push_back("Any");
}

TypeTable TypeTable::prelude() {
  TypeTable t;
  t.declare("Real", "Any", true);
  t.declare("Integer", "Real", true);
  t.declare("Int", "Integer", false);
  t.declare("Float", "Real", false);
  t.declare("Range", "Any", false);
  t.declare("String", "Any", false);
  t.declare("Shape", "Any", false);
  t.declare("List", "Any", false);
  t.declare("Quantity", "Any", false);
  t.declare("Array", "Any", true);
  t.declare("IntArray", "Array", false);
  t.declare("FloatArray", "Array", false);
  return t;
}

void TypeTable::declare(const std::string& name, const std::string& super, bool is_abstract) {
  if (name == "Bottom") throw TypeError("Bottom is reserved");
  if (entries_.count(name)) throw TypeError("type " + name + " already declared");
  auto it = entries_.find(super);
  if (it == entries_.end()) throw TypeError("undeclared supertype " + super);
  if (!it->second.is_abstract) throw TypeError("cannot subtype concrete type " + super);
  entries_.emplace(name, Entry{super, is_abstract, it->second.depth + 1});
  order_.push_back(name);
}

const TypeTable::Entry& TypeTable::entry(std::string_view name) const {
  auto it = entries_.find(std::string(name));
  if (it == entries_.end()) throw TypeError("undeclared type " + std::string(name));
  return it->second;
}

bool TypeTable::contains(std::string_view name) const { return entries_.count(std::string(name)) != 0; }

bool TypeTable::is_abstract(std::string_view name) const { return entry(name).is_abstract; }

const std::string& TypeTable::supertype(std::string_view name) const { return entry(name).super; }

bool TypeTable::is_descendant(std::string_view sub, std::string_view super) const {
  const Entry* e = &entry(sub);
  const int target_depth = entry(super).depth;
  std::string_view cur = sub;
  while (e->depth > target_depth) {
    cur = e->super;
    e = &entry(cur);
  }
  return cur == super;
}

const std::string& TypeTable::common_ancestor(std::string_view a, std::string_view b) const {
  auto ia = entries_.find(std::string(a));
  auto ib = entries_.find(std::string(b));
  if (ia == entries_.end()) throw TypeError("undeclared type " + std::string(a));
  if (ib == entries_.end()) throw TypeError("undeclared type " + std::string(b));
  while (ia->second.depth > ib->second.depth) ia = entries_.find(ia->second.super);
  while (ib->second.depth > ia->second.depth) ib = entries_.find(ib->second.super);
  while (ia != ib) {
    ia = entries_.find(ia->second.super);
    ib = entries_.find(ib->second.super);
  }
  return ia->first;
}

std::vector<std::string> TypeTable::names() const { return order_; }

void TypeTable::check_declared(const TypeExpr& t) const {
  if (t.is_named()) {
    entry(t.name());
  } else if (t.is_tuple()) {
    for (const auto& e : t.fixed()) check_declared(e);
    if (t.has_tail()) check_declared(*t.tail());
  }
}

// ---------------------------------------------------------------------------
// Lattice operations

namespace {

bool tuple_subtype(const TypeExpr& a, const TypeExpr& b, const TypeTable& table) {
  const auto& af = a.fixed();
  const auto& bf = b.fixed();
  if (a.has_tail()) {
    // a contains arbitrarily long sequences, and its length-|af| members
    // must also be in b.
    if (!b.has_tail() || af.size() < bf.size()) return false;
    if (!subtype(*a.tail(), *b.tail(), table)) return false;
  } else if (b.has_tail() ? af.size() < bf.size() : af.size() != bf.size()) {
    return false;
  }
  for (std::size_t i = 0; i < af.size(); ++i) {
    if (!subtype(af[i], b.element(i), table)) return false;
  }
  return true;
}

TypeExpr join_all(const std::vector<TypeExpr>& ts, const TypeTable& table) {
  TypeExpr acc;
  for (const auto& t : ts) acc = join(acc, t, table);
  return acc;
}

}  // namespace

bool subtype(const TypeExpr& a, const TypeExpr& b, const TypeTable& table) {
  if (a.is_bottom()) {
    table.check_declared(b);
    return true;
  }
  if (b.is_bottom()) {
    table.check_declared(a);
    return false;
  }
  if (b.is_named("Any")) {
    table.check_declared(a);
    return true;
  }
  if (a.is_named() && b.is_named()) return table.is_descendant(a.name(), b.name());
  if (a.is_tuple() && b.is_tuple()) return tuple_subtype(a, b, table);
  table.check_declared(a);
  table.check_declared(b);
  return false;
}

TypeExpr join(const TypeExpr& a, const TypeExpr& b, const TypeTable& table) {
  if (a.is_bottom()) {
    table.check_declared(b);
    return b;
  }
  if (b.is_bottom()) {
    table.check_declared(a);
    return a;
  }
  if (a.is_named() && b.is_named()) return TypeExpr::named(table.common_ancestor(a.name(), b.name()));
  if (!a.is_tuple() || !b.is_tuple()) {
    table.check_declared(a);
    table.check_declared(b);
    return TypeExpr::any();
  }
  const auto& af = a.fixed();
  const auto& bf = b.fixed();
  if (!a.has_tail() && !b.has_tail() && af.size() == bf.size()) {
    std::vector<TypeExpr> out;
    out.reserve(af.size());
    for (std::size_t i = 0; i < af.size(); ++i) out.push_back(join(af[i], bf[i], table));
    return TypeExpr::tuple(std::move(out));
  }
  const std::size_t shared = std::min(af.size(), bf.size());
  std::vector<TypeExpr> prefix;
  prefix.reserve(shared);
  for (std::size_t i = 0; i < shared; ++i) prefix.push_back(join(af[i], bf[i], table));
  std::vector<TypeExpr> rest(af.begin() + static_cast<std::ptrdiff_t>(shared), af.end());
  rest.insert(rest.end(), bf.begin() + static_cast<std::ptrdiff_t>(shared), bf.end());
  if (a.has_tail()) rest.push_back(*a.tail());
  if (b.has_tail()) rest.push_back(*b.tail());
  return TypeExpr::tuple(std::move(prefix), join_all(rest, table));
}

TypeExpr meet(const TypeExpr& a, const TypeExpr& b, const TypeTable& table) {
  if (a.is_bottom() || b.is_bottom()) {
    table.check_declared(a);
    table.check_declared(b);
    return TypeExpr::bottom();
  }
  if (a.is_named("Any")) {
    table.check_declared(b);
    return b;
  }
  if (b.is_named("Any")) {
    table.check_declared(a);
    return a;
  }
  if (a.is_named() && b.is_named()) {
    if (table.is_descendant(a.name(), b.name())) return a;
    if (table.is_descendant(b.name(), a.name())) return b;
    return TypeExpr::bottom();
  }
  if (!a.is_tuple() || !b.is_tuple()) {
    table.check_declared(a);
    table.check_declared(b);
    return TypeExpr::bottom();
  }
  const auto& af = a.fixed();
  const auto& bf = b.fixed();
  std::size_t n = 0;
  if (!a.has_tail() && !b.has_tail()) {
    if (af.size() != bf.size()) return TypeExpr::bottom();
    n = af.size();
  } else if (!a.has_tail()) {
    if (af.size() < bf.size()) return TypeExpr::bottom();
    n = af.size();
  } else if (!b.has_tail()) {
    if (bf.size() < af.size()) return TypeExpr::bottom();
    n = bf.size();
  } else {
    n = std::max(af.size(), bf.size());
  }
  std::vector<TypeExpr> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    TypeExpr e = meet(a.element(i), b.element(i), table);
    if (e.is_bottom()) return TypeExpr::bottom();
    out.push_back(std::move(e));
  }
  std::optional<TypeExpr> tail;
  if (a.has_tail() && b.has_tail()) tail = meet(*a.tail(), *b.tail(), table);
  return TypeExpr::tuple(std::move(out), std::move(tail));
}

TypeExpr widen(const TypeExpr& t, std::size_t max_fixed, const TypeTable& table) {
  if (!t.is_tuple() || t.fixed().size() <= max_fixed) return t;
  const auto& f = t.fixed();
  std::vector<TypeExpr> prefix(f.begin(), f.begin() + static_cast<std::ptrdiff_t>(max_fixed));
  std::vector<TypeExpr> folded(f.begin() + static_cast<std::ptrdiff_t>(max_fixed), f.end());
  if (t.has_tail()) folded.push_back(*t.tail());
  return TypeExpr::tuple(std::move(prefix), join_all(folded, table));
}

TypeExpr concat(const TypeExpr& front, const TypeExpr& back, const TypeTable& table) {
  if (front.is_bottom() || back.is_bottom()) return TypeExpr::bottom();
  if (!front.is_tuple() || !back.is_tuple()) throw TypeError("concat expects tuple types");
  std::vector<TypeExpr> fixed = front.fixed();
  std::optional<TypeExpr> tail;
  if (!front.has_tail()) {
    fixed.insert(fixed.end(), back.fixed().begin(), back.fixed().end());
    if (back.has_tail()) tail = *back.tail();
    return TypeExpr::tuple(std::move(fixed), std::move(tail));
  }
  // front's tail may stand for any number of elements, so the positions of
  // back's elements are unknown: every position after front's prefix holds
  // the join of everything that can follow.
  std::vector<TypeExpr> rest = back.fixed();
  rest.push_back(*front.tail());
  if (back.has_tail()) rest.push_back(*back.tail());
  TypeExpr j = join_all(rest, table);
  fixed.insert(fixed.end(), back.fixed().size(), j);
  return TypeExpr::tuple(std::move(fixed), std::move(j));
}

}  // namespace mjl
