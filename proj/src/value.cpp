#include "mjl/value.hpp"

#include <charconv>

#include "mjl/errors.hpp"

namespace mjl {

namespace {

std::string format_float(double d) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, d);
  std::string s(buf, res.ptr);
  if (s.find_first_of(".eE") == std::string::npos && s.find_first_of("ni") == std::string::npos) s += ".0";
  return s;
}

std::string join_values(const std::vector<Value>& items) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += ", ";
    out += items[i].to_string();
  }
  return out;
}

const TypeExpr& named_type(std::string_view name) {
  static const std::vector<TypeExpr> known = [] {
    std::vector<TypeExpr> v;
    for (const char* n : {"Int", "Float", "String", "Range", "IntArray", "FloatArray", "List", "Quantity"}) {
      v.push_back(TypeExpr::named(n));
    }
    return v;
  }();
  for (const auto& t : known) {
    if (t.name() == name) return t;
  }
  throw TypeError("no value type " + std::string(name));
}

}  // namespace

Value Value::tuple(std::vector<Value> items) {
  bool all_int = true;
  for (const auto& v : items) all_int = all_int && v.is_int();
  if (all_int) {
    ShapeValue s;
    s.dims.reserve(items.size());
    for (const auto& v : items) s.dims.push_back(v.as_int());
    return Value(std::move(s));
  }
  return Value(TupleValue{std::move(items)});
}

Value Value::array(NdArray a, bool integral) {
  return Value(ArrayValue{std::make_shared<const NdArray>(std::move(a)), integral});
}

std::string Value::to_string() const {
  struct Printer {
    std::string operator()(std::int64_t i) const { return std::to_string(i); }
    std::string operator()(double d) const { return format_float(d); }
    std::string operator()(const std::string& s) const {
      std::string out = "\"";
      for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
      }
      return out + "\"";
    }
    std::string operator()(const TupleValue& t) const {
      if (t.items.size() == 1) return "(" + t.items[0].to_string() + ",)";
      return "(" + join_values(t.items) + ")";
    }
    std::string operator()(const ShapeValue& s) const { return "Shape" + shape_to_string(s.dims); }
    std::string operator()(const IndexRange& r) const {
      return std::to_string(r.lo) + ":" + std::to_string(r.hi);
    }
    std::string operator()(const ArrayValue& a) const {
      std::string out = (a.integral ? "IntArray" : "FloatArray") + shape_to_string(a.array->shape()) + "[";
      const auto data = a.array->data();
      for (std::size_t i = 0; i < data.size(); ++i) {
        if (i) out += " ";
        out += a.integral ? std::to_string(static_cast<std::int64_t>(data[i])) : format_float(data[i]);
      }
      return out + "]";
    }
    std::string operator()(const ListValue& l) const { return "list(" + join_values(l.items) + ")"; }
    std::string operator()(const units::Quantity& q) const { return q.to_string(); }
  };
  return std::visit(Printer{}, v_);
}

bool operator==(const Value& a, const Value& b) {
  if (a.v_.index() != b.v_.index()) return false;
  struct Eq {
    const Value::Storage& other;
    bool operator()(std::int64_t i) const { return std::get<std::int64_t>(other) == i; }
    bool operator()(double d) const { return std::get<double>(other) == d; }
    bool operator()(const std::string& s) const { return std::get<std::string>(other) == s; }
    bool operator()(const TupleValue& t) const { return std::get<TupleValue>(other).items == t.items; }
    bool operator()(const ShapeValue& s) const { return std::get<ShapeValue>(other) == s; }
    bool operator()(const IndexRange& r) const { return std::get<IndexRange>(other) == r; }
    bool operator()(const ArrayValue& x) const {
      const auto& y = std::get<ArrayValue>(other);
      return x.integral == y.integral && *x.array == *y.array;
    }
    bool operator()(const ListValue& l) const { return std::get<ListValue>(other).items == l.items; }
    bool operator()(const units::Quantity& q) const { return std::get<units::Quantity>(other) == q; }
  };
  return std::visit(Eq{b.v_}, a.v_);
}

TypeExpr type_of(const Value& v) {
  struct Typer {
    TypeExpr operator()(std::int64_t) const { return named_type("Int"); }
    TypeExpr operator()(double) const { return named_type("Float"); }
    TypeExpr operator()(const std::string&) const { return named_type("String"); }
    TypeExpr operator()(const TupleValue& t) const {
      std::vector<TypeExpr> elems;
      elems.reserve(t.items.size());
      for (const auto& item : t.items) elems.push_back(type_of(item));
      return TypeExpr::tuple(std::move(elems));
    }
    TypeExpr operator()(const ShapeValue& s) const {
      return TypeExpr::tuple(std::vector<TypeExpr>(s.dims.size(), named_type("Int")));
    }
    TypeExpr operator()(const IndexRange&) const { return named_type("Range"); }
    TypeExpr operator()(const ArrayValue& a) const { return named_type(a.integral ? "IntArray" : "FloatArray"); }
    TypeExpr operator()(const ListValue&) const { return named_type("List"); }
    TypeExpr operator()(const units::Quantity&) const { return named_type("Quantity"); }
  };
  return std::visit(Typer{}, v.storage());
}

TypeExpr type_of_args(std::span<const Value> args) {
  std::vector<TypeExpr> elems;
  elems.reserve(args.size());
  for (const auto& a : args) elems.push_back(type_of(a));
  return TypeExpr::tuple(std::move(elems));
}

std::vector<Value> splice_values(const Value& v) {
  if (v.is<TupleValue>()) return v.as<TupleValue>().items;
  if (v.is<ListValue>()) return v.as<ListValue>().items;
  if (v.is<ShapeValue>()) {
    const auto& dims = v.as<ShapeValue>().dims;
    return std::vector<Value>(dims.begin(), dims.end());
  }
  if (v.is<IndexRange>()) {
    std::vector<Value> out;
    const auto& r = v.as<IndexRange>();
    for (auto i = r.lo; i <= r.hi; ++i) out.emplace_back(i);
    return out;
  }
  throw ArgumentError("cannot splice a value of type " + type_of(v).to_string());
}

}  // namespace mjl
