#pragma once

// Run-time values of the minilang evaluator.

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "mjl/ndarray.hpp"
#include "mjl/types.hpp"
#include "mjl/units.hpp"

namespace mjl {

class Value;

struct TupleValue {
  std::vector<Value> items;
};

// An integer sequence. Every all-Int tuple (including the empty one) is
// represented as a Shape.
struct ShapeValue {
  Extents dims;
  friend bool operator==(const ShapeValue&, const ShapeValue&) = default;
};

struct ArrayValue {
  std::shared_ptr<const NdArray> array;
  // Element kind fixed at construction; decides IntArray vs FloatArray.
  bool integral = true;
};

// Heterogeneous run-time list; its type carries no element information.
struct ListValue {
  std::vector<Value> items;
};

class Value {
 public:
  using Storage = std::variant<std::int64_t, double, std::string, TupleValue, ShapeValue, IndexRange,
                               ArrayValue, ListValue, units::Quantity>;

  Value() : v_(std::int64_t{0}) {}
  Value(std::int64_t i) : v_(i) {}
  Value(int i) : v_(std::int64_t{i}) {}
  Value(double d) : v_(d) {}
  Value(std::string s) : v_(std::move(s)) {}
  Value(const char* s) : v_(std::string(s)) {}
  Value(IndexRange r) : v_(r) {}
  Value(ShapeValue s) : v_(std::move(s)) {}
  Value(ArrayValue a) : v_(std::move(a)) {}
  Value(ListValue l) : v_(std::move(l)) {}
  Value(units::Quantity q) : v_(q) {}

  // Builds a Shape when every item is an Int, else a Tuple.
  static Value tuple(std::vector<Value> items);
  static Value array(NdArray a, bool integral);

  template <class T>
  bool is() const {
    return std::holds_alternative<T>(v_);
  }
  template <class T>
  const T& as() const {
    return std::get<T>(v_);
  }
  const Storage& storage() const { return v_; }

  bool is_int() const { return is<std::int64_t>(); }
  bool is_float() const { return is<double>(); }
  bool is_real() const { return is_int() || is_float(); }
  std::int64_t as_int() const { return as<std::int64_t>(); }
  double as_real() const { return is_int() ? static_cast<double>(as_int()) : as<double>(); }

  std::string to_string() const;

  friend bool operator==(const Value& a, const Value& b);

 private:
  explicit Value(TupleValue t) : v_(std::move(t)) {}
  Storage v_;
};

// The unique concrete type of a value. Tuples and shapes have the tuple
// type of their elements.
TypeExpr type_of(const Value& v);
TypeExpr type_of_args(std::span<const Value> args);

// Elements of a spliced value (`x...`): tuples, shapes, lists and ranges.
// Throws ArgumentError for anything else.
std::vector<Value> splice_values(const Value& v);

}  // namespace mjl
