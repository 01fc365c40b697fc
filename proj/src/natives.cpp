#include "mjl/natives.hpp"

#include <cmath>

#include "mjl/errors.hpp"

namespace mjl {

namespace {

using Args = std::span<const Value>;
using Call = std::function<Value(CallContext&, Args)>;
using Transfer = std::function<TypeExpr(const TypeExpr&, TransferContext&)>;

void def(MethodTable& table, const std::string& name, const std::vector<std::optional<std::string>>& params,
         bool variadic, Call call, Transfer transfer) {
  table.define(name, Method(MethodSignature::make(params, variadic), NativeBody{std::move(call), std::move(transfer)}));
}

Transfer always(const char* name) {
  TypeExpr t = TypeExpr::named(name);
  return [t](const TypeExpr&, TransferContext&) { return t; };
}

Transfer always(TypeExpr t) {
  return [t = std::move(t)](const TypeExpr&, TransferContext&) { return t; };
}

// Integer arithmetic wraps on overflow.
std::int64_t wrap_add(std::int64_t a, std::int64_t b) {
  return static_cast<std::int64_t>(static_cast<std::uint64_t>(a) + static_cast<std::uint64_t>(b));
}
std::int64_t wrap_sub(std::int64_t a, std::int64_t b) {
  return static_cast<std::int64_t>(static_cast<std::uint64_t>(a) - static_cast<std::uint64_t>(b));
}
std::int64_t wrap_mul(std::int64_t a, std::int64_t b) {
  return static_cast<std::int64_t>(static_cast<std::uint64_t>(a) * static_cast<std::uint64_t>(b));
}

std::vector<std::int64_t> int_args(Args args) {
  std::vector<std::int64_t> out;
  out.reserve(args.size());
  for (const auto& a : args) out.push_back(a.as_int());
  return out;
}

// Each element narrowed to the one index kind it can be, if only one fits.
TypeExpr index_types(const TypeExpr& t, const TypeTable& types) {
  auto narrow = [&](const TypeExpr& e) {
    TypeExpr only;
    int fits = 0;
    for (const char* k : {"Int", "Range", "IntArray"}) {
      TypeExpr m = meet(e, TypeExpr::named(k), types);
      if (!m.is_bottom()) {
        only = std::move(m);
        ++fits;
      }
    }
    return fits == 1 ? only : e;
  };
  if (!t.is_tuple()) return t;
  std::vector<TypeExpr> fixed;
  for (const auto& e : t.fixed()) fixed.push_back(narrow(e));
  std::optional<TypeExpr> tail;
  if (t.has_tail()) tail = narrow(*t.tail());
  return TypeExpr::tuple(std::move(fixed), std::move(tail));
}

const NdArray& array_of(const Value& v) { return *v.as<ArrayValue>().array; }

// IntArray / FloatArray when the argument type pins it down, else Array.
TypeExpr array_kind(const TypeExpr& t, const TypeTable& types) {
  for (const char* k : {"IntArray", "FloatArray"}) {
    if (subtype(t, TypeExpr::named(k), types)) return TypeExpr::named(k);
  }
  return TypeExpr::named("Array");
}

Value getindex(CallContext& ctx, Args args) {
  const auto& av = args[0].as<ArrayValue>();
  std::vector<IndexArg> indices;
  indices.reserve(args.size() - 1);
  for (std::size_t i = 1; i < args.size(); ++i) indices.push_back(to_index_arg(args[i]));
  if (indices.size() != av.array->rank()) throw RankMismatchError(av.array->rank(), indices.size());
  Value shape = ctx.call("index_shape", args.subspan(1));
  if (!shape.is<ShapeValue>()) {
    throw TypeError("index_shape returned " + shape.to_string() + ", expected a tuple of integers");
  }
  return Value::array(gather(*av.array, indices, shape.as<ShapeValue>().dims), av.integral);
}

Value length_of_any(CallContext&, Args args) {
  const Value& x = args[0];
  if (x.is<ShapeValue>()) return static_cast<std::int64_t>(x.as<ShapeValue>().dims.size());
  if (x.is<TupleValue>()) return static_cast<std::int64_t>(x.as<TupleValue>().items.size());
  throw NoMethodError("length", type_of_args(args).to_string());
}

Value quantity(CallContext&, Args args) {
  units::Quantity q{args[0].as_real(), {}};
  if (args.size() - 1 > units::Dimension::kBaseCount) {
    throw ArgumentError("quantity takes at most " + std::to_string(units::Dimension::kBaseCount) + " exponents");
  }
  for (std::size_t i = 1; i < args.size(); ++i) q.dim.exponents[i - 1] = static_cast<int>(args[i].as_int());
  return q;
}

void register_arithmetic(MethodTable& t) {
  const std::optional<std::string> Int = "Int", Float = "Float", Real = "Real", Q = "Quantity";

  def(t, "+", {Int, Int}, false, [](CallContext&, Args a) { return Value(wrap_add(a[0].as_int(), a[1].as_int())); },
      always("Int"));
  def(t, "+", {Real, Real}, false, [](CallContext&, Args a) { return Value(a[0].as_real() + a[1].as_real()); },
      always("Float"));
  def(t, "+", {Q, Q}, false,
      [](CallContext&, Args a) { return Value(units::qadd(a[0].as<units::Quantity>(), a[1].as<units::Quantity>())); },
      always("Quantity"));

  def(t, "-", {Int, Int}, false, [](CallContext&, Args a) { return Value(wrap_sub(a[0].as_int(), a[1].as_int())); },
      always("Int"));
  def(t, "-", {Real, Real}, false, [](CallContext&, Args a) { return Value(a[0].as_real() - a[1].as_real()); },
      always("Float"));
  def(t, "-", {Q, Q}, false,
      [](CallContext&, Args a) { return Value(units::qsub(a[0].as<units::Quantity>(), a[1].as<units::Quantity>())); },
      always("Quantity"));
  def(t, "-", {Int}, false, [](CallContext&, Args a) { return Value(wrap_sub(0, a[0].as_int())); }, always("Int"));
  def(t, "-", {Float}, false, [](CallContext&, Args a) { return Value(-a[0].as<double>()); }, always("Float"));
  def(t, "-", {Q}, false,
      [](CallContext&, Args a) {
        auto q = a[0].as<units::Quantity>();
        q.value = -q.value;
        return Value(q);
      },
      always("Quantity"));

  def(t, "*", {Int, Int}, false, [](CallContext&, Args a) { return Value(wrap_mul(a[0].as_int(), a[1].as_int())); },
      always("Int"));
  def(t, "*", {Real, Real}, false, [](CallContext&, Args a) { return Value(a[0].as_real() * a[1].as_real()); },
      always("Float"));
  def(t, "*", {Q, Q}, false,
      [](CallContext&, Args a) { return Value(units::qmul(a[0].as<units::Quantity>(), a[1].as<units::Quantity>())); },
      always("Quantity"));
  def(t, "*", {Real, Q}, false,
      [](CallContext&, Args a) {
        auto q = a[1].as<units::Quantity>();
        q.value *= a[0].as_real();
        return Value(q);
      },
      always("Quantity"));
  def(t, "*", {Q, Real}, false,
      [](CallContext&, Args a) {
        auto q = a[0].as<units::Quantity>();
        q.value *= a[1].as_real();
        return Value(q);
      },
      always("Quantity"));

  def(t, "float", {Real}, false, [](CallContext&, Args a) { return Value(a[0].as_real()); }, always("Float"));
}

void register_sequences(MethodTable& t) {
  const std::optional<std::string> Int = "Int", Real = "Real", Range = "Range", Array = "Array", List = "List";
  const std::optional<std::string> AnyT;

  def(t, "tuple", {AnyT}, true, [](CallContext&, Args a) { return Value::tuple({a.begin(), a.end()}); },
      [](const TypeExpr& args, TransferContext&) { return args; });
  def(t, "list", {AnyT}, true, [](CallContext&, Args a) { return Value(ListValue{{a.begin(), a.end()}}); },
      always("List"));
  def(t, ":", {Int, Int}, false, [](CallContext&, Args a) { return Value(IndexRange{a[0].as_int(), a[1].as_int()}); },
      always("Range"));

  def(t, "length", {Real}, false, [](CallContext&, Args) { return Value(std::int64_t{1}); }, always("Int"));
  def(t, "length", {Range}, false, [](CallContext&, Args a) { return Value(a[0].as<IndexRange>().length()); },
      always("Int"));
  def(t, "length", {Array}, false,
      [](CallContext&, Args a) { return Value(static_cast<std::int64_t>(array_of(a[0]).size())); }, always("Int"));
  def(t, "length", {List}, false,
      [](CallContext&, Args a) { return Value(static_cast<std::int64_t>(a[0].as<ListValue>().items.size())); },
      always("Int"));
  // Tuples and shapes have structural types, so they are handled here.
  def(t, "length", {AnyT}, false, length_of_any, always("Int"));

  def(t, "size", {Real}, false, [](CallContext&, Args) { return Value::tuple({}); }, always(TypeExpr::tuple({})));
  def(t, "size", {Range}, false, [](CallContext&, Args a) { return Value(ShapeValue{{a[0].as<IndexRange>().length()}}); },
      always(TypeExpr::tuple({TypeExpr::named("Int")})));
  def(t, "size", {Array}, false, [](CallContext&, Args a) { return Value(ShapeValue{array_of(a[0]).shape()}); },
      always(TypeExpr::variadic(TypeExpr::named("Int"))));
  def(t, "ndims", {Array}, false,
      [](CallContext&, Args a) { return Value(static_cast<std::int64_t>(array_of(a[0]).rank())); }, always("Int"));

  def(t, "strip_trailing_ones", {Int}, true,
      [](CallContext&, Args a) {
        auto dims = int_args(a);
        while (!dims.empty() && dims.back() == 1) dims.pop_back();
        return Value(ShapeValue{std::move(dims)});
      },
      always(TypeExpr::variadic(TypeExpr::named("Int"))));
}

void register_arrays(MethodTable& t) {
  const std::optional<std::string> Int = "Int", Array = "Array";
  const std::optional<std::string> AnyT;

  def(t, "zeros", {Int}, true, [](CallContext&, Args a) { return Value::array(NdArray::zeros(int_args(a)), false); },
      always("FloatArray"));
  def(t, "iota", {Int}, true, [](CallContext&, Args a) { return Value::array(NdArray::iota(int_args(a)), false); },
      always("FloatArray"));
  def(t, "ints", {Int}, true,
      [](CallContext&, Args a) {
        std::vector<double> data;
        for (auto i : int_args(a)) data.push_back(static_cast<double>(i));
        Extents shape{static_cast<std::int64_t>(data.size())};
        return Value::array(NdArray(std::move(shape), std::move(data)), true);
      },
      always("IntArray"));
  def(t, "reshape", {Array, Int}, true,
      [](CallContext&, Args a) {
        const auto& av = a[0].as<ArrayValue>();
        const auto data = av.array->data();
        return Value::array(NdArray(int_args(a.subspan(1)), {data.begin(), data.end()}), av.integral);
      },
      [](const TypeExpr& args, TransferContext& ctx) { return array_kind(args.element(0), ctx.types()); });

  // The all-scalar form is its own method so that a splice of unknown
  // element types cannot be resolved before run time.
  auto result = [](const TypeExpr& args, TransferContext& ctx) {
    // index_shape runs on the raw indices, which by then are known to be
    // Int, Range or IntArray.
    const TypeExpr shape = ctx.infer_call("index_shape", index_types(args.drop_front(1), ctx.types()));
    if (shape.is_bottom()) return TypeExpr::bottom();
    return array_kind(args.element(0), ctx.types());
  };
  def(t, "getindex", {Array, Int}, true, getindex, result);
  def(t, "getindex", {Array, AnyT}, true, getindex, result);
}

void register_misc(MethodTable& t) {
  const std::optional<std::string> Int = "Int", Real = "Real", Q = "Quantity";
  const std::optional<std::string> AnyT;

  def(t, "error", {AnyT}, false,
      [](CallContext&, Args a) -> Value {
        throw UserError(a[0].is<std::string>() ? a[0].as<std::string>() : a[0].to_string());
      },
      always(TypeExpr::bottom()));
  def(t, "typeof", {AnyT}, false, [](CallContext&, Args a) { return Value(type_of(a[0]).to_string()); },
      always("String"));

  def(t, "quantity", {Real, Int}, true, quantity, always("Quantity"));
  def(t, "value", {Q}, false, [](CallContext&, Args a) { return Value(a[0].as<units::Quantity>().value); },
      always("Float"));
  def(t, "unit", {Q}, false, [](CallContext&, Args a) { return Value(a[0].as<units::Quantity>().dim.to_string()); },
      always("String"));
}

}  // namespace

IndexArg to_index_arg(const Value& v) {
  if (v.is_int()) return IndexArg::scalar(v.as_int());
  if (v.is<IndexRange>()) {
    const auto& r = v.as<IndexRange>();
    return IndexArg::range(r.lo, r.hi);
  }
  if (v.is<ArrayValue>() && v.as<ArrayValue>().integral) return IndexArg::array(v.as<ArrayValue>().array);
  throw ArgumentError("invalid index " + v.to_string() + " of type " + type_of(v).to_string());
}

void register_natives(MethodTable& table) {
  register_arithmetic(table);
  register_sequences(table);
  register_arrays(table);
  register_misc(table);
}

}  // namespace mjl
