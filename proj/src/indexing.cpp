#include "mjl/indexing.hpp"

#include <array>
#include <memory>

#include "mjl/errors.hpp"
#include "mjl/interpreter.hpp"

namespace mjl {

namespace {

// One interpreter per rule set and thread, holding only the natives and the
// rule's index_shape methods.
Interpreter& engine(RuleSet rule) {
  thread_local std::array<std::unique_ptr<Interpreter>, 4> engines;
  auto& slot = engines[static_cast<std::size_t>(rule)];
  if (!slot) {
    InterpreterOptions opts;
    opts.rule = rule;
    opts.base_prelude = false;
    slot = std::make_unique<Interpreter>(opts);
    slot->freeze();
  }
  return *slot;
}

}  // namespace

Value to_value(const IndexArg& i) {
  if (i.is_scalar()) return i.scalar_value();
  if (i.is_range()) return i.range_value();
  return ArrayValue{std::make_shared<const NdArray>(i.array_value()), true};
}

Extents index_shape(RuleSet rule, std::span<const IndexArg> indices) {
  std::vector<Value> args;
  args.reserve(indices.size());
  for (const auto& i : indices) args.push_back(to_value(i));
  Value shape = engine(rule).call("index_shape", args);
  if (!shape.is<ShapeValue>()) {
    throw TypeError("index_shape returned " + shape.to_string() + ", expected a tuple of integers");
  }
  return shape.as<ShapeValue>().dims;
}

NdArray getindex(const NdArray& a, std::span<const IndexArg> indices, RuleSet rule) {
  if (indices.size() != a.rank()) throw RankMismatchError(a.rank(), indices.size());
  return gather(a, indices, index_shape(rule, indices));
}

}  // namespace mjl
