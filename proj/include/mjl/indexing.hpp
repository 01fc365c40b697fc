#pragma once

// Array indexing whose result shape comes from the `index_shape` methods of
// a rule set, evaluated through the dispatch engine.

#include <span>

#include "mjl/ndarray.hpp"
#include "mjl/prelude.hpp"
#include "mjl/value.hpp"

namespace mjl {

Value to_value(const IndexArg& i);

// Runs `index_shape(indices...)` under the rule set. Throws TypeError if the
// rule's methods produce something other than a tuple of integers.
Extents index_shape(RuleSet rule, std::span<const IndexArg> indices);

// Throws RankMismatchError unless there is one index per dimension, and
// BoundsError(dimension, index) for out-of-range indices.
NdArray getindex(const NdArray& a, std::span<const IndexArg> indices, RuleSet rule);

}  // namespace mjl
