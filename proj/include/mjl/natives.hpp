#pragma once

// Host-native methods: arithmetic, tuples, ranges, arrays, indexing and
// unit quantities. Each is an ordinary method of a generic function, so
// user code can add methods next to them.

#include "mjl/dispatch.hpp"

namespace mjl {

void register_natives(MethodTable& table);

// Index value (Int, Range or IntArray) to an IndexArg; ArgumentError
// otherwise.
IndexArg to_index_arg(const Value& v);

}  // namespace mjl
