#pragma once

// Non-copying strided views of arrays with contiguous-rank tracking.

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mjl/ndarray.hpp"

namespace mjl {

struct ViewIndex {
  enum class Kind { Colon, Scalar, Range };
  Kind kind = Kind::Colon;
  std::int64_t lo = 0;  // the scalar, or the range bounds
  std::int64_t hi = 0;

  static ViewIndex colon() { return {}; }
  static ViewIndex scalar(std::int64_t i) { return {Kind::Scalar, i, i}; }
  static ViewIndex range(std::int64_t lo, std::int64_t hi) { return {Kind::Range, lo, hi}; }

  std::string to_string() const;
};

// Comma-separated ":", "i" or "lo:hi", e.g. ":,:,2". Throws ArgumentError.
std::vector<ViewIndex> parse_view_indices(std::string_view text);

enum class ViewKind { Contiguous, Strided };

struct ArrayView {
  std::shared_ptr<const NdArray> base;
  std::int64_t offset = 0;  // 0-based position in base->data()
  Extents shape;
  Extents strides;  // per view dimension, in base elements
  std::size_t crank = 0;
  ViewKind kind = ViewKind::Contiguous;

  std::size_t rank() const { return shape.size(); }

  // The whole array.
  static ArrayView of(std::shared_ptr<const NdArray> base);
};

// Number of leading dimensions whose strides equal the cumulative product
// of the shape (1, n1, n1*n2, ...).
std::size_t contiguous_rank(std::span<const std::int64_t> shape, std::span<const std::int64_t> strides);

// Result shape under the trailing-drop rule: colons keep the extent, ranges
// their length, scalars 1, and trailing scalars are dropped. Throws
// RankMismatchError / BoundsError.
Extents vshape(const ArrayView& a, std::span<const ViewIndex> indices);
Extents vshape(const NdArray& a, std::span<const ViewIndex> indices);

// Contiguous rank of the selection, never more than that of `a`.
std::size_t contrank(const ArrayView& a, std::span<const ViewIndex> indices);
std::size_t contrank(const NdArray& a, std::span<const ViewIndex> indices);

// Composes offsets and strides; never copies elements. Dimensions kept
// from a scalar index get stride 0.
ArrayView view(const ArrayView& a, std::span<const ViewIndex> indices);
ArrayView view(std::shared_ptr<const NdArray> a, std::span<const ViewIndex> indices);

// 1-based subscript into the view. Throws RankMismatchError / BoundsError.
double view_get(const ArrayView& v, std::span<const std::int64_t> subscript);

// Copy of the viewed elements in column-major order.
NdArray materialize(const ArrayView& v);

std::string to_string(ViewKind k);

}  // namespace mjl
