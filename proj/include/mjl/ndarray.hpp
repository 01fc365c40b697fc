#pragma once

// Column-major n-dimensional arrays with run-time rank and 1-based
// subscripts.

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace mjl {

using Extents = std::vector<std::int64_t>;

std::int64_t product(std::span<const std::int64_t> extents);

class NdArray {
 public:
  // Rank-0 array holding a single 0.
  NdArray();
  // Throws ArgumentError unless data.size() == product(shape) and all
  // extents are non-negative.
  NdArray(Extents shape, std::vector<double> data);

  static NdArray zeros(Extents shape);
  // Elements 1, 2, ..., N in column-major order.
  static NdArray iota(Extents shape);

  const Extents& shape() const { return shape_; }
  std::size_t rank() const { return shape_.size(); }
  std::size_t size() const { return data_.size(); }
  std::span<const double> data() const { return data_; }

  // Column-major strides in elements: (1, n1, n1*n2, ...).
  Extents strides() const;

  // 0-based linear position of a 1-based subscript. Throws
  // RankMismatchError / BoundsError.
  std::int64_t linear_index(std::span<const std::int64_t> subscript) const;
  double at(std::span<const std::int64_t> subscript) const;

  // Shape line, then whitespace-separated elements in column-major order.
  std::string serialize() const;
  static NdArray deserialize(std::string_view text);

  friend bool operator==(const NdArray&, const NdArray&) = default;

 private:
  Extents shape_;
  std::vector<double> data_;
};

struct IndexRange {
  std::int64_t lo = 1;
  std::int64_t hi = 0;

  // Closed interval; empty when hi < lo.
  std::int64_t length() const { return hi >= lo ? hi - lo + 1 : 0; }
  friend bool operator==(const IndexRange&, const IndexRange&) = default;
};

// One entry of an index list: a scalar, a range, or an integer-valued
// array of any rank.
class IndexArg {
 public:
  using Storage = std::variant<std::int64_t, IndexRange, std::shared_ptr<const NdArray>>;

  static IndexArg scalar(std::int64_t i) { return IndexArg(Storage(i)); }
  static IndexArg range(std::int64_t lo, std::int64_t hi) { return IndexArg(Storage(IndexRange{lo, hi})); }
  // Throws ArgumentError if any element is not an integer.
  static IndexArg array(NdArray a);
  static IndexArg array(std::shared_ptr<const NdArray> a);

  bool is_scalar() const { return std::holds_alternative<std::int64_t>(v_); }
  bool is_range() const { return std::holds_alternative<IndexRange>(v_); }
  bool is_array() const { return std::holds_alternative<std::shared_ptr<const NdArray>>(v_); }

  std::int64_t scalar_value() const { return std::get<std::int64_t>(v_); }
  const IndexRange& range_value() const { return std::get<IndexRange>(v_); }
  const NdArray& array_value() const { return *std::get<std::shared_ptr<const NdArray>>(v_); }

  // Number of selected positions: 1, hi-lo+1, or the array's element count.
  std::int64_t length() const;
  // Shape of the index itself: () for scalars, (n,) for ranges.
  Extents size() const;
  // Selected positions, in column-major order for arrays.
  std::vector<std::int64_t> positions() const;

  std::string to_string() const;

 private:
  explicit IndexArg(Storage v) : v_(std::move(v)) {}
  Storage v_;
};

Extents size(const NdArray& a);
std::int64_t length(const IndexArg& i);

// Reads a[i1, ..., in] over the cartesian product of the index sets (first
// index varying fastest) and stores the result with `result_shape`.
// Throws RankMismatchError, BoundsError(dimension, index), or ArgumentError
// when result_shape does not hold exactly the selected element count.
NdArray gather(const NdArray& a, std::span<const IndexArg> indices, Extents result_shape);

std::string shape_to_string(std::span<const std::int64_t> shape);

}  // namespace mjl
