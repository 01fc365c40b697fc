#include "mjl/ndarray.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

#include "mjl/errors.hpp"

namespace mjl {

namespace {

std::string format_double(double d) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, d);
  return std::string(buf, res.ptr);
}

}  // namespace

std::int64_t product(std::span<const std::int64_t> extents) {
  std::int64_t p = 1;
  for (auto e : extents) p *= e;
  return p;
}

NdArray::NdArray() : data_(1, 0.0) {}

NdArray::NdArray(Extents shape, std::vector<double> data) : shape_(std::move(shape)), data_(std::move(data)) {
  for (auto e : shape_) {
    if (e < 0) throw ArgumentError("negative extent " + std::to_string(e));
  }
  if (static_cast<std::int64_t>(data_.size()) != product(shape_)) {
    throw ArgumentError("buffer of " + std::to_string(data_.size()) + " elements for shape " +
                        shape_to_string(shape_));
  }
}

NdArray NdArray::zeros(Extents shape) {
  const auto n = product(shape);
  if (n < 0) throw ArgumentError("negative extent");
  return NdArray(std::move(shape), std::vector<double>(static_cast<std::size_t>(n), 0.0));
}

NdArray NdArray::iota(Extents shape) {
  NdArray a = zeros(std::move(shape));
  for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] = static_cast<double>(i + 1);
  return a;
}

Extents NdArray::strides() const {
  Extents s(shape_.size());
  std::int64_t acc = 1;
  for (std::size_t k = 0; k < shape_.size(); ++k) {
    s[k] = acc;
    acc *= shape_[k];
  }
  return s;
}

std::int64_t NdArray::linear_index(std::span<const std::int64_t> subscript) const {
  if (subscript.size() != shape_.size()) throw RankMismatchError(shape_.size(), subscript.size());
  std::int64_t linear = 0;
  std::int64_t stride = 1;
  for (std::size_t k = 0; k < shape_.size(); ++k) {
    const auto i = subscript[k];
    if (i < 1 || i > shape_[k]) throw BoundsError(static_cast<std::int64_t>(k) + 1, i);
    linear += (i - 1) * stride;
    stride *= shape_[k];
  }
  return linear;
}

double NdArray::at(std::span<const std::int64_t> subscript) const {
  return data_[static_cast<std::size_t>(linear_index(subscript))];
}

std::string NdArray::serialize() const {
  std::ostringstream out;
  for (std::size_t k = 0; k < shape_.size(); ++k) out << (k ? " " : "") << shape_[k];
  out << '\n';
  for (std::size_t i = 0; i < data_.size(); ++i) out << (i ? " " : "") << format_double(data_[i]);
  out << '\n';
  return out.str();
}

NdArray NdArray::deserialize(std::string_view text) {
  const auto nl = text.find('\n');
  if (nl == std::string_view::npos) throw ArgumentError("missing shape line");
  Extents shape;
  std::istringstream shape_in{std::string(text.substr(0, nl))};
  for (std::int64_t e; shape_in >> e;) shape.push_back(e);
  if (!shape_in.eof()) throw ArgumentError("malformed shape line");
  std::vector<double> data;
  std::istringstream data_in{std::string(text.substr(nl + 1))};
  for (double d; data_in >> d;) data.push_back(d);
  if (!data_in.eof()) throw ArgumentError("malformed element list");
  return NdArray(std::move(shape), std::move(data));
}

// ---------------------------------------------------------------------------

IndexArg IndexArg::array(NdArray a) { return array(std::make_shared<const NdArray>(std::move(a))); }

IndexArg IndexArg::array(std::shared_ptr<const NdArray> a) {
  for (double d : a->data()) {
    if (d != std::floor(d)) throw ArgumentError("array index must hold integers, got " + format_double(d));
  }
  return IndexArg(Storage(std::move(a)));
}

std::int64_t IndexArg::length() const {
  if (is_scalar()) return 1;
  if (is_range()) return range_value().length();
  return static_cast<std::int64_t>(array_value().size());
}

Extents IndexArg::size() const {
  if (is_scalar()) return {};
  if (is_range()) return {range_value().length()};
  return array_value().shape();
}

std::vector<std::int64_t> IndexArg::positions() const {
  std::vector<std::int64_t> out;
  if (is_scalar()) {
    out.push_back(scalar_value());
  } else if (is_range()) {
    const auto& r = range_value();
    for (auto i = r.lo; i <= r.hi; ++i) out.push_back(i);
  } else {
    for (double d : array_value().data()) out.push_back(static_cast<std::int64_t>(d));
  }
  return out;
}

std::string IndexArg::to_string() const {
  if (is_scalar()) return std::to_string(scalar_value());
  if (is_range()) return std::to_string(range_value().lo) + ":" + std::to_string(range_value().hi);
  return "IntArray" + shape_to_string(array_value().shape());
}

Extents size(const NdArray& a) { return a.shape(); }

std::int64_t length(const IndexArg& i) { return i.length(); }

NdArray gather(const NdArray& a, std::span<const IndexArg> indices, Extents result_shape) {
  if (indices.size() != a.rank()) throw RankMismatchError(a.rank(), indices.size());
  std::vector<std::vector<std::int64_t>> sets;
  sets.reserve(indices.size());
  std::int64_t count = 1;
  for (std::size_t k = 0; k < indices.size(); ++k) {
    sets.push_back(indices[k].positions());
    for (auto i : sets.back()) {
      if (i < 1 || i > a.shape()[k]) throw BoundsError(static_cast<std::int64_t>(k) + 1, i);
    }
    count *= static_cast<std::int64_t>(sets.back().size());
  }
  if (product(result_shape) != count) {
    throw ArgumentError("index_shape result " + shape_to_string(result_shape) + " does not hold " +
                        std::to_string(count) + " selected elements");
  }
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(count));
  if (count > 0) {
    const Extents strides = a.strides();
    std::vector<std::size_t> cursor(sets.size(), 0);
    for (;;) {
      std::int64_t linear = 0;
      for (std::size_t k = 0; k < sets.size(); ++k) linear += (sets[k][cursor[k]] - 1) * strides[k];
      out.push_back(a.data()[static_cast<std::size_t>(linear)]);
      std::size_t k = 0;
      while (k < sets.size() && ++cursor[k] == sets[k].size()) cursor[k++] = 0;
      if (k == sets.size()) break;
    }
  }
  return NdArray(std::move(result_shape), std::move(out));
}

std::string shape_to_string(std::span<const std::int64_t> shape) {
  std::string s = "(";
  for (std::size_t k = 0; k < shape.size(); ++k) {
    if (k) s += ",";
    s += std::to_string(shape[k]);
  }
  return s + ")";
}

}  // namespace mjl
