#include "mjl/views.hpp"

#include <charconv>

#include "mjl/errors.hpp"

namespace mjl {

std::string ViewIndex::to_string() const {
  switch (kind) {
    case Kind::Colon:
      return ":";
    case Kind::Scalar:
      return std::to_string(lo);
    case Kind::Range:
      return std::to_string(lo) + ":" + std::to_string(hi);
  }
  return "?";
}

namespace {

std::int64_t parse_int(std::string_view s) {
  std::int64_t v = 0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
    throw ArgumentError("bad index '" + std::string(s) + "'");
  }
  return v;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  return s;
}

}  // namespace

std::vector<ViewIndex> parse_view_indices(std::string_view text) {
  std::vector<ViewIndex> out;
  if (trim(text).empty()) return out;
  std::size_t start = 0;
  while (true) {
    auto comma = text.find(',', start);
    auto tok = trim(text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
    if (tok == ":") {
      out.push_back(ViewIndex::colon());
    } else if (auto colon = tok.find(':'); colon != std::string_view::npos) {
      out.push_back(ViewIndex::range(parse_int(trim(tok.substr(0, colon))), parse_int(trim(tok.substr(colon + 1)))));
    } else {
      out.push_back(ViewIndex::scalar(parse_int(tok)));
    }
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

ArrayView ArrayView::of(std::shared_ptr<const NdArray> base) {
  ArrayView v;
  v.shape = base->shape();
  v.strides = base->strides();
  v.crank = v.shape.size();
  v.kind = ViewKind::Contiguous;
  v.base = std::move(base);
  return v;
}

std::size_t contiguous_rank(std::span<const std::int64_t> shape, std::span<const std::int64_t> strides) {
  std::int64_t expected = 1;
  std::size_t k = 0;
  while (k < shape.size() && strides[k] == expected) {
    expected *= shape[k];
    ++k;
  }
  return k;
}

namespace {

struct Selection {
  std::int64_t offset = 0;
  Extents shape;
  Extents strides;
};

Selection select(const ArrayView& a, std::span<const ViewIndex> indices) {
  if (indices.size() != a.rank()) throw RankMismatchError(a.rank(), indices.size());
  std::size_t keep = indices.size();
  while (keep > 0 && indices[keep - 1].kind == ViewIndex::Kind::Scalar) --keep;

  Selection s;
  s.offset = a.offset;
  for (std::size_t k = 0; k < indices.size(); ++k) {
    const auto& ix = indices[k];
    const auto extent = a.shape[k];
    const auto dim = static_cast<std::int64_t>(k + 1);
    switch (ix.kind) {
      case ViewIndex::Kind::Colon:
        s.shape.push_back(extent);
        s.strides.push_back(a.strides[k]);
        break;
      case ViewIndex::Kind::Scalar:
        if (ix.lo < 1 || ix.lo > extent) throw BoundsError(dim, ix.lo);
        s.offset += (ix.lo - 1) * a.strides[k];
        if (k < keep) {
          s.shape.push_back(1);
          s.strides.push_back(0);
        }
        break;
      case ViewIndex::Kind::Range:
        if (ix.hi >= ix.lo) {
          if (ix.lo < 1 || ix.lo > extent) throw BoundsError(dim, ix.lo);
          if (ix.hi > extent) throw BoundsError(dim, ix.hi);
          s.offset += (ix.lo - 1) * a.strides[k];
        }
        s.shape.push_back(ix.hi >= ix.lo ? ix.hi - ix.lo + 1 : 0);
        s.strides.push_back(a.strides[k]);
        break;
    }
  }
  return s;
}

}  // namespace

Extents vshape(const ArrayView& a, std::span<const ViewIndex> indices) { return select(a, indices).shape; }

Extents vshape(const NdArray& a, std::span<const ViewIndex> indices) {
  return vshape(ArrayView::of(std::make_shared<const NdArray>(a)), indices);
}

std::size_t contrank(const ArrayView& a, std::span<const ViewIndex> indices) {
  const auto s = select(a, indices);
  return std::min(contiguous_rank(s.shape, s.strides), a.crank);
}

std::size_t contrank(const NdArray& a, std::span<const ViewIndex> indices) {
  return contrank(ArrayView::of(std::make_shared<const NdArray>(a)), indices);
}

ArrayView view(const ArrayView& a, std::span<const ViewIndex> indices) {
  auto s = select(a, indices);
  ArrayView v;
  v.base = a.base;
  v.offset = s.offset;
  // restrict_crank: the smaller of the selection's contiguous rank and the
  // result rank.
  v.crank = std::min(std::min(contiguous_rank(s.shape, s.strides), a.crank), s.shape.size());
  v.kind = v.crank == s.shape.size() ? ViewKind::Contiguous : ViewKind::Strided;
  v.shape = std::move(s.shape);
  v.strides = std::move(s.strides);
  return v;
}

ArrayView view(std::shared_ptr<const NdArray> a, std::span<const ViewIndex> indices) {
  return view(ArrayView::of(std::move(a)), indices);
}

double view_get(const ArrayView& v, std::span<const std::int64_t> subscript) {
  if (subscript.size() != v.rank()) throw RankMismatchError(v.rank(), subscript.size());
  std::int64_t pos = v.offset;
  for (std::size_t k = 0; k < subscript.size(); ++k) {
    if (subscript[k] < 1 || subscript[k] > v.shape[k]) throw BoundsError(static_cast<std::int64_t>(k + 1), subscript[k]);
    pos += (subscript[k] - 1) * v.strides[k];
  }
  return v.base->data()[static_cast<std::size_t>(pos)];
}

NdArray materialize(const ArrayView& v) {
  const auto n = product(v.shape);
  std::vector<double> data;
  data.reserve(static_cast<std::size_t>(n));
  Extents sub(v.rank(), 1);
  for (std::int64_t i = 0; i < n; ++i) {
    data.push_back(view_get(v, sub));
    for (std::size_t k = 0; k < sub.size(); ++k) {
      if (++sub[k] <= v.shape[k]) break;
      sub[k] = 1;
    }
  }
  return NdArray(v.shape, std::move(data));
}

std::string to_string(ViewKind k) { return k == ViewKind::Contiguous ? "Contiguous" : "Strided"; }

}  // namespace mjl
