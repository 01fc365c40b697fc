#include "mjl/units.hpp"

#include <charconv>

#include "mjl/errors.hpp"

namespace mjl::units {

namespace {

constexpr std::array<const char*, Dimension::kBaseCount> kSymbols = {"m", "kg", "s", "A", "K", "mol", "cd"};

void require_same(const Quantity& a, const Quantity& b) {
  if (a.dim != b.dim) throw UnitMismatchError(a.dim.to_string(), b.dim.to_string());
}

}  // namespace

Dimension Dimension::base(std::size_t which, int exponent) {
  Dimension d;
  d.exponents.at(which) = exponent;
  return d;
}

bool Dimension::dimensionless() const {
  for (int e : exponents) {
    if (e != 0) return false;
  }
  return true;
}

std::string Dimension::to_string() const {
  if (dimensionless()) return "1";
  std::string out;
  for (std::size_t k = 0; k < kBaseCount; ++k) {
    if (exponents[k] == 0) continue;
    if (!out.empty()) out += ' ';
    out += kSymbols[k];
    if (exponents[k] != 1) out += "^" + std::to_string(exponents[k]);
  }
  return out;
}

Dimension operator+(const Dimension& a, const Dimension& b) {
  Dimension d;
  for (std::size_t k = 0; k < Dimension::kBaseCount; ++k) d.exponents[k] = a.exponents[k] + b.exponents[k];
  return d;
}

Dimension operator-(const Dimension& a, const Dimension& b) {
  Dimension d;
  for (std::size_t k = 0; k < Dimension::kBaseCount; ++k) d.exponents[k] = a.exponents[k] - b.exponents[k];
  return d;
}

std::string Quantity::to_string() const {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, value);
  std::string v(buf, res.ptr);
  if (v.find_first_of(".eEni") == std::string::npos) v += ".0";
  if (dim.dimensionless()) return v;
  return v + " " + dim.to_string();
}

Quantity qadd(const Quantity& a, const Quantity& b) {
  require_same(a, b);
  return {a.value + b.value, a.dim};
}

Quantity qsub(const Quantity& a, const Quantity& b) {
  require_same(a, b);
  return {a.value - b.value, a.dim};
}

Quantity qmul(const Quantity& a, const Quantity& b) { return {a.value * b.value, a.dim + b.dim}; }

}  // namespace mjl::units
