#pragma once

#include <array>
#include <cstdint>
#include <string>

namespace mjl::units {

// Integer exponents over the SI base dimensions, in the order
// length, mass, time, current, temperature, amount, luminosity.
struct Dimension {
  static constexpr std::size_t kBaseCount = 7;
  std::array<int, kBaseCount> exponents{};

  static Dimension base(std::size_t which, int exponent = 1);

  bool dimensionless() const;

  // "m", "kg m s^-2", "1" for dimensionless.
  std::string to_string() const;

  friend Dimension operator+(const Dimension& a, const Dimension& b);
  friend Dimension operator-(const Dimension& a, const Dimension& b);
  friend bool operator==(const Dimension&, const Dimension&) = default;
};

inline const Dimension kDimensionless{};
inline const Dimension kMeter = Dimension::base(0);
inline const Dimension kKilogram = Dimension::base(1);
inline const Dimension kSecond = Dimension::base(2);

struct Quantity {
  double value = 0.0;
  Dimension dim;

  std::string to_string() const;
  friend bool operator==(const Quantity&, const Quantity&) = default;
};

// Same-dimension sum; throws UnitMismatchError naming both dimensions.
Quantity qadd(const Quantity& a, const Quantity& b);
Quantity qsub(const Quantity& a, const Quantity& b);
Quantity qmul(const Quantity& a, const Quantity& b);

}  // namespace mjl::units
