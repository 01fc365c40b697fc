#include <gtest/gtest.h>

#include <random>

#include "mjl/errors.hpp"
#include "mjl/units.hpp"

using mjl::units::Dimension;
using mjl::units::Quantity;

namespace {

Dimension random_dim(std::mt19937_64& rng) {
  Dimension d;
  for (auto& e : d.exponents) e = std::uniform_int_distribution<int>(-2, 2)(rng);
  return d;
}

Quantity random_quantity(std::mt19937_64& rng, const Dimension& d) {
  // Quarter-integers keep sums exact in either order.
  return Quantity{std::uniform_int_distribution<int>(-400, 400)(rng) / 4.0, d};
}

}  // namespace

TEST(Units, AddSameDimension) {
  const Quantity a{3.0, mjl::units::kMeter}, b{4.0, mjl::units::kMeter};
  EXPECT_EQ(mjl::units::qadd(a, b), (Quantity{7.0, mjl::units::kMeter}));
  EXPECT_EQ(mjl::units::qsub(a, b), (Quantity{-1.0, mjl::units::kMeter}));
}

TEST(Units, MultiplyAddsExponents) {
  const Quantity m{3.0, mjl::units::kMeter}, s{2.0, mjl::units::kSecond};
  const auto ms = mjl::units::qmul(m, s);
  EXPECT_EQ(ms.value, 6.0);
  EXPECT_EQ(ms.dim.exponents[0], 1);
  EXPECT_EQ(ms.dim.exponents[2], 1);
  EXPECT_EQ(ms.to_string(), "6.0 m s");
  EXPECT_EQ(mjl::units::qmul(m, m).dim.to_string(), "m^2");
}

TEST(Units, Rendering) {
  Dimension accel = mjl::units::kMeter + Dimension::base(2, -2);
  EXPECT_EQ(accel.to_string(), "m s^-2");
  EXPECT_EQ((mjl::units::kKilogram + accel).to_string(), "m kg s^-2");
  EXPECT_EQ(mjl::units::kDimensionless.to_string(), "1");
  EXPECT_TRUE((mjl::units::kMeter - mjl::units::kMeter).dimensionless());
}

TEST(Units, MismatchNamesBothDimensions) {
  const Quantity m{3.0, mjl::units::kMeter}, s{4.0, mjl::units::kSecond};
  try {
    mjl::units::qadd(m, s);
    FAIL() << "expected UnitMismatchError";
  } catch (const mjl::UnitMismatchError& e) {
    EXPECT_EQ(e.lhs(), "m");
    EXPECT_EQ(e.rhs(), "s");
    EXPECT_NE(std::string(e.what()).find("m vs s"), std::string::npos);
  }
  EXPECT_THROW(mjl::units::qsub(m, s), mjl::UnitMismatchError);
}

TEST(Units, RandomAlgebra) {
  std::mt19937_64 rng(4);
  for (int n = 0; n < 2000; ++n) {
    const Dimension d = random_dim(rng);
    const auto a = random_quantity(rng, d), b = random_quantity(rng, d), c = random_quantity(rng, d);
    ASSERT_EQ(mjl::units::qadd(a, b), mjl::units::qadd(b, a));
    ASSERT_EQ(mjl::units::qadd(mjl::units::qadd(a, b), c), mjl::units::qadd(a, mjl::units::qadd(b, c)));

    const auto x = random_quantity(rng, random_dim(rng)), y = random_quantity(rng, random_dim(rng));
    const auto xy = mjl::units::qmul(x, y);
    ASSERT_EQ(xy, mjl::units::qmul(y, x));
    for (std::size_t k = 0; k < Dimension::kBaseCount; ++k) {
      ASSERT_EQ(xy.dim.exponents[k], x.dim.exponents[k] + y.dim.exponents[k]);
    }
    if (x.dim != y.dim) { ASSERT_THROW(mjl::units::qadd(x, y), mjl::UnitMismatchError); }
  }
}
