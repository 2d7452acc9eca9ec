#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "symcont/field.hpp"

using symcont::FieldElement;
using symcont::Rational;

namespace {

FieldElement fe(long a, long b = 0) { return FieldElement(Rational(a), Rational(b)); }
FieldElement rt2() { return FieldElement::root(2); }

FieldElement random_element(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> num(-40, 40), den(1, 12);
  return FieldElement(Rational(num(rng), den(rng)), Rational(num(rng), den(rng)));
}

}  // namespace

TEST(Field, SignOfNearCancellation) {
  EXPECT_EQ((fe(3) - fe(0, 2)).sign(), 1);    // 3 - 2rt2 ~ 0.17
  EXPECT_EQ((fe(-3) + fe(0, 2)).sign(), -1);
  EXPECT_EQ(fe(0).sign(), 0);
  // 577/408 is a convergent of rt2 from above.
  EXPECT_EQ((FieldElement(Rational(577, 408)) - rt2()).sign(), 1);
  EXPECT_EQ((FieldElement(Rational(140, 99)) - rt2()).sign(), -1);
}

TEST(Field, ArithmeticIdentities) {
  const FieldElement x = fe(3) - FieldElement(Rational(2)) * rt2();
  EXPECT_EQ(x * x.conjugate(), fe(1));
  EXPECT_EQ(x.inverse(), fe(3, 2));
  EXPECT_EQ(rt2() * rt2(), fe(2));
  EXPECT_THROW(fe(0).inverse(), symcont::DivisionByZero);
}

TEST(Field, MixedRadicandsThrow) {
  EXPECT_THROW(FieldElement::root(2) + FieldElement::root(3), symcont::MixedRadicand);
  EXPECT_EQ(FieldElement::root(3) + fe(1), FieldElement(Rational(1), Rational(1), 3));
}

TEST(Field, RoundTripString) {
  for (const auto& x : {fe(0), fe(-7), FieldElement(Rational(3, 4)), rt2(), -rt2(), fe(3, -2),
                        FieldElement(Rational(-1, 2), Rational(5, 3)),
                        FieldElement(Rational(0), Rational(1, 2), 5)}) {
    EXPECT_EQ(FieldElement::parse(x.to_string()), x) << x.to_string();
  }
  EXPECT_EQ(fe(3, -2).to_string(), "3 - 2*rt(2)");
  EXPECT_EQ(FieldElement(Rational(0), Rational(1, 2)).to_string(), "1/2*rt(2)");
}

TEST(Field, FloorAndSquareRoots) {
  EXPECT_EQ(symcont::floor_of(rt2()), 1);
  EXPECT_EQ(symcont::floor_of(-rt2()), -2);
  EXPECT_EQ(symcont::floor_of(FieldElement(Rational(-7, 2))), -4);
  EXPECT_EQ(*symcont::sqrt_in_field(fe(3, 2)), fe(1, 1));  // (1+rt2)^2
  EXPECT_EQ(*symcont::sqrt_in_field(fe(2)), rt2());
  EXPECT_EQ(*symcont::sqrt_in_field(FieldElement(Rational(9, 4))), FieldElement(Rational(3, 2)));
  EXPECT_FALSE(symcont::sqrt_in_field(fe(3)));
  EXPECT_FALSE(symcont::sqrt_in_field(fe(-4)));
  EXPECT_FALSE(symcont::sqrt_in_field(fe(0, 1)));
}

TEST(Field, FieldAxiomsOnRandomElements) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 2000; ++i) {
    const FieldElement x = random_element(rng), y = random_element(rng), z = random_element(rng);
    EXPECT_EQ(x + y, y + x);
    EXPECT_EQ(x * y, y * x);
    EXPECT_EQ((x + y) + z, x + (y + z));
    EXPECT_EQ((x * y) * z, x * (y * z));
    EXPECT_EQ(x * (y + z), x * y + x * z);
    EXPECT_EQ(x - x, fe(0));
    if (!x.is_zero()) EXPECT_EQ(x * x.inverse(), fe(1));
  }
}

TEST(Field, SignAgreesWithHighPrecisionFloat) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<long> num(-1000, 1000), den(1, 1000);
  int checked = 0;
  for (int i = 0; i < 100000; ++i) {
    const FieldElement x(Rational(num(rng), den(rng)), Rational(num(rng), den(rng)));
    const long double v = static_cast<long double>(x.rat_part().to_double()) +
                          static_cast<long double>(x.irr_part().to_double()) * std::sqrt(2.0L);
    if (std::fabs(v) < 1e-9L) continue;  // ties are decided exactly, not in floats
    ++checked;
    ASSERT_EQ(x.sign(), v > 0 ? 1 : -1) << x.to_string();
  }
  EXPECT_GT(checked, 99000);
}

TEST(Field, ToDoubleAvoidsCancellation) {
  // 99 - 70 rt2 ~ -0.00505
  const FieldElement x(Rational(99), Rational(-70));
  EXPECT_NEAR(x.to_double(), 99.0 - 70.0 * std::sqrt(2.0L), 1e-15);
}

TEST(ExtReal, Ordering) {
  using symcont::ExtReal;
  EXPECT_LT(ExtReal::minus_infinity(), ExtReal(fe(-100)));
  EXPECT_LT(ExtReal(fe(100)), ExtReal::plus_infinity());
  EXPECT_EQ(ExtReal::plus_infinity().to_string(), "+inf");
}
