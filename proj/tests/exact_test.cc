#include "chroma/exact.hpp"

#include <gtest/gtest.h>

#include <cmath>

namespace chroma {
namespace {

TEST(Rational, ParseAndFormat) {
  EXPECT_EQ(parse_rational("3/8"), Rational(3, 8));
  EXPECT_EQ(parse_rational("-6/4"), Rational(-3, 2));
  EXPECT_EQ(parse_rational("0.125"), Rational(1, 8));
  EXPECT_EQ(parse_rational("7"), Rational(7));
  EXPECT_EQ(to_string(Rational(6, 4)), "3/2");
  EXPECT_EQ(to_string(Rational(4, 2)), "2");
  EXPECT_EQ(floor_to_int(Rational(-7, 2)), -4);
  EXPECT_EQ(ceil_to_int(Rational(-7, 2)), -3);
  EXPECT_EQ(ceil_to_int(Rational(7, 2)), 4);
}

TEST(Surd, ExactComparisonAtTheBoundary) {
  // 6 = 2 * sqrt(9) exactly.
  const auto s = Surd::linear(0, 2, 9);
  EXPECT_EQ(compare(Rational(6), s), 0);
  EXPECT_TRUE(leq(Rational(6), s));
  EXPECT_TRUE(geq(Rational(6), s));
  // 9/2 - 3 sqrt(2) ~ 0.257
  const auto t = Surd::linear(Rational(9, 2), -3, 2);
  EXPECT_EQ(sign(t), 1);
  EXPECT_EQ(compare(Rational(1, 4), t), -1);
  EXPECT_EQ(compare(Rational(26, 100), t), 1);
  EXPECT_NEAR(t.to_double(), 4.5 - 3 * std::sqrt(2.0), 1e-12);
  // 4 - 3 sqrt(2) < 0
  EXPECT_EQ(sign(Surd::linear(4, -3, 2)), -1);
  EXPECT_EQ(sign(Surd::constant(0)), 0);
}

TEST(Surd, Arithmetic) {
  const auto a = Surd::linear(1, 2, 5);
  const auto b = Surd::linear(Rational(1, 2), -1, 5);
  const auto c = a + b;
  EXPECT_EQ(c.a, Rational(3, 2));
  EXPECT_EQ(c.b, Rational(1));
  EXPECT_EQ((a - Surd::constant(1)).a, Rational(0));
  EXPECT_THROW(a + Surd::linear(0, 1, 7), std::invalid_argument);
}

TEST(NumberTheory, Primes) {
  EXPECT_FALSE(is_prime(1));
  EXPECT_TRUE(is_prime(2));
  EXPECT_TRUE(is_prime(7726193));
  EXPECT_FALSE(is_prime(96577));
  EXPECT_EQ(next_prime(13), 17);
  EXPECT_EQ(next_prime(14), 17);
  EXPECT_EQ(next_prime(7726160), 7726193);
  EXPECT_EQ(isqrt(99), 9);
  EXPECT_EQ(isqrt(100), 10);
  EXPECT_EQ(modinv(3, 7), 5);
  EXPECT_THROW(modinv(4, 8), std::domain_error);
  EXPECT_EQ(mod(-6, 5), 4);
  EXPECT_EQ(binomial(9, 3), 84u);
  EXPECT_EQ(binomial(3, 5), 0u);
}

}  // namespace
}  // namespace chroma
