#include "hecke_forge/rational.hpp"

#include <gtest/gtest.h>

using hecke_forge::Polynomial;
using hecke_forge::Rational;

TEST(Polynomial, ZeroHasNoCoefficients) {
  Polynomial z;
  EXPECT_TRUE(z.is_zero());
  EXPECT_EQ(z.degree(), -1);
  EXPECT_EQ(Polynomial(0), z);
  EXPECT_EQ(Polynomial(std::vector<Rational>{0, 0, 0}), z);
}

TEST(Polynomial, TrailingZerosAreTrimmed) {
  Polynomial p(std::vector<Rational>{1, 2, 0, 0});
  EXPECT_EQ(p.degree(), 1);
  EXPECT_EQ(p - p, Polynomial());
}

TEST(Polynomial, Arithmetic) {
  const Polynomial q = Polynomial::x();
  const Polynomial a = q + Polynomial(1);
  const Polynomial b = q * q + q + Polynomial(1);
  EXPECT_EQ(a * b, Polynomial(std::vector<Rational>{1, 2, 2, 1}));
  EXPECT_EQ((a * b).evaluate(2), 21);
  EXPECT_EQ(-a + a, Polynomial());
  EXPECT_EQ(Polynomial::monomial(Rational(3, 2), 2).coefficient(2), Rational(3, 2));
}

TEST(Polynomial, Rendering) {
  EXPECT_EQ(Polynomial().str(), "0");
  EXPECT_EQ((Polynomial::x() - Polynomial(1)).str(), "-1 + q");
  EXPECT_EQ(Polynomial(std::vector<Rational>{Rational(1, 2), 0, -1}).str("X"), "1/2 - X^2");
}

TEST(RationalPow, NegativeExponents) {
  EXPECT_EQ(hecke_forge::pow(Rational(2, 3), -2), Rational(9, 4));
  EXPECT_EQ(hecke_forge::pow(Rational(5), 0), 1);
  EXPECT_THROW(hecke_forge::pow(Rational(0), -1), std::domain_error);
}
