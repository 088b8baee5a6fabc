#include "hyperpoly/scalar.hpp"

#include <gtest/gtest.h>

#include "hyperpoly/rng.hpp"

using namespace hyperpoly;

namespace {

GaussianRational random_gaussian_rational(Rng& rng) {
  return {Rational(rng.int_range(-20, 20), rng.int_range(1, 9)),
          Rational(rng.int_range(-20, 20), rng.int_range(1, 9))};
}

TEST(Rational, ParseFormatRoundTrip) {
  EXPECT_EQ(parse_rational("3/4"), Rational(3, 4));
  EXPECT_EQ(parse_rational("-6/8"), Rational(-3, 4));
  EXPECT_EQ(parse_rational("7"), Rational(7));
  EXPECT_EQ(parse_rational("-1.25"), Rational(-5, 4));
  EXPECT_EQ(parse_rational("0.5"), Rational(1, 2));
  EXPECT_EQ(format_rational(Rational(3, 4)), "3/4");
  EXPECT_EQ(format_rational(Rational(-5)), "-5/1");
  EXPECT_EQ(format_rational(Rational(0)), "0/1");
  EXPECT_EQ(parse_rational(format_rational(Rational(-22, 7))), Rational(-22, 7));
  EXPECT_THROW(parse_rational("1/0"), std::invalid_argument);
  EXPECT_THROW(parse_rational("abc"), std::invalid_argument);
  EXPECT_THROW(parse_rational(""), std::invalid_argument);
}

TEST(Rational, SqrtAndFloor) {
  EXPECT_EQ(rational_sqrt(Rational(9, 4)), Rational(3, 2));
  EXPECT_EQ(rational_sqrt(Rational(0)), Rational(0));
  EXPECT_FALSE(rational_sqrt(Rational(2)));
  EXPECT_FALSE(rational_sqrt(Rational(-1)));
  EXPECT_FALSE(rational_sqrt(Rational(9, 5)));
  EXPECT_EQ(rational_floor(Rational(7, 2)), 3);
  EXPECT_EQ(rational_floor(Rational(-7, 2)), -4);
  EXPECT_EQ(rational_floor(Rational(4)), 4);
}

TEST(GaussianRational, FieldAxioms) {
  Rng rng(11);
  for (int round = 0; round < 200; ++round) {
    const auto a = random_gaussian_rational(rng);
    const auto b = random_gaussian_rational(rng);
    EXPECT_EQ(a + b - b, a);
    EXPECT_EQ(a * b, b * a);
    if (!b.is_zero()) EXPECT_EQ((a * b) / b, a);
    EXPECT_EQ(a * (GaussianRational(1) / (b.is_zero() ? GaussianRational(1) : b)) *
                  (b.is_zero() ? GaussianRational(1) : b),
              a);
  }
  EXPECT_THROW(GaussianRational(1) / GaussianRational(0), std::domain_error);
}

TEST(GaussianRational, ExactSqrt) {
  // i has no square root in Q(i), 2i = (1+i)^2 does.
  EXPECT_FALSE(exact_sqrt(GaussianRational{0, 1}));
  const auto root_2i = exact_sqrt(GaussianRational{0, 2});
  ASSERT_TRUE(root_2i);
  EXPECT_EQ(*root_2i * *root_2i, (GaussianRational{0, 2}));
  EXPECT_FALSE(exact_sqrt(GaussianRational{2, 0}));
  EXPECT_EQ(exact_sqrt(GaussianRational{-4, 0}),
            (GaussianRational{0, 2}));
  EXPECT_FALSE(exact_sqrt(GaussianRational{1, 1}));

  Rng rng(23);
  for (int round = 0; round < 200; ++round) {
    const auto g = random_gaussian_rational(rng);
    const auto root = exact_sqrt(g * g);
    ASSERT_TRUE(root);
    EXPECT_TRUE(*root == g || *root == -g);
  }
}

TEST(Tolerance, ScaleRelativeZeroTest) {
  set_tolerance(1e-9);
  EXPECT_TRUE(is_zero(Complex(1e-12, 0), 1.0));
  EXPECT_FALSE(is_zero(Complex(1e-6, 0), 1.0));
  EXPECT_TRUE(is_zero(Complex(1e-6, 0), 1e4));
  EXPECT_THROW(set_tolerance(0.0), std::invalid_argument);
  EXPECT_THROW(set_tolerance(-1.0), std::invalid_argument);
  // Exact zero tests ignore the scale.
  EXPECT_FALSE(is_zero(GaussianRational{Rational(1, 1000000000000LL)}, 1e9));
}

}  // namespace
