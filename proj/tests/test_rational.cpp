#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "boxcover/rational.hpp"

using boxcover::Rational;

TEST_CASE("construction normalizes to lowest terms with positive denominator") {
  CHECK(Rational(2, 4) == Rational(1, 2));
  CHECK(Rational(-2, 4) == Rational(-1, 2));
  CHECK(Rational(2, -4) == Rational(-1, 2));
  CHECK(Rational(-2, -4) == Rational(1, 2));
  CHECK(Rational(0, 7) == Rational(0));
  CHECK(Rational(6, 3).numerator() == 2);
  CHECK(Rational(6, 3).denominator() == 1);
}

TEST_CASE("arithmetic is exact") {
  const Rational a(1, 3), b(1, 6);
  CHECK(a + b == Rational(1, 2));
  CHECK(a - b == Rational(1, 6));
  CHECK(a * b == Rational(1, 18));
  CHECK(a / b == Rational(2));
  CHECK(-a == Rational(-1, 3));
  CHECK_THROWS_AS(a / Rational(0), std::domain_error);
  CHECK_THROWS_AS(Rational(1, 0), std::domain_error);
}

TEST_CASE("comparisons cross-multiply exactly") {
  CHECK(Rational(1, 3) < Rational(1, 2));
  CHECK(Rational(2, 6) <= Rational(1, 3));
  CHECK(Rational(-1, 2) < Rational(0));
  CHECK(Rational(7, 8) > Rational(13, 16));
}

TEST_CASE("no overflow on cascaded small epsilons") {
  // Denominators multiply through repeated shrinking; the value must stay
  // exact far beyond 64-bit range.
  Rational eps(1, 64);
  for (int i = 0; i < 60; ++i) eps = eps / Rational(8);
  Rational x = Rational(1, 4) - Rational(3) * eps;
  CHECK(x < Rational(1, 4));
  CHECK(x + Rational(3) * eps == Rational(1, 4));
  CHECK(eps.str() == "1/" + (boost::multiprecision::cpp_int(1) << (6 + 180)).str());
}

TEST_CASE("format and parse round-trip") {
  const auto roundtrip = [](const Rational& r) {
    const auto parsed = Rational::parse(r.str());
    REQUIRE(parsed.has_value());
    CHECK(*parsed == r);
  };
  roundtrip(Rational(0));
  roundtrip(Rational(5));
  roundtrip(Rational(-7, 3));
  roundtrip(Rational(22, 7));

  std::mt19937_64 rng(7);
  for (int i = 0; i < 500; ++i) {
    std::uniform_int_distribution<std::int64_t> d(-100000, 100000);
    std::int64_t den = d(rng);
    if (den == 0) den = 1;
    roundtrip(Rational(d(rng), den));
  }

  CHECK(Rational(1, 2).str() == "1/2");
  CHECK(Rational(-1, 2).str() == "-1/2");
  CHECK(Rational(3).str() == "3");
  CHECK_FALSE(Rational::parse("").has_value());
  CHECK_FALSE(Rational::parse("1/0").has_value());
  CHECK_FALSE(Rational::parse("1/-2").has_value());
  CHECK_FALSE(Rational::parse("a/b").has_value());
  CHECK_FALSE(Rational::parse("1.5").has_value());
}

TEST_CASE("pow2_floor finds the largest power of two below") {
  CHECK(Rational::pow2_floor(Rational(1)) == Rational(1));
  CHECK(Rational::pow2_floor(Rational(3)) == Rational(2));
  CHECK(Rational::pow2_floor(Rational(1, 3)) == Rational(1, 4));
  CHECK(Rational::pow2_floor(Rational(1, 4)) == Rational(1, 4));
  CHECK(Rational::pow2_floor(Rational(5, 64)) == Rational(1, 16));
  CHECK_THROWS_AS(Rational::pow2_floor(Rational(0)), std::domain_error);
}
