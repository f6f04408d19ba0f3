#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "qml/gaussian.hpp"
#include "qml/rational.hpp"

#include <random>

using namespace qml;

TEST_CASE("rational parsing and rendering") {
  CHECK(rat_from_string("3/2") == Rational(3, 2));
  CHECK(rat_from_string("-7") == Rational(-7));
  CHECK(rat_from_string(" 4/6 ") == Rational(2, 3));
  CHECK(rat_to_string(Rational(-1, 4)) == "-1/4");
  CHECK(rat_to_string(Rational(5)) == "5");
  CHECK_THROWS_AS(rat_from_string("1/0"), input_error);
  CHECK_THROWS_AS(rat_from_string("1.5"), exactness_error);
  CHECK_THROWS_AS(rat_from_string(""), input_error);
  CHECK_THROWS_AS(rat_from_string("2/3/4"), input_error);
}

TEST_CASE("factorials and binomials") {
  CHECK(factorial(0) == 1);
  CHECK(factorial(20) == Integer("2432902008176640000"));
  CHECK(binomial(10, 3) == 120);
  CHECK(binomial(3, 7) == 0);
}

TEST_CASE("rational powers and square roots") {
  CHECK(rat_pow(Rational(2, 3), 3) == Rational(8, 27));
  CHECK(rat_pow(Rational(2, 3), -2) == Rational(9, 4));
  CHECK(rat_pow(Rational(5), 0) == 1);
  CHECK(rat_sqrt(Rational(9, 4)) == Rational(3, 2));
  CHECK(!rat_sqrt(Rational(2)));
  CHECK(!rat_sqrt(Rational(-4)));
}

TEST_CASE("gaussian rational field operations") {
  GaussianRational i{Rational(0), Rational(1)};
  CHECK(i * i == GaussianRational{Rational(-1)});
  GaussianRational z = gauss_from_string("3/2+1/2i");
  CHECK(z.re == Rational(3, 2));
  CHECK(z.im == Rational(1, 2));
  CHECK(z.abs_sq() == Rational(5, 2));
  CHECK(z * z.conj() == GaussianRational{Rational(5, 2)});
  CHECK((z / z) == GaussianRational{Rational(1)});
  CHECK_THROWS_AS(z / GaussianRational{}, input_error);
}

TEST_CASE("gaussian literals") {
  CHECK(gauss_from_string("i") == GaussianRational(Rational(0), Rational(1)));
  CHECK(gauss_from_string("-i") == GaussianRational(Rational(0), Rational(-1)));
  CHECK(gauss_from_string("2i") == GaussianRational(Rational(0), Rational(2)));
  CHECK(gauss_from_string("1-2i") == GaussianRational(Rational(1), Rational(-2)));
  CHECK(gauss_from_string("-1/3i") == GaussianRational(Rational(0), Rational(-1, 3)));
  CHECK(gauss_to_string(GaussianRational(Rational(3, 2), Rational(1, 2))) == "3/2+1/2i");
  CHECK(gauss_to_string(GaussianRational(Rational(0), Rational(-1))) == "-i");
  CHECK(gauss_to_string(GaussianRational{}) == "0");
  // Round trip on a few structured values.
  for (long a = -2; a <= 2; ++a)
    for (long b = -2; b <= 2; ++b) {
      GaussianRational v{make_rat(a, 3), make_rat(b, 5)};
      CHECK(gauss_from_string(gauss_to_string(v)) == v);
    }
}

TEST_CASE("gaussian square roots") {
  auto r = gauss_sqrt(gauss_from_string("2i"));
  REQUIRE(r);
  CHECK(*r * *r == gauss_from_string("2i"));
  CHECK(gauss_sqrt(GaussianRational{Rational(-9)})->im == 3);
  CHECK(!gauss_sqrt(GaussianRational{Rational(2)}));
  CHECK(!gauss_sqrt(gauss_from_string("1+i")));

  std::mt19937 rng(7);
  std::uniform_int_distribution<long> dist(-6, 6);
  for (int trial = 0; trial < 200; ++trial) {
    GaussianRational v{make_rat(dist(rng), 1 + std::abs(dist(rng))),
                       make_rat(dist(rng), 1 + std::abs(dist(rng)))};
    GaussianRational square = v * v;
    auto root = gauss_sqrt(square);
    REQUIRE(root);
    CHECK(*root * *root == square);
  }
}
