#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "qml/homopoly.hpp"

#include <random>

using namespace qml;

namespace {

HomoPoly2 poly(const std::string& text) { return HomoPoly2::from_map(parse_poly(text)); }

GaussianRational gr(long re_num, long re_den, long im_num, long im_den) {
  return {make_rat(re_num, re_den), make_rat(im_num, im_den)};
}

}  // namespace

TEST_CASE("classification of coefficient maps") {
  auto both = classify(parse_poly("z1^2 - z2^2"));
  CHECK(both.homogeneous);
  CHECK(both.degree == 2);
  CHECK_FALSE(classify(parse_poly("z1 + z2^2")).homogeneous);
  CHECK(classify(parse_poly("z1 - z1")).zero);

  // z1^r z2^s (z1 - a z2) expanded stays homogeneous of degree r+s+1.
  auto expanded = classify(parse_poly("z1^3*z2^2 - (2+i)*z1^2*z2^3"));
  CHECK(expanded.homogeneous);
  CHECK(expanded.degree == 5);
}

TEST_CASE("polynomial parsing") {
  PolyMap2 p = parse_poly("z1^2*z2 - z1*z2^2");
  CHECK(p.size() == 2);
  CHECK(p[{2, 1}] == GaussianRational{Rational(1)});
  CHECK(p[{1, 2}] == GaussianRational{Rational(-1)});

  PolyMap2 q = parse_poly("(3/2+1/2i)*z2^3");
  CHECK(q[{0, 3}] == gr(3, 2, 1, 2));

  CHECK(parse_poly("2z1")[{1, 0}] == GaussianRational{Rational(2)});
  CHECK(parse_poly("z1*z1*z2")[{2, 1}] == GaussianRational{Rational(1)});
  CHECK(parse_poly("i*z1")[{1, 0}] == gr(0, 1, 1, 1));
  CHECK(parse_poly(" z1 -  z2 ").size() == 2);

  CHECK_THROWS_AS(parse_poly("z3"), input_error);
  CHECK_THROWS_AS(parse_poly("z1^"), input_error);
  CHECK_THROWS_AS(parse_poly("1.5*z1"), exactness_error);
  CHECK_THROWS_AS(HomoPoly2::from_map(parse_poly("z1 + z2^2")), input_error);
  CHECK_THROWS_AS(HomoPoly2::from_map(parse_poly("z1 - z1")), input_error);
}

TEST_CASE("square-free detection is exact") {
  CHECK(is_square_free(poly("z1^2*z2 - z1*z2^2")));  // z1 z2 (z1 - z2)
  CHECK_FALSE(is_square_free(poly("z1^2*z2")));
  CHECK(is_square_free(poly("z1 - (2+i)*z2")));
  CHECK(is_square_free(poly("z2")));
  CHECK_FALSE(is_square_free(poly("z2^2")));
  // (z1 - z2)^2 (z1 + z2)
  CHECK_FALSE(is_square_free(poly("z1^3 - z1^2*z2 - z1*z2^2 + z2^3")));
  // (z1 - i z2)(z1 + i z2)
  CHECK(is_square_free(poly("z1^2 + z2^2")));
}

TEST_CASE("factorization: exact routes") {
  auto f1 = factor(poly("z1^2 - z2^2"));
  CHECK_FALSE(f1.approximate);
  CHECK(f1.lead == GaussianRational{Rational(1)});
  CHECK(f1.z2_power == 0);
  REQUIRE(f1.roots.size() == 2);
  CHECK(f1.roots[0] == GaussianRational{Rational(-1)});
  CHECK(f1.roots[1] == GaussianRational{Rational(1)});

  auto f2 = factor(poly("z1*z2"));
  CHECK(f2.z2_power == 1);
  REQUIRE(f2.roots.size() == 1);
  CHECK(f2.roots[0].is_zero());

  auto f3 = factor(poly("z2^3"));
  CHECK(f3.z2_power == 3);
  CHECK(f3.roots.empty());
  CHECK(f3.lead == GaussianRational{Rational(1)});

  auto f4 = factor(poly("z1^2 + z2^2"));
  CHECK_FALSE(f4.approximate);
  REQUIRE(f4.roots.size() == 2);
  CHECK(f4.roots[0] == gr(0, 1, -1, 1));
  CHECK(f4.roots[1] == gr(0, 1, 1, 1));

  // (z1 - z2)(z1 - 2 z2)(z1 + 3 z2) needs the rational-root search.
  auto f5 = factor(poly("z1^3 - 7*z1*z2^2 + 6*z2^3"));
  CHECK_FALSE(f5.approximate);
  REQUIRE(f5.roots.size() == 3);
  CHECK(f5.roots[0] == GaussianRational{Rational(-3)});
  CHECK(f5.roots[1] == GaussianRational{Rational(1)});
  CHECK(f5.roots[2] == GaussianRational{Rational(2)});
  CHECK(f5.reassemble() == poly("z1^3 - 7*z1*z2^2 + 6*z2^3"));
}

TEST_CASE("factorization: numeric fallback carries the approximate flag") {
  HomoPoly2 p = poly("z1^3 - 2*z2^3");
  const unsigned precision = 128;
  auto fac = factor(p, precision);
  CHECK(fac.approximate);
  REQUIRE(fac.roots.size() == 3);
  HomoPoly2 rebuilt = fac.reassemble();
  // Coefficientwise residual within 2^(-precision/2).
  Rational bound = rat_pow(Rational(1, 2), precision / 2);
  for (unsigned k = 0; k <= 3; ++k) {
    GaussianRational diff = rebuilt.coeff(k) - p.coeff(k);
    CHECK(diff.abs_sq() <= bound * bound);
  }
}

TEST_CASE("factorization uniqueness on random exact products") {
  std::mt19937 rng(2024);
  std::uniform_int_distribution<int> small(-2, 2);
  std::uniform_int_distribution<int> den(1, 2);
  std::uniform_int_distribution<unsigned> count(1, 5);
  std::uniform_int_distribution<unsigned> z2pow(0, 2);
  for (int trial = 0; trial < 60; ++trial) {
    LinearFactorization built;
    built.lead = gr(small(rng) * 2 + 1, den(rng), small(rng), den(rng));
    if (built.lead.is_zero()) built.lead = GaussianRational{Rational(1)};
    built.z2_power = z2pow(rng);
    unsigned m = count(rng);
    for (unsigned k = 0; k < m; ++k) built.roots.push_back(gr(small(rng), den(rng), small(rng), den(rng)));
    std::sort(built.roots.begin(), built.roots.end());

    HomoPoly2 expanded = built.reassemble();
    auto recovered = factor(expanded);
    REQUIRE_FALSE(recovered.approximate);
    CHECK(recovered.lead == built.lead);
    CHECK(recovered.z2_power == built.z2_power);
    REQUIRE(recovered.roots.size() == built.roots.size());
    for (std::size_t k = 0; k < built.roots.size(); ++k)
      CHECK(recovered.roots[k] == built.roots[k]);
    CHECK(recovered.reassemble() == expanded);

    // Proposition-style agreement between the gcd test and the exact roots.
    bool distinct = true;
    for (std::size_t i = 0; i + 1 < recovered.roots.size(); ++i)
      if (recovered.roots[i] == recovered.roots[i + 1]) distinct = false;
    bool expected_sf = distinct && recovered.z2_power <= 1;
    CHECK(is_square_free(expanded) == expected_sf);
  }
}

TEST_CASE("normal form detection") {
  auto f1 = normal_form(poly("z1 - 2*z2"));
  REQUIRE(f1);
  CHECK(f1->r == 0);
  CHECK(f1->s == 0);
  CHECK(f1->a == GaussianRational{Rational(2)});

  auto f2 = normal_form(poly("z1*z2"));
  REQUIRE(f2);
  CHECK(f2->r == 0);
  CHECK(f2->s == 1);
  CHECK(f2->a.is_zero());

  CHECK_FALSE(normal_form(poly("z1^2 - z2^2")));
  CHECK_FALSE(normal_form(poly("z2^3")));

  auto f3 = normal_form(poly("z1^3"));
  REQUIRE(f3);
  CHECK(f3->r == 2);
  CHECK(f3->s == 0);
  CHECK(f3->a.is_zero());

  // 3 z1^2 z2^3 (z1 - (1+i) z2), handed over expanded.
  auto f4 = normal_form(poly("3*z1^3*z2^3 - (3+3i)*z1^2*z2^4"));
  REQUIRE(f4);
  CHECK(f4->r == 2);
  CHECK(f4->s == 3);
  CHECK(f4->a == gr(1, 1, 1, 1));
  CHECK(f4->scale == GaussianRational{Rational(3)});
}

TEST_CASE("rendering round trip") {
  for (const char* text : {"z1^2*z2 - z1*z2^2", "z1 - 2*z2", "z2^3", "z1^2 + z2^2"}) {
    HomoPoly2 p = poly(text);
    CHECK(poly(p.to_string()) == p);
  }
}
