#include <doctest.h>

#include <klcells/laurent.hpp>

#include <random>

using klcells::Laurent;

namespace {

Laurent random_poly(std::mt19937& rng, int max_abs_exp, int max_terms) {
  std::uniform_int_distribution<int> nterms(0, max_terms);
  std::uniform_int_distribution<int> exp(-max_abs_exp, max_abs_exp);
  std::uniform_int_distribution<std::int64_t> coeff(-50, 50);
  Laurent p;
  int n = nterms(rng);
  for (int k = 0; k < n; ++k) p += Laurent::monomial(coeff(rng), exp(rng));
  return p;
}

}  // namespace

TEST_CASE("monomial basics") {
  Laurent z = Laurent::zero();
  CHECK(z.is_zero());
  CHECK(z.str() == "0");

  Laurent v = Laurent::monomial(1, 1);
  CHECK(v.degree() == 1);
  CHECK(v.valuation() == 1);
  CHECK(v.coeff(1) == 1);
  CHECK(v.coeff(0) == 0);
  CHECK(v.str() == "v");

  CHECK(Laurent::monomial(0, 5).is_zero());
}

TEST_CASE("arithmetic examples") {
  Laurent v = Laurent::monomial(1, 1);
  Laurent vinv = Laurent::monomial(1, -1);
  CHECK((v * vinv) == Laurent::one());
  CHECK((v + (-v)).is_zero());

  Laurent p = Laurent::parse("v + v^-1");
  CHECK((p * p) == Laurent::parse("v^2 + 2 + v^-2"));
  CHECK((p - vinv) == v);
}

TEST_CASE("print and parse round trip") {
  Laurent p = Laurent::parse("3v^2 - v^-4 + 1");
  CHECK(p.coeff(2) == 3);
  CHECK(p.coeff(-4) == -1);
  CHECK(p.coeff(0) == 1);
  CHECK(p.str() == "3v^2 + 1 - v^-4");
  CHECK(Laurent::parse(p.str()) == p);

  CHECK(Laurent::parse("0").is_zero());
  CHECK(Laurent::parse("-v^3").str() == "-v^3");
  CHECK_THROWS_AS(Laurent::parse("v^"), std::invalid_argument);
  CHECK_THROWS_AS(Laurent::parse("2x"), std::invalid_argument);
}

TEST_CASE("ring axioms on random operands") {
  std::mt19937 rng(20260826);
  for (int iter = 0; iter < 300; ++iter) {
    Laurent a = random_poly(rng, 40, 8);
    Laurent b = random_poly(rng, 40, 8);
    Laurent c = random_poly(rng, 40, 8);
    CHECK(a + b == b + a);
    CHECK((a + b) + c == a + (b + c));
    CHECK(a * b == b * a);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a * Laurent::one() == a);
    CHECK((a + Laurent::zero()) == a);
    CHECK((a - a).is_zero());
  }
}

TEST_CASE("bar is a ring involution") {
  std::mt19937 rng(7);
  for (int iter = 0; iter < 200; ++iter) {
    Laurent a = random_poly(rng, 40, 8);
    Laurent b = random_poly(rng, 40, 8);
    CHECK(a.bar().bar() == a);
    CHECK((a + b).bar() == a.bar() + b.bar());
    CHECK((a * b).bar() == a.bar() * b.bar());
  }
  CHECK(Laurent::monomial(1, 3).bar() == Laurent::monomial(1, -3));
}

TEST_CASE("negative-degree cones") {
  Laurent p = Laurent::parse("v^2 + 1 - 2v^-1 + v^-3");
  CHECK_FALSE(p.in_strictly_negative());
  CHECK_FALSE(p.in_nonpositive());
  CHECK(p.neg_part() == Laurent::parse("-2v^-1 + v^-3"));
  CHECK(p.nonneg_part() == Laurent::parse("v^2 + 1"));
  CHECK(p.neg_part() + p.nonneg_part() == p);

  CHECK(Laurent::parse("v^-1 + 4v^-7").in_strictly_negative());
  CHECK(Laurent::parse("2 + v^-1").in_nonpositive());
  CHECK(Laurent::zero().in_strictly_negative());

  std::mt19937 rng(11);
  for (int iter = 0; iter < 200; ++iter) {
    Laurent a = random_poly(rng, 40, 8).neg_part();
    Laurent b = random_poly(rng, 40, 8).neg_part();
    CHECK((a + b).in_strictly_negative());
    CHECK((a * b).in_strictly_negative());
    CHECK((-a).in_strictly_negative());
  }
}

TEST_CASE("coefficient overflow is detected") {
  Laurent big = Laurent::monomial(std::int64_t(1) << 62, 0);
  CHECK_THROWS_AS(big + big, std::overflow_error);
  CHECK_THROWS_AS(big * Laurent::monomial(4, 1), std::overflow_error);
}
