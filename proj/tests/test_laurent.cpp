#include "doctest.h"
#include "support.hpp"

using namespace blanchfield;
using testing_support::P;

TEST_CASE("conj negates every exponent") {
  CHECK(conj(P("t1", 1)) == P("t^-1", 1));
  CHECK(conj(P("3 + 2*t1*t2^-1", 2)) == P("3 + 2*t1^-1*t2", 2));
  CHECK(conj(P("1 - t")) == P("1 - t^-1"));
  CHECK(conj(P("1 - t")) == P("-t^-1", 1) * P("1 - t"));
}

TEST_CASE("strip_units examples") {
  SUBCASE("sign, monomial and clasp factor") {
    const auto s = strip_units(P("-t1^2*(1 - t1)*5", 1));
    CHECK(s.core == P("5"));
    CHECK(s.unit.sign == -1);
    CHECK(s.unit.monomial[0] == 2);
    CHECK(s.unit.clasp[0] == 1);
  }
  SUBCASE("symmetric trefoil polynomial") {
    const auto s = strip_units(P("t - 1 + t^-1"));
    CHECK(s.core == P("t^2 - t + 1"));
    CHECK(s.unit.sign == 1);
    CHECK(s.unit.monomial[0] == -1);
    CHECK(s.unit.clasp[0] == 0);
  }
  SUBCASE("one") {
    const auto s = strip_units(P("1"));
    CHECK(s.core.is_one());
    CHECK(s.unit.is_one());
  }
  CHECK_THROWS_AS(strip_units(LaurentPoly(0)), MathError);
}

TEST_CASE("is_unit_ls examples") {
  CHECK(is_unit_ls(P("1")));
  CHECK(is_unit_ls(P("-t1^2*t2^-1*(1 - t1)^3", 2)));
  CHECK_FALSE(is_unit_ls(P("1 + t1", 2)));
  CHECK_FALSE(is_unit_ls(P("2")));
  CHECK(is_unit_ls(P("t - 1")));
  CHECK(is_unit_ls(P("2 - t - t^-1")));
  CHECK_FALSE(is_unit_ls(LaurentPoly(0)));
}

TEST_CASE("gcd examples") {
  const LaurentPoly p = P("-3*t^2*(t^2 - t + 1)*(1 - t)");
  CHECK(gcd(p, LaurentPoly(0)) == strip_units(p).core);
  CHECK(gcd(LaurentPoly(0), p) == P("3*t^2 - 3*t + 3"));
  CHECK(gcd(P("t - 1"), P("t^2 - 1")).is_one());
  CHECK(gcd(P("t^2 - t + 1"), P("t^2 - 3*t + 1")).is_one());
  CHECK(gcd(P("(t^2 - t + 1)^2*(t + 2)"), P("(t^2 - t + 1)*(t + 3)*t^-4")) == P("t^2 - t + 1"));
  CHECK(gcd(P("6*t + 6"), P("4*t^2 - 4")) == P("2*t + 2"));
  CHECK(gcd(P("(t1 + t2)*(t1 - 2)", 2), P("(t1 + t2)*(t2 + 3)*t1", 2)) == P("t1 + t2", 2));
  CHECK(gcd(P("(t1*t2 - 2)*(t1 + 1)^2", 2), P("(t1*t2 - 2)^2*(t1 + 1)*(t2 - 3)", 2)) ==
        P("(t1*t2 - 2)*(t1 + 1)", 2));
  CHECK(gcd(P("(t1 + t2 + t3)*(t3 - t1 + 2)", 3), P("(t1 + t2 + t3)^2*t2", 3)) == P("t1 + t2 + t3", 3));
}

TEST_CASE("exact division") {
  CHECK(*divide_exact(P("t^2 - 1"), P("t - 1")) == P("t + 1"));
  CHECK(*divide_exact(P("t^-3 - t^-1"), P("t - 1")) == P("-t^-3 - t^-2"));
  CHECK_FALSE(divide_exact(P("t^2 + 1"), P("t - 1")).has_value());
  CHECK_FALSE(divide_exact(P("3*t"), P("2")).has_value());
  CHECK(*divide_exact(P("(t1 - t2)*(t1*t2 + 3)", 2), P("t1*t2 + 3", 2)) == P("t1 - t2", 2));
}

TEST_CASE("text form") {
  CHECK(to_string(P("t1^2 - t1 + 1", 2)) == "t1^2 - t1 + 1");
  CHECK(to_string(P("3 - 2*t1*t2^-1", 2)) == "-2*t1*t2^-1 + 3");
  CHECK(to_string(P("  t - 1 +t^ -1 ")) == "t - 1 + t^-1");
  CHECK(to_string(P("t1 - 1", 1)) == "t - 1");
  CHECK(to_string(LaurentPoly(0)) == "0");
  CHECK(to_string(P("-t^2")) == "-t^2");
  CHECK_THROWS_AS(parse_laurent("t", 2), ParseError);
  CHECK_THROWS_AS(parse_laurent("t3", 2), ParseError);
  CHECK_THROWS_AS(parse_laurent("2 +", 1), ParseError);
  CHECK_THROWS_AS(parse_laurent("(t + 1)^-1", 1), ParseError);
}

TEST_CASE("ring properties on random polynomials") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const int nv = 1 + trial % 3;
    const auto a = testing_support::random_poly(rng, nv, 6, -3, 3);
    const auto b = testing_support::random_poly(rng, nv, 6, -3, 3);
    const auto c = testing_support::random_poly(rng, nv, 6, -3, 3);
    CHECK(a + b == b + a);
    CHECK(a * b == b * a);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(conj(conj(a)) == a);
    CHECK(conj(a * b) == conj(a) * conj(b));
    CHECK(conj(a + b) == conj(a) + conj(b));
    CHECK(parse_laurent(to_string(a, nv), nv) == a);
  }
}

TEST_CASE("multiplication matches the naive double loop") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    const int nv = 1 + trial % 3;
    const auto a = testing_support::random_poly(rng, nv, 50, -6, 6, 1000);
    const auto b = testing_support::random_poly(rng, nv, 50, -6, 6, 1000);
    CHECK(a * b == testing_support::naive_product(a, b));
  }
}

TEST_CASE("strip_units recombines exactly") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 150; ++trial) {
    const int nv = 1 + trial % 3;
    LaurentPoly p = testing_support::random_nonzero_poly(rng, nv, 5, -2, 2);
    if (trial % 2 == 0) p *= LaurentPoly::one_minus(nv, trial % nv).pow(1 + trial % 3);
    const auto s = strip_units(p);
    CHECK(s.unit.to_poly(nv) * s.core == p);
    CHECK(s.core.leading().coef > 0);
    CHECK(s.core.min_exponents().is_zero());
    for (int i = 0; i < nv; ++i) CHECK_FALSE(s.core.substitute(i, 1).is_zero());
  }
}

TEST_CASE("gcd divides both arguments and ignores Λ_S-units") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 80; ++trial) {
    const int nv = 1 + trial % 2;
    const auto common = testing_support::random_nonzero_poly(rng, nv, 3, 0, 2);
    const auto p = common * testing_support::random_nonzero_poly(rng, nv, 3, -1, 2);
    const auto q = common * testing_support::random_nonzero_poly(rng, nv, 3, -1, 2);
    const auto g = gcd(p, q);
    REQUIRE_FALSE(g.is_zero());
    CHECK(divide_exact(p, g).has_value());
    CHECK(divide_exact(q, g).has_value());
    CHECK(divide_exact(g, strip_units(common).core).has_value());
    LSUnit u;
    u.sign = -1;
    u.monomial[0] = 3;
    u.clasp[0] = 2;
    CHECK(gcd(u.to_poly(nv) * p, q) == g);
    // gcd of the cofactors is trivial.
    const auto cp = *divide_exact(strip_units(p).core, g);
    const auto cq = *divide_exact(strip_units(q).core, g);
    CHECK(gcd(cp, cq).is_one());
  }
}

TEST_CASE("gcd is associative up to normalization") {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 40; ++trial) {
    const auto f = testing_support::random_nonzero_poly(rng, 2, 3, 0, 2);
    const auto a = f * testing_support::random_nonzero_poly(rng, 2, 3, 0, 2);
    const auto b = f * testing_support::random_nonzero_poly(rng, 2, 3, 0, 2);
    const auto c = f * testing_support::random_nonzero_poly(rng, 2, 3, 0, 2);
    CHECK(gcd(gcd(a, b), c) == gcd(a, gcd(b, c)));
  }
}
