#include <doctest.h>

#include "dsurf/algebra.hpp"
#include "oracles.hpp"

using namespace dsurf;

namespace {

const FieldSpec Q = FieldSpec::rationals();
const FieldSpec F2 = FieldSpec::prime(2);
const FieldSpec F3 = FieldSpec::prime(3);
const FieldSpec F5 = FieldSpec::prime(5);

Poly px(const char* s, FieldSpec K = Q) { return parse_poly(s, K, x_vars()); }
Poly pxz(const char* s, FieldSpec K = Q) { return parse_poly(s, K, xz_vars()); }

}  // namespace

TEST_CASE("field construction and tags") {
  CHECK(FieldSpec::parse("Q").is_rationals());
  CHECK(FieldSpec::parse("F7").modulus() == 7);
  CHECK(FieldSpec::parse("F7").tag() == "F7");
  CHECK_THROWS_AS(FieldSpec::prime(4), Error);
  CHECK_THROWS_AS(FieldSpec::parse("R"), Error);
  CHECK(Q.characteristic() == 0);
  CHECK(F5.characteristic() == 5);
}

TEST_CASE("scalar arithmetic is exact") {
  Scalar a = Scalar::parse(Q, "3/6");
  CHECK(a.str() == "1/2");
  CHECK((a + a).is_one());
  CHECK(Scalar::parse(Q, "-4/-8").str() == "1/2");
  CHECK((Scalar(F5, 3) * Scalar(F5, 2)).is_one());
  CHECK(Scalar(F5, -1).str() == "4");
  CHECK(Scalar(F5, 2).inverse() == Scalar(F5, 3));
  CHECK_THROWS_AS(Scalar::zero(Q).inverse(), Error);
  CHECK_THROWS_AS(Scalar(F5, 1) / Scalar(F5, 5), Error);
  CHECK_THROWS_AS(Scalar::parse(F5, "1/5"), Error);
  CHECK_THROWS_AS(Scalar(F5, 1) + Scalar(F3, 1), Error);
  CHECK(Scalar(F3, 2).pow(3) == Scalar(F3, 2));
}

TEST_CASE("parse and print") {
  Poly p = parse_poly("X^2*Y - Z^2 - 1", Q, {"X", "Y", "Z"});
  CHECK(p.size() == 3);
  CHECK(p.coeff({2, 1, 0}).is_one());
  CHECK(p.coeff({0, 0, 2}) == Scalar(Q, -1));
  CHECK(p.coeff({0, 0, 0}) == Scalar(Q, -1));
  CHECK(px("X*(X+1)", F2) == px("X^2 + X", F2));
  CHECK(parse_poly("0", Q, {"X", "Y"}).is_zero());
  CHECK(px("-(X - 1)^2 + 1/2") == px("-X^2 + 2*X - 1/2"));
  CHECK(pxz("-Z/2") == pxz("-1/2*Z"));
  CHECK(px("(X^2 + 2)/(3 - 1)") == px("1/2*X^2 + 1"));
  CHECK_THROWS_AS(px("X/(X + 1)"), ParseError);
  CHECK_THROWS_AS(px("X/0"), Error);
  CHECK_THROWS_AS(px("X/3", F3), Error);
  CHECK_THROWS_AS(px("X +"), ParseError);
  CHECK_THROWS_AS(px("2X"), ParseError);
  CHECK_THROWS_AS(px("Y"), Error);
  CHECK_THROWS_AS(px("X^-1"), ParseError);
  CHECK_THROWS_AS(px("1/2", F2), Error);
  try {
    px("X + )");
    FAIL("no throw");
  } catch (const ParseError& e) {
    CHECK(e.position() == 4);
  }
}

TEST_CASE("print then parse is the identity on random polynomials") {
  oracle::Rng rng(11);
  for (const FieldSpec& K : {Q, F2, F5})
    for (int i = 0; i < 100; ++i) {
      Poly p = oracle::random_poly(K, {"X", "Y", "Z", "v"}, 3, 5, rng);
      CHECK(parse_poly(p.str(), K, p.vars()) == p);
    }
}

TEST_CASE("ring laws hold structurally") {
  oracle::Rng rng(12);
  for (const FieldSpec& K : {Q, F2, F3})
    for (int i = 0; i < 100; ++i) {
      VarList v{"X", "Z"};
      Poly a = oracle::random_poly(K, v, 3, 4, rng), b = oracle::random_poly(K, v, 3, 4, rng),
           c = oracle::random_poly(K, v, 3, 4, rng);
      CHECK((a + b) + c == a + (b + c));
      CHECK(a * b == b * a);
      CHECK((a * b) * c == a * (b * c));
      CHECK(a * (b + c) == a * b + a * c);
      CHECK((a - a).is_zero());
    }
}

TEST_CASE("substitute") {
  CHECK(substitute(px("X^2 + X", F2), {{"X", px("X + 1", F2)}}) == px("X^2 + X", F2));
  CHECK(substitute(pxz("Z^2 + 1"), {{"X", pxz("X")}, {"Z", pxz("Z")}}) == pxz("Z^2 + 1"));
  VarList w{"X", "Z", "v"};
  Poly img = parse_poly("(X^2 - X)*v + Z", Q, w);
  Poly got = substitute(pxz("Z^2 + 1"), {{"X", parse_poly("X", Q, w)}, {"Z", img}});
  CHECK(got == parse_poly("Z^2 + 2*(X^2 - X)*v*Z + (X^2 - X)^2*v^2 + 1", Q, w));
}

TEST_CASE("exact division") {
  VarList v{"X", "Z", "U"};
  Poly a = parse_poly("(Z + X^2*U)^2 + 1 - (Z^2 + 1)", Q, v);
  auto q = exact_div(a, parse_poly("X^2", Q, v));
  REQUIRE(q);
  CHECK(*q == parse_poly("2*U*Z + X^2*U^2", Q, v));
  CHECK(*exact_div(px("X^2 + X", F2), px("X", F2)) == px("X + 1", F2));
  CHECK_FALSE(exact_div(px("X + 1"), px("X")));
  CHECK_THROWS_AS(exact_div(px("X"), px("0")), Error);

  oracle::Rng rng(13);
  for (const FieldSpec& K : {Q, F2, F3})
    for (int i = 0; i < 500; ++i) {
      Poly a2 = oracle::random_poly(K, {"X", "Z"}, 3, 3, rng);
      Poly b2 = oracle::random_poly(K, {"X", "Z"}, 2, 3, rng);
      if (b2.is_zero()) continue;
      auto q2 = exact_div(a2 * b2, b2);
      REQUIRE(q2);
      CHECK(*q2 == a2);
    }
}

TEST_CASE("divrem by a monic polynomial") {
  oracle::Rng rng(14);
  for (int i = 0; i < 100; ++i) {
    Poly a = oracle::random_poly(Q, xz_vars(), 4, 5, rng);
    Poly m = oracle::random_univariate(Q, "X", 2, rng, true).with_vars(xz_vars());
    auto [q, r] = divrem_monic(a, m, "X");
    CHECK(q * m + r == a);
    CHECK(r.degree("X") < 2);
  }
}

TEST_CASE("gcd") {
  CHECK(gcd_univariate(px("X^2*(X-1)"), px("X*(X+1)")) == px("X"));
  CHECK(gcd_univariate(px("2*X + 2"), px("0")) == px("X + 1"));
  CHECK(gcd_univariate(px("X^2 + 1"), px("2*X")) == px("1"));
  CHECK(gcd_univariate(px("0"), px("0")).is_zero());
  CHECK_THROWS_AS(gcd_univariate(pxz("X*Z"), pxz("X")), Error);
}

TEST_CASE("resultants") {
  CHECK(resultant_in(pxz("Z^2 + 1"), pxz("2*Z"), "Z") == pxz("4"));
  CHECK(resultant_in(pxz("Z^2 + Z + X", F2), pxz("1", F2), "Z") == pxz("1", F2));
  CHECK(resultant_in(pxz("Z^2"), pxz("2*Z"), "Z").is_zero());
  CHECK_THROWS_AS(resultant_in(pxz("X"), pxz("X + 1"), "Z"), Error);
  CHECK(resultant_in(pxz("Z - X"), pxz("Z^2 - 1"), "Z") == pxz("X^2 - 1"));
}

TEST_CASE("resultants agree with a cofactor-expansion oracle") {
  oracle::Rng rng(15);
  int compared = 0;
  for (const FieldSpec& K : {Q, F3})
    for (int i = 0; i < 60; ++i) {
      Poly p = oracle::random_poly(K, xz_vars(), 4, 4, rng);
      Poly q = oracle::random_poly(K, xz_vars(), 4, 4, rng);
      if (p.degree("Z") < 1 || q.degree("Z") < 1) continue;
      CHECK(resultant_in(p, q, "Z") == oracle::sylvester_resultant(p, q, "Z"));
      ++compared;
    }
  CHECK(compared > 50);
}

TEST_CASE("bezout cofactors") {
  BezoutPair bp = bezout_cofactors(pxz("Z^2 + 1"), pxz("2*Z"));
  CHECK(bp.a == pxz("-1/2*Z"));
  CHECK(bp.b == pxz("1"));
  BezoutPair b2 = bezout_cofactors(pxz("Z^2 + Z + X", F2), pxz("1", F2));
  CHECK(b2.a * pxz("1", F2) + b2.b * pxz("Z^2 + Z + X", F2) == pxz("1", F2));
  CHECK_THROWS_AS(bezout_cofactors(pxz("Z^2"), pxz("2*Z")), Error);

  oracle::Rng rng(16);
  int built = 0;
  for (const FieldSpec& K : {Q, F3, F5})
    for (int i = 0; i < 80; ++i) {
      SurfaceSpec s = oracle::random_surface(K, 2, 2 + static_cast<int>(i % 2), 1, rng);
      Poly Pz = s.P().derivative("Z");
      if (!is_comaximal_with_derivative(s.P())) {
        CHECK_THROWS_AS(bezout_cofactors(s.P(), Pz), Error);
        continue;
      }
      BezoutPair c = bezout_cofactors(s.P(), Pz);
      CHECK(c.a * Pz + c.b * s.P() == Poly::constant(K, xz_vars(), 1));
      ++built;
    }
  CHECK(built > 20);
}

TEST_CASE("factorization examples") {
  Factorization a = factor_univariate(px("X^2 + X", F2));
  REQUIRE(a.factors.size() == 2);
  CHECK(a.factors[0].poly == px("X", F2));
  CHECK(a.factors[1].poly == px("X + 1", F2));
  Factorization b = factor_univariate(px("X^3 - X^2"));
  REQUIRE(b.factors.size() == 2);
  CHECK(b.factors[0].poly == px("X"));
  CHECK(b.factors[0].multiplicity == 2);
  CHECK(b.factors[1].poly == px("X - 1"));
  CHECK(b.factors[1].multiplicity == 1);
  Factorization c = factor_univariate(px("X^2 + 1"));
  REQUIRE(c.factors.size() == 1);
  CHECK(c.factors[0].poly == px("X^2 + 1"));
  CHECK(factor_univariate(px("X^8 + X^4 + X^3 + X + 1", F2)).factors.size() == 1);
  CHECK(factor_univariate(px("X^4 + 4")).factors.size() == 2);
  CHECK_THROWS_AS(factor_univariate(px("0")), Error);
}

TEST_CASE("factorization round trips on random products") {
  oracle::Rng rng(17);
  for (const FieldSpec& K : {F2, F3, F5})
    for (int i = 0; i < 200; ++i) {
      Poly p = Poly::constant(K, x_vars(), oracle::random_nonzero(K, rng));
      int parts = static_cast<int>(oracle::uniform(rng, 1, 4));
      for (int j = 0; j < parts; ++j) p *= oracle::random_univariate(K, "X", static_cast<int>(oracle::uniform(rng, 1, 3)), rng, true);
      Factorization fz = factor_univariate(p, static_cast<std::uint64_t>(i));
      CHECK(fz.expand(x_vars()) == p);
      for (const auto& f : fz.factors) {
        CHECK(f.poly.leading_term().second.is_one());
        if (f.poly.degree("X") > 1 && f.poly.degree("X") <= 3) CHECK(roots_in_field(f.poly).empty());
      }
    }
  for (int i = 0; i < 200; ++i) {
    Poly p = Poly::constant(Q, x_vars(), oracle::random_nonzero(Q, rng));
    int parts = static_cast<int>(oracle::uniform(rng, 1, 3));
    for (int j = 0; j < parts; ++j) {
      if (oracle::uniform(rng, 0, 1)) {
        p *= px("X").scaled(Scalar(Q, oracle::uniform(rng, 1, 3))) + Poly::constant(Q, x_vars(), oracle::random_scalar(Q, rng));
      } else {
        long c = oracle::uniform(rng, 1, 5);
        p *= px("X^2") + Poly::constant(Q, x_vars(), Scalar(Q, c)) + px("X").scaled(Scalar(Q, oracle::uniform(rng, -1, 1)));
      }
    }
    Factorization fz = factor_univariate(p);
    CHECK(fz.expand(x_vars()) == p);
  }
}

TEST_CASE("roots") {
  auto r = roots_in_field(px("X^2 - 1"));
  REQUIRE(r.size() == 2);
  CHECK(r[0] == Scalar(Q, -1));
  CHECK(r[1] == Scalar(Q, 1));
  CHECK(roots_in_field(px("X^2 + 1")).empty());
  auto r2 = roots_in_field(px("X^2 + X", F2));
  REQUIRE(r2.size() == 2);
  CHECK(r2[0].is_zero());
  CHECK(r2[1].is_one());
  CHECK(roots_in_field(px("(2*X - 1)^2*(X + 3)")).size() == 3);
  CHECK(root_multiplicity(px("X^3 - X^2"), Scalar(Q, 0)) == 2);

  oracle::Rng rng(18);
  for (const FieldSpec& K : {F2, F3, F5})
    for (int i = 0; i < 50; ++i) {
      Poly p = oracle::random_univariate(K, "X", static_cast<int>(oracle::uniform(rng, 1, 5)), rng, false);
      std::vector<Scalar> exhaustive;
      for (const auto& s : oracle::field_elements(K))
        if (evaluate(p, "X", s).is_zero()) exhaustive.push_back(s);
      std::vector<Scalar> got = roots_in_field(p);
      got.erase(std::unique(got.begin(), got.end()), got.end());
      CHECK(got == exhaustive);
    }
  for (int i = 0; i < 50; ++i) {
    Poly p = oracle::random_univariate(Q, "X", static_cast<int>(oracle::uniform(rng, 1, 4)), rng, false);
    for (const auto& s : roots_in_field(p)) CHECK(evaluate(p, "X", s).is_zero());
  }
}

TEST_CASE("squarefree and radical") {
  CHECK(is_squarefree(px("X^2 + 1")));
  CHECK_FALSE(is_squarefree(px("X^2")));
  CHECK(radical(px("X^3 - X^2")) == px("X^2 - X"));
  CHECK(radical(px("X^4 + X^2", F2)) == px("X^2 + X", F2));
}
