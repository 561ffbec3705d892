#include <doctest.h>

#include "dsurf/surface.hpp"
#include "oracles.hpp"

using namespace dsurf;

namespace {

const FieldSpec Q = FieldSpec::rationals();
const FieldSpec F2 = FieldSpec::prime(2);
const FieldSpec F3 = FieldSpec::prime(3);

SurfaceSpec S(FieldSpec K, const char* f, const char* P) { return SurfaceSpec::parse(K, f, P); }
SurfaceElement E(const SurfaceSpec& s, const char* t, VarList aux = {}) { return SurfaceElement::parse(s, t, aux); }

std::vector<SurfaceSpec> corpus() {
  return {S(Q, "X^2", "Z^2 + 1"), S(Q, "X^3 - X^2", "Z^2 + 1"), S(F2, "X^2 + X", "Z^2"),
          S(F2, "X^2*(X + 1)", "Z^2 + Z + X"), S(Q, "X^2 + 1", "Z^3 - X*Z + 2"), S(F3, "X^3 + 2*X", "Z^3 + X*Z^2 + 1")};
}

}  // namespace

TEST_CASE("surface validation") {
  SurfaceSpec a = S(F2, "X^2 + X", "Z^2");
  CHECK(a.r() == 2);
  CHECK(a.d() == 2);
  CHECK(a.n() == 1);
  SurfaceSpec b = S(Q, "X^3 - X^2", "Z^2 + 1");
  CHECK(b.r() == 3);
  CHECK(b.n() == 2);
  CHECK(b.c(0) == parse_poly("1", Q, x_vars()));
  try {
    S(Q, "2*X^2", "Z^2 + 1");
    FAIL("accepted a non-monic f");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotMonic);
  }
  try {
    S(Q, "X", "Z^2 + 1");
    FAIL("accepted r = 1");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DegreeTooSmall);
  }
  try {
    S(Q, "X^2", "2*Z^2");
    FAIL("accepted a non-monic P");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotMonic);
  }
  try {
    S(Q, "X^2", "Z + X");
    FAIL("accepted d = 1");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DegreeTooSmall);
  }
  CHECK_THROWS_AS(S(Q, "X^2*Z", "Z^2"), Error);
  CHECK(b.str() == "(X^3 - X^2)*Y = Z^2 + 1 over Q");
}

TEST_CASE("normal form examples") {
  SurfaceSpec s = S(F2, "X^2 + X", "Z^2");
  SurfaceElement z2 = E(s, "Z^2");
  REQUIRE(z2.coeffs().size() == 1);
  CHECK(z2.coeffs().at(1) == parse_poly("X^2 + X", F2, xz_vars()));
  SurfaceElement z3 = E(s, "Z^3");
  REQUIRE(z3.coeffs().size() == 1);
  CHECK(z3.coeffs().at(1) == parse_poly("X^2*Z + X*Z", F2, xz_vars()));
  CHECK(E(s, "X*Z").coeffs().at(0) == parse_poly("X*Z", F2, xz_vars()));
  CHECK(E(s, "0").is_zero());
}

TEST_CASE("ring operations") {
  SurfaceSpec s = S(F2, "X^2 + X", "Z^2");
  SurfaceElement z = SurfaceElement::z(s), x = SurfaceElement::x(s), y = SurfaceElement::y(s);
  CHECK(z * z == E(s, "(X^2 + X)*Y"));
  CHECK(y * (x * x + x) == E(s, "Z^2"));
  SurfaceSpec q = S(Q, "X^3 - X^2", "Z^2 + 1");
  SurfaceElement one = SurfaceElement::constant(q, Scalar::one(Q));
  CHECK((one + SurfaceElement::z(q)) + (one - SurfaceElement::z(q)) == SurfaceElement::constant(q, Scalar(Q, 2)));
  CHECK(SurfaceElement::y(q) * E(q, "X^3 - X^2") == E(q, "Z^2 + 1"));
  CHECK_THROWS_AS(SurfaceElement::z(q) + SurfaceElement::z(s), Error);
}

TEST_CASE("normal form is unique across reduction orders") {
  oracle::Rng rng(21);
  for (const auto& s : corpus())
    for (int i = 0; i < 200; ++i) {
      Poly raw = oracle::random_raw(s, rng, 4, 6, i % 3 == 0 ? VarList{"U"} : VarList{});
      SurfaceElement a = normal_form(raw, s, Reduction::HighestFirst);
      SurfaceElement b = normal_form(raw, s, Reduction::LowestFirst);
      SurfaceElement c = normal_form(raw, s, Reduction::Division);
      CHECK(a == b);
      CHECK(a == c);
      for (const auto& [k, g] : a.coeffs()) {
        CHECK(g.degree("Z") < s.d());
        CHECK_FALSE(g.is_zero());
      }
    }
}

TEST_CASE("normal form respects ring structure") {
  oracle::Rng rng(22);
  for (const auto& s : corpus())
    for (int i = 0; i < 40; ++i) {
      Poly a = oracle::random_raw(s, rng, 3, 4), b = oracle::random_raw(s, rng, 3, 4);
      CHECK(normal_form(a * b, s) == normal_form(a, s) * normal_form(b, s));
      CHECK(normal_form(a + b, s) == normal_form(a, s) + normal_form(b, s));
      Poly rel = s.f().with_vars(raw_vars({})) * Poly::variable(s.field(), raw_vars({}), "Y") -
                 s.P().with_vars(raw_vars({}));
      CHECK(normal_form(a * rel, s).is_zero());
      CHECK(normal_form(normal_form(a, s).raw(), s) == normal_form(a, s));
    }
}

TEST_CASE("auxiliary variables") {
  SurfaceSpec s = S(Q, "X^2", "Z^2 + 1");
  SurfaceElement e = E(s, "Z^2*U + V", {"V", "U"});
  CHECK(e.aux() == VarList{"U", "V"});
  CHECK(e.uses("U"));
  CHECK(e.aux_degree("U") == 1);
  CHECK(e.aux_coefficient("U", 1) == E(s, "X^2*Y - 1"));
  CHECK(e.evaluate_aux("U", Scalar::zero(Q)) == E(s, "V", {"V"}));
  CHECK(E(s, "Z", {"U"}) == SurfaceElement::z(s));
}

TEST_CASE("filtration degree") {
  SurfaceSpec s = S(F2, "X^2 + X", "Z^2");
  CHECK(filtration_deg(SurfaceElement::x(s)) == 0);
  CHECK(filtration_deg(SurfaceElement::z(s)) == 1);
  CHECK(filtration_deg(SurfaceElement::y(s)) == 2);
  CHECK(filtration_deg(E(s, "(X^2 + X)*Y*Z")) == 3);
  CHECK_FALSE(filtration_deg(E(s, "0")));
  CHECK_THROWS_AS(filtration_deg(E(s, "U", {"U"})), Error);

  oracle::Rng rng(23);
  for (const auto& sp : corpus())
    for (int i = 0; i < 60; ++i) {
      SurfaceElement a = oracle::random_element(sp, rng), b = oracle::random_element(sp, rng);
      if (a.is_zero() || b.is_zero()) continue;
      CHECK(*filtration_deg(a * b) == *filtration_deg(a) + *filtration_deg(b));
      if (!(a + b).is_zero()) CHECK(*filtration_deg(a + b) <= std::max(*filtration_deg(a), *filtration_deg(b)));
    }
}

TEST_CASE("graded surface and leading forms") {
  CHECK(graded_surface(S(F2, "X^2 + X", "Z^2 + Z")) == S(F2, "X^2 + X", "Z^2"));
  SurfaceSpec q = S(Q, "X^3 - X^2", "Z^2 + 1");
  CHECK(graded_surface(q) == S(Q, "X^3 - X^2", "Z^2"));
  CHECK(graded_surface(graded_surface(q)) == graded_surface(q));

  SurfaceSpec B = graded_surface(q);
  CHECK(leading_form(E(q, "Z + X^3")) == SurfaceElement::z(B));
  CHECK(leading_form(SurfaceElement::y(q)) == SurfaceElement::y(B));
  SurfaceElement w = leading_form(SurfaceElement::z(q));
  CHECK(leading_form(SurfaceElement::z(q) * SurfaceElement::z(q)) == w * w);
  CHECK(w * w == E(B, "(X^3 - X^2)*Y"));
  CHECK_THROWS_AS(leading_form(E(q, "0")), Error);

  oracle::Rng rng(24);
  for (const auto& sp : corpus())
    for (int i = 0; i < 60; ++i) {
      SurfaceElement a = oracle::random_element(sp, rng), b = oracle::random_element(sp, rng);
      if (a.is_zero() || b.is_zero()) continue;
      CHECK(leading_form(a * b) == leading_form(a) * leading_form(b));
    }
}

TEST_CASE("division by x") {
  SurfaceSpec q = S(Q, "X^3 - X^2", "Z^2 + 1");
  CHECK(divide_by_x(E(q, "X*Y + X^2*Z")) == E(q, "Y + X*Z"));
  try {
    divide_by_x(SurfaceElement::z(q));
    FAIL("z divided by x");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotDivisible);
  }
  try {
    divide_by_x(SurfaceElement::x(S(Q, "X^2 + 1", "Z^2")));
    FAIL("accepted f(0) != 0");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Precondition);
  }
  oracle::Rng rng(25);
  SurfaceElement x = SurfaceElement::x(q);
  for (int i = 0; i < 100; ++i) {
    SurfaceElement e = oracle::random_element(q, rng);
    CHECK(divide_by_x(x * e) == e);
    try {
      SurfaceElement d = divide_by_x(e);
      CHECK(x * d == e);
    } catch (const Error& err) {
      CHECK(err.kind() == ErrorKind::NotDivisible);
    }
  }
}

TEST_CASE("fibers") {
  FiberReport g = fiber(S(Q, "X^2", "Z^2 + 1"), Scalar::one(Q));
  CHECK(g.kind == FiberKind::GenericLine);
  CHECK(g.f_value.is_one());
  CHECK(g.closure_lines == 1);
  FiberReport e = fiber(S(Q, "X^2", "Z^2 + 1"), Scalar::zero(Q));
  CHECK(e.kind == FiberKind::ExceptionalFiber);
  REQUIRE(e.factors.factors.size() == 1);
  CHECK(e.factors.factors[0].poly.str() == "Z^2 + 1");
  CHECK(e.factors.factors[0].multiplicity == 1);
  CHECK(e.closure_lines == 2);
  FiberReport n = fiber(S(Q, "X^2", "Z^2"), Scalar::zero(Q));
  CHECK(n.kind == FiberKind::NonReducedFiber);
  CHECK(n.closure_lines == 1);
}

TEST_CASE("smoothness") {
  SmoothnessReport a = smoothness_check(S(Q, "X^2", "Z^2 + 1"));
  CHECK(a.smooth);
  CHECK(a.resultant.str() == "4");
  CHECK(a.gcd.str() == "1");
  SmoothnessReport b = smoothness_check(S(Q, "X^2", "Z^2"));
  CHECK_FALSE(b.smooth);
  REQUIRE(b.witness);
  CHECK(b.witness->str() == "X");
  SmoothnessReport c = smoothness_check(S(F2, "X^2 + X", "Z^2 + Z + X"));
  CHECK(c.smooth);
  CHECK(c.resultant.str() == "1");
  CHECK_FALSE(smoothness_check(S(F2, "X^2 + X", "Z^2")).smooth);
}

TEST_CASE("smoothness agrees with fibers over rational roots") {
  oracle::Rng rng(26);
  for (int i = 0; i < 60; ++i) {
    SurfaceSpec s = oracle::random_surface(F3, 2, 2, 1, rng);
    bool all_reduced = true;
    for (const auto& root : roots_in_field(s.f()))
      all_reduced = all_reduced && fiber(s, root).kind != FiberKind::NonReducedFiber;
    if (smoothness_check(s).smooth) CHECK(all_reduced);
  }
}

TEST_CASE("map_generators") {
  SurfaceSpec s = S(F2, "X^2 + X", "Z^2");
  GeneratorImages shift{E(s, "X + 1"), SurfaceElement::y(s), SurfaceElement::z(s), {}};
  CHECK(map_generators(E(s, "X^2*Y + Z"), shift) == E(s, "(X + 1)^2*Y + Z"));
  CHECK(map_generators(E(s, "(X^2 + X)*Y - Z^2"), shift).is_zero());
}
