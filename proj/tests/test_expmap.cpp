#include <doctest.h>

#include "dsurf/expmap.hpp"
#include "dsurf/isomorph.hpp"
#include "oracles.hpp"

using namespace dsurf;

namespace {

const FieldSpec Q = FieldSpec::rationals();
const FieldSpec F2 = FieldSpec::prime(2);
const FieldSpec F3 = FieldSpec::prime(3);

SurfaceSpec S(FieldSpec K, const char* f, const char* P) { return SurfaceSpec::parse(K, f, P); }
SurfaceElement E(const SurfaceSpec& s, const char* t, VarList aux = {}) { return SurfaceElement::parse(s, t, aux); }
SurfaceElement EU(const SurfaceSpec& s, const char* t) { return SurfaceElement::parse(s, t, {kParam}); }

std::vector<SurfaceSpec> corpus() {
  return {S(Q, "X^2", "Z^2 + 1"), S(Q, "X^3 - X^2", "Z^2 + 1"), S(F2, "X^2 + X", "Z^2"),
          S(F2, "X^2*(X + 1)", "Z^2 + Z + X"), S(F3, "X^2 + 1", "Z^3 + X"), S(Q, "X^2 - 2", "Z^3 + X*Z")};
}

const CheckResult& check(const VerificationReport& r, const std::string& name) {
  for (const auto& c : r.checks)
    if (c.name == name) return c;
  throw std::runtime_error("no check " + name);
}

}  // namespace

TEST_CASE("canonical images") {
  SurfaceSpec q = S(Q, "X^2", "Z^2 + 1");
  ExpMap m = canonical_expmap(q);
  CHECK(m.status() == MapStatus::Verified);
  CHECK(m.image_x() == EU(q, "X"));
  CHECK(m.image_z() == EU(q, "Z + X^2*U"));
  CHECK(m.image_y() == EU(q, "Y + 2*Z*U + X^2*U^2"));

  SurfaceSpec f = S(F2, "X^2 + X", "Z^2");
  ExpMap m2 = canonical_expmap(f);
  CHECK(m2.image_y() == EU(f, "Y + (X^2 + X)*U^2"));
  CHECK(m2.image_x() == EU(f, "X"));
}

TEST_CASE("canonical maps verify on every corpus surface") {
  for (const auto& s : corpus()) {
    VerificationReport r = verify_expmap(canonical_expmap(s));
    REQUIRE(r.checks.size() == 3);
    CHECK(check(r, "W").passed);
    CHECK(check(r, "A1").passed);
    CHECK(check(r, "A2").passed);
  }
  oracle::Rng rng(31);
  for (int i = 0; i < 30; ++i) {
    SurfaceSpec s = oracle::random_surface(i % 2 ? Q : F3, 2 + i % 2, 2 + i % 3, 1, rng);
    CHECK(verify_expmap(canonical_expmap(s)).passed());
  }
}

TEST_CASE("broken maps are refuted") {
  SurfaceSpec q = S(Q, "X^2", "Z^2 + 1");
  ExpMap w(q, EU(q, "X"), EU(q, "Z + X^2*U"), EU(q, "Y"));
  VerificationReport r = w.verify();
  CHECK_FALSE(check(r, "W").passed);
  CHECK(check(r, "W").witness);
  CHECK(w.status() == MapStatus::Refuted);
  CHECK(r.first_failure()->name == "W");
  CHECK_THROWS_AS(apply(w, SurfaceElement::z(q)), Error);

  ExpMap a2(q, EU(q, "X"), EU(q, "Z + X^2*U^2"), EU(q, "Y + 2*Z*U^2 + X^2*U^4"));
  VerificationReport r2 = verify_expmap(a2);
  CHECK(check(r2, "W").passed);
  CHECK(check(r2, "A1").passed);
  CHECK_FALSE(check(r2, "A2").passed);

  ExpMap a1(q, EU(q, "X"), EU(q, "Z + 1 + X^2*U"), EU(q, "Y"));
  CHECK_FALSE(check(verify_expmap(a1), "A1").passed);
  ExpMap unverified(q, EU(q, "X"), EU(q, "Z"), EU(q, "Y"));
  CHECK(unverified.status() == MapStatus::Unverified);
  CHECK_THROWS_AS(apply(unverified, SurfaceElement::z(q)), Error);
}

TEST_CASE("apply, degrees, coefficients and invariants") {
  SurfaceSpec q = S(Q, "X^2", "Z^2 + 1");
  ExpMap m = canonical_expmap(q);
  CHECK(apply(m, E(q, "X^3")) == EU(q, "X^3"));
  CHECK(apply(m, SurfaceElement::z(q)) == EU(q, "Z + X^2*U"));
  CHECK(apply(m, SurfaceElement::y(q)) == EU(q, "Y + 2*Z*U + X^2*U^2"));
  CHECK(phi_degree(m, SurfaceElement::x(q)) == 0);
  CHECK(phi_degree(m, SurfaceElement::z(q)) == 1);
  CHECK(phi_degree(m, SurfaceElement::y(q)) == q.d());
  CHECK_FALSE(phi_degree(m, E(q, "0")));
  CHECK(derivation_coeff(m, SurfaceElement::z(q), 1) == E(q, "X^2"));
  SurfaceElement top = derivation_coeff(m, SurfaceElement::y(q), 2);
  CHECK(top == E(q, "X^2"));
  CHECK(is_invariant(m, top));
  CHECK(derivation_coeff(m, SurfaceElement::y(q), 7).is_zero());
  CHECK(is_invariant(m, E(q, "X^5 + 3*X")));
  CHECK_FALSE(is_invariant(m, SurfaceElement::z(q)));
  CHECK(is_invariant(m, E(q, "X^2*Y - Z^2 - 1 + X^5")));

  oracle::Rng rng(32);
  for (const auto& s : corpus()) {
    ExpMap c = canonical_expmap(s);
    for (int i = 0; i < 20; ++i) {
      SurfaceElement e = oracle::random_element(s, rng);
      CHECK(derivation_coeff(c, e, 0) == e);
    }
  }
}

TEST_CASE("higher derivation laws") {
  oracle::Rng rng(33);
  for (const auto& s : corpus()) {
    ExpMap m = canonical_expmap(s);
    const FieldSpec& K = s.field();
    for (int t = 0; t < 25; ++t) {
      SurfaceElement a = oracle::random_element(s, rng), b = oracle::random_element(s, rng);
      auto da = phi_degree(m, a), db = phi_degree(m, b);
      int top = (da ? *da : 0) + (db ? *db : 0);
      for (int n = 0; n <= top; ++n) {
        SurfaceElement sum(s);
        for (int i = 0; i <= n; ++i)
          sum = sum + derivation_coeff(m, a, static_cast<unsigned>(i)) * derivation_coeff(m, b, static_cast<unsigned>(n - i));
        CHECK(derivation_coeff(m, a * b, static_cast<unsigned>(n)) == sum);
      }
      if (!da) continue;
      for (int i = 0; i <= *da; ++i) {
        SurfaceElement di = derivation_coeff(m, a, static_cast<unsigned>(i));
        if (!di.is_zero()) CHECK(*phi_degree(m, di) <= *da - i);
        for (int j = 0; i + j <= *da; ++j) {
          SurfaceElement lhs = derivation_coeff(m, di, static_cast<unsigned>(j));
          SurfaceElement rhs = derivation_coeff(m, a, static_cast<unsigned>(i + j)).scaled(Scalar(K, oracle::binomial(i + j, i)));
          CHECK(lhs == rhs);
        }
      }
    }
  }
}

TEST_CASE("invariant ring is factorially closed on samples") {
  oracle::Rng rng(34);
  for (const auto& s : corpus()) {
    ExpMap m = canonical_expmap(s);
    for (int t = 0; t < 30; ++t) {
      SurfaceElement a = t % 3 == 0 ? oracle::random_element(s, rng) : normal_form(oracle::random_poly(s.field(), raw_vars({}), 3, 3, rng).coefficient("Y", 0).coefficient("Z", 0), s);
      SurfaceElement b = t % 2 == 0 ? oracle::random_element(s, rng) : normal_form(oracle::random_poly(s.field(), raw_vars({}), 3, 3, rng).coefficient("Y", 0).coefficient("Z", 0), s);
      SurfaceElement ab = a * b;
      if (ab.is_zero() || !is_invariant(m, ab)) continue;
      CHECK(is_invariant(m, a));
      CHECK(is_invariant(m, b));
    }
  }
}

TEST_CASE("conjugation") {
  SurfaceSpec f = S(F2, "X^2 + X", "Z^2");
  ExpMap m = canonical_expmap(f);
  ExpMap same = conjugate(m, identity_certificate(f));
  CHECK(same.image_x() == m.image_x());
  CHECK(same.image_z() == m.image_z());
  CHECK(same.image_y() == m.image_y());

  auto shift = complete_certificate(f, f, Scalar::one(F2), Scalar::one(F2), Scalar::one(F2), Poly(F2, x_vars()));
  REQUIRE(shift);
  ExpMap c = conjugate(m, *shift);
  CHECK(c.status() == MapStatus::Verified);
  CHECK(is_invariant(c, SurfaceElement::x(f)));

  SurfaceSpec q = S(Q, "X^2", "Z^2 + 1");
  auto neg = complete_certificate(q, q, Scalar::one(Q), Scalar::zero(Q), Scalar(Q, -1), Poly(Q, x_vars()));
  REQUIRE(neg);
  ExpMap cn = conjugate(canonical_expmap(q), *neg);
  CHECK(cn.status() == MapStatus::Verified);
  CHECK(cn.image_z() == EU(q, "Z - X^2*U"));

  SurfaceSpec other = S(Q, "X^2", "Z^2 + 2");
  auto cross = complete_certificate(q, other, Scalar::one(Q), Scalar::zero(Q), Scalar::one(Q), Poly(Q, x_vars()));
  CHECK_FALSE(cross);
}

TEST_CASE("verified nontrivial maps fix x and move z and y") {
  int maps = 0;
  for (const auto& s : corpus()) {
    ExpMap m = canonical_expmap(s);
    std::vector<ExpMap> population{m};
    for (const auto& cert : automorphisms(s).decision.certificates) population.push_back(conjugate(m, cert));
    for (const auto& e : population) {
      REQUIRE(e.status() == MapStatus::Verified);
      REQUIRE(e.nontrivial());
      CHECK(is_invariant(e, SurfaceElement::x(s)));
      CHECK_FALSE(is_invariant(e, SurfaceElement::z(s)));
      CHECK_FALSE(is_invariant(e, SurfaceElement::y(s)));
      ++maps;
    }
  }
  CHECK(maps >= 20);
}
