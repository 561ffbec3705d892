#pragma once

// Dense univariate helpers shared by the gcd, root-finding and factorization
// code. Not part of the public interface.

#include <cstdint>
#include <optional>
#include <tuple>
#include <string>
#include <utility>
#include <vector>

#include "dsurf/poly.hpp"

namespace dsurf::detail {

/// Dense univariate polynomial over a FieldSpec, coefficients low to high,
/// no trailing zeros (zero polynomial is empty).
struct UPoly {
  FieldSpec field;
  std::vector<Scalar> c;

  explicit UPoly(FieldSpec f) : field(f) {}
  UPoly(FieldSpec f, std::vector<Scalar> coeffs) : field(f), c(std::move(coeffs)) { trim(); }

  static UPoly constant(FieldSpec f, const Scalar& s) { return UPoly(f, {s}); }
  static UPoly x(FieldSpec f) { return UPoly(f, {Scalar::zero(f), Scalar::one(f)}); }

  void trim() {
    while (!c.empty() && c.back().is_zero()) c.pop_back();
  }
  bool is_zero() const { return c.empty(); }
  int deg() const { return c.empty() ? -1 : static_cast<int>(c.size()) - 1; }
  const Scalar& lc() const { return c.back(); }
  bool is_one() const { return c.size() == 1 && c[0].is_one(); }
  Scalar eval(const Scalar& x) const;

  friend bool operator==(const UPoly& a, const UPoly& b) { return a.c == b.c; }
};

UPoly operator+(const UPoly& a, const UPoly& b);
UPoly operator-(const UPoly& a, const UPoly& b);
UPoly operator*(const UPoly& a, const UPoly& b);
UPoly scale(const UPoly& a, const Scalar& s);
std::pair<UPoly, UPoly> divrem(const UPoly& a, const UPoly& b);
UPoly monic(const UPoly& a);
/// Monic gcd; gcd(0,0) = 0.
UPoly gcd(const UPoly& a, const UPoly& b);
UPoly derivative(const UPoly& a);

/// Converts a polynomial that uses at most the variable at `index`.
UPoly to_upoly(const Poly& p, std::size_t index);
Poly from_upoly(const UPoly& u, const VarList& vars, std::size_t index);

/// Index of the single variable a univariate polynomial uses, or nullopt for a
/// constant. Throws NotUnivariate when more than one variable occurs.
std::optional<std::size_t> univariate_index(const Poly& p);

// ---------------------------------------------------------------------------
// Dense polynomials over Z/p (p < 2^32), coefficients low to high.

using FpVec = std::vector<std::uint64_t>;

struct Fp {
  std::uint64_t p;

  void trim(FpVec& a) const {
    while (!a.empty() && a.back() == 0) a.pop_back();
  }
  FpVec add(const FpVec& a, const FpVec& b) const;
  FpVec sub(const FpVec& a, const FpVec& b) const;
  FpVec mul(const FpVec& a, const FpVec& b) const;
  FpVec scale(const FpVec& a, std::uint64_t s) const;
  std::pair<FpVec, FpVec> divrem(const FpVec& a, const FpVec& b) const;
  FpVec rem(const FpVec& a, const FpVec& b) const { return divrem(a, b).second; }
  FpVec monic(const FpVec& a) const;
  FpVec gcd(FpVec a, FpVec b) const;
  /// Returns (g, s, t) with s*a + t*b = g monic.
  std::tuple<FpVec, FpVec, FpVec> xgcd(const FpVec& a, const FpVec& b) const;
  FpVec derivative(const FpVec& a) const;
  FpVec mulmod(const FpVec& a, const FpVec& b, const FpVec& m) const;
  FpVec powmod(FpVec base, const mpz_class& e, const FpVec& m) const;
  std::uint64_t eval(const FpVec& a, std::uint64_t x) const;
};

/// Squarefree decomposition of a monic polynomial over F_p.
std::vector<std::pair<FpVec, unsigned>> fp_squarefree(const Fp& F, const FpVec& f);
/// Complete factorization of a monic squarefree polynomial into monic irreducibles.
std::vector<FpVec> fp_factor_squarefree(const Fp& F, const FpVec& f, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Integer polynomials, coefficients low to high.

using ZVec = std::vector<mpz_class>;

/// Irreducible factors over Z of a primitive squarefree polynomial with
/// positive leading coefficient (each primitive, positive leading coefficient).
std::vector<ZVec> z_factor_squarefree(const ZVec& f, std::uint64_t seed);

/// Rational roots of a nonzero primitive integer polynomial (no multiplicity),
/// or nullopt when the coefficients are too large for divisor enumeration.
std::optional<std::vector<mpq_class>> rational_roots(const ZVec& f);

/// Clears denominators and content of a rational UPoly; leading coefficient > 0.
ZVec primitive_integer(const UPoly& u);
UPoly to_rational(const ZVec& z);

}  // namespace dsurf::detail
