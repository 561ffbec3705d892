#pragma once

// Test-side generators and independent reference computations.

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "dsurf/algebra.hpp"
#include "dsurf/isomorph.hpp"
#include "dsurf/surface.hpp"

namespace oracle {

using namespace dsurf;
using Rng = std::mt19937_64;

inline long uniform(Rng& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

inline Scalar random_scalar(const FieldSpec& K, Rng& rng, long range = 5) {
  if (K.is_prime_field()) return Scalar(K, uniform(rng, 0, static_cast<long>(K.modulus()) - 1));
  long num = uniform(rng, -range, range);
  long den = uniform(rng, 1, 3);
  return Scalar(K, mpq_class(num, den));
}

inline Scalar random_nonzero(const FieldSpec& K, Rng& rng, long range = 5) {
  for (;;) {
    Scalar s = random_scalar(K, rng, range);
    if (!s.is_zero()) return s;
  }
}

/// Up to `terms` random monomials with each exponent at most `max_deg`.
inline Poly random_poly(const FieldSpec& K, const VarList& vars, unsigned max_deg, int terms, Rng& rng) {
  Poly p(K, vars);
  for (int t = 0; t < terms; ++t) {
    Exponents e(vars.size());
    for (auto& x : e) x = static_cast<std::uint32_t>(uniform(rng, 0, max_deg));
    p.add_term(e, random_scalar(K, rng));
  }
  return p;
}

inline Poly random_univariate(const FieldSpec& K, const std::string& var, int deg, Rng& rng, bool monic) {
  Poly p(K, {var});
  for (int i = 0; i < deg; ++i) p.add_term({static_cast<std::uint32_t>(i)}, random_scalar(K, rng));
  p.add_term({static_cast<std::uint32_t>(deg)}, monic ? Scalar::one(K) : random_nonzero(K, rng));
  return p;
}

/// f monic of degree r in X, P monic of degree d in Z with coefficients of X-degree <= cdeg.
inline SurfaceSpec random_surface(const FieldSpec& K, int r, int d, unsigned cdeg, Rng& rng) {
  Poly f = random_univariate(K, "X", r, rng, true);
  Poly P(K, xz_vars());
  P.add_term({0, static_cast<std::uint32_t>(d)}, Scalar::one(K));
  for (int i = 0; i < d; ++i)
    for (unsigned j = 0; j <= cdeg; ++j)
      if (uniform(rng, 0, 1)) P.add_term({j, static_cast<std::uint32_t>(i)}, random_scalar(K, rng));
  return SurfaceSpec::make(K, f, P);
}

inline Poly random_raw(const SurfaceSpec& s, Rng& rng, unsigned max_deg = 3, int terms = 5, const VarList& aux = {}) {
  return random_poly(s.field(), raw_vars(aux), max_deg, terms, rng);
}

inline SurfaceElement random_element(const SurfaceSpec& s, Rng& rng, unsigned max_deg = 2, int terms = 4) {
  return normal_form(random_raw(s, rng, max_deg, terms), s);
}

/// Determinant by cofactor expansion along the first row.
inline Poly laplace_det(const std::vector<std::vector<Poly>>& m, const FieldSpec& K, const VarList& vars) {
  std::size_t n = m.size();
  if (n == 0) return Poly::constant(K, vars, 1);
  if (n == 1) return m[0][0];
  Poly det(K, vars);
  for (std::size_t j = 0; j < n; ++j) {
    if (m[0][j].is_zero()) continue;
    std::vector<std::vector<Poly>> minor;
    for (std::size_t i = 1; i < n; ++i) {
      std::vector<Poly> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != j) row.push_back(m[i][k]);
      minor.push_back(row);
    }
    Poly term = m[0][j] * laplace_det(minor, K, vars);
    if (j % 2) det -= term;
    else det += term;
  }
  return det;
}

/// Sylvester resultant built from coefficient lists, independent of the library's matrix.
inline Poly sylvester_resultant(const Poly& p, const Poly& q, const std::string& var) {
  int m = p.degree(var), n = q.degree(var);
  const FieldSpec& K = p.field();
  const VarList& vars = p.vars();
  std::size_t size = static_cast<std::size_t>(m + n);
  std::vector<std::vector<Poly>> mat(size, std::vector<Poly>(size, Poly(K, vars)));
  for (int row = 0; row < n; ++row)
    for (int k = 0; k <= m; ++k) mat[row][row + (m - k)] = p.coefficient(var, static_cast<unsigned>(k));
  for (int row = 0; row < m; ++row)
    for (int k = 0; k <= n; ++k) mat[n + row][row + (n - k)] = q.coefficient(var, static_cast<unsigned>(k));
  return laplace_det(mat, K, vars);
}

inline std::vector<Scalar> field_elements(const FieldSpec& K) {
  std::vector<Scalar> out;
  for (long i = 0; i < static_cast<long>(K.modulus()); ++i) out.emplace_back(K, i);
  return out;
}

/// Every polynomial in X of degree < bound over a prime field.
inline std::vector<Poly> all_polys_below(const FieldSpec& K, int bound) {
  std::vector<Poly> out{Poly(K, x_vars())};
  for (int k = 0; k < bound; ++k) {
    std::vector<Poly> next;
    for (const auto& p : out)
      for (const auto& c : field_elements(K)) {
        Poly q = p;
        q.add_term({static_cast<std::uint32_t>(k)}, c);
        next.push_back(q);
      }
    out = std::move(next);
  }
  return out;
}

/// All certificates s1 -> s2 over a prime field found by exhausting
/// (lambda, mu, gamma, delta) and keeping those that pass verify_iso.
inline std::vector<IsoCertificate> brute_force_isos(const SurfaceSpec& s1, const SurfaceSpec& s2) {
  const FieldSpec& K = s1.field();
  std::vector<IsoCertificate> out;
  if (s1.d() != s2.d() || s1.r() != s2.r()) return out;
  Poly X = Poly::variable(K, xz_vars(), "X");
  Poly Z = Poly::variable(K, xz_vars(), "Z");
  Poly f1 = s1.f().with_vars(xz_vars()), f2 = s2.f().with_vars(xz_vars());
  Poly P2 = s2.P();
  std::vector<Poly> deltas = all_polys_below(K, s2.r());
  for (const auto& lambda : field_elements(K)) {
    if (lambda.is_zero()) continue;
    Scalar u = lambda.pow(static_cast<std::uint64_t>(s1.r()));
    for (const auto& mu : field_elements(K)) {
      Poly tx = X.scaled(lambda) + Poly::constant(K, xz_vars(), mu);
      if (!(substitute(f1, {{"X", tx}, {"Z", Z}}) == f2.scaled(u))) continue;
      for (const auto& gamma : field_elements(K)) {
        if (gamma.is_zero()) continue;
        Scalar gd = gamma.pow(static_cast<std::uint64_t>(s1.d()));
        for (const auto& delta : deltas) {
          Poly tz = Z.scaled(gamma) + delta.with_vars(xz_vars());
          Poly D = substitute(s1.P(), {{"X", tx}, {"Z", tz}}) - P2.scaled(gd);
          auto [q, rem] = divrem_monic(D, f2, "X");
          if (!rem.is_zero()) continue;
          IsoCertificate c(s1, s2, lambda, mu, gamma, delta, u, q);
          if (verify_iso(c).passed()) out.push_back(c);
        }
      }
    }
  }
  std::sort(out.begin(), out.end(), certificate_less);
  return out;
}

inline long binomial(long n, long k) {
  long r = 1;
  for (long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace oracle
