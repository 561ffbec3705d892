#include "dsurf/algebra.hpp"

#include <algorithm>

#include "upoly.hpp"

namespace dsurf {

using detail::UPoly;

namespace {

std::size_t common_index(const Poly& a, const Poly& b) {
  auto ia = detail::univariate_index(a);
  auto ib = detail::univariate_index(b);
  if (ia && ib && a.vars()[*ia] != b.vars()[*ib])
    throw Error(ErrorKind::NotUnivariate, "gcd inputs use different variables");
  if (ia) return *ia;
  if (ib) return a.require_index(b.vars()[*ib]);
  return 0;
}

Poly one_like(const Poly& p) { return Poly::constant(p.field(), p.vars(), 1); }

/// Fraction-free (Bareiss) determinant over a polynomial ring.
Poly bareiss_det(std::vector<std::vector<Poly>> m, const Poly& proto) {
  std::size_t n = m.size();
  if (n == 0) return one_like(proto);
  bool negate = false;
  Poly prev = one_like(proto);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k].is_zero()) {
      std::size_t pivot = k + 1;
      while (pivot < n && m[pivot][k].is_zero()) ++pivot;
      if (pivot == n) return Poly(proto.field(), proto.vars());
      std::swap(m[k], m[pivot]);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Poly num = m[i][j] * m[k][k] - m[i][k] * m[k][j];
        auto q = exact_div(num, prev);
        if (!q) throw Error(ErrorKind::Internal, "Bareiss step not exact");
        m[i][j] = std::move(*q);
      }
    }
    prev = m[k][k];
  }
  return negate ? -m[n - 1][n - 1] : m[n - 1][n - 1];
}

}  // namespace

Poly gcd_univariate(const Poly& a, const Poly& b) {
  if (!(a.field() == b.field())) throw Error(ErrorKind::FieldMismatch, "gcd field mismatch");
  std::size_t idx = common_index(a, b);
  std::size_t idx_b = b.is_constant() ? 0 : b.require_index(a.vars()[idx]);
  UPoly g = detail::gcd(detail::to_upoly(a, idx), detail::to_upoly(b, idx_b));
  return detail::from_upoly(g, a.vars(), idx);
}

std::vector<std::vector<Poly>> sylvester_matrix(const Poly& p, const Poly& q, std::string_view var) {
  int m = std::max(p.degree(var), 0);
  int n = std::max(q.degree(var), 0);
  std::size_t size = static_cast<std::size_t>(m + n);
  Poly zero(p.field(), p.vars());
  std::vector<std::vector<Poly>> s(size, std::vector<Poly>(size, zero));
  for (int i = 0; i < n; ++i)
    for (int k = 0; k <= m; ++k) s[i][i + (m - k)] = p.coefficient(var, static_cast<unsigned>(k));
  for (int i = 0; i < m; ++i)
    for (int k = 0; k <= n; ++k) s[n + i][i + (n - k)] = q.coefficient(var, static_cast<unsigned>(k));
  return s;
}

Poly resultant_in(const Poly& p, const Poly& q, std::string_view var) {
  if (!(p.field() == q.field())) throw Error(ErrorKind::FieldMismatch, "resultant field mismatch");
  if (p.vars() != q.vars()) throw Error(ErrorKind::SpecMismatch, "resultant variable lists differ");
  p.require_index(var);
  if (p.degree(var) <= 0 && q.degree(var) <= 0)
    throw Error(ErrorKind::ConstantInputs,
                "resultant: neither input has positive degree in " + std::string(var));
  if (p.is_zero() || q.is_zero()) return Poly(p.field(), p.vars());
  return bareiss_det(sylvester_matrix(p, q, var), p);
}

BezoutPair bezout_cofactors(const Poly& P, const Poly& Pz, std::string_view var) {
  int d = P.degree(var);
  if (d < 2) throw Error(ErrorKind::DegreeTooSmall, "P must have degree >= 2 in " + std::string(var));
  Poly lead = P.coefficient(var, static_cast<unsigned>(d));
  if (!(lead.is_constant() && lead.constant_term().is_one()))
    throw Error(ErrorKind::NotMonic, "P is not monic in " + std::string(var));
  if (Pz.is_zero())
    throw Error(ErrorKind::ComaximalityFails, "derivative vanishes; (P, P_Z) is a proper ideal");

  auto s = sylvester_matrix(P, Pz, var);
  Poly res = bareiss_det(s, P);
  if (res.is_zero() || !res.is_constant())
    throw Error(ErrorKind::ComaximalityFails,
                "Res_" + std::string(var) + "(P, P_Z) = " + res.str() + " is not a nonzero constant");

  // Expand det along the last column after replacing it by the row polynomials.
  int m = d;
  int n = std::max(Pz.degree(var), 0);
  std::size_t size = s.size();
  Poly cof_p(P.field(), P.vars()), cof_q(P.field(), P.vars());
  for (std::size_t row = 0; row < size; ++row) {
    std::vector<std::vector<Poly>> minor;
    for (std::size_t i = 0; i < size; ++i) {
      if (i == row) continue;
      minor.emplace_back(s[i].begin(), s[i].end() - 1);
    }
    Poly c = bareiss_det(std::move(minor), P);
    if ((row + size - 1) % 2 == 1) c = -c;
    if (static_cast<int>(row) < n)
      cof_p += c.shifted(var, static_cast<unsigned>(n - 1 - static_cast<int>(row)));
    else
      cof_q += c.shifted(var, static_cast<unsigned>(m - 1 - (static_cast<int>(row) - n)));
  }
  Scalar inv = res.constant_term().inverse();
  BezoutPair out{cof_q.scaled(inv), cof_p.scaled(inv)};
  if (!(out.a * Pz + out.b * P == one_like(P)))
    throw Error(ErrorKind::Internal, "Bezout identity failed to verify");
  return out;
}

bool is_comaximal_with_derivative(const Poly& P, std::string_view var) {
  Poly Pz = P.derivative(var);
  if (Pz.is_zero()) return false;
  Poly res = resultant_in(P, Pz, var);
  return !res.is_zero() && res.is_constant();
}

Poly Factorization::expand(const VarList& vars) const {
  Poly out = Poly::constant(leading.field(), vars, leading);
  for (const auto& f : factors) out *= f.poly.with_vars(vars).pow(f.multiplicity);
  return out;
}

namespace {

/// Squarefree decomposition over Q (Yun).
std::vector<std::pair<UPoly, unsigned>> yun(const UPoly& f) {
  std::vector<std::pair<UPoly, unsigned>> out;
  UPoly fd = detail::derivative(f);
  UPoly a = detail::gcd(f, fd);
  UPoly b = detail::divrem(f, a).first;
  UPoly c = detail::divrem(fd, a).first;
  UPoly dd = c - detail::derivative(b);
  for (unsigned i = 1; b.deg() > 0; ++i) {
    UPoly ai = detail::gcd(b, dd);
    b = detail::divrem(b, ai).first;
    c = detail::divrem(dd, ai).first;
    dd = c - detail::derivative(b);
    if (ai.deg() > 0) out.emplace_back(detail::monic(ai), i);
  }
  return out;
}

detail::FpVec to_fp(const UPoly& u) {
  detail::FpVec v;
  for (const auto& c : u.c) v.push_back(c.residue());
  return v;
}

UPoly from_fp(FieldSpec field, const detail::FpVec& v) {
  UPoly u(field);
  for (auto c : v) u.c.emplace_back(field, static_cast<long>(c));
  u.trim();
  return u;
}

}  // namespace

Factorization factor_univariate(const Poly& p, std::uint64_t seed) {
  if (p.is_zero()) throw Error(ErrorKind::ZeroInput, "cannot factor the zero polynomial");
  auto idx = detail::univariate_index(p);
  std::size_t index = idx.value_or(0);
  Factorization out{p.leading_term().second, {}};
  if (!idx) {
    out.leading = p.constant_term();
    return out;
  }
  UPoly u = detail::to_upoly(p, index);
  out.leading = u.lc();
  UPoly f = detail::monic(u);
  FieldSpec field = p.field();

  std::vector<std::pair<UPoly, unsigned>> irreducibles;
  if (field.is_prime_field()) {
    detail::Fp F{field.modulus()};
    for (auto& [part, mult] : detail::fp_squarefree(F, to_fp(f)))
      for (auto& g : detail::fp_factor_squarefree(F, part, seed))
        irreducibles.emplace_back(from_fp(field, g), mult);
  } else {
    for (auto& [part, mult] : yun(f))
      for (auto& g : detail::z_factor_squarefree(detail::primitive_integer(part), seed))
        irreducibles.emplace_back(detail::monic(detail::to_rational(g)), mult);
  }

  for (auto& [g, m] : irreducibles) {
    Poly gp = detail::from_upoly(g, p.vars(), index);
    auto it = std::find_if(out.factors.begin(), out.factors.end(),
                           [&](const Factor& x) { return x.poly == gp; });
    if (it != out.factors.end())
      it->multiplicity += m;
    else
      out.factors.push_back({gp, m});
  }
  std::sort(out.factors.begin(), out.factors.end(), [](const Factor& a, const Factor& b) {
    int da = a.poly.total_degree(), db = b.poly.total_degree();
    if (da != db) return da < db;
    return a.poly.str() < b.poly.str();
  });
  if (!(out.expand(p.vars()) == p))
    throw Error(ErrorKind::Internal, "factorization of " + p.str() + " failed to re-expand");
  return out;
}

unsigned root_multiplicity(const Poly& p, const Scalar& root) {
  if (p.is_zero()) throw Error(ErrorKind::ZeroInput, "multiplicity in the zero polynomial");
  auto idx = detail::univariate_index(p);
  if (!idx) return 0;
  UPoly u = detail::to_upoly(p, *idx);
  UPoly lin(p.field(), {-root, Scalar::one(p.field())});
  unsigned m = 0;
  for (;;) {
    auto [q, r] = detail::divrem(u, lin);
    if (!r.is_zero()) return m;
    u = std::move(q);
    ++m;
  }
}

std::vector<Scalar> roots_in_field(const Poly& p) {
  if (p.is_zero()) throw Error(ErrorKind::ZeroInput, "roots of the zero polynomial");
  auto idx = detail::univariate_index(p);
  if (!idx) return {};
  FieldSpec field = p.field();
  UPoly u = detail::to_upoly(p, *idx);
  std::vector<Scalar> distinct;
  if (field.is_prime_field() && field.modulus() <= 100000) {
    for (long x = 0; x < static_cast<long>(field.modulus()); ++x) {
      Scalar s(field, x);
      if (u.eval(s).is_zero()) distinct.push_back(s);
    }
  } else {
    std::optional<std::vector<mpq_class>> rr;
    if (field.is_rationals()) rr = detail::rational_roots(detail::primitive_integer(u));
    if (rr) {
      for (const auto& r : *rr) distinct.emplace_back(field, r);
    } else {
      for (const auto& f : factor_univariate(p).factors) {
        if (f.poly.total_degree() != 1) continue;
        distinct.push_back(-f.poly.constant_term());
      }
    }
  }
  std::sort(distinct.begin(), distinct.end());
  std::vector<Scalar> out;
  for (const auto& r : distinct) {
    unsigned m = root_multiplicity(p, r);
    for (unsigned i = 0; i < m; ++i) out.push_back(r);
  }
  return out;
}

bool is_squarefree(const Poly& p) {
  if (p.is_zero()) throw Error(ErrorKind::ZeroInput, "squarefree test of the zero polynomial");
  auto idx = detail::univariate_index(p);
  if (!idx) return true;
  UPoly u = detail::to_upoly(p, *idx);
  return detail::gcd(u, detail::derivative(u)).deg() == 0;
}

Poly radical(const Poly& p) {
  Factorization f = factor_univariate(p);
  Poly out = Poly::constant(p.field(), p.vars(), 1);
  for (const auto& x : f.factors) out *= x.poly;
  return out;
}

}  // namespace dsurf
