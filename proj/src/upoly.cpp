#include "upoly.hpp"

#include <algorithm>
#include <random>

namespace dsurf::detail {

// ---------------------------------------------------------------------------
// UPoly

Scalar UPoly::eval(const Scalar& x) const {
  Scalar acc = Scalar::zero(field);
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
  return acc;
}

UPoly operator+(const UPoly& a, const UPoly& b) {
  UPoly r(a.field);
  r.c.resize(std::max(a.c.size(), b.c.size()), Scalar::zero(a.field));
  for (std::size_t i = 0; i < a.c.size(); ++i) r.c[i] += a.c[i];
  for (std::size_t i = 0; i < b.c.size(); ++i) r.c[i] += b.c[i];
  r.trim();
  return r;
}

UPoly operator-(const UPoly& a, const UPoly& b) {
  UPoly r(a.field);
  r.c.resize(std::max(a.c.size(), b.c.size()), Scalar::zero(a.field));
  for (std::size_t i = 0; i < a.c.size(); ++i) r.c[i] += a.c[i];
  for (std::size_t i = 0; i < b.c.size(); ++i) r.c[i] -= b.c[i];
  r.trim();
  return r;
}

UPoly operator*(const UPoly& a, const UPoly& b) {
  UPoly r(a.field);
  if (a.is_zero() || b.is_zero()) return r;
  r.c.assign(a.c.size() + b.c.size() - 1, Scalar::zero(a.field));
  for (std::size_t i = 0; i < a.c.size(); ++i)
    for (std::size_t j = 0; j < b.c.size(); ++j) r.c[i + j] += a.c[i] * b.c[j];
  r.trim();
  return r;
}

UPoly scale(const UPoly& a, const Scalar& s) {
  UPoly r = a;
  for (auto& x : r.c) x *= s;
  r.trim();
  return r;
}

std::pair<UPoly, UPoly> divrem(const UPoly& a, const UPoly& b) {
  if (b.is_zero()) throw Error(ErrorKind::DivisionByZero, "univariate division by zero");
  UPoly q(a.field), r = a;
  if (a.deg() < b.deg()) return {q, r};
  q.c.assign(a.c.size() - b.c.size() + 1, Scalar::zero(a.field));
  Scalar inv = b.lc().inverse();
  while (!r.is_zero() && r.deg() >= b.deg()) {
    int shift = r.deg() - b.deg();
    Scalar t = r.lc() * inv;
    q.c[shift] = t;
    for (std::size_t j = 0; j < b.c.size(); ++j) r.c[shift + j] -= t * b.c[j];
    r.trim();
  }
  q.trim();
  return {q, r};
}

UPoly monic(const UPoly& a) {
  if (a.is_zero()) return a;
  return scale(a, a.lc().inverse());
}

UPoly gcd(const UPoly& a, const UPoly& b) {
  UPoly x = a, y = b;
  while (!y.is_zero()) {
    UPoly r = divrem(x, y).second;
    x = std::move(y);
    y = std::move(r);
  }
  return monic(x);
}

UPoly derivative(const UPoly& a) {
  UPoly r(a.field);
  for (std::size_t i = 1; i < a.c.size(); ++i)
    r.c.push_back(a.c[i] * Scalar(a.field, static_cast<long>(i)));
  r.trim();
  return r;
}

std::optional<std::size_t> univariate_index(const Poly& p) {
  std::optional<std::size_t> idx;
  for (std::size_t i = 0; i < p.nvars(); ++i) {
    if (p.degree(i) > 0) {
      if (idx)
        throw Error(ErrorKind::NotUnivariate, "polynomial " + p.str() + " is not univariate");
      idx = i;
    }
  }
  return idx;
}

UPoly to_upoly(const Poly& p, std::size_t index) {
  UPoly u(p.field());
  int d = p.degree(index);
  if (d < 0) return u;
  u.c.assign(static_cast<std::size_t>(d) + 1, Scalar::zero(p.field()));
  for (const auto& [e, c] : p.terms()) {
    for (std::size_t i = 0; i < e.size(); ++i)
      if (i != index && e[i] != 0)
        throw Error(ErrorKind::NotUnivariate, "polynomial " + p.str() + " is not univariate");
    u.c[e[index]] += c;
  }
  u.trim();
  return u;
}

Poly from_upoly(const UPoly& u, const VarList& vars, std::size_t index) {
  Poly p(u.field, vars);
  Exponents e(vars.size(), 0);
  for (std::size_t i = 0; i < u.c.size(); ++i) {
    e[index] = static_cast<std::uint32_t>(i);
    p.add_term(e, u.c[i]);
  }
  return p;
}

// ---------------------------------------------------------------------------
// Fp

FpVec Fp::add(const FpVec& a, const FpVec& b) const {
  FpVec r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] = (r[i] + b[i]) % p;
  trim(r);
  return r;
}

FpVec Fp::sub(const FpVec& a, const FpVec& b) const {
  FpVec r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] = (r[i] + p - b[i]) % p;
  trim(r);
  return r;
}

FpVec Fp::mul(const FpVec& a, const FpVec& b) const {
  if (a.empty() || b.empty()) return {};
  FpVec r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
  }
  trim(r);
  return r;
}

FpVec Fp::scale(const FpVec& a, std::uint64_t s) const {
  FpVec r = a;
  for (auto& x : r) x = x * s % p;
  trim(r);
  return r;
}

std::pair<FpVec, FpVec> Fp::divrem(const FpVec& a, const FpVec& b) const {
  if (b.empty()) throw Error(ErrorKind::DivisionByZero, "division by zero mod p");
  FpVec r = a;
  trim(r);
  if (r.size() < b.size()) return {{}, r};
  FpVec q(r.size() - b.size() + 1, 0);
  std::uint64_t inv = mod_inverse(b.back(), p);
  while (!r.empty() && r.size() >= b.size()) {
    std::size_t shift = r.size() - b.size();
    std::uint64_t t = r.back() * inv % p;
    q[shift] = t;
    for (std::size_t j = 0; j < b.size(); ++j)
      r[shift + j] = (r[shift + j] + p - t * b[j] % p) % p;
    trim(r);
  }
  trim(q);
  return {q, r};
}

FpVec Fp::monic(const FpVec& a) const {
  if (a.empty()) return a;
  return scale(a, mod_inverse(a.back(), p));
}

FpVec Fp::gcd(FpVec a, FpVec b) const {
  trim(a);
  trim(b);
  while (!b.empty()) {
    FpVec r = rem(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return monic(a);
}

std::tuple<FpVec, FpVec, FpVec> Fp::xgcd(const FpVec& a, const FpVec& b) const {
  FpVec r0 = a, r1 = b, s0{1}, s1{}, t0{}, t1{1};
  trim(r0);
  trim(r1);
  while (!r1.empty()) {
    auto [q, r] = divrem(r0, r1);
    FpVec s2 = sub(s0, mul(q, s1));
    FpVec t2 = sub(t0, mul(q, t1));
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.empty()) return {r0, s0, t0};
  std::uint64_t inv = mod_inverse(r0.back(), p);
  return {scale(r0, inv), scale(s0, inv), scale(t0, inv)};
}

FpVec Fp::derivative(const FpVec& a) const {
  FpVec r;
  for (std::size_t i = 1; i < a.size(); ++i) r.push_back(a[i] * (i % p) % p);
  trim(r);
  return r;
}

FpVec Fp::mulmod(const FpVec& a, const FpVec& b, const FpVec& m) const { return rem(mul(a, b), m); }

FpVec Fp::powmod(FpVec base, const mpz_class& e, const FpVec& m) const {
  FpVec result = rem(FpVec{1}, m);
  base = rem(base, m);
  std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (std::size_t i = bits; i-- > 0;) {
    result = mulmod(result, result, m);
    if (mpz_tstbit(e.get_mpz_t(), i)) result = mulmod(result, base, m);
  }
  return result;
}

std::uint64_t Fp::eval(const FpVec& a, std::uint64_t x) const {
  std::uint64_t acc = 0;
  for (auto it = a.rbegin(); it != a.rend(); ++it) acc = (acc * x + *it) % p;
  return acc;
}

namespace {

FpVec pth_root(const Fp& F, const FpVec& f) {
  FpVec r;
  for (std::size_t i = 0; i < f.size(); i += F.p) r.push_back(f[i]);
  F.trim(r);
  return r;
}

std::vector<std::pair<FpVec, std::size_t>> distinct_degree(const Fp& F, FpVec f) {
  std::vector<std::pair<FpVec, std::size_t>> out;
  FpVec x{0, 1};
  FpVec h = x;
  mpz_class p(static_cast<unsigned long>(F.p));
  for (std::size_t i = 1; f.size() >= 2 * i + 1; ++i) {
    h = F.powmod(h, p, f);
    FpVec g = F.gcd(F.sub(h, x), f);
    if (g.size() > 1) {
      out.emplace_back(g, i);
      f = F.divrem(f, g).first;
      h = F.rem(h, f);
    }
  }
  if (f.size() > 1) out.emplace_back(f, f.size() - 1);
  return out;
}

void equal_degree(const Fp& F, const FpVec& f, std::size_t d, std::mt19937_64& rng,
                  std::vector<FpVec>& out) {
  std::size_t n = f.size() - 1;
  if (n == d) {
    out.push_back(f);
    return;
  }
  mpz_class exponent;
  if (F.p != 2) {
    mpz_ui_pow_ui(exponent.get_mpz_t(), F.p, d);
    exponent = (exponent - 1) / 2;
  }
  std::uniform_int_distribution<std::uint64_t> coin(0, F.p - 1);
  for (std::uint64_t counter = 2;; ++counter) {
    FpVec a;
    if (F.p == 2) {
      // Deterministic enumeration of candidates by their bit encoding.
      for (std::uint64_t k = counter; k; k >>= 1) a.push_back(k & 1);
      if (a.size() > n) throw Error(ErrorKind::Internal, "equal-degree split exhausted");
    } else {
      a.resize(n);
      for (auto& x : a) x = coin(rng);
    }
    F.trim(a);
    if (a.size() < 2) continue;
    FpVec b;
    if (F.p == 2) {
      FpVec t = F.rem(a, f);
      b = t;
      for (std::size_t j = 1; j < d; ++j) {
        t = F.mulmod(t, t, f);
        b = F.add(b, t);
      }
    } else {
      b = F.sub(F.powmod(a, exponent, f), FpVec{1});
    }
    FpVec g = F.gcd(b, f);
    if (g.size() > 1 && g.size() < f.size()) {
      equal_degree(F, g, d, rng, out);
      equal_degree(F, F.divrem(f, g).first, d, rng, out);
      return;
    }
  }
}

}  // namespace

std::vector<std::pair<FpVec, unsigned>> fp_squarefree(const Fp& F, const FpVec& f) {
  std::vector<std::pair<FpVec, unsigned>> out;
  if (f.size() <= 1) return out;
  FpVec fd = F.derivative(f);
  if (fd.empty()) {
    for (auto& [g, m] : fp_squarefree(F, pth_root(F, f)))
      out.emplace_back(g, m * static_cast<unsigned>(F.p));
    return out;
  }
  FpVec c = F.gcd(f, fd);
  FpVec w = F.divrem(f, c).first;
  unsigned i = 1;
  while (w.size() > 1) {
    FpVec y = F.gcd(w, c);
    FpVec fac = F.divrem(w, y).first;
    if (fac.size() > 1) out.emplace_back(F.monic(fac), i);
    w = y;
    c = F.divrem(c, y).first;
    ++i;
  }
  if (c.size() > 1) {
    for (auto& [g, m] : fp_squarefree(F, pth_root(F, F.monic(c))))
      out.emplace_back(g, m * static_cast<unsigned>(F.p));
  }
  return out;
}

std::vector<FpVec> fp_factor_squarefree(const Fp& F, const FpVec& f, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<FpVec> out;
  for (auto& [g, d] : distinct_degree(F, F.monic(f))) equal_degree(F, g, d, rng, out);
  return out;
}

// ---------------------------------------------------------------------------
// Integer polynomials

namespace {

int zdeg(const ZVec& f) { return static_cast<int>(f.size()) - 1; }

void ztrim(ZVec& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

ZVec zmul(const ZVec& a, const ZVec& b) {
  if (a.empty() || b.empty()) return {};
  ZVec r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return r;
}

mpz_class zcontent(const ZVec& f) {
  mpz_class g = 0;
  for (const auto& c : f) g = gcd(g, c);
  return g;
}

ZVec zprimitive(ZVec f) {
  ztrim(f);
  if (f.empty()) return f;
  mpz_class g = zcontent(f);
  if (f.back() < 0) g = -g;
  for (auto& c : f) c /= g;
  return f;
}

mpz_class mod_pos(const mpz_class& a, const mpz_class& m) {
  mpz_class r = a % m;
  if (r < 0) r += m;
  return r;
}

FpVec to_fp(const ZVec& f, std::uint64_t p) {
  FpVec r;
  mpz_class mp(static_cast<unsigned long>(p));
  for (const auto& c : f) r.push_back(mod_pos(c, mp).get_ui());
  while (!r.empty() && r.back() == 0) r.pop_back();
  return r;
}

ZVec from_fp(const FpVec& f) {
  ZVec r;
  for (auto c : f) r.emplace_back(static_cast<unsigned long>(c));
  return r;
}

/// Exact division over Z; nullopt when b does not divide a.
std::optional<ZVec> zdivexact(const ZVec& a, const ZVec& b) {
  ZVec r = a;
  ztrim(r);
  if (zdeg(r) < zdeg(b)) return r.empty() ? std::optional<ZVec>(ZVec{}) : std::nullopt;
  ZVec q(r.size() - b.size() + 1, 0);
  while (!r.empty() && zdeg(r) >= zdeg(b)) {
    std::size_t shift = r.size() - b.size();
    if (!mpz_divisible_p(r.back().get_mpz_t(), b.back().get_mpz_t())) return std::nullopt;
    mpz_class t = r.back() / b.back();
    q[shift] = t;
    for (std::size_t j = 0; j < b.size(); ++j) r[shift + j] -= t * b[j];
    ztrim(r);
  }
  if (!r.empty()) return std::nullopt;
  ztrim(q);
  return q;
}

/// Lifts f = g*h mod p (g monic, lc(h) = lc(f)) to a factorization mod p^k.
std::pair<ZVec, ZVec> hensel_lift(const ZVec& f, const FpVec& g0, const FpVec& h0, std::uint64_t p,
                                  unsigned k) {
  Fp F{p};
  auto [one, s, t] = F.xgcd(g0, h0);
  if (one != FpVec{1}) throw Error(ErrorKind::Internal, "Hensel factors are not coprime mod p");
  ZVec g = from_fp(g0), h = from_fp(h0);
  h.back() = f.back();
  mpz_class pj(static_cast<unsigned long>(p));
  mpz_class mp = pj;
  for (unsigned j = 1; j < k; ++j) {
    ZVec gh = zmul(g, h);
    ZVec diff(std::max(f.size(), gh.size()), 0);
    for (std::size_t i = 0; i < f.size(); ++i) diff[i] += f[i];
    for (std::size_t i = 0; i < gh.size(); ++i) diff[i] -= gh[i];
    FpVec e;
    for (auto& c : diff) {
      if (!mpz_divisible_p(c.get_mpz_t(), pj.get_mpz_t()))
        throw Error(ErrorKind::Internal, "Hensel invariant violated");
      e.push_back(mod_pos(c / pj, mp).get_ui());
    }
    F.trim(e);
    auto [quot, sigma] = F.divrem(F.mul(e, s), h0);
    FpVec tau = F.add(F.mul(e, t), F.mul(quot, g0));
    for (std::size_t i = 0; i < tau.size(); ++i) {
      if (i >= g.size()) g.resize(i + 1, 0);
      g[i] += pj * static_cast<unsigned long>(tau[i]);
    }
    for (std::size_t i = 0; i < sigma.size(); ++i) {
      if (i >= h.size()) h.resize(i + 1, 0);
      h[i] += pj * static_cast<unsigned long>(sigma[i]);
    }
    pj *= mp;
  }
  return {g, h};
}

}  // namespace

ZVec primitive_integer(const UPoly& u) {
  mpz_class den = 1;
  for (const auto& c : u.c) den = lcm(den, c.rational().get_den());
  ZVec z;
  for (const auto& c : u.c) z.push_back(c.rational().get_num() * (den / c.rational().get_den()));
  return zprimitive(z);
}

UPoly to_rational(const ZVec& z) {
  UPoly u(FieldSpec::rationals());
  for (const auto& c : z) u.c.emplace_back(FieldSpec::rationals(), c);
  u.trim();
  return u;
}

std::vector<ZVec> z_factor_squarefree(const ZVec& input, std::uint64_t seed) {
  ZVec f = zprimitive(input);
  int n = zdeg(f);
  if (n <= 1) return {f};
  if (n == 2) {
    if (auto roots = rational_roots(f)) {
      if (roots->empty()) return {f};
      std::vector<ZVec> out;
      ZVec rest = f;
      for (const auto& r : *roots) {
        ZVec lin{-r.get_num(), r.get_den()};
        out.push_back(lin);
        rest = *zdivexact(rest, lin);
      }
      if (zdeg(rest) > 0) out.push_back(zprimitive(rest));
      return out;
    }
  }

  // Choose a prime keeping f squarefree with the fewest modular factors.
  std::uint64_t best_p = 0;
  std::vector<FpVec> best;
  int good = 0;
  for (std::uint64_t p = 3; good < 3 && p < 100000; p += 2) {
    if (!is_prime(p)) continue;
    if (mpz_divisible_ui_p(f.back().get_mpz_t(), p)) continue;
    Fp F{p};
    FpVec fp = to_fp(f, p);
    if (F.gcd(fp, F.derivative(fp)).size() != 1) continue;
    auto facs = fp_factor_squarefree(F, fp, seed);
    ++good;
    if (best_p == 0 || facs.size() < best.size()) {
      best_p = p;
      best = std::move(facs);
    }
    if (best.size() == 1) return {f};
  }
  if (best_p == 0) throw Error(ErrorKind::Internal, "no good prime for Zassenhaus");

  // Coefficient bound: 2 * |lc| * 2^n * ||f||_2.
  mpz_class norm2 = 0;
  for (const auto& c : f) norm2 += c * c;
  mpz_class bound = sqrt(norm2) + 1;
  bound *= 2 * abs(f.back());
  bound <<= n;
  mpz_class pk(static_cast<unsigned long>(best_p));
  unsigned k = 1;
  while (pk <= bound) {
    pk *= static_cast<unsigned long>(best_p);
    ++k;
  }

  Fp F{best_p};
  mpz_class lc = f.back();
  std::uint64_t lc_p = mod_pos(lc, mpz_class(static_cast<unsigned long>(best_p))).get_ui();
  std::vector<ZVec> lifted;
  ZVec target = f;
  for (std::size_t i = 0; i + 1 < best.size(); ++i) {
    FpVec rest{lc_p};
    for (std::size_t j = i + 1; j < best.size(); ++j) rest = F.mul(rest, best[j]);
    auto [g, h] = hensel_lift(target, best[i], rest, best_p, k);
    for (auto& c : g) c = mod_pos(c, pk);
    for (auto& c : h) c = mod_pos(c, pk);
    lifted.push_back(g);
    target = h;
  }
  mpz_class lc_inv;
  mpz_invert(lc_inv.get_mpz_t(), lc.get_mpz_t(), pk.get_mpz_t());
  for (auto& c : target) c = mod_pos(c * lc_inv, pk);
  ztrim(target);
  lifted.push_back(target);

  // Subset recombination.
  std::vector<ZVec> out;
  ZVec current = f;
  std::vector<std::size_t> remaining(lifted.size());
  for (std::size_t i = 0; i < remaining.size(); ++i) remaining[i] = i;
  mpz_class half = pk / 2;
  for (std::size_t size = 1; 2 * size <= remaining.size();) {
    bool found = false;
    std::vector<bool> mask(remaining.size(), false);
    std::fill(mask.end() - static_cast<long>(size), mask.end(), true);
    do {
      ZVec cand{current.back()};
      for (std::size_t i = 0; i < remaining.size(); ++i) {
        if (!mask[i]) continue;
        cand = zmul(cand, lifted[remaining[i]]);
        for (auto& c : cand) c = mod_pos(c, pk);
      }
      for (auto& c : cand)
        if (c > half) c -= pk;
      cand = zprimitive(cand);
      if (auto q = zdivexact(current, cand)) {
        out.push_back(cand);
        current = zprimitive(*q);
        std::vector<std::size_t> keep;
        for (std::size_t i = 0; i < remaining.size(); ++i)
          if (!mask[i]) keep.push_back(remaining[i]);
        remaining = std::move(keep);
        found = true;
        break;
      }
    } while (std::next_permutation(mask.begin(), mask.end()));
    if (!found) ++size;
  }
  if (zdeg(current) > 0) out.push_back(current);
  return out;
}

namespace {

/// Positive divisors of |n| (n != 0), or nullopt when |n| is too large.
std::optional<std::vector<mpz_class>> divisors(const mpz_class& n) {
  mpz_class m = abs(n);
  if (m > mpz_class("1000000000000")) return std::nullopt;
  std::vector<std::pair<mpz_class, unsigned>> primes;
  for (mpz_class d = 2; d * d <= m; ++d) {
    if (m % d != 0) continue;
    unsigned e = 0;
    while (m % d == 0) {
      m /= d;
      ++e;
    }
    primes.emplace_back(d, e);
  }
  if (m > 1) primes.emplace_back(m, 1);
  std::vector<mpz_class> out{1};
  for (const auto& [q, e] : primes) {
    std::size_t base = out.size();
    mpz_class pw = 1;
    for (unsigned i = 0; i < e; ++i) {
      pw *= q;
      for (std::size_t j = 0; j < base; ++j) out.push_back(out[j] * pw);
    }
  }
  return out;
}

}  // namespace

std::optional<std::vector<mpq_class>> rational_roots(const ZVec& input) {
  ZVec f = input;
  ztrim(f);
  std::vector<mpq_class> roots;
  std::size_t shift = 0;
  while (shift < f.size() && f[shift] == 0) ++shift;
  if (shift > 0) {
    roots.emplace_back(0);
    f.erase(f.begin(), f.begin() + static_cast<long>(shift));
  }
  if (f.size() <= 1) return roots;
  auto num = divisors(f.front());
  auto den = divisors(f.back());
  if (!num || !den) return std::nullopt;
  for (const auto& a : *num) {
    for (const auto& b : *den) {
      if (gcd(a, b) != 1) continue;
      for (int sign : {1, -1}) {
        // Evaluate sum f_i a^i b^(n-i) exactly.
        mpz_class acc = 0, apow = 1, bpow = 1;
        std::size_t n = f.size() - 1;
        std::vector<mpz_class> bp(n + 1);
        for (std::size_t i = 0; i <= n; ++i) {
          bp[i] = bpow;
          bpow *= b;
        }
        mpz_class sa = sign * a;
        for (std::size_t i = 0; i <= n; ++i) {
          acc += f[i] * apow * bp[n - i];
          apow *= sa;
        }
        if (acc == 0) roots.emplace_back(mpq_class(sa, b));
      }
    }
  }
  for (auto& r : roots) r.canonicalize();
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  return roots;
}

}  // namespace dsurf::detail
