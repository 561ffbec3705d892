#include "dsurf/poly.hpp"

#include <algorithm>
#include <numeric>

namespace dsurf {

namespace {

constexpr std::uint64_t kMaxExponent = 1ULL << 31;

std::uint32_t checked_add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t s = a + b;
  if (s >= kMaxExponent) throw Error(ErrorKind::ExponentOverflow, "exponent exceeds 2^31");
  return static_cast<std::uint32_t>(s);
}

std::uint64_t total(const Exponents& e) {
  return std::accumulate(e.begin(), e.end(), std::uint64_t{0});
}

}  // namespace

bool GrlexGreater::operator()(const Exponents& a, const Exponents& b) const {
  auto ta = total(a), tb = total(b);
  if (ta != tb) return ta > tb;
  return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
}

Poly::Poly(FieldSpec field, VarList vars)
    : field_(field), vars_(std::make_shared<const VarList>(std::move(vars))) {}

Poly Poly::constant(FieldSpec field, VarList vars, const Scalar& c) {
  Poly p(field, std::move(vars));
  p.add_term(Exponents(p.nvars(), 0), c);
  return p;
}

Poly Poly::constant(FieldSpec field, VarList vars, long c) {
  return constant(field, std::move(vars), Scalar(field, c));
}

Poly Poly::variable(FieldSpec field, VarList vars, std::string_view name) {
  Poly p(field, std::move(vars));
  Exponents e(p.nvars(), 0);
  e[p.require_index(name)] = 1;
  p.add_term(e, Scalar::one(field));
  return p;
}

Poly Poly::monomial(FieldSpec field, VarList vars, Exponents exps, const Scalar& c) {
  Poly p(field, std::move(vars));
  if (exps.size() != p.nvars()) throw Error(ErrorKind::Internal, "exponent vector length mismatch");
  p.add_term(exps, c);
  return p;
}

std::optional<std::size_t> Poly::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < vars_->size(); ++i)
    if ((*vars_)[i] == name) return i;
  return std::nullopt;
}

std::size_t Poly::require_index(std::string_view name) const {
  if (auto i = index_of(name)) return *i;
  throw Error(ErrorKind::UnknownVariable, "unknown variable '" + std::string(name) + "'");
}

bool Poly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && total(terms_.begin()->first) == 0);
}

Scalar Poly::constant_term() const { return coeff(Exponents(nvars(), 0)); }

Scalar Poly::coeff(const Exponents& exps) const {
  auto it = terms_.find(exps);
  return it == terms_.end() ? Scalar::zero(field_) : it->second;
}

int Poly::degree(std::string_view name) const {
  auto i = index_of(name);
  if (!i) return terms_.empty() ? kNegInf : 0;
  return degree(*i);
}

int Poly::degree(std::size_t index) const {
  if (terms_.empty()) return kNegInf;
  std::uint32_t d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, e[index]);
  return static_cast<int>(d);
}

int Poly::total_degree() const {
  if (terms_.empty()) return kNegInf;
  return static_cast<int>(total(terms_.begin()->first));
}

bool Poly::uses(std::string_view name) const {
  auto i = index_of(name);
  return i && degree(*i) > 0;
}

const std::pair<const Exponents, Scalar>& Poly::leading_term() const {
  if (terms_.empty()) throw Error(ErrorKind::ZeroInput, "leading term of zero polynomial");
  return *terms_.begin();
}

void Poly::add_term(const Exponents& exps, const Scalar& c) {
  if (!(c.field() == field_)) throw Error(ErrorKind::FieldMismatch, "coefficient field mismatch");
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(exps, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

void Poly::check_compatible(const Poly& other) const {
  if (!(field_ == other.field_))
    throw Error(ErrorKind::FieldMismatch,
                "polynomial field mismatch: " + field_.tag() + " vs " + other.field_.tag());
  if (vars_ != other.vars_ && *vars_ != *other.vars_)
    throw Error(ErrorKind::SpecMismatch, "polynomial variable lists differ");
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& [e, c] : r.terms_) c = -c;
  return r;
}

Poly& Poly::operator+=(const Poly& other) {
  check_compatible(other);
  for (const auto& [e, c] : other.terms_) add_term(e, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& other) {
  check_compatible(other);
  for (const auto& [e, c] : other.terms_) add_term(e, -c);
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  a.check_compatible(b);
  Poly r(a.field_, {});
  r.vars_ = a.vars_;
  Exponents e(a.nvars());
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = checked_add(ea[i], eb[i]);
      r.add_term(e, ca * cb);
    }
  }
  return r;
}

Poly& Poly::operator*=(const Poly& other) { return *this = *this * other; }

Poly Poly::scaled(const Scalar& c) const {
  if (c.is_zero()) {
    Poly z = *this;
    z.terms_.clear();
    return z;
  }
  Poly r = *this;
  for (auto& [e, v] : r.terms_) v *= c;
  return r;
}

Poly Poly::pow(unsigned e) const {
  Poly result = *this;
  result.terms_.clear();
  result.add_term(Exponents(nvars(), 0), Scalar::one(field_));
  Poly base = *this;
  while (e) {
    if (e & 1) result *= base;
    e >>= 1;
    if (e) base *= base;
  }
  return result;
}

Poly Poly::derivative(std::string_view name) const {
  Poly r = *this;
  r.terms_.clear();
  auto idx = index_of(name);
  if (!idx) return r;
  for (const auto& [e, c] : terms_) {
    if (e[*idx] == 0) continue;
    Exponents d = e;
    d[*idx] -= 1;
    r.add_term(d, c * Scalar(field_, static_cast<long>(e[*idx])));
  }
  return r;
}

Poly Poly::coefficient(std::string_view name, unsigned k) const {
  Poly r = *this;
  r.terms_.clear();
  auto idx = index_of(name);
  if (!idx) return k == 0 ? *this : r;
  for (const auto& [e, c] : terms_) {
    if (e[*idx] != k) continue;
    Exponents d = e;
    d[*idx] = 0;
    r.add_term(d, c);
  }
  return r;
}

std::map<unsigned, Poly> Poly::collect(std::string_view name) const {
  std::map<unsigned, Poly> out;
  auto idx = index_of(name);
  if (!idx) {
    if (!is_zero()) out.emplace(0u, *this);
    return out;
  }
  Poly empty = *this;
  empty.terms_.clear();
  for (const auto& [e, c] : terms_) {
    Exponents d = e;
    d[*idx] = 0;
    out.try_emplace(e[*idx], empty).first->second.add_term(d, c);
  }
  return out;
}

Poly Poly::shifted(std::string_view name, unsigned k) const {
  std::size_t idx = require_index(name);
  Poly r = *this;
  r.terms_.clear();
  for (const auto& [e, c] : terms_) {
    Exponents d = e;
    d[idx] = checked_add(d[idx], k);
    r.terms_.emplace(std::move(d), c);
  }
  return r;
}

Poly Poly::with_vars(const VarList& vars) const {
  if (vars == *vars_) return *this;
  std::vector<std::optional<std::size_t>> map(nvars());
  for (std::size_t i = 0; i < nvars(); ++i) {
    auto it = std::find(vars.begin(), vars.end(), (*vars_)[i]);
    if (it != vars.end()) map[i] = static_cast<std::size_t>(it - vars.begin());
  }
  Poly r(field_, vars);
  for (const auto& [e, c] : terms_) {
    Exponents d(vars.size(), 0);
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!map[i])
        throw Error(ErrorKind::UnknownVariable,
                    "variable '" + (*vars_)[i] + "' is not in the target variable list");
      d[*map[i]] = e[i];
    }
    r.add_term(d, c);
  }
  return r;
}

bool operator==(const Poly& a, const Poly& b) {
  if (!(a.field_ == b.field_)) return false;
  if (a.vars_ != b.vars_ && *a.vars_ != *b.vars_) return false;
  return a.terms_ == b.terms_;
}

VarList merge_vars(const VarList& a, const VarList& b) {
  VarList out = a;
  for (const auto& v : b)
    if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
  return out;
}

Poly substitute(const Poly& p, const std::map<std::string, Poly>& bindings) {
  const Poly* proto = nullptr;
  for (const auto& [name, value] : bindings) {
    p.require_index(name);
    if (!(value.field() == p.field()))
      throw Error(ErrorKind::FieldMismatch, "substitution field mismatch for '" + name + "'");
    if (proto && proto->vars() != value.vars())
      throw Error(ErrorKind::SpecMismatch, "substitution values use different variable lists");
    proto = &value;
  }
  if (!proto) return p;
  const VarList& target = proto->vars();

  std::vector<Poly> images;
  images.reserve(p.nvars());
  for (const auto& name : p.vars()) {
    auto it = bindings.find(name);
    if (it != bindings.end()) {
      images.push_back(it->second);
    } else if (p.uses(name)) {
      images.push_back(Poly::variable(p.field(), target, name));
    } else {
      images.push_back(Poly(p.field(), target));
    }
  }
  std::vector<std::vector<Poly>> powers(p.nvars());
  auto power = [&](std::size_t i, std::uint32_t e) -> const Poly& {
    auto& cache = powers[i];
    if (cache.empty()) cache.push_back(Poly::constant(p.field(), target, 1));
    while (cache.size() <= e) cache.push_back(cache.back() * images[i]);
    return cache[e];
  };
  Poly result(p.field(), target);
  for (const auto& [e, c] : p.terms()) {
    Poly term = Poly::constant(p.field(), target, c);
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i]) term *= power(i, e[i]);
    result += term;
  }
  return result;
}

Poly evaluate(const Poly& p, std::string_view name, const Scalar& value) {
  std::size_t idx = p.require_index(name);
  Poly r(p.field(), p.vars());
  std::vector<Scalar> powers{Scalar::one(p.field())};
  for (const auto& [e, c] : p.terms()) {
    while (powers.size() <= e[idx]) powers.push_back(powers.back() * value);
    Exponents d = e;
    d[idx] = 0;
    r.add_term(d, c * powers[e[idx]]);
  }
  return r;
}

std::optional<Poly> exact_div(const Poly& a, const Poly& b) {
  if (b.is_zero()) throw Error(ErrorKind::DivisionByZero, "exact division by the zero polynomial");
  Poly q(a.field(), a.vars());
  Poly r = a;
  const auto& [eb, cb] = b.leading_term();
  Scalar inv = cb.inverse();
  while (!r.is_zero()) {
    const auto& [er, cr] = r.leading_term();
    Exponents d(er.size());
    for (std::size_t i = 0; i < er.size(); ++i) {
      if (er[i] < eb[i]) return std::nullopt;
      d[i] = er[i] - eb[i];
    }
    Poly t = Poly::monomial(a.field(), a.vars(), d, cr * inv);
    q += t;
    r -= t * b;
  }
  return q;
}

std::pair<Poly, Poly> divrem_monic(const Poly& a, const Poly& m, std::string_view name) {
  int dm = m.degree(name);
  if (dm < 0) throw Error(ErrorKind::DivisionByZero, "division by the zero polynomial");
  Poly lead = m.coefficient(name, static_cast<unsigned>(dm));
  if (!(lead.is_constant() && lead.constant_term().is_one()))
    throw Error(ErrorKind::NotMonic, "divisor is not monic in " + std::string(name));
  Poly q(a.field(), a.vars());
  Poly r = a;
  if (dm == 0) return {a, Poly(a.field(), a.vars())};
  for (int k = r.degree(name); k >= dm; k = r.degree(name)) {
    Poly t = r.coefficient(name, static_cast<unsigned>(k)).shifted(name, static_cast<unsigned>(k - dm));
    q += t;
    r -= t * m;
  }
  return {q, r};
}

}  // namespace dsurf
