#include "dsurf/surface.hpp"

#include <algorithm>
#include <set>

namespace dsurf {

namespace {

bool is_generator(std::string_view name) { return name == "X" || name == "Y" || name == "Z"; }

Poly rename(const Poly& p, const VarList& names) {
  Poly out(p.field(), names);
  for (const auto& [e, c] : p.terms()) out.add_term(e, c);
  return out;
}

void require_same_spec(const SurfaceSpec& a, const SurfaceSpec& b) {
  if (!(a == b)) throw Error(ErrorKind::SpecMismatch, "elements belong to different surfaces");
}

}  // namespace

// ---------------------------------------------------------------------------
// SurfaceSpec

SurfaceSpec::SurfaceSpec(FieldSpec field, Poly f, Poly P)
    : field_(field), f_(std::move(f)), P_(std::move(P)) {}

SurfaceSpec SurfaceSpec::make(FieldSpec field, const Poly& f, const Poly& P) {
  if (!(f.field() == field) || !(P.field() == field))
    throw Error(ErrorKind::FieldMismatch, "surface data must be over " + field.tag());
  Poly fx = f.with_vars(x_vars());
  Poly pxz = P.with_vars(xz_vars());
  if (fx.is_zero()) throw Error(ErrorKind::DegreeTooSmall, "f is zero");
  int r = fx.degree("X");
  if (!fx.coeff({static_cast<std::uint32_t>(r)}).is_one())
    throw Error(ErrorKind::NotMonic, "f = " + fx.str() + " is not monic");
  if (r < 2) throw Error(ErrorKind::DegreeTooSmall, "deg f = " + std::to_string(r) + " < 2");
  if (pxz.is_zero()) throw Error(ErrorKind::DegreeTooSmall, "P is zero");
  int d = pxz.degree("Z");
  Poly lead = pxz.coefficient("Z", static_cast<unsigned>(std::max(d, 0)));
  if (!(lead.is_constant() && lead.constant_term().is_one()))
    throw Error(ErrorKind::NotMonic, "P = " + pxz.str() + " is not monic in Z");
  if (d < 2) throw Error(ErrorKind::DegreeTooSmall, "deg_Z P = " + std::to_string(d) + " < 2");

  SurfaceSpec s(field, fx, pxz);
  s.r_ = r;
  s.d_ = d;
  s.n_ = static_cast<int>(root_multiplicity(fx, Scalar::zero(field)));
  return s;
}

SurfaceSpec SurfaceSpec::parse(FieldSpec field, std::string_view f, std::string_view P) {
  return make(field, parse_poly(f, field, x_vars()), parse_poly(P, field, xz_vars()));
}

Poly SurfaceSpec::c(int i) const {
  return P_.coefficient("Z", static_cast<unsigned>(i)).with_vars(x_vars());
}

std::string SurfaceSpec::str() const {
  return "(" + f_.str() + ")*Y = " + P_.str() + " over " + field_.tag();
}

// ---------------------------------------------------------------------------
// Variable lists

VarList raw_vars(const VarList& aux) {
  VarList v{"X", "Y", "Z"};
  v.insert(v.end(), aux.begin(), aux.end());
  return v;
}

VarList coeff_vars(const VarList& aux) {
  VarList v{"X", "Z"};
  v.insert(v.end(), aux.begin(), aux.end());
  return v;
}

VarList aux_union(const VarList& a, const VarList& b) {
  std::set<std::string> all(a.begin(), a.end());
  all.insert(b.begin(), b.end());
  return VarList(all.begin(), all.end());
}

// ---------------------------------------------------------------------------
// SurfaceElement

SurfaceElement make_element(const SurfaceSpec& spec, VarList aux, std::map<unsigned, Poly> coeffs) {
  SurfaceElement e(spec, std::move(aux));
  for (auto& [i, g] : coeffs)
    if (!g.is_zero()) e.coeffs_.emplace(i, std::move(g));
  return e;
}

SurfaceElement::SurfaceElement(SurfaceSpec spec, VarList aux) : spec_(std::move(spec)) {
  aux_ = aux_union(aux, {});
  for (const auto& a : aux_)
    if (is_generator(a))
      throw Error(ErrorKind::Precondition, "auxiliary variable '" + a + "' clashes with a generator");
}

SurfaceElement SurfaceElement::x(const SurfaceSpec& spec, VarList aux) {
  aux = aux_union(aux, {});
  return make_element(spec, aux, {{0, Poly::variable(spec.field(), coeff_vars(aux), "X")}});
}

SurfaceElement SurfaceElement::y(const SurfaceSpec& spec, VarList aux) {
  aux = aux_union(aux, {});
  return make_element(spec, aux, {{1, Poly::constant(spec.field(), coeff_vars(aux), 1)}});
}

SurfaceElement SurfaceElement::z(const SurfaceSpec& spec, VarList aux) {
  aux = aux_union(aux, {});
  return make_element(spec, aux, {{0, Poly::variable(spec.field(), coeff_vars(aux), "Z")}});
}

SurfaceElement SurfaceElement::aux_var(const SurfaceSpec& spec, std::string_view name) {
  VarList aux{std::string(name)};
  return make_element(spec, aux, {{0, Poly::variable(spec.field(), coeff_vars(aux), name)}});
}

SurfaceElement SurfaceElement::constant(const SurfaceSpec& spec, const Scalar& c, VarList aux) {
  aux = aux_union(aux, {});
  return make_element(spec, aux, {{0, Poly::constant(spec.field(), coeff_vars(aux), c)}});
}

SurfaceElement SurfaceElement::from_xz(const SurfaceSpec& spec, const Poly& g) {
  return normal_form(g, spec);
}

SurfaceElement SurfaceElement::parse(const SurfaceSpec& spec, std::string_view text, VarList aux) {
  aux = aux_union(aux, {});
  SurfaceElement e = normal_form(parse_poly(text, spec.field(), raw_vars(aux)), spec);
  return e.with_aux(aux);
}

bool SurfaceElement::uses_aux() const {
  for (const auto& a : aux_)
    if (uses(a)) return true;
  return false;
}

bool SurfaceElement::uses(std::string_view aux_name) const {
  for (const auto& [i, g] : coeffs_)
    if (g.index_of(aux_name) && g.uses(aux_name)) return true;
  return false;
}

Poly SurfaceElement::raw() const {
  VarList vars = raw_vars(aux_);
  Poly out(spec_.field(), vars);
  for (const auto& [i, g] : coeffs_) out += g.with_vars(vars).shifted("Y", i);
  return out;
}

SurfaceElement SurfaceElement::with_aux(const VarList& aux) const {
  VarList target = aux_union(aux, {});
  if (target == aux_) return *this;
  for (const auto& a : aux_)
    if (!std::binary_search(target.begin(), target.end(), a) && uses(a))
      throw Error(ErrorKind::UnknownVariable, "auxiliary variable '" + a + "' is in use");
  VarList vars = coeff_vars(target);
  std::map<unsigned, Poly> coeffs;
  for (const auto& [i, g] : coeffs_) coeffs.emplace(i, g.with_vars(vars));
  return make_element(spec_, target, std::move(coeffs));
}

SurfaceElement SurfaceElement::trimmed() const {
  VarList keep;
  for (const auto& a : aux_)
    if (uses(a)) keep.push_back(a);
  return with_aux(keep);
}

SurfaceElement SurfaceElement::operator-() const {
  SurfaceElement out(*this);
  for (auto& [i, g] : out.coeffs_) g = -g;
  return out;
}

SurfaceElement operator+(const SurfaceElement& a, const SurfaceElement& b) {
  require_same_spec(a.spec(), b.spec());
  VarList aux = aux_union(a.aux(), b.aux());
  SurfaceElement lhs = a.with_aux(aux), rhs = b.with_aux(aux);
  std::map<unsigned, Poly> coeffs = lhs.coeffs();
  for (const auto& [i, g] : rhs.coeffs()) {
    auto it = coeffs.find(i);
    if (it == coeffs.end())
      coeffs.emplace(i, g);
    else
      it->second += g;
  }
  return make_element(a.spec(), aux, std::move(coeffs));
}

SurfaceElement operator-(const SurfaceElement& a, const SurfaceElement& b) { return a + (-b); }

SurfaceElement operator*(const SurfaceElement& a, const SurfaceElement& b) {
  require_same_spec(a.spec(), b.spec());
  VarList aux = aux_union(a.aux(), b.aux());
  return normal_form(a.with_aux(aux).raw() * b.with_aux(aux).raw(), a.spec()).with_aux(aux);
}

SurfaceElement SurfaceElement::scaled(const Scalar& c) const {
  std::map<unsigned, Poly> coeffs;
  for (const auto& [i, g] : coeffs_) coeffs.emplace(i, g.scaled(c));
  return make_element(spec_, aux_, std::move(coeffs));
}

SurfaceElement SurfaceElement::pow(unsigned e) const {
  SurfaceElement result = constant(spec_, Scalar::one(spec_.field()), aux_);
  SurfaceElement base = *this;
  while (e) {
    if (e & 1U) result = result * base;
    e >>= 1U;
    if (e) base = base * base;
  }
  return result;
}

SurfaceElement SurfaceElement::evaluate_aux(std::string_view name, const Scalar& value) const {
  VarList rest;
  for (const auto& a : aux_)
    if (a != name) rest.push_back(a);
  VarList vars = coeff_vars(rest);
  std::map<unsigned, Poly> coeffs;
  for (const auto& [i, g] : coeffs_) {
    Poly h = g.index_of(name) ? evaluate(g, name, value) : g;
    coeffs.emplace(i, h.with_vars(vars));
  }
  return make_element(spec_, rest, std::move(coeffs));
}

SurfaceElement SurfaceElement::aux_coefficient(std::string_view name, unsigned k) const {
  VarList rest;
  for (const auto& a : aux_)
    if (a != name) rest.push_back(a);
  VarList vars = coeff_vars(rest);
  std::map<unsigned, Poly> coeffs;
  for (const auto& [i, g] : coeffs_) {
    if (!g.index_of(name)) {
      if (k == 0) coeffs.emplace(i, g.with_vars(vars));
      continue;
    }
    coeffs.emplace(i, g.coefficient(name, k).with_vars(vars));
  }
  return make_element(spec_, rest, std::move(coeffs));
}

int SurfaceElement::aux_degree(std::string_view name) const {
  if (coeffs_.empty()) return kNegInf;
  int deg = 0;
  for (const auto& [i, g] : coeffs_)
    if (g.index_of(name)) deg = std::max(deg, g.degree(name));
  return deg;
}

std::string SurfaceElement::str() const {
  VarList names{"x", "y", "z"};
  names.insert(names.end(), aux_.begin(), aux_.end());
  return rename(raw(), names).str();
}

bool operator==(const SurfaceElement& a, const SurfaceElement& b) {
  if (!(a.spec_ == b.spec_)) return false;
  if (a.aux_ == b.aux_) return a.coeffs_ == b.coeffs_;
  VarList aux = aux_union(a.aux_, b.aux_);
  return a.with_aux(aux).coeffs_ == b.with_aux(aux).coeffs_;
}

// ---------------------------------------------------------------------------
// Normal form

namespace {

std::map<unsigned, Poly> reduce_by_division(const Poly& R, const SurfaceSpec& spec, const VarList& aux) {
  VarList cv = coeff_vars(aux);
  Poly P = spec.P().with_vars(cv);
  Poly f = spec.f().with_vars(cv);
  std::map<unsigned, Poly> work;
  for (auto& [i, g] : R.collect("Y")) work.emplace(i, g.with_vars(cv));
  for (auto it = work.begin(); it != work.end(); ++it) {
    if (it->second.degree("Z") < spec.d()) continue;
    auto [q, rem] = divrem_monic(it->second, P, "Z");
    it->second = std::move(rem);
    Poly carry = q * f;
    auto next = work.find(it->first + 1);
    if (next == work.end())
      work.emplace(it->first + 1, std::move(carry));
    else
      next->second += carry;
  }
  return work;
}

std::map<unsigned, Poly> reduce_by_rewriting(Poly R, const SurfaceSpec& spec, const VarList& aux,
                                             bool highest_first) {
  const VarList& vars = R.vars();
  const std::size_t zi = 2;
  const auto d = static_cast<std::uint32_t>(spec.d());
  Poly fy = spec.f().with_vars(vars).shifted("Y", 1);
  Poly tail = spec.P().with_vars(vars) - Poly::variable(R.field(), vars, "Z").pow(d);
  Poly replacement = fy - tail;
  for (;;) {
    const std::pair<const Exponents, Scalar>* pick = nullptr;
    for (const auto& term : R.terms()) {
      if (term.first[zi] < d) continue;
      pick = &term;
      if (highest_first) break;
    }
    if (!pick) break;
    Exponents rest = pick->first;
    rest[zi] -= d;
    Scalar c = pick->second;
    Poly old = Poly::monomial(R.field(), vars, pick->first, c);
    R -= old;
    R += Poly::monomial(R.field(), vars, rest, c) * replacement;
  }
  std::map<unsigned, Poly> out;
  VarList cv = coeff_vars(aux);
  for (auto& [i, g] : R.collect("Y")) out.emplace(i, g.with_vars(cv));
  return out;
}

}  // namespace

SurfaceElement normal_form(const Poly& raw, const SurfaceSpec& spec, Reduction method) {
  if (!(raw.field() == spec.field()))
    throw Error(ErrorKind::FieldMismatch, "element field differs from the surface field");
  VarList aux;
  for (const auto& v : raw.vars())
    if (!is_generator(v)) aux.push_back(v);
  aux = aux_union(aux, {});
  Poly R = raw.with_vars(raw_vars(aux));
  std::map<unsigned, Poly> coeffs;
  switch (method) {
    case Reduction::Division:
      coeffs = reduce_by_division(R, spec, aux);
      break;
    case Reduction::HighestFirst:
      coeffs = reduce_by_rewriting(R, spec, aux, true);
      break;
    case Reduction::LowestFirst:
      coeffs = reduce_by_rewriting(R, spec, aux, false);
      break;
  }
  return make_element(spec, aux, std::move(coeffs));
}

SurfaceElement map_generators(const SurfaceElement& e, const GeneratorImages& images) {
  const SurfaceSpec& target = images.x.spec();
  require_same_spec(target, images.y.spec());
  require_same_spec(target, images.z.spec());
  VarList aux = aux_union(images.x.aux(), aux_union(images.y.aux(), images.z.aux()));
  for (const auto& [name, img] : images.aux) {
    require_same_spec(target, img.spec());
    aux = aux_union(aux, img.aux());
  }
  for (const auto& a : e.aux())
    if (!images.aux.count(a)) aux = aux_union(aux, {a});
  VarList W = raw_vars(aux);

  std::map<std::string, Poly> bindings;
  bindings.emplace("X", images.x.with_aux(aux).raw());
  bindings.emplace("Y", images.y.with_aux(aux).raw());
  bindings.emplace("Z", images.z.with_aux(aux).raw());
  for (const auto& a : e.aux()) {
    auto it = images.aux.find(a);
    bindings.emplace(a, it != images.aux.end() ? it->second.with_aux(aux).raw()
                                               : Poly::variable(target.field(), W, a));
  }
  return normal_form(substitute(e.raw(), bindings), target).with_aux(aux);
}

// ---------------------------------------------------------------------------
// Filtration

std::optional<int> filtration_deg(const SurfaceElement& e) {
  if (e.uses_aux())
    throw Error(ErrorKind::Precondition, "filtration degree is defined on A only (auxiliary variables present)");
  if (e.is_zero()) return std::nullopt;
  const int d = e.spec().d();
  int best = kNegInf;
  for (const auto& [i, g] : e.coeffs())
    for (const auto& [exps, c] : g.terms())
      best = std::max(best, d * static_cast<int>(i) + static_cast<int>(exps[1]));
  return best;
}

SurfaceSpec graded_surface(const SurfaceSpec& spec) {
  Poly zd = Poly::variable(spec.field(), xz_vars(), "Z").pow(static_cast<unsigned>(spec.d()));
  return SurfaceSpec::make(spec.field(), spec.f(), zd);
}

SurfaceElement leading_form(const SurfaceElement& e) {
  auto top = filtration_deg(e);
  if (!top) throw Error(ErrorKind::ZeroInput, "leading form of zero");
  SurfaceSpec B = graded_surface(e.spec());
  const int d = e.spec().d();
  VarList cv = coeff_vars({});
  std::map<unsigned, Poly> coeffs;
  SurfaceElement plain = e.trimmed();
  for (const auto& [i, g] : plain.coeffs()) {
    Poly part(g.field(), cv);
    for (const auto& [exps, c] : g.terms())
      if (d * static_cast<int>(i) + static_cast<int>(exps[1]) == *top) part.add_term(exps, c);
    if (!part.is_zero()) coeffs.emplace(i, part);
  }
  return make_element(B, {}, std::move(coeffs));
}

SurfaceElement divide_by_x(const SurfaceElement& e) {
  const SurfaceSpec& spec = e.spec();
  if (!spec.f().constant_term().is_zero())
    throw Error(ErrorKind::Precondition, "division by x needs f(0) = 0");
  VarList cv = coeff_vars(e.aux());
  Poly X = Poly::variable(spec.field(), cv, "X");
  std::map<unsigned, Poly> coeffs;
  for (const auto& [i, g] : e.coeffs()) {
    auto q = exact_div(g, X);
    if (!q)
      throw Error(ErrorKind::NotDivisible,
                  "coefficient of y^" + std::to_string(i) + " is not divisible by x");
    coeffs.emplace(i, std::move(*q));
  }
  return make_element(spec, e.aux(), std::move(coeffs));
}

// ---------------------------------------------------------------------------
// Fibers and smoothness

const char* to_string(FiberKind kind) {
  switch (kind) {
    case FiberKind::GenericLine: return "GenericLine";
    case FiberKind::ExceptionalFiber: return "ExceptionalFiber";
    case FiberKind::NonReducedFiber: return "NonReducedFiber";
  }
  return "?";
}

FiberReport fiber(const SurfaceSpec& spec, const Scalar& point) {
  if (!(point.field() == spec.field())) throw Error(ErrorKind::FieldMismatch, "fiber point field mismatch");
  Scalar fv = evaluate(spec.f(), "X", point).constant_term();
  Poly restricted = evaluate(spec.P(), "X", point);
  Factorization fac = factor_univariate(restricted);
  FiberReport rep{point, fv, FiberKind::GenericLine, fac, 1, ""};
  if (!fv.is_zero()) {
    rep.note = "f(" + point.str() + ") = " + fv.str() + " is nonzero; the fiber is one affine line";
    return rep;
  }
  int lines = 0;
  for (const auto& factor : fac.factors) lines += factor.poly.degree("Z");
  rep.closure_lines = lines;
  if (is_squarefree(restricted)) {
    rep.kind = FiberKind::ExceptionalFiber;
    rep.note = "P(" + point.str() + ", Z) is squarefree: " + std::to_string(spec.d()) +
               " disjoint lines over the algebraic closure; K-rational lines correspond to linear factors";
  } else {
    rep.kind = FiberKind::NonReducedFiber;
    rep.note = "P(" + point.str() + ", Z) has a repeated root: the fiber is non-reduced";
  }
  return rep;
}

SmoothnessReport smoothness_check(const SurfaceSpec& spec) {
  Poly Pz = spec.P().derivative("Z");
  Poly res = Pz.is_zero() ? Poly(spec.field(), xz_vars()) : resultant_in(spec.P(), Pz, "Z");
  Poly g = gcd_univariate(spec.f().with_vars(xz_vars()), res);
  SmoothnessReport rep{false, res, g, std::nullopt};
  rep.smooth = !Pz.is_zero() && g.is_constant();
  if (!rep.smooth) rep.witness = radical(g);
  return rep;
}

}  // namespace dsurf
