#include "dsurf/expmap.hpp"

#include "dsurf/isomorph.hpp"

namespace dsurf {

bool VerificationReport::passed() const { return first_failure() == nullptr; }

const CheckResult* VerificationReport::first_failure() const {
  for (const auto& c : checks)
    if (!c.passed) return &c;
  return nullptr;
}

namespace {

SurfaceElement rename_aux(const SurfaceElement& e, const std::string& from, const std::string& to) {
  const SurfaceSpec& s = e.spec();
  GeneratorImages id{SurfaceElement::x(s), SurfaceElement::y(s), SurfaceElement::z(s), {}};
  id.aux.emplace(from, SurfaceElement::aux_var(s, to));
  return map_generators(e, id);
}

}  // namespace

ExpMap::ExpMap(SurfaceSpec spec, SurfaceElement image_x, SurfaceElement image_z,
               SurfaceElement image_y, std::map<std::string, SurfaceElement> aux_images)
    : spec_(std::move(spec)),
      x_(std::move(image_x)),
      z_(std::move(image_z)),
      y_(std::move(image_y)),
      aux_(std::move(aux_images)) {
  for (const SurfaceElement* e : {&x_, &z_, &y_})
    if (!(e->spec() == spec_)) throw Error(ErrorKind::SpecMismatch, "image lives on another surface");
  for (const auto& [name, e] : aux_)
    if (!(e.spec() == spec_)) throw Error(ErrorKind::SpecMismatch, "image of " + name + " lives on another surface");
}

bool ExpMap::nontrivial() const {
  if (x_.uses(kParam) || y_.uses(kParam) || z_.uses(kParam)) return true;
  for (const auto& [name, e] : aux_)
    if (e.uses(kParam)) return true;
  return false;
}

ExpMap ExpMap::extended(std::map<std::string, SurfaceElement> aux_images) const {
  return ExpMap(spec_, x_, z_, y_, std::move(aux_images));
}

SurfaceElement ExpMap::apply_unchecked(const SurfaceElement& e) const {
  return map_generators(e, GeneratorImages{x_, y_, z_, aux_});
}

VerificationReport ExpMap::verify() {
  VerificationReport rep;
  const SurfaceSpec& s = spec_;

  // (W) the defining relation maps to zero
  {
    VarList aux = aux_union(x_.aux(), aux_union(y_.aux(), z_.aux()));
    VarList W = raw_vars(aux);
    Poly relation = s.f().with_vars(raw_vars({})).shifted("Y", 1) - s.P().with_vars(raw_vars({}));
    std::map<std::string, Poly> bind{{"X", x_.with_aux(aux).raw()},
                                     {"Y", y_.with_aux(aux).raw()},
                                     {"Z", z_.with_aux(aux).raw()}};
    SurfaceElement defect = normal_form(substitute(relation, bind), s);
    CheckResult c{"W", defect.is_zero(), "f(phi(x))*phi(y) - P(phi(x), phi(z)) reduces to 0 in A[U]", {}};
    if (!c.passed) c.witness = defect.str();
    rep.checks.push_back(std::move(c));
  }

  std::vector<std::pair<SurfaceElement, SurfaceElement>> gens{
      {SurfaceElement::x(s), x_}, {SurfaceElement::z(s), z_}, {SurfaceElement::y(s), y_}};
  for (const auto& [name, img] : aux_) gens.emplace_back(SurfaceElement::aux_var(s, name), img);

  // (A1) U = 0 gives the identity
  {
    CheckResult c{"A1", true, "setting U = 0 recovers every generator", {}};
    for (const auto& [g, img] : gens) {
      SurfaceElement at0 = img.with_aux(aux_union(img.aux(), {kParam})).evaluate_aux(kParam, Scalar::zero(s.field()));
      if (!(at0 == g)) {
        c.passed = false;
        c.witness = (at0 - g).str();
        c.detail = "image of " + g.str() + " at U = 0 differs from the generator";
        break;
      }
    }
    rep.checks.push_back(std::move(c));
  }

  // (A2) phi_V o phi_U = phi_{U+V}
  {
    CheckResult c{"A2", true, "phi_V(phi_U(g)) = phi_{U+V}(g) in A[U,V] for every generator", {}};
    GeneratorImages at_v{rename_aux(x_, kParam, kParam2), rename_aux(y_, kParam, kParam2),
                         rename_aux(z_, kParam, kParam2), {}};
    for (const auto& [name, img] : aux_) at_v.aux.emplace(name, rename_aux(img, kParam, kParam2));
    GeneratorImages shift{SurfaceElement::x(s), SurfaceElement::y(s), SurfaceElement::z(s), {}};
    shift.aux.emplace(kParam, SurfaceElement::aux_var(s, kParam) + SurfaceElement::aux_var(s, kParam2));
    for (const auto& [g, img] : gens) {
      SurfaceElement lhs = map_generators(img, at_v);
      SurfaceElement rhs = map_generators(img, shift);
      if (!(lhs == rhs)) {
        c.passed = false;
        c.witness = (lhs - rhs).str();
        c.detail = "cocycle law fails on " + g.str();
        break;
      }
    }
    rep.checks.push_back(std::move(c));
  }

  if (const CheckResult* bad = rep.first_failure()) {
    status_ = MapStatus::Refuted;
    reason_ = bad->name + ": " + bad->detail;
  } else {
    status_ = MapStatus::Verified;
    reason_.clear();
  }
  return rep;
}

VerificationReport verify_expmap(const ExpMap& m) {
  ExpMap copy = m;
  return copy.verify();
}

ExpMap canonical_expmap(const SurfaceSpec& spec) {
  VarList aux{kParam};
  VarList cv = coeff_vars(aux);
  const FieldSpec& K = spec.field();
  Poly f = spec.f().with_vars(cv);
  Poly P = spec.P().with_vars(cv);
  Poly Z = Poly::variable(K, cv, "Z");
  Poly U = Poly::variable(K, cv, kParam);
  Poly shifted = substitute(P, {{"X", Poly::variable(K, cv, "X")}, {"Z", Z + f * U}});
  auto q = exact_div(shifted - P, f);
  if (!q) throw Error(ErrorKind::Internal, "P(x, z + f(x)U) - P(x, z) is not divisible by f(x)");

  SurfaceElement ix = SurfaceElement::x(spec, aux);
  SurfaceElement iz = normal_form(Z + f * U, spec);
  SurfaceElement iy = SurfaceElement::y(spec, aux) + normal_form(*q, spec);
  ExpMap m(spec, ix, iz, iy);
  VerificationReport rep = m.verify();
  if (!rep.passed())
    throw Error(ErrorKind::Internal, "canonical exponential map failed " + rep.first_failure()->name);
  return m;
}

SurfaceElement apply(const ExpMap& m, const SurfaceElement& e) {
  if (m.status() != MapStatus::Verified)
    throw Error(ErrorKind::Unverified, "exponential map has not been verified");
  return m.apply_unchecked(e);
}

std::optional<int> phi_degree(const ExpMap& m, const SurfaceElement& e) {
  SurfaceElement img = apply(m, e);
  if (img.is_zero()) return std::nullopt;
  return img.aux_degree(kParam);
}

SurfaceElement derivation_coeff(const ExpMap& m, const SurfaceElement& e, unsigned i) {
  SurfaceElement img = apply(m, e);
  return img.with_aux(aux_union(img.aux(), {kParam})).aux_coefficient(kParam, i);
}

bool is_invariant(const ExpMap& m, const SurfaceElement& e) { return apply(m, e) == e; }

ExpMap conjugate(const ExpMap& m, const IsoCertificate& cert) {
  if (!(cert.source() == m.spec()) || !(cert.target() == m.spec()))
    throw Error(ErrorKind::Precondition, "certificate is not an automorphism of the map's surface");
  if (!verify_iso(cert).passed())
    throw Error(ErrorKind::Precondition, "certificate does not verify");
  if (m.status() != MapStatus::Verified)
    throw Error(ErrorKind::Unverified, "exponential map has not been verified");
  GeneratorImages T = cert.images();
  GeneratorImages Tinv = invert(cert).images();
  auto conj = [&](const SurfaceElement& g) {
    return map_generators(m.apply_unchecked(map_generators(g, T)), Tinv);
  };
  const SurfaceSpec& s = m.spec();
  ExpMap out(s, conj(SurfaceElement::x(s)), conj(SurfaceElement::z(s)), conj(SurfaceElement::y(s)));
  VerificationReport rep = out.verify();
  if (!rep.passed())
    throw Error(ErrorKind::Internal, "conjugated map failed " + rep.first_failure()->name);
  return out;
}

}  // namespace dsurf
