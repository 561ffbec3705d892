#include "dsurf/cancel.hpp"

namespace dsurf {

namespace {

const VarList& xzv_vars() {
  static const VarList v{"X", "Z", kStableVar};
  return v;
}

Poly quotient_by_x(const Poly& f, int k) {
  Poly xk = Poly::variable(f.field(), f.vars(), "X").pow(static_cast<unsigned>(k));
  auto q = exact_div(f, xk);
  if (!q) throw Error(ErrorKind::NotDivisible, "f is not divisible by X^" + std::to_string(k));
  return *q;
}

CheckResult identity_check(std::string name, std::string detail, const SurfaceElement& lhs,
                           const SurfaceElement& rhs) {
  CheckResult c{std::move(name), lhs == rhs, std::move(detail), {}};
  if (!c.passed) c.witness = (lhs - rhs).str();
  return c;
}

}  // namespace

HypothesisReport check_hypotheses(const SurfaceSpec& spec) {
  HypothesisReport rep{0, false, false, Poly(spec.field(), xz_vars()), ""};
  rep.n = spec.n();
  rep.double_root = rep.n >= 2;
  Poly Pz = spec.P().derivative("Z");
  rep.resultant = Pz.is_zero() ? Poly(spec.field(), xz_vars()) : resultant_in(spec.P(), Pz, "Z");
  rep.comaximal = !rep.resultant.is_zero() && rep.resultant.is_constant();
  rep.detail = "n = " + std::to_string(rep.n) + (rep.double_root ? " (>= 2)" : " (< 2; shift X so the double root is 0)") +
               "; Res_Z(P, P_Z) = " + rep.resultant.str() +
               (rep.comaximal ? " (nonzero constant)" : " ((P, P_Z) is a proper ideal)");
  return rep;
}

SurfaceElement eval_at_theta(const Poly& q, const SurfaceElement& theta) {
  VarList rv = raw_vars(theta.aux());
  Poly X = Poly::variable(theta.spec().field(), rv, "X");
  return normal_form(substitute(q.with_vars(xz_vars()), {{"X", X}, {"Z", theta.raw()}}), theta.spec())
      .with_aux(theta.aux());
}

SurfaceElement correction_by_division(const SurfaceSpec& A) {
  const FieldSpec& K = A.field();
  const VarList& v3 = xzv_vars();
  Poly X = Poly::variable(K, v3, "X");
  Poly Z = Poly::variable(K, v3, "Z");
  Poly V = Poly::variable(K, v3, kStableVar);
  Poly h = quotient_by_x(A.f(), 1).with_vars(v3);
  Poly P = A.P().with_vars(v3);
  Poly shifted = substitute(P, {{"Z", Z + h * V}});
  Poly numer = shifted - P - h * V * P.derivative("Z");
  auto q = exact_div(numer, h * X);
  if (!q) throw Error(ErrorKind::NotDivisible, "P(x, theta) - P - h v P_Z is not divisible by h x");
  return normal_form(*q, A);
}

ExpMap extended_canonical_map(const SurfaceSpec& spec) {
  ExpMap base = canonical_expmap(spec);
  SurfaceElement v = SurfaceElement::aux_var(spec, kStableVar);
  SurfaceElement xu = SurfaceElement::x(spec) * SurfaceElement::aux_var(spec, kParam);
  ExpMap m = base.extended({{kStableVar, v - xu}});
  VerificationReport rep = m.verify();
  if (!rep.passed()) throw Error(ErrorKind::Internal, "extended map failed " + rep.first_failure()->name);
  return m;
}

StableIsoCertificate build_stable_iso(const SurfaceSpec& A) {
  HypothesisReport hyp = check_hypotheses(A);
  if (!hyp.double_root)
    throw Error(ErrorKind::Precondition, "f needs a root of multiplicity >= 2 at 0: " + hyp.detail);
  if (!hyp.comaximal) throw Error(ErrorKind::ComaximalityFails, hyp.detail);

  const FieldSpec& K = A.field();
  const int n = A.n();
  Poly h = quotient_by_x(A.f(), 1);
  if (h.degree("X") < 2)
    throw Error(ErrorKind::DegreeTooSmall, "h = f/X = " + h.str() + " has degree < 2; B leaves the family");
  SurfaceSpec B = SurfaceSpec::make(K, h, A.P());
  Poly g = quotient_by_x(A.f(), n);

  const VarList& v3 = xzv_vars();
  Poly X = Poly::variable(K, v3, "X");
  Poly Z = Poly::variable(K, v3, "Z");
  Poly V = Poly::variable(K, v3, kStableVar);
  Poly hv3 = h.with_vars(v3);

  // Taylor coefficients e_k of P(X, Z + T)
  VarList vt{"X", "Z", "T"};
  Poly T = Poly::variable(K, vt, "T");
  Poly shifted = substitute(A.P().with_vars(vt), {{"Z", Poly::variable(K, vt, "Z") + T}});
  Poly corr_raw(K, v3);
  Poly tail = X.pow(static_cast<unsigned>(n - 2)) * g.with_vars(v3);
  for (const auto& [k, ek] : shifted.collect("T")) {
    if (k < 2) continue;
    corr_raw += ek.with_vars(v3) * V.pow(k) * hv3.pow(k - 2) * tail;
  }

  SurfaceElement theta = normal_form(hv3 * V + Z, A);
  SurfaceElement corr = normal_form(corr_raw, A);
  if (!(corr == correction_by_division(A)))
    throw Error(ErrorKind::Internal, "Taylor and division computations of corr disagree");

  Poly Pz = A.P().derivative("Z");
  VarList rv = raw_vars({kStableVar});
  Poly s_raw = Poly::variable(K, rv, "X") * Poly::variable(K, rv, "Y") +
               Poly::variable(K, rv, kStableVar) * Pz.with_vars(rv) +
               Poly::variable(K, rv, "X") * corr_raw.with_vars(rv);
  SurfaceElement s = normal_form(s_raw, A);

  BezoutPair ab = bezout_cofactors(A.P(), Pz, "Z");
  SurfaceElement numer = SurfaceElement::aux_var(A, kStableVar) - s * eval_at_theta(ab.a, theta);
  SurfaceElement w = [&] {
    try {
      return divide_by_x(numer);
    } catch (const Error& e) {
      throw Error(ErrorKind::Internal, std::string("v - s a(x, theta) is not divisible by x: ") + e.what());
    }
  }();
  return StableIsoCertificate{A, B, h, theta, corr, s, ab.a.with_vars(xz_vars()), ab.b.with_vars(xz_vars()), w};
}

VerificationReport verify_stable_iso(const StableIsoCertificate& c) {
  VerificationReport rep;
  const SurfaceSpec& A = c.specA;
  const FieldSpec& K = A.field();
  const VarList aux{kStableVar};

  // V1
  {
    HypothesisReport hyp = check_hypotheses(A);
    bool ok = hyp.passed();
    std::string detail = hyp.detail;
    auto h = exact_div(A.f(), Poly::variable(K, x_vars(), "X"));
    if (!h || !(*h == c.h.with_vars(x_vars()))) {
      ok = false;
      detail += "; h is not f/X";
    } else if (!(c.specB.field() == K) || !(c.specB.f() == *h) || !(c.specB.P() == A.P())) {
      ok = false;
      detail += "; B is not (h, P)";
    }
    rep.checks.push_back({"V1", ok, detail, {}});
  }

  SurfaceElement x = SurfaceElement::x(A);
  SurfaceElement y = SurfaceElement::y(A);
  SurfaceElement z = SurfaceElement::z(A);
  SurfaceElement v = SurfaceElement::aux_var(A, kStableVar);
  SurfaceElement hx = SurfaceElement::from_xz(A, c.h.with_vars(xz_vars()));
  Poly Pz = A.P().derivative("Z");
  SurfaceElement pz = SurfaceElement::from_xz(A, Pz);

  // V2
  {
    CheckResult chk = identity_check("V2", "theta = h(x) v + z and h(x) s = P(x, theta) in A[v]", hx * c.s,
                                     eval_at_theta(A.P(), c.theta));
    if (!(c.theta == hx * v + z)) {
      chk.passed = false;
      chk.detail = "theta is not h(x) v + z";
      chk.witness = (c.theta - (hx * v + z)).str();
    }
    rep.checks.push_back(std::move(chk));
  }

  // V3
  {
    Poly defect = c.a * Pz + c.b * A.P() - Poly::constant(K, xz_vars(), 1);
    CheckResult chk{"V3", defect.is_zero(), "a P_Z + b P = 1 in K[X,Z]", {}};
    if (!chk.passed) chk.witness = defect.str();
    rep.checks.push_back(std::move(chk));
  }

  SurfaceElement a_theta = eval_at_theta(c.a, c.theta);

  // V4
  rep.checks.push_back(identity_check("V4", "x w = v - s a(x, theta) in A[v]", x * c.w, v - c.s * a_theta));

  // V5
  {
    CheckResult chk{"V5", true, "with phi(v) = v - xU: phi(theta) = theta, phi(s) = s, phi(w) = w - U", {}};
    try {
      ExpMap m = extended_canonical_map(A);
      SurfaceElement U = SurfaceElement::aux_var(A, kParam);
      std::vector<std::pair<std::string, std::pair<SurfaceElement, SurfaceElement>>> cases{
          {"theta", {apply(m, c.theta), c.theta}},
          {"s", {apply(m, c.s), c.s}},
          {"w", {apply(m, c.w), c.w - U}}};
      for (const auto& [name, sides] : cases) {
        if (!(sides.first == sides.second)) {
          chk.passed = false;
          chk.detail = "phi(" + name + ") has the wrong image";
          chk.witness = (sides.first - sides.second).str();
          break;
        }
      }
    } catch (const Error& e) {
      chk.passed = false;
      chk.detail = e.what();
    }
    rep.checks.push_back(std::move(chk));
  }

  // V6
  {
    std::vector<CheckResult> parts{
        identity_check("V6", "z = theta - h(x) v", z.with_aux(aux), c.theta - hx * v),
        identity_check("V6", "v = x w + s a(x, theta)", v, x * c.w + c.s * a_theta),
        identity_check("V6", "x y = s - v P_Z(x, z) - x corr", (x * y).with_aux(aux), c.s - v * pz - x * c.corr)};
    CheckResult chk{"V6", true, "z, v and x y are recovered from theta, s, w over K[x, 1/x]", {}};
    for (auto& p : parts)
      if (!p.passed) {
        chk = std::move(p);
        break;
      }
    rep.checks.push_back(std::move(chk));
  }

  // V7
  {
    Poly p0 = evaluate(A.P(), "X", Scalar::zero(K));
    Poly g = gcd_univariate(p0, p0.derivative("Z"));
    CheckResult chk{"V7", !g.is_zero() && g.is_constant(), "gcd(P(0, Z), P_Z(0, Z)) = 1", {}};
    if (!chk.passed) chk.witness = g.str();
    rep.checks.push_back(std::move(chk));
  }
  return rep;
}

std::vector<std::string> unchecked_steps() {
  return {"R = R^phi[w], from phi(w) = w - U with an invariant slice (taken as known)",
          "the surjection B -> K[x, theta, s] is injective since both sides have dimension 2 (taken as known)"};
}

bool FamilyReport::passed() const {
  for (const auto& p : pairs)
    if (!p.non_isomorphic) return false;
  for (const auto& l : chain)
    if (!l.report.passed()) return false;
  return true;
}

FamilyReport sigma_family(const Poly& g_in, const Poly& P_in, int n_from, int n_to, const DecideOptions& opts) {
  if (!(g_in.field() == P_in.field())) throw Error(ErrorKind::FieldMismatch, "g and P over different fields");
  const FieldSpec K = g_in.field();
  if (n_from < 2) throw Error(ErrorKind::Precondition, "n_from = " + std::to_string(n_from) + " < 2");
  if (n_to < n_from) throw Error(ErrorKind::Precondition, "empty exponent range");
  Poly g = g_in.with_vars(x_vars());
  Poly P = P_in.with_vars(xz_vars());
  if (g.is_zero()) throw Error(ErrorKind::ZeroInput, "g is zero");
  if (g.constant_term().is_zero()) throw Error(ErrorKind::Precondition, "g(0) = 0");
  if (!is_squarefree(g)) throw Error(ErrorKind::Precondition, "g = " + g.str() + " has a double root");

  FamilyReport rep{K, g, P, {}, {}, {}, {}, {}};
  Poly X = Poly::variable(K, x_vars(), "X");
  for (int n = n_from; n <= n_to; ++n) {
    SurfaceSpec s = SurfaceSpec::make(K, X.pow(static_cast<unsigned>(n)) * g, P);
    HypothesisReport hyp = check_hypotheses(s);
    if (!hyp.comaximal) throw Error(ErrorKind::ComaximalityFails, hyp.detail);
    rep.exponents.push_back(n);
    rep.fingerprints.push_back(fingerprint(s));
    rep.surfaces.push_back(std::move(s));
  }
  for (std::size_t i = 0; i < rep.surfaces.size(); ++i)
    for (std::size_t j = i + 1; j < rep.surfaces.size(); ++j) {
      IsoDecision dec = decide_isomorphism(rep.surfaces[i], rep.surfaces[j], opts);
      rep.pairs.push_back({rep.exponents[i], rep.exponents[j], !dec.isomorphic(), dec.obstruction});
    }
  for (std::size_t i = 1; i < rep.surfaces.size(); ++i) {
    StableIsoCertificate cert = build_stable_iso(rep.surfaces[i]);
    if (!(cert.specB == rep.surfaces[i - 1]))
      throw Error(ErrorKind::Internal, "the B surface of A_n is not A_(n-1)");
    VerificationReport vr = verify_stable_iso(cert);
    rep.chain.push_back({rep.exponents[i], std::move(cert), std::move(vr)});
  }
  return rep;
}

}  // namespace dsurf
