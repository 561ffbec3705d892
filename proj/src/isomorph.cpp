#include "dsurf/isomorph.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace dsurf {

namespace {

Poly affine_image(const Poly& p, const Scalar& lambda, const Scalar& mu) {
  Poly X = Poly::variable(p.field(), p.vars(), "X");
  return substitute(p, {{"X", X.scaled(lambda) + Poly::constant(p.field(), p.vars(), mu)}});
}

Poly reduce_mod_f(const Poly& a, const Poly& f) {
  return divrem_monic(a, f.with_vars(a.vars()), "X").second;
}

std::string scalar_list(const std::vector<Scalar>& v) {
  std::string out = "{";
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + v[i].str();
  return out + "}";
}

}  // namespace

// ---------------------------------------------------------------------------
// Certificates

IsoCertificate::IsoCertificate(SurfaceSpec source, SurfaceSpec target, Scalar lambda, Scalar mu,
                               Scalar gamma, Poly delta, Scalar u, Poly theta)
    : source_(std::move(source)),
      target_(std::move(target)),
      lambda_(std::move(lambda)),
      mu_(std::move(mu)),
      gamma_(std::move(gamma)),
      delta_(delta.with_vars(x_vars())),
      u_(std::move(u)),
      theta_(theta.with_vars(xz_vars())) {}

GeneratorImages IsoCertificate::images() const {
  const SurfaceSpec& t = target_;
  SurfaceElement ix = SurfaceElement::x(t).scaled(lambda_) + SurfaceElement::constant(t, mu_);
  SurfaceElement iz = SurfaceElement::z(t).scaled(gamma_) + SurfaceElement::from_xz(t, delta_.with_vars(xz_vars()));
  Scalar gd = gamma_.pow(static_cast<long>(source_.d()));
  SurfaceElement iy = (SurfaceElement::y(t).scaled(gd) + SurfaceElement::from_xz(t, theta_)).scaled(u_.inverse());
  return GeneratorImages{ix, iy, iz, {}};
}

std::string IsoCertificate::str() const {
  std::ostringstream os;
  os << "lambda=" << lambda_.str() << " mu=" << mu_.str() << " gamma=" << gamma_.str()
     << " delta=" << delta_.str() << " u=" << u_.str() << " theta=" << theta_.str();
  return os.str();
}

bool operator==(const IsoCertificate& a, const IsoCertificate& b) {
  return a.source_ == b.source_ && a.target_ == b.target_ && a.lambda_ == b.lambda_ && a.mu_ == b.mu_ &&
         a.gamma_ == b.gamma_ && a.delta_ == b.delta_ && a.u_ == b.u_ && a.theta_ == b.theta_;
}

bool certificate_less(const IsoCertificate& a, const IsoCertificate& b) {
  if (a.lambda() != b.lambda()) return a.lambda() < b.lambda();
  if (a.mu() != b.mu()) return a.mu() < b.mu();
  if (a.gamma() != b.gamma()) return a.gamma() < b.gamma();
  return a.delta().str() < b.delta().str();
}

std::optional<IsoCertificate> complete_certificate(const SurfaceSpec& source, const SurfaceSpec& target,
                                                   const Scalar& lambda, const Scalar& mu,
                                                   const Scalar& gamma, const Poly& delta) {
  if (!(source.field() == target.field()))
    throw Error(ErrorKind::FieldMismatch, "surfaces over different fields");
  if (lambda.is_zero() || gamma.is_zero()) return std::nullopt;
  if (source.d() != target.d() || source.r() != target.r()) return std::nullopt;
  Scalar u = lambda.pow(source.r());
  if (!(affine_image(source.f(), lambda, mu) == target.f().scaled(u))) return std::nullopt;

  Poly dx = reduce_mod_f(delta.with_vars(x_vars()), target.f());
  const VarList& v = xz_vars();
  const FieldSpec& K = source.field();
  Poly X = Poly::variable(K, v, "X");
  Poly Z = Poly::variable(K, v, "Z");
  Poly lhs = substitute(source.P(), {{"X", X.scaled(lambda) + Poly::constant(K, v, mu)},
                                     {"Z", Z.scaled(gamma) + dx.with_vars(v)}});
  Poly defect = lhs - target.P().scaled(gamma.pow(source.d()));
  auto [q, rem] = divrem_monic(defect, target.f().with_vars(v), "X");
  if (!rem.is_zero()) return std::nullopt;
  return IsoCertificate(source, target, lambda, mu, gamma, dx, u, q);
}

VerificationReport verify_iso(const IsoCertificate& c) {
  VerificationReport rep;
  const SurfaceSpec& s1 = c.source();
  const SurfaceSpec& s2 = c.target();

  bool units = !c.lambda().is_zero() && !c.gamma().is_zero() && !c.u().is_zero();
  rep.checks.push_back({"units", units, "lambda, gamma, u are nonzero", {}});

  bool same_d = s1.d() == s2.d();
  rep.checks.push_back({"d1 = d2", same_d,
                        "deg_Z P1 = " + std::to_string(s1.d()) + ", deg_Z P2 = " + std::to_string(s2.d()), {}});

  Poly f_defect = affine_image(s1.f(), c.lambda(), c.mu()) - s2.f().scaled(c.u());
  CheckResult f_check{"III", f_defect.is_zero(), "f1(lambda*X + mu) = u*f2(X)", {}};
  if (!f_check.passed) f_check.witness = f_defect.str();
  rep.checks.push_back(std::move(f_check));

  bool u_forced = c.u() == c.lambda().pow(s1.r());
  rep.checks.push_back({"u = lambda^r", u_forced, "u = " + c.u().str(), {}});

  const VarList& v = xz_vars();
  const FieldSpec& K = s1.field();
  Poly X = Poly::variable(K, v, "X");
  Poly Z = Poly::variable(K, v, "Z");
  Poly lhs = substitute(s1.P(), {{"X", X.scaled(c.lambda()) + Poly::constant(K, v, c.mu())},
                                 {"Z", Z.scaled(c.gamma()) + c.delta().with_vars(v)}});
  Poly rhs = s2.P().scaled(c.gamma().pow(s2.d())) + s2.f().with_vars(v) * c.theta();
  Poly defect = lhs - rhs;
  CheckResult cong{"congruence", defect.is_zero(),
                   "P1(lambda*X + mu, gamma*Z + delta) = gamma^d*P2 + f2*theta", {}};
  if (!cong.passed) cong.witness = defect.str();
  rep.checks.push_back(std::move(cong));

  bool normalized = c.delta().degree("X") < s2.r() && c.theta().degree("Z") < s2.d();
  rep.checks.push_back({"normalized", normalized, "deg delta < r and deg_Z theta < d", {}});
  return rep;
}

IsoCertificate compose(const IsoCertificate& outer, const IsoCertificate& inner) {
  if (!(inner.target() == outer.source()))
    throw Error(ErrorKind::SpecMismatch, "certificates are not composable");
  const Scalar& l1 = inner.lambda();
  const Scalar& l2 = outer.lambda();
  Poly delta = outer.delta().scaled(inner.gamma()) + affine_image(inner.delta(), l2, outer.mu());
  auto c = complete_certificate(inner.source(), outer.target(), l1 * l2, l1 * outer.mu() + inner.mu(),
                                inner.gamma() * outer.gamma(), delta);
  if (!c || !verify_iso(*c).passed()) throw Error(ErrorKind::Internal, "composite certificate does not verify");
  return *c;
}

IsoCertificate invert(const IsoCertificate& cert) {
  Scalar li = cert.lambda().inverse();
  Scalar gi = cert.gamma().inverse();
  Scalar mu = -(li * cert.mu());
  Poly delta = -affine_image(cert.delta(), li, mu).scaled(gi);
  auto c = complete_certificate(cert.target(), cert.source(), li, mu, gi, delta);
  if (!c || !verify_iso(*c).passed()) throw Error(ErrorKind::Internal, "inverse certificate does not verify");
  return *c;
}

IsoCertificate identity_certificate(const SurfaceSpec& spec) {
  const FieldSpec& K = spec.field();
  auto c = complete_certificate(spec, spec, Scalar::one(K), Scalar::zero(K), Scalar::one(K), Poly(K, x_vars()));
  return *c;
}

// ---------------------------------------------------------------------------
// Fingerprints

std::string Fingerprint::str() const {
  std::ostringstream os;
  os << "d=" << d << " r=" << r << " multiplicities {";
  for (std::size_t i = 0; i < multiplicities.size(); ++i) os << (i ? "," : "") << multiplicities[i];
  os << "} degrees {";
  for (std::size_t i = 0; i < degrees.size(); ++i) os << (i ? "," : "") << degrees[i];
  os << "}";
  return os.str();
}

Fingerprint fingerprint(const SurfaceSpec& spec) {
  Fingerprint fp;
  fp.d = spec.d();
  fp.r = spec.r();
  for (const auto& f : factor_univariate(spec.f()).factors) {
    int deg = f.poly.degree("X");
    fp.multiplicities.push_back(f.multiplicity);
    fp.degrees.push_back(deg);
    fp.profile.emplace_back(f.multiplicity, deg);
  }
  std::sort(fp.multiplicities.begin(), fp.multiplicities.end());
  std::sort(fp.degrees.begin(), fp.degrees.end());
  std::sort(fp.profile.begin(), fp.profile.end());
  return fp;
}

const char* to_string(ObstructionKind kind) {
  switch (kind) {
    case ObstructionKind::ZDegreeMismatch: return "ZDegreeMismatch";
    case ObstructionKind::FDegreeMismatch: return "FDegreeMismatch";
    case ObstructionKind::MultiplicityMultisetMismatch: return "MultiplicityMultisetMismatch";
    case ObstructionKind::NoAffineMatch: return "NoAffineMatch";
    case ObstructionKind::NoGammaDelta: return "NoGammaDelta";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Solver

namespace {

class Solver {
 public:
  Solver(const SurfaceSpec& s1, const SurfaceSpec& s2, const DecideOptions& opts)
      : s1_(s1), s2_(s2), opts_(opts), K_(s1.field()), p_(K_.characteristic()) {}

  struct AffineResult {
    std::vector<std::pair<Scalar, Scalar>> pairs;
    bool lambda_free = false;
    Poly mu_of_lambda;  ///< over [L], valid when lambda_free
  };

  AffineResult affine_pairs() {
    AffineResult out{{}, false, Poly(K_, {"L"})};
    const int r = s1_.r();
    if (p_ == 0 || r % static_cast<long>(p_) != 0) {
      VarList v{"X", "L"};
      Poly X = Poly::variable(K_, v, "X");
      Poly L = Poly::variable(K_, v, "L");
      Scalar a = s1_.f().coeff({static_cast<std::uint32_t>(r - 1)});
      Scalar b = s2_.f().coeff({static_cast<std::uint32_t>(r - 1)});
      Poly mu = (L.scaled(b) - Poly::constant(K_, v, a)).scaled(Scalar(K_, r).inverse());
      Poly E = substitute(s1_.f().with_vars(v), {{"X", L * X + mu}}) -
               L.pow(static_cast<unsigned>(r)) * s2_.f().with_vars(v);
      Poly g(K_, {"L"});
      for (const auto& [k, c] : E.collect("X")) g = gcd_univariate(g, c.with_vars({"L"}));
      Poly mu_l = mu.with_vars({"L"});
      if (g.is_zero()) {
        if (K_.is_rationals()) {
          out.lambda_free = true;
          out.mu_of_lambda = mu_l;
          return out;
        }
        for (std::uint64_t l = 1; l < p_; ++l) {
          Scalar lam(K_, static_cast<long>(l));
          out.pairs.emplace_back(lam, evaluate(mu_l, "L", lam).constant_term());
        }
        return out;
      }
      std::set<Scalar> seen;
      for (const auto& lam : roots_in_field(g)) {
        if (lam.is_zero() || !seen.insert(lam).second) continue;
        out.pairs.emplace_back(lam, evaluate(mu_l, "L", lam).constant_term());
      }
      return out;
    }
    charge(mpz_class(static_cast<unsigned long>(p_ - 1)) * p_);
    for (std::uint64_t l = 1; l < p_; ++l) {
      Scalar lam(K_, static_cast<long>(l));
      Poly target = s2_.f().scaled(lam.pow(r));
      for (std::uint64_t m = 0; m < p_; ++m) {
        Scalar mu(K_, static_cast<long>(m));
        if (affine_image(s1_.f(), lam, mu) == target) out.pairs.emplace_back(lam, mu);
      }
    }
    return out;
  }

  /// Certificates over a fixed (lambda, mu); sets gamma_free_ when gamma is unconstrained over Q.
  std::vector<IsoCertificate> gamma_delta(const Scalar& lambda, const Scalar& mu) {
    std::vector<IsoCertificate> out;
    const int d = s1_.d();
    const int r = s2_.r();
    if (p_ == 0 || d % static_cast<long>(p_) != 0) {
      VarList v{"X", "Z", "G"};
      Poly X = Poly::variable(K_, v, "X");
      Poly Z = Poly::variable(K_, v, "Z");
      Poly G = Poly::variable(K_, v, "G");
      Poly c2 = s2_.c(d - 1).with_vars(v);
      Poly c1 = affine_image(s1_.c(d - 1), lambda, mu).with_vars(v);
      Poly delta = (G * c2 - c1).scaled(Scalar(K_, d).inverse());
      Poly lhs = substitute(s1_.P().with_vars(v),
                            {{"X", X.scaled(lambda) + Poly::constant(K_, v, mu)}, {"Z", G * Z + delta}});
      Poly E = lhs - G.pow(static_cast<unsigned>(d)) * s2_.P().with_vars(v);
      E = reduce_mod_f(E, s2_.f());

      std::map<std::pair<std::uint32_t, std::uint32_t>, Poly> conds;
      for (const auto& [e, c] : E.terms()) {
        auto key = std::make_pair(e[0], e[1]);
        auto it = conds.find(key);
        if (it == conds.end()) it = conds.emplace(key, Poly(K_, {"G"})).first;
        it->second.add_term({e[2]}, c);
      }
      Poly g(K_, {"G"});
      for (const auto& [key, c] : conds) g = gcd_univariate(g, c);

      std::vector<Scalar> gammas;
      if (g.is_zero()) {
        if (K_.is_rationals()) {
          gamma_free_ = true;
          gammas.push_back(Scalar::one(K_));
        } else {
          for (std::uint64_t c = 1; c < p_; ++c) gammas.emplace_back(K_, static_cast<long>(c));
        }
      } else {
        std::set<Scalar> seen;
        for (const auto& gam : roots_in_field(g))
          if (!gam.is_zero() && seen.insert(gam).second) gammas.push_back(gam);
      }
      for (const auto& gam : gammas) {
        Poly dl = evaluate(delta, "G", gam).with_vars(x_vars());
        auto cert = complete_certificate(s1_, s2_, lambda, mu, gam, dl);
        if (!cert) throw Error(ErrorKind::Internal, "solved (gamma, delta) fails the congruence");
        out.push_back(std::move(*cert));
      }
      return out;
    }
    mpz_class per = mpz_class(static_cast<unsigned long>(p_ - 1));
    for (int i = 0; i < r; ++i) per *= p_;
    charge(per);
    std::uint64_t count = 1;
    for (int i = 0; i < r; ++i) count *= p_;
    for (std::uint64_t c = 1; c < p_; ++c) {
      Scalar gam(K_, static_cast<long>(c));
      for (std::uint64_t code = 0; code < count; ++code) {
        Poly dl(K_, x_vars());
        std::uint64_t rest = code;
        for (int i = 0; i < r; ++i) {
          dl.add_term({static_cast<std::uint32_t>(i)}, Scalar(K_, static_cast<long>(rest % p_)));
          rest /= p_;
        }
        if (auto cert = complete_certificate(s1_, s2_, lambda, mu, gam, dl)) out.push_back(std::move(*cert));
      }
    }
    return out;
  }

  bool gamma_free() const { return gamma_free_; }

 private:
  void charge(const mpz_class& tuples) {
    used_ += tuples;
    if (used_ > mpz_class(std::to_string(opts_.cap)))
      throw Error(ErrorKind::SearchOverflow,
                  "brute-force search needs " + used_.get_str() + " tuples, cap is " + std::to_string(opts_.cap));
  }

  const SurfaceSpec& s1_;
  const SurfaceSpec& s2_;
  DecideOptions opts_;
  FieldSpec K_;
  std::uint64_t p_;
  mpz_class used_ = 0;
  bool gamma_free_ = false;
};

std::vector<Scalar> small_height_rationals(const FieldSpec& K, int height) {
  std::vector<Scalar> out;
  for (int den = 1; den <= height; ++den)
    for (int num = 1; num <= height; ++num) {
      if (std::gcd(num, den) != 1) continue;
      out.emplace_back(K, mpq_class(num, den));
      out.emplace_back(K, mpq_class(-num, den));
    }
  return out;
}

}  // namespace

IsoDecision decide_isomorphism(const SurfaceSpec& s1, const SurfaceSpec& s2, const DecideOptions& opts) {
  if (!(s1.field() == s2.field())) throw Error(ErrorKind::FieldMismatch, "surfaces over different fields");
  IsoDecision out;
  if (s1.d() != s2.d()) {
    out.obstruction = Obstruction{ObstructionKind::ZDegreeMismatch, "d1 = d2",
                                  "deg_Z P1 = " + std::to_string(s1.d()) + ", deg_Z P2 = " + std::to_string(s2.d())};
    return out;
  }
  if (s1.r() != s2.r()) {
    out.obstruction = Obstruction{ObstructionKind::FDegreeMismatch, "deg f1 = deg f2",
                                  "deg f1 = " + std::to_string(s1.r()) + ", deg f2 = " + std::to_string(s2.r())};
    return out;
  }
  Fingerprint fp1 = fingerprint(s1), fp2 = fingerprint(s2);
  if (fp1.profile != fp2.profile) {
    out.obstruction = Obstruction{ObstructionKind::MultiplicityMultisetMismatch,
                                  "prime factors of f1 and f2 correspond with equal multiplicities",
                                  fp1.str() + " vs " + fp2.str()};
    return out;
  }

  Solver solver(s1, s2, opts);
  auto affine = solver.affine_pairs();
  std::vector<IsoCertificate> certs;
  if (affine.lambda_free) {
    out.family = true;
    for (const auto& lam : small_height_rationals(s1.field(), opts.height)) {
      Scalar mu = evaluate(affine.mu_of_lambda, "L", lam).constant_term();
      for (auto& c : solver.gamma_delta(lam, mu)) certs.push_back(std::move(c));
    }
    if (certs.empty())
      throw Error(ErrorKind::Undecided,
                  "lambda is unconstrained by f and no (gamma, delta) exists for lambda of height <= " +
                      std::to_string(opts.height));
    out.note = "lambda ranges over an infinite set; certificates listed for lambda of height <= " +
               std::to_string(opts.height);
  } else {
    if (affine.pairs.empty()) {
      out.obstruction = Obstruction{ObstructionKind::NoAffineMatch, "f1(lambda*X + mu) = u*f2",
                                    "no (lambda, mu) in K* x K maps f1 to a multiple of f2"};
      return out;
    }
    for (const auto& [lam, mu] : affine.pairs)
      for (auto& c : solver.gamma_delta(lam, mu)) certs.push_back(std::move(c));
  }
  if (solver.gamma_free()) {
    out.family = true;
    if (!out.note.empty()) out.note += "; ";
    out.note += "gamma ranges over an infinite set; gamma = 1 listed as representative";
  }
  if (certs.empty()) {
    std::vector<Scalar> lambdas;
    for (const auto& pr : affine.pairs) lambdas.push_back(pr.first);
    out.obstruction = Obstruction{ObstructionKind::NoGammaDelta,
                                  "P1(lambda*X + mu, gamma*Z + delta) = gamma^d*P2 mod f2",
                                  "no (gamma, delta) for lambda in " + scalar_list(lambdas)};
    return out;
  }
  std::sort(certs.begin(), certs.end(), certificate_less);
  certs.erase(std::unique(certs.begin(), certs.end()), certs.end());
  for (const auto& c : certs)
    if (!verify_iso(c).passed()) throw Error(ErrorKind::Internal, "emitted certificate fails verification");
  out.certificates = std::move(certs);
  return out;
}

AutomorphismReport automorphisms(const SurfaceSpec& spec, const DecideOptions& opts) {
  AutomorphismReport rep{decide_isomorphism(spec, spec, opts), false, ""};
  const int n = spec.n();
  if (n < 2) {
    rep.hypothesis_detail = "n = " + std::to_string(n) + " < 2";
    return rep;
  }
  Poly xn = Poly::variable(spec.field(), x_vars(), "X").pow(static_cast<unsigned>(n));
  Poly g = *exact_div(spec.f(), xn);
  std::vector<Scalar> bad;
  for (const auto& f : factor_univariate(g).factors)
    if (f.poly.degree("X") == 1 && static_cast<int>(f.multiplicity) == n) bad.push_back(-f.poly.constant_term());
  if (!bad.empty()) {
    rep.hypothesis_detail = "g has the root(s) " + scalar_list(bad) + " of multiplicity n = " + std::to_string(n);
    return rep;
  }
  rep.fixes_origin_hypothesis = true;
  rep.hypothesis_detail = "n = " + std::to_string(n) + " and g = " + g.str() + " has no root of multiplicity n";
  for (const auto& c : rep.decision.certificates)
    if (!c.mu().is_zero())
      throw Error(ErrorKind::Internal, "automorphism with mu != 0 under the fixed-origin hypothesis");
  return rep;
}

}  // namespace dsurf
