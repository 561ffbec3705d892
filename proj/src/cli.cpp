#include "dsurf/cli.hpp"

#include <functional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "dsurf/algebra.hpp"
#include "dsurf/cancel.hpp"
#include "dsurf/error.hpp"
#include "dsurf/expmap.hpp"
#include "dsurf/io.hpp"
#include "dsurf/parse.hpp"
#include "dsurf/surface.hpp"

namespace dsurf::cli {

using io::json;

namespace {

struct Options {
  std::string field = "Q";
  std::string f;
  std::string phi;
  std::string surface_file;
  std::string map_file;
  std::string left, right;
  std::string cert_file;
  std::string g;
  int from = 2;
  int to = 3;
  bool json = false;
  std::uint64_t seed = 0;
  std::uint64_t cap = 10'000'000;

  DecideOptions decide() const {
    DecideOptions o;
    o.seed = seed;
    o.cap = cap;
    return o;
  }
};

SurfaceSpec load_surface(const Options& o) {
  if (!o.surface_file.empty()) return io::surface_from_json(io::read_file(o.surface_file));
  if (o.f.empty() || o.phi.empty()) throw Error(ErrorKind::Parse, "a surface needs --surface or both --f and --phi");
  return SurfaceSpec::parse(FieldSpec::parse(o.field), o.f, o.phi);
}

void print_report(std::ostream& out, const VerificationReport& r, const std::string& indent = "  ") {
  for (const auto& c : r.checks) {
    out << indent << (c.passed ? "[PASS] " : "[FAIL] ") << c.name;
    if (!c.detail.empty()) out << ": " << c.detail;
    out << "\n";
    if (c.witness) out << indent << "       witness: " << *c.witness << "\n";
  }
}

void print_decision(std::ostream& out, const IsoDecision& d) {
  if (d.isomorphic()) {
    out << "isomorphic: " << d.certificates.size() << " certificate(s)" << (d.family ? " (representatives of a family)" : "")
        << "\n";
    for (const auto& c : d.certificates) out << "  " << c.str() << "\n";
  } else {
    out << "not isomorphic\n";
    if (d.obstruction)
      out << "  obstruction " << to_string(d.obstruction->kind) << ": " << d.obstruction->condition << "\n  "
          << d.obstruction->detail << "\n";
  }
  if (!d.note.empty()) out << "  note: " << d.note << "\n";
}

int emit(std::ostream& out, const Options& o, const json& j, const std::string& text, int code) {
  if (o.json)
    out << j.dump(2) << "\n";
  else
    out << text;
  return code;
}

int surface_info(const Options& o, std::ostream& out) {
  SurfaceSpec s = load_surface(o);
  Fingerprint fp = fingerprint(s);
  SmoothnessReport sm = smoothness_check(s);
  std::vector<FiberReport> fibers;
  std::vector<Scalar> roots = roots_in_field(s.f());
  for (std::size_t i = 0; i < roots.size(); ++i)
    if (i == 0 || !(roots[i] == roots[i - 1])) fibers.push_back(fiber(s, roots[i]));

  json j{{"surface", io::to_json(s)}, {"r", s.r()}, {"d", s.d()}, {"n", s.n()},
         {"fingerprint", io::to_json(fp)}, {"smoothness", io::to_json(sm)}};
  j["fibers"] = json::array();
  for (const auto& fr : fibers) j["fibers"].push_back(io::to_json(fr));

  std::ostringstream t;
  t << s.str() << "\n";
  t << "r = " << s.r() << ", d = " << s.d() << ", n = " << s.n() << "\n";
  t << "fingerprint: " << fp.str() << "\n";
  t << "smooth: " << (sm.smooth ? "yes" : "no") << " (Res_Z(P, P_Z) = " << sm.resultant.str() << ")";
  if (sm.witness) t << ", witness " << sm.witness->str();
  t << "\n";
  for (const auto& fr : fibers) {
    t << "fiber over x = " << fr.point.str() << ": " << to_string(fr.kind);
    if (!fr.note.empty()) t << " (" << fr.note << ")";
    t << "\n";
  }
  return emit(out, o, j, t.str(), kPositive);
}

int expmap_verify(const Options& o, std::ostream& out) {
  ExpMap m = o.map_file.empty() ? canonical_expmap(load_surface(o)) : io::expmap_from_json(io::read_file(o.map_file));
  VerificationReport r = verify_expmap(m);
  json j{{"map", io::to_json(m)}, {"verification", io::to_json(r)}};
  std::ostringstream t;
  t << "exponential map on " << m.spec().str() << "\n";
  t << "  x -> " << m.image_x().str() << "\n  z -> " << m.image_z().str() << "\n  y -> " << m.image_y().str() << "\n";
  print_report(t, r);
  t << (r.passed() ? "verified\n" : "refuted\n");
  return emit(out, o, j, t.str(), r.passed() ? kPositive : kNegative);
}

int expmap_canonical(const Options& o, std::ostream& out) {
  ExpMap m = canonical_expmap(load_surface(o));
  std::ostringstream t;
  t << "x -> " << m.image_x().str() << "\nz -> " << m.image_z().str() << "\ny -> " << m.image_y().str() << "\n";
  return emit(out, o, io::to_json(m), t.str(), kPositive);
}

int iso_decide(const Options& o, std::ostream& out) {
  if (o.left.empty() || o.right.empty()) throw Error(ErrorKind::Parse, "iso decide needs --left and --right");
  SurfaceSpec s1 = io::surface_from_json(io::read_file(o.left));
  SurfaceSpec s2 = io::surface_from_json(io::read_file(o.right));
  IsoDecision d = decide_isomorphism(s1, s2, o.decide());
  std::ostringstream t;
  t << s1.str() << "  vs  " << s2.str() << "\n";
  print_decision(t, d);
  return emit(out, o, io::to_json(d), t.str(), d.isomorphic() ? kPositive : kNegative);
}

int iso_verify(const Options& o, std::ostream& out) {
  if (o.cert_file.empty()) throw Error(ErrorKind::Parse, "iso verify needs --cert");
  IsoCertificate c = io::certificate_from_json(io::read_file(o.cert_file));
  VerificationReport r = verify_iso(c);
  std::ostringstream t;
  t << c.str() << "\n";
  print_report(t, r);
  t << (r.passed() ? "verified\n" : "refuted\n");
  return emit(out, o, json{{"certificate", io::to_json(c)}, {"verification", io::to_json(r)}}, t.str(),
              r.passed() ? kPositive : kNegative);
}

int cancel_build(const Options& o, std::ostream& out) {
  SurfaceSpec s = load_surface(o);
  HypothesisReport h = check_hypotheses(s);
  if (!h.passed()) {
    std::ostringstream t;
    t << "hypotheses fail: " << h.detail << "\n";
    return emit(out, o, json{{"hypotheses", io::to_json(h)}}, t.str(), kNegative);
  }
  StableIsoCertificate c = build_stable_iso(s);
  VerificationReport r = verify_stable_iso(c);
  std::ostringstream t;
  t << "A = " << c.specA.str() << "\nB = " << c.specB.str() << "\n";
  t << "  theta = " << c.theta.str() << "\n  corr = " << c.corr.str() << "\n  s = " << c.s.str() << "\n  a = "
    << c.a.str() << "\n  b = " << c.b.str() << "\n  w = " << c.w.str() << "\n";
  print_report(t, r);
  t << (r.passed() ? "verified\n" : "refuted\n");
  json j{{"hypotheses", io::to_json(h)}, {"certificate", io::to_json(c)}, {"verification", io::to_json(r)}};
  return emit(out, o, j, t.str(), r.passed() ? kPositive : kNegative);
}

int cancel_verify(const Options& o, std::ostream& out) {
  if (o.cert_file.empty()) throw Error(ErrorKind::Parse, "cancel verify needs --cert");
  StableIsoCertificate c = io::stable_from_json(io::read_file(o.cert_file));
  VerificationReport r = verify_stable_iso(c);
  std::ostringstream t;
  t << "A = " << c.specA.str() << "\nB = " << c.specB.str() << "\n";
  print_report(t, r);
  if (const CheckResult* bad = r.first_failure()) t << "refuted at " << bad->name << "\n";
  else t << "verified\n";
  json j{{"verification", io::to_json(r)}};
  if (const CheckResult* bad = r.first_failure()) j["failed_check"] = bad->name;
  return emit(out, o, j, t.str(), r.passed() ? kPositive : kNegative);
}

int family_demo(const Options& o, std::ostream& out) {
  if (o.g.empty() || o.phi.empty()) throw Error(ErrorKind::Parse, "family demo needs --g and --phi");
  FieldSpec K = FieldSpec::parse(o.field);
  FamilyReport rep = sigma_family(parse_poly(o.g, K, x_vars()), parse_poly(o.phi, K, xz_vars()), o.from, o.to, o.decide());
  std::ostringstream t;
  t << "family X^n*(" << rep.g.str() << ")*Y = " << rep.P.str() << " over " << K.tag() << ", n = " << o.from << ".."
    << o.to << "\n";
  for (std::size_t i = 0; i < rep.surfaces.size(); ++i)
    t << "  n = " << rep.exponents[i] << ": fingerprint " << rep.fingerprints[i].str() << "\n";
  for (const auto& p : rep.pairs) {
    t << "  A_" << p.n1 << " vs A_" << p.n2 << ": " << (p.non_isomorphic ? "non-isomorphic" : "NOT REFUTED");
    if (p.obstruction) t << " (" << to_string(p.obstruction->kind) << ")";
    t << "\n";
  }
  for (const auto& l : rep.chain)
    t << "  A_" << l.n << "[v] = A_" << (l.n - 1) << "[w]: " << (l.report.passed() ? "verified" : "refuted") << "\n";
  t << "unchecked steps:\n";
  for (const auto& s : unchecked_steps()) t << "  - " << s << "\n";
  t << (rep.passed() ? "pairwise non-isomorphic and stably isomorphic\n" : "family check failed\n");
  return emit(out, o, io::to_json(rep), t.str(), rep.passed() ? kPositive : kNegative);
}

int run_examples(const Options& o, std::ostream& out) {
  std::vector<ExampleResult> results = paper_examples(o.decide());
  bool all = true;
  json j = json::array();
  std::ostringstream t;
  for (const auto& r : results) {
    all = all && r.passed;
    j.push_back(json{{"name", r.name}, {"passed", r.passed}, {"detail", r.detail}});
    t << (r.passed ? "PASS " : "FAIL ") << r.name << ": " << r.detail << "\n";
  }
  t << (all ? "all examples pass\n" : "some examples fail\n");
  return emit(out, o, json{{"examples", j}, {"passed", all}}, t.str(), all ? kPositive : kNegative);
}

bool has_mu(const IsoDecision& d, long lambda, long mu) {
  for (const auto& c : d.certificates) {
    const FieldSpec& K = c.source().field();
    if (c.lambda() == Scalar(K, lambda) && c.mu() == Scalar(K, mu) && c.gamma() == Scalar::one(K) &&
        c.delta().is_zero() && c.u() == Scalar::one(K) && verify_iso(c).passed())
      return true;
  }
  return false;
}

bool all_verified(const IsoDecision& d) {
  for (const auto& c : d.certificates)
    if (!verify_iso(c).passed()) return false;
  return true;
}

}  // namespace

std::vector<ExampleResult> paper_examples(const DecideOptions& opts) {
  std::vector<ExampleResult> out;
  FieldSpec Q = FieldSpec::parse("Q");
  FieldSpec F2 = FieldSpec::parse("F2");

  {
    SurfaceSpec s = SurfaceSpec::parse(F2, "X^2+X", "Z^2");
    AutomorphismReport a = automorphisms(s, opts);
    bool ok = has_mu(a.decision, 1, 1) && all_verified(a.decision);
    out.push_back({"translation automorphism, n = 1", ok,
                   s.str() + ": " + std::to_string(a.decision.certificates.size()) + " automorphisms, x -> x+1 " +
                       (ok ? "found and verified" : "missing")});
  }
  {
    SurfaceSpec s = SurfaceSpec::parse(F2, "X^2*(X+1)^2", "Z^2");
    AutomorphismReport a = automorphisms(s, opts);
    bool ok = has_mu(a.decision, 1, 1) && all_verified(a.decision) && !a.fixes_origin_hypothesis;
    out.push_back({"translation automorphism, n = 2", ok,
                   s.str() + ": " + std::to_string(a.decision.certificates.size()) + " automorphisms, x -> x+1 " +
                       (ok ? "found and verified" : "missing") + "; " + a.hypothesis_detail});
  }
  {
    SurfaceSpec s = SurfaceSpec::parse(Q, "X^2*(X-1)", "Z^2+1");
    AutomorphismReport a = automorphisms(s, opts);
    bool ok = a.fixes_origin_hypothesis && a.decision.isomorphic() && all_verified(a.decision);
    for (const auto& c : a.decision.certificates) ok = ok && c.mu().is_zero();
    out.push_back({"automorphisms fix the origin", ok,
                   s.str() + ": " + std::to_string(a.decision.certificates.size()) + " automorphisms, all with mu = 0"});
  }
  {
    SurfaceSpec s1 = SurfaceSpec::parse(Q, "X^2*(X-1)", "Z^2+1");
    SurfaceSpec s2 = SurfaceSpec::parse(Q, "X^3", "Z^2+1");
    IsoDecision d = decide_isomorphism(s1, s2, opts);
    bool ok = !d.isomorphic() && d.obstruction && d.obstruction->kind == ObstructionKind::MultiplicityMultisetMismatch;
    out.push_back({"root multiplicity obstruction", ok,
                   s1.str() + " vs " + s2.str() + ": " +
                       (d.obstruction ? std::string(to_string(d.obstruction->kind)) : std::string("no obstruction"))});
  }
  {
    SurfaceSpec s = SurfaceSpec::parse(Q, "X^2", "Z^2");
    SmoothnessReport sm = smoothness_check(s);
    FiberReport fr = fiber(s, Scalar::zero(Q));
    bool ok = !sm.smooth && sm.witness && sm.witness->str() == "X" && fr.kind == FiberKind::NonReducedFiber;
    out.push_back({"non-normal surface", ok,
                   s.str() + ": smoothness fails with witness " + (sm.witness ? sm.witness->str() : "-") +
                       ", fiber over 0 is " + to_string(fr.kind)});
  }
  {
    FamilyReport rep = sigma_family(parse_poly("X-1", Q, x_vars()), parse_poly("Z^2+1", Q, xz_vars()), 2, 3, opts);
    out.push_back({"stable isomorphism chain over Q", rep.passed(),
                   "n = 2..3 with g = X-1, P = Z^2+1: " + std::to_string(rep.chain.size()) + " verified link(s)"});
  }
  {
    FamilyReport rep = sigma_family(parse_poly("X+1", F2, x_vars()), parse_poly("Z^2+Z+X", F2, xz_vars()), 2, 3, opts);
    out.push_back({"stable isomorphism chain over F2", rep.passed(),
                   "n = 2..3 with g = X+1, P = Z^2+Z+X: " + std::to_string(rep.chain.size()) + " verified link(s)"});
  }
  return out;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options o;
  std::function<int(const Options&, std::ostream&)> action;

  CLI::App app{"Danielewski surface toolkit"};
  app.require_subcommand(1);

  auto common = [&](CLI::App* c) {
    c->add_flag("--json", o.json, "Emit JSON");
    c->add_option("--seed", o.seed, "Seed for randomized factorization");
    c->add_option("--cap", o.cap, "Bound on brute-force candidates")->check(CLI::PositiveNumber);
  };
  auto surface_inputs = [&](CLI::App* c) {
    c->add_option("--field", o.field, "Q or F<p>");
    c->add_option("--f", o.f, "f(X)");
    c->add_option("--phi", o.phi, "P(X, Z)");
    c->add_option("--surface", o.surface_file, "Surface JSON file");
  };
  auto leaf = [&](CLI::App* parent, const std::string& name, const std::string& desc,
                  int (*fn)(const Options&, std::ostream&)) {
    CLI::App* c = parent->add_subcommand(name, desc);
    common(c);
    c->callback([&action, fn] { action = fn; });
    return c;
  };

  CLI::App* surface = app.add_subcommand("surface", "Surface data")->require_subcommand(1);
  surface_inputs(leaf(surface, "info", "Invariants, smoothness and special fibers", surface_info));

  CLI::App* expmap = app.add_subcommand("expmap", "Exponential maps")->require_subcommand(1);
  CLI::App* ev = leaf(expmap, "verify", "Verify a map (the canonical one by default)", expmap_verify);
  surface_inputs(ev);
  ev->add_option("--map", o.map_file, "Map JSON file");
  surface_inputs(leaf(expmap, "canonical", "Print the canonical map", expmap_canonical));

  CLI::App* iso = app.add_subcommand("iso", "Isomorphisms")->require_subcommand(1);
  CLI::App* id = leaf(iso, "decide", "Decide isomorphism of two surfaces", iso_decide);
  id->add_option("--left", o.left, "Surface JSON file");
  id->add_option("--right", o.right, "Surface JSON file");
  leaf(iso, "verify", "Check an isomorphism certificate", iso_verify)->add_option("--cert", o.cert_file, "Certificate JSON");

  CLI::App* cancel = app.add_subcommand("cancel", "Stable isomorphisms")->require_subcommand(1);
  surface_inputs(leaf(cancel, "build", "Build and check a stable isomorphism", cancel_build));
  leaf(cancel, "verify", "Check a stable isomorphism certificate", cancel_verify)
      ->add_option("--cert", o.cert_file, "Certificate JSON");

  CLI::App* family = app.add_subcommand("family", "Counterexample families")->require_subcommand(1);
  CLI::App* fd = leaf(family, "demo", "Non-isomorphic, stably isomorphic family", family_demo);
  fd->add_option("--field", o.field, "Q or F<p>");
  fd->add_option("--g", o.g, "g(X) with g(0) != 0");
  fd->add_option("--phi", o.phi, "P(X, Z)");
  fd->add_option("--from", o.from, "First exponent");
  fd->add_option("--to", o.to, "Last exponent");

  leaf(&app, "paper-examples", "Run the built-in example corpus", run_examples);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kPositive : kMalformed;
  }

  try {
    return action(o, out);
  } catch (const Error& e) {
    err << "error (" << to_string(e.kind()) << "): " << e.what() << "\n";
    return e.kind() == ErrorKind::SearchOverflow ? kOverflow : kMalformed;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kMalformed;
  }
}

}  // namespace dsurf::cli
