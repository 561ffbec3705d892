#include "dsurf/io.hpp"

#include <fstream>
#include <sstream>

namespace dsurf::io {

namespace {

std::string field_string(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key))
    throw Error(ErrorKind::Parse, std::string("missing field '") + key + "'");
  const json& v = j.at(key);
  if (!v.is_string()) throw Error(ErrorKind::Parse, std::string("field '") + key + "' must be a string");
  return v.get<std::string>();
}

const json& field_object(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key))
    throw Error(ErrorKind::Parse, std::string("missing field '") + key + "'");
  return j.at(key);
}

json check_json(const CheckResult& c) {
  json j{{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}};
  if (c.witness) j["witness"] = *c.witness;
  return j;
}

}  // namespace

json to_json(const SurfaceSpec& spec) {
  return json{{"field", spec.field().tag()}, {"f", spec.f().str()}, {"phi", spec.P().str()}};
}

SurfaceSpec surface_from_json(const json& j) {
  FieldSpec K = FieldSpec::parse(field_string(j, "field"));
  return SurfaceSpec::parse(K, field_string(j, "f"), field_string(j, "phi"));
}

json to_json(const SurfaceElement& e) {
  json coeffs = json::object();
  for (const auto& [i, g] : e.coeffs()) coeffs[std::to_string(i)] = g.str();
  return json{{"coeffs", coeffs}, {"aux", e.aux()}};
}

SurfaceElement element_from_json(const SurfaceSpec& spec, const json& j) {
  VarList aux;
  if (j.contains("aux")) {
    if (!j.at("aux").is_array()) throw Error(ErrorKind::Parse, "'aux' must be an array");
    for (const auto& a : j.at("aux")) {
      if (!a.is_string()) throw Error(ErrorKind::Parse, "auxiliary names must be strings");
      aux.push_back(a.get<std::string>());
    }
  }
  aux = aux_union(aux, {});
  const json& coeffs = field_object(j, "coeffs");
  if (!coeffs.is_object()) throw Error(ErrorKind::Parse, "'coeffs' must be an object");
  VarList cv = coeff_vars(aux);
  VarList rv = raw_vars(aux);
  Poly raw(spec.field(), rv);
  for (const auto& [key, value] : coeffs.items()) {
    unsigned long i = 0;
    try {
      std::size_t used = 0;
      i = std::stoul(key, &used);
      if (used != key.size()) throw std::invalid_argument(key);
    } catch (const std::exception&) {
      throw Error(ErrorKind::Parse, "coefficient key '" + key + "' is not a y-power");
    }
    if (!value.is_string()) throw Error(ErrorKind::Parse, "coefficients must be strings");
    raw += parse_poly(value.get<std::string>(), spec.field(), cv).with_vars(rv).shifted("Y", static_cast<unsigned>(i));
  }
  return normal_form(raw, spec).with_aux(aux);
}

json to_json(const ExpMap& m) {
  return json{{"surface", to_json(m.spec())},
              {"x", m.image_x().raw().str()},
              {"z", m.image_z().raw().str()},
              {"y", m.image_y().raw().str()}};
}

ExpMap expmap_from_json(const json& j) {
  SurfaceSpec s = surface_from_json(field_object(j, "surface"));
  VarList aux{kParam};
  return ExpMap(s, SurfaceElement::parse(s, field_string(j, "x"), aux),
                SurfaceElement::parse(s, field_string(j, "z"), aux),
                SurfaceElement::parse(s, field_string(j, "y"), aux));
}

json to_json(const IsoCertificate& c) {
  return json{{"source", to_json(c.source())}, {"target", to_json(c.target())},
              {"lambda", c.lambda().str()},    {"mu", c.mu().str()},
              {"gamma", c.gamma().str()},      {"delta", c.delta().str()},
              {"u", c.u().str()},              {"theta", c.theta().str()}};
}

IsoCertificate certificate_from_json(const json& j) {
  SurfaceSpec s1 = surface_from_json(field_object(j, "source"));
  SurfaceSpec s2 = surface_from_json(field_object(j, "target"));
  if (!(s1.field() == s2.field())) throw Error(ErrorKind::FieldMismatch, "source and target fields differ");
  const FieldSpec& K = s1.field();
  return IsoCertificate(s1, s2, Scalar::parse(K, field_string(j, "lambda")), Scalar::parse(K, field_string(j, "mu")),
                        Scalar::parse(K, field_string(j, "gamma")),
                        parse_poly(field_string(j, "delta"), K, x_vars()),
                        Scalar::parse(K, field_string(j, "u")),
                        parse_poly(field_string(j, "theta"), K, xz_vars()));
}

json to_json(const StableIsoCertificate& c) {
  return json{{"A", to_json(c.specA)},
              {"B", to_json(c.specB)},
              {"h", c.h.str()},
              {"theta", c.theta.raw().str()},
              {"corr", c.corr.raw().str()},
              {"s", c.s.raw().str()},
              {"a", c.a.str()},
              {"b", c.b.str()},
              {"w", c.w.raw().str()}};
}

StableIsoCertificate stable_from_json(const json& j) {
  SurfaceSpec A = surface_from_json(field_object(j, "A"));
  SurfaceSpec B = surface_from_json(field_object(j, "B"));
  const FieldSpec& K = A.field();
  VarList aux{kStableVar};
  auto elem = [&](const char* key) { return SurfaceElement::parse(A, field_string(j, key), aux); };
  return StableIsoCertificate{A,
                              B,
                              parse_poly(field_string(j, "h"), K, x_vars()),
                              elem("theta"),
                              elem("corr"),
                              elem("s"),
                              parse_poly(field_string(j, "a"), K, xz_vars()),
                              parse_poly(field_string(j, "b"), K, xz_vars()),
                              elem("w")};
}

json to_json(const VerificationReport& r) {
  json checks = json::array();
  for (const auto& c : r.checks) checks.push_back(check_json(c));
  return json{{"passed", r.passed()}, {"checks", checks}};
}

json to_json(const Obstruction& o) {
  return json{{"kind", to_string(o.kind)}, {"condition", o.condition}, {"detail", o.detail}};
}

json to_json(const IsoDecision& d) {
  json certs = json::array();
  for (const auto& c : d.certificates) certs.push_back(to_json(c));
  json j{{"isomorphic", d.isomorphic()}, {"certificates", certs}, {"family", d.family}};
  if (d.obstruction) j["obstruction"] = to_json(*d.obstruction);
  if (!d.note.empty()) j["note"] = d.note;
  return j;
}

json to_json(const Fingerprint& f) {
  json profile = json::array();
  for (const auto& [m, deg] : f.profile) profile.push_back(json{{"multiplicity", m}, {"degree", deg}});
  return json{{"d", f.d}, {"r", f.r}, {"multiplicities", f.multiplicities}, {"degrees", f.degrees}, {"profile", profile}};
}

json to_json(const FiberReport& f) {
  json factors = json::array();
  for (const auto& fac : f.factors.factors)
    factors.push_back(json{{"factor", fac.poly.str()}, {"multiplicity", fac.multiplicity}});
  return json{{"point", f.point.str()}, {"f_value", f.f_value.str()}, {"kind", to_string(f.kind)},
              {"factors", factors},     {"closure_lines", f.closure_lines}, {"note", f.note}};
}

json to_json(const SmoothnessReport& s) {
  json j{{"smooth", s.smooth}, {"resultant", s.resultant.str()}, {"gcd", s.gcd.str()}};
  if (s.witness) j["witness"] = s.witness->str();
  return j;
}

json to_json(const HypothesisReport& h) {
  return json{{"n", h.n}, {"double_root", h.double_root}, {"comaximal", h.comaximal},
              {"resultant", h.resultant.str()}, {"passed", h.passed()}, {"detail", h.detail}};
}

json to_json(const FamilyReport& f) {
  json surfaces = json::array();
  for (std::size_t i = 0; i < f.surfaces.size(); ++i)
    surfaces.push_back(json{{"n", f.exponents[i]}, {"surface", to_json(f.surfaces[i])},
                            {"fingerprint", to_json(f.fingerprints[i])}});
  json pairs = json::array();
  for (const auto& p : f.pairs) {
    json pj{{"n1", p.n1}, {"n2", p.n2}, {"non_isomorphic", p.non_isomorphic}};
    if (p.obstruction) pj["obstruction"] = to_json(*p.obstruction);
    pairs.push_back(pj);
  }
  json chain = json::array();
  for (const auto& l : f.chain)
    chain.push_back(json{{"n", l.n}, {"certificate", to_json(l.cert)}, {"verification", to_json(l.report)}});
  json unchecked = unchecked_steps();
  return json{{"field", f.field.tag()}, {"g", f.g.str()},        {"phi", f.P.str()},
              {"surfaces", surfaces},   {"pairs", pairs},        {"chain", chain},
              {"passed", f.passed()},   {"unchecked_steps", unchecked}};
}

json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Parse, "cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return json::parse(buf.str());
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::Parse, path + ": " + e.what());
  }
}

}  // namespace dsurf::io
