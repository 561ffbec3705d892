#include <doctest.h>

#include <sstream>
#include <string>
#include <vector>

#include "dsurf/cli.hpp"
#include "dsurf/io.hpp"

using namespace dsurf;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "dsurf");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string data(const char* name) { return std::string(DSURF_TEST_DATA) + "/" + name; }

}  // namespace

TEST_CASE("iso decide finds the translation") {
  Run r = run({"iso", "decide", "--left", data("translation_f2.json"), "--right", data("translation_f2.json"), "--json"});
  CHECK(r.code == 0);
  io::json j = io::json::parse(r.out);
  CHECK(j["isomorphic"] == true);
  bool found = false;
  for (const auto& c : j["certificates"]) found = found || (c["lambda"] == "1" && c["mu"] == "1");
  CHECK(found);
  Run text = run({"iso", "decide", "--left", data("translation_f2.json"), "--right", data("translation_f2.json")});
  CHECK(text.out.find("lambda=1 mu=1") != std::string::npos);
}

TEST_CASE("iso decide refutes with an obstruction") {
  Run r = run({"iso", "decide", "--left", data("origin_fixed_q.json"), "--right", data("cube_q.json"), "--json"});
  CHECK(r.code == 1);
  CHECK(io::json::parse(r.out)["obstruction"]["kind"] == "MultiplicityMultisetMismatch");
}

TEST_CASE("certificate verification") {
  CHECK(run({"iso", "verify", "--cert", data("translation_cert.json")}).code == 0);
  Run bad = run({"iso", "verify", "--cert", data("iso_tampered_u.json"), "--json"});
  CHECK(bad.code == 1);
  CHECK(io::json::parse(bad.out)["verification"]["passed"] == false);
  Run c = run({"cancel", "verify", "--cert", data("stable_q.json")});
  CHECK(c.code == 0);
  Run t = run({"cancel", "verify", "--cert", data("stable_tampered.json"), "--json"});
  CHECK(t.code == 1);
  CHECK(io::json::parse(t.out)["failed_check"] == "V2");
  Run tt = run({"cancel", "verify", "--cert", data("stable_tampered.json")});
  CHECK(tt.out.find("refuted at V2") != std::string::npos);
}

TEST_CASE("exponential maps") {
  CHECK(run({"expmap", "verify", "--f", "X^2", "--phi", "Z^2 + 1"}).code == 0);
  CHECK(run({"expmap", "verify", "--field", "F2", "--f", "X^2*(X+1)", "--phi", "Z^2+Z+X"}).code == 0);
  Run bad = run({"expmap", "verify", "--map", data("expmap_wrong_y.json")});
  CHECK(bad.code == 1);
  CHECK(bad.out.find("[FAIL] W") != std::string::npos);
  Run c = run({"expmap", "canonical", "--f", "X^2", "--phi", "Z^2 + 1", "--json"});
  CHECK(c.code == 0);
  io::json j = io::json::parse(c.out);
  CHECK(j["z"] == "X^2*U + Z");
  ExpMap back = io::expmap_from_json(j);
  CHECK(verify_expmap(back).passed());
}

TEST_CASE("cancel build and family demo") {
  Run b = run({"cancel", "build", "--f", "X^3 - X^2", "--phi", "Z^2 + 1", "--json"});
  CHECK(b.code == 0);
  io::json j = io::json::parse(b.out);
  StableIsoCertificate c = io::stable_from_json(j["certificate"]);
  CHECK(verify_stable_iso(c).passed());
  CHECK(run({"cancel", "build", "--f", "X^3 - X^2", "--phi", "Z^2"}).code == 1);

  Run f = run({"family", "demo", "--g", "X-1", "--phi", "Z^2+1", "--field", "Q", "--from", "2", "--to", "4", "--json"});
  CHECK(f.code == 0);
  io::json fj = io::json::parse(f.out);
  CHECK(fj["passed"] == true);
  CHECK(fj["pairs"].size() == 3);
  CHECK(fj["chain"].size() == 2);
}

TEST_CASE("surface info") {
  Run r = run({"surface", "info", "--f", "X^2", "--phi", "Z^2", "--json"});
  CHECK(r.code == 0);
  io::json j = io::json::parse(r.out);
  CHECK(j["smoothness"]["smooth"] == false);
  CHECK(j["smoothness"]["witness"] == "X");
  CHECK(j["fibers"][0]["kind"] == "NonReducedFiber");
  CHECK(run({"surface", "info", "--surface", data("cube_q.json")}).code == 0);
}

TEST_CASE("example corpus") {
  Run r = run({"paper-examples"});
  CHECK(r.code == 0);
  CHECK(r.out.find("FAIL") == std::string::npos);
  Run capped = run({"paper-examples", "--cap", "1"});
  CHECK(capped.code == 3);
  CHECK(capped.err.find("SearchOverflow") != std::string::npos);
  Run a = run({"paper-examples", "--json", "--seed", "5"});
  Run b = run({"paper-examples", "--json", "--seed", "5"});
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  for (const auto& e : cli::paper_examples()) CHECK_MESSAGE(e.passed, e.name);
}

TEST_CASE("json reports are byte-identical across runs") {
  std::vector<std::vector<std::string>> cmds{
      {"iso", "decide", "--left", data("translation_f2.json"), "--right", data("translation_f2.json"), "--json"},
      {"family", "demo", "--g", "X+1", "--phi", "Z^2+Z+X", "--field", "F2", "--from", "2", "--to", "3", "--json"},
      {"cancel", "build", "--field", "F3", "--f", "X^3*(X+1)", "--phi", "Z^3 - Z + X", "--json"},
      {"surface", "info", "--field", "F5", "--f", "X^4 - 1", "--phi", "Z^2 + X", "--json", "--seed", "9"}};
  for (const auto& c : cmds) {
    Run a = run(c), b = run(c);
    CHECK(a.code == b.code);
    CHECK(a.out == b.out);
  }
}

TEST_CASE("malformed input") {
  CHECK(run({"iso", "decide", "--left", data("malformed.json"), "--right", data("cube_q.json")}).code == 2);
  CHECK(run({"iso", "decide", "--left", data("missing.json"), "--right", data("cube_q.json")}).code == 2);
  CHECK(run({"surface", "info", "--f", "X^2 +", "--phi", "Z^2"}).code == 2);
  CHECK(run({"surface", "info", "--f", "2*X^2", "--phi", "Z^2"}).code == 2);
  CHECK(run({"surface", "info", "--field", "F4", "--f", "X^2", "--phi", "Z^2"}).code == 2);
  CHECK(run({"surface", "info"}).code == 2);
  CHECK(run({"nonsense"}).code == 2);
  CHECK(run({}).code == 2);
  CHECK(run({"paper-examples", "--cap", "0"}).code == 2);
  CHECK(run({"iso", "verify", "--cert", data("cube_q.json")}).code == 2);
  CHECK(run({"paper-examples", "--help"}).code == 0);
}

TEST_CASE("json round trips") {
  SurfaceSpec s = SurfaceSpec::parse(FieldSpec::prime(3), "X^3 + 2*X", "Z^3 + X*Z^2 + 1");
  CHECK(io::surface_from_json(io::to_json(s)) == s);
  SurfaceElement e = SurfaceElement::parse(s, "Y^2*Z + X*U^2 - Z^4", {"U"});
  CHECK(io::element_from_json(s, io::to_json(e)) == e);
  for (const auto& c : decide_isomorphism(s, s).certificates) CHECK(io::certificate_from_json(io::to_json(c)) == c);
  CHECK_THROWS_AS(io::element_from_json(s, io::json{{"coeffs", {{"x", "1"}}}}), Error);
  CHECK_THROWS_AS(io::surface_from_json(io::json{{"field", "Q"}, {"f", 3}, {"phi", "Z^2"}}), Error);
}
