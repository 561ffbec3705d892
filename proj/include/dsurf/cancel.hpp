#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dsurf/expmap.hpp"
#include "dsurf/isomorph.hpp"
#include "dsurf/surface.hpp"

namespace dsurf {

/// Name of the adjoined polynomial variable.
inline constexpr const char* kStableVar = "v";

struct HypothesisReport {
  int n = 0;
  bool double_root = false;  ///< n >= 2
  bool comaximal = false;    ///< Res_Z(P, P_Z) is a nonzero constant
  Poly resultant;            ///< over [X, Z]; zero when P_Z = 0
  std::string detail;

  bool passed() const { return double_root && comaximal; }
};

HypothesisReport check_hypotheses(const SurfaceSpec& spec);

/// Data realizing A[v] = E[w] with E = K[x, theta, s] isomorphic to B, where
/// A = (f, P), f = X^n g, and B = (h, P), h = f / X.
struct StableIsoCertificate {
  SurfaceSpec specA;
  SurfaceSpec specB;
  Poly h;                ///< over [X]
  SurfaceElement theta;  ///< h(x) v + z in A[v]
  SurfaceElement corr;
  SurfaceElement s;
  Poly a;                ///< over [X, Z], multiplies P_Z
  Poly b;                ///< over [X, Z], multiplies P
  SurfaceElement w;
};

/// Throws Precondition / ComaximalityFails when the hypotheses fail and
/// DegreeTooSmall when deg h < 2.
StableIsoCertificate build_stable_iso(const SurfaceSpec& specA);

/// corr obtained by dividing P(X, Z + hv) - P - hv P_Z by hX, as an element of A[v].
SurfaceElement correction_by_division(const SurfaceSpec& specA);

/// q(x, theta) for q over [X, Z].
SurfaceElement eval_at_theta(const Poly& q, const SurfaceElement& theta);

/// The canonical exponential map extended by v -> v - xU, verified.
ExpMap extended_canonical_map(const SurfaceSpec& spec);

/// Runs V1 to V7; recomputes nothing from the builder beyond the stored data.
VerificationReport verify_stable_iso(const StableIsoCertificate& cert);

/// Steps the verifier relies on without checking them.
std::vector<std::string> unchecked_steps();

struct PairVerdict {
  int n1 = 0;
  int n2 = 0;
  bool non_isomorphic = false;
  std::optional<Obstruction> obstruction;
};

struct ChainLink {
  int n = 0;  ///< A_n is linked to A_{n-1}
  StableIsoCertificate cert;
  VerificationReport report;
};

struct FamilyReport {
  FieldSpec field;
  Poly g;
  Poly P;
  std::vector<int> exponents;
  std::vector<SurfaceSpec> surfaces;
  std::vector<Fingerprint> fingerprints;
  std::vector<PairVerdict> pairs;
  std::vector<ChainLink> chain;

  bool passed() const;
};

/// Builds A_n = (X^n g, P) for n in [n_from, n_to], refutes isomorphism for
/// every pair, and links consecutive members by verified stable isomorphisms.
FamilyReport sigma_family(const Poly& g, const Poly& P, int n_from, int n_to, const DecideOptions& opts = {});

}  // namespace dsurf
