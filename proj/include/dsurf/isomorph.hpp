#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dsurf/expmap.hpp"
#include "dsurf/surface.hpp"

namespace dsurf {

/// Data of an isomorphism T: A_source -> A_target with
///   T(x) = lambda*x + mu, T(z) = gamma*z + delta(x), T(y) = u^-1 (gamma^d y + theta(x, z)).
class IsoCertificate {
 public:
  IsoCertificate(SurfaceSpec source, SurfaceSpec target, Scalar lambda, Scalar mu, Scalar gamma,
                 Poly delta, Scalar u, Poly theta);

  const SurfaceSpec& source() const noexcept { return source_; }
  const SurfaceSpec& target() const noexcept { return target_; }
  const Scalar& lambda() const noexcept { return lambda_; }
  const Scalar& mu() const noexcept { return mu_; }
  const Scalar& gamma() const noexcept { return gamma_; }
  const Poly& delta() const noexcept { return delta_; }  ///< over [X]
  const Scalar& u() const noexcept { return u_; }
  const Poly& theta() const noexcept { return theta_; }  ///< over [X, Z]

  /// Images of the source generators in the target ring.
  GeneratorImages images() const;
  std::string str() const;

  friend bool operator==(const IsoCertificate& a, const IsoCertificate& b);

 private:
  SurfaceSpec source_, target_;
  Scalar lambda_, mu_, gamma_;
  Poly delta_;
  Scalar u_;
  Poly theta_;
};

/// Orders certificates by (lambda, mu, gamma, printed delta).
bool certificate_less(const IsoCertificate& a, const IsoCertificate& b);

/// Completes (lambda, mu, gamma, delta) to a certificate: reduces delta mod f2,
/// sets u = lambda^r and recovers theta by division. Returns nullopt when the
/// data does not define an isomorphism.
std::optional<IsoCertificate> complete_certificate(const SurfaceSpec& source, const SurfaceSpec& target,
                                                   const Scalar& lambda, const Scalar& mu,
                                                   const Scalar& gamma, const Poly& delta);

/// Checks units, d1 = d2, f1(lambda X + mu) = u f2, u = lambda^r, the congruence
/// P1(lambda X + mu, gamma Z + delta) = gamma^d P2 + f2 theta, and the degree normalization.
VerificationReport verify_iso(const IsoCertificate& cert);

/// outer o inner, for inner: s1 -> s2 and outer: s2 -> s3.
IsoCertificate compose(const IsoCertificate& outer, const IsoCertificate& inner);
IsoCertificate invert(const IsoCertificate& cert);
/// The identity automorphism of spec.
IsoCertificate identity_certificate(const SurfaceSpec& spec);

struct Fingerprint {
  int d = 0;
  int r = 0;
  std::vector<unsigned> multiplicities;               ///< sorted
  std::vector<int> degrees;                           ///< sorted
  std::vector<std::pair<unsigned, int>> profile;      ///< sorted (multiplicity, degree) pairs

  friend bool operator==(const Fingerprint&, const Fingerprint&) = default;
  std::string str() const;
};

Fingerprint fingerprint(const SurfaceSpec& spec);

enum class ObstructionKind { ZDegreeMismatch, FDegreeMismatch, MultiplicityMultisetMismatch, NoAffineMatch, NoGammaDelta };
const char* to_string(ObstructionKind kind);

struct Obstruction {
  ObstructionKind kind;
  std::string condition;  ///< the necessary condition that fails
  std::string detail;
};

struct DecideOptions {
  std::uint64_t cap = 10'000'000;  ///< bound on brute-force tuples
  std::uint64_t seed = 0;
  int height = 12;                 ///< search height for a free lambda over Q
};

struct IsoDecision {
  std::vector<IsoCertificate> certificates;
  std::optional<Obstruction> obstruction;
  /// Set over Q when a parameter ranges over an infinite set; the list then
  /// holds representatives only.
  bool family = false;
  std::string note;

  bool isomorphic() const { return !certificates.empty(); }
};

/// Decides K-isomorphism of two surfaces over the same field. Throws
/// FieldMismatch, SearchOverflow, Undecided.
IsoDecision decide_isomorphism(const SurfaceSpec& s1, const SurfaceSpec& s2, const DecideOptions& opts = {});

struct AutomorphismReport {
  IsoDecision decision;
  /// f = X^n g with n >= 2 and no linear factor of g of multiplicity n.
  bool fixes_origin_hypothesis = false;
  std::string hypothesis_detail;
};

/// decide_isomorphism(spec, spec); when the hypothesis holds, every certificate
/// is checked to have mu = 0 (Internal error otherwise).
AutomorphismReport automorphisms(const SurfaceSpec& spec, const DecideOptions& opts = {});

}  // namespace dsurf
