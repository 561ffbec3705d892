#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dsurf/surface.hpp"

namespace dsurf {

/// Name of the exponential-map parameter.
inline constexpr const char* kParam = "U";
/// Name of the second parameter used by the cocycle check.
inline constexpr const char* kParam2 = "V";

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
  std::optional<std::string> witness;  ///< printed nonzero defect on failure
};

struct VerificationReport {
  std::vector<CheckResult> checks;
  bool passed() const;
  /// First failing check, or nullptr.
  const CheckResult* first_failure() const;
};

enum class MapStatus { Unverified, Verified, Refuted };

class IsoCertificate;

/// A candidate exponential map A -> A[U] given by generator images.
/// Optional auxiliary images extend it to A[aux] (e.g. v -> v - xU).
class ExpMap {
 public:
  ExpMap(SurfaceSpec spec, SurfaceElement image_x, SurfaceElement image_z, SurfaceElement image_y,
         std::map<std::string, SurfaceElement> aux_images = {});

  const SurfaceSpec& spec() const noexcept { return spec_; }
  const SurfaceElement& image_x() const noexcept { return x_; }
  const SurfaceElement& image_z() const noexcept { return z_; }
  const SurfaceElement& image_y() const noexcept { return y_; }
  const std::map<std::string, SurfaceElement>& aux_images() const noexcept { return aux_; }
  MapStatus status() const noexcept { return status_; }
  const std::string& refutation() const noexcept { return reason_; }

  /// Runs the well-definedness and both axiom checks and records the outcome.
  VerificationReport verify();
  /// Some generator image involves U.
  bool nontrivial() const;

  /// Same images with extra auxiliary images; the result is unverified.
  ExpMap extended(std::map<std::string, SurfaceElement> aux_images) const;

  /// Applies the map without requiring verification.
  SurfaceElement apply_unchecked(const SurfaceElement& e) const;

 private:
  SurfaceSpec spec_;
  SurfaceElement x_, z_, y_;
  std::map<std::string, SurfaceElement> aux_;
  MapStatus status_ = MapStatus::Unverified;
  std::string reason_;
};

/// x -> x, z -> z + f(x)U, y -> y + (P(x, z + f(x)U) - P(x, z)) / f(x); verified.
ExpMap canonical_expmap(const SurfaceSpec& spec);

/// Runs the checks (W), (A1), (A2) on a copy of m.
VerificationReport verify_expmap(const ExpMap& m);

/// Throws Unverified unless m is Verified.
SurfaceElement apply(const ExpMap& m, const SurfaceElement& e);
/// U-degree of apply(m, e); nullopt for zero.
std::optional<int> phi_degree(const ExpMap& m, const SurfaceElement& e);
/// Coefficient of U^i in apply(m, e).
SurfaceElement derivation_coeff(const ExpMap& m, const SurfaceElement& e, unsigned i);
bool is_invariant(const ExpMap& m, const SurfaceElement& e);

/// T^-1 o m o T for an automorphism certificate T of m's surface; verified.
ExpMap conjugate(const ExpMap& m, const IsoCertificate& cert);

}  // namespace dsurf
