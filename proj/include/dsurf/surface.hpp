#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dsurf/algebra.hpp"

namespace dsurf {

/// The pair (f, P) defining A = K[X,Y,Z]/(f(X)Y - P(X,Z)).
/// f lives over [X], P over [X, Z].
class SurfaceSpec {
 public:
  /// Validates f monic of degree r >= 2 and P monic in Z of degree d >= 2.
  /// Inputs may use any variable lists as long as they only involve X (and Z).
  static SurfaceSpec make(FieldSpec field, const Poly& f, const Poly& P);
  /// Parses f and P from text.
  static SurfaceSpec parse(FieldSpec field, std::string_view f, std::string_view P);

  const FieldSpec& field() const noexcept { return field_; }
  const Poly& f() const noexcept { return f_; }
  const Poly& P() const noexcept { return P_; }
  int r() const noexcept { return r_; }
  int d() const noexcept { return d_; }
  /// Multiplicity of 0 as a root of f.
  int n() const noexcept { return n_; }
  /// c_i(X), the coefficient of Z^i in P, over [X].
  Poly c(int i) const;

  std::string str() const;

  friend bool operator==(const SurfaceSpec& a, const SurfaceSpec& b) {
    return a.field_ == b.field_ && a.f_ == b.f_ && a.P_ == b.P_;
  }

 private:
  SurfaceSpec(FieldSpec field, Poly f, Poly P);

  FieldSpec field_;
  Poly f_;
  Poly P_;
  int r_ = 0;
  int d_ = 0;
  int n_ = 0;
};

inline const VarList& x_vars() {
  static const VarList v{"X"};
  return v;
}
inline const VarList& xz_vars() {
  static const VarList v{"X", "Z"};
  return v;
}

/// Variables of raw ring polynomials: X, Y, Z followed by `aux`.
VarList raw_vars(const VarList& aux);
/// Variables of normal-form coefficients: X, Z followed by `aux`.
VarList coeff_vars(const VarList& aux);
/// Sorted, duplicate-free union.
VarList aux_union(const VarList& a, const VarList& b);

enum class Reduction { Division, HighestFirst, LowestFirst };

/// Element of A (or of A[aux...]) in normal form sum g_i(x, z, aux) y^i
/// with deg_Z g_i <= d - 1.
class SurfaceElement {
 public:
  SurfaceElement(SurfaceSpec spec, VarList aux = {});

  static SurfaceElement x(const SurfaceSpec& spec, VarList aux = {});
  static SurfaceElement y(const SurfaceSpec& spec, VarList aux = {});
  static SurfaceElement z(const SurfaceSpec& spec, VarList aux = {});
  static SurfaceElement aux_var(const SurfaceSpec& spec, std::string_view name);
  static SurfaceElement constant(const SurfaceSpec& spec, const Scalar& c, VarList aux = {});
  /// Reads g(X, Z, aux) as an element (normalizing it).
  static SurfaceElement from_xz(const SurfaceSpec& spec, const Poly& g);
  /// Parses an expression in X, Y, Z and the given auxiliary names.
  static SurfaceElement parse(const SurfaceSpec& spec, std::string_view text, VarList aux = {});

  const SurfaceSpec& spec() const noexcept { return spec_; }
  const VarList& aux() const noexcept { return aux_; }
  const std::map<unsigned, Poly>& coeffs() const noexcept { return coeffs_; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  /// True when some coefficient involves an auxiliary variable.
  bool uses_aux() const;
  bool uses(std::string_view aux_name) const;

  /// Sum g_i Y^i over raw_vars(aux()).
  Poly raw() const;
  /// Re-expresses over a larger auxiliary list.
  SurfaceElement with_aux(const VarList& aux) const;
  /// Drops auxiliary names not in use.
  SurfaceElement trimmed() const;

  SurfaceElement operator-() const;
  friend SurfaceElement operator+(const SurfaceElement& a, const SurfaceElement& b);
  friend SurfaceElement operator-(const SurfaceElement& a, const SurfaceElement& b);
  friend SurfaceElement operator*(const SurfaceElement& a, const SurfaceElement& b);
  SurfaceElement scaled(const Scalar& c) const;
  SurfaceElement pow(unsigned e) const;

  /// Substitutes a scalar for an auxiliary variable and drops it.
  SurfaceElement evaluate_aux(std::string_view name, const Scalar& value) const;
  /// Coefficient of name^k; the result no longer carries `name`.
  SurfaceElement aux_coefficient(std::string_view name, unsigned k) const;
  int aux_degree(std::string_view name) const;

  /// Printed with lowercase generators x, y, z.
  std::string str() const;

  friend bool operator==(const SurfaceElement& a, const SurfaceElement& b);

 private:
  friend SurfaceElement normal_form(const Poly&, const SurfaceSpec&, Reduction);
  friend SurfaceElement make_element(const SurfaceSpec&, VarList, std::map<unsigned, Poly>);

  SurfaceSpec spec_;
  VarList aux_;
  std::map<unsigned, Poly> coeffs_;
};

/// Reduces a raw polynomial in X, Y, Z and auxiliary variables. Variables
/// other than X, Y, Z become auxiliary variables of the result.
SurfaceElement normal_form(const Poly& raw, const SurfaceSpec& spec,
                           Reduction method = Reduction::Division);

/// Images of the generators of a surface ring (and optionally of auxiliary
/// variables) in some target ring. Unlisted auxiliary variables map to themselves.
struct GeneratorImages {
  SurfaceElement x;
  SurfaceElement y;
  SurfaceElement z;
  std::map<std::string, SurfaceElement> aux;
};

/// Applies the algebra map determined by `images` to `e`. All images must
/// live over the same target spec.
SurfaceElement map_generators(const SurfaceElement& e, const GeneratorImages& images);

/// Weighted degree with x:0, z:1, y:d; nullopt for zero. Throws Precondition
/// when auxiliary variables occur.
std::optional<int> filtration_deg(const SurfaceElement& e);

/// The spec (f, Z^d).
SurfaceSpec graded_surface(const SurfaceSpec& spec);

/// Top filtration-degree part, read in graded_surface(spec). Throws ZeroInput.
SurfaceElement leading_form(const SurfaceElement& e);

/// Quotient by x. Throws Precondition when f(0) != 0, NotDivisible otherwise.
SurfaceElement divide_by_x(const SurfaceElement& e);

enum class FiberKind { GenericLine, ExceptionalFiber, NonReducedFiber };
const char* to_string(FiberKind kind);

struct FiberReport {
  Scalar point;
  Scalar f_value;
  FiberKind kind;
  Factorization factors;  ///< of P(point, Z), over [X, Z]
  int closure_lines = 0;  ///< distinct lines over the closure (d for exceptional fibers)
  std::string note;
};

FiberReport fiber(const SurfaceSpec& spec, const Scalar& point);

struct SmoothnessReport {
  bool smooth = false;
  Poly resultant;               ///< Res_Z(P, P_Z) over [X, Z]
  Poly gcd;                     ///< gcd(f, resultant) over [X, Z]
  std::optional<Poly> witness;  ///< radical of the gcd when not smooth
};

SmoothnessReport smoothness_check(const SurfaceSpec& spec);

}  // namespace dsurf
