#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "dsurf/field.hpp"
#include "dsurf/parse.hpp"
#include "dsurf/poly.hpp"

namespace dsurf {

/// Monic gcd of two univariate polynomials in the same variable; gcd(0,0) = 0.
/// The result uses a's variable list. Throws NotUnivariate.
Poly gcd_univariate(const Poly& a, const Poly& b);

/// Sylvester resultant eliminating `var`, computed on the actual degrees of
/// the inputs. The result lives over p's variable list and does not use `var`.
/// Returns 0 when either input is zero. Throws ConstantInputs when neither
/// input has positive degree in `var`.
Poly resultant_in(const Poly& p, const Poly& q, std::string_view var);

/// The Sylvester matrix of p and q with respect to `var` (rows: deg q shifts
/// of p, then deg p shifts of q; columns from var^(m+n-1) down to var^0).
std::vector<std::vector<Poly>> sylvester_matrix(const Poly& p, const Poly& q, std::string_view var);

struct BezoutPair {
  Poly a;  ///< multiplies P_Z
  Poly b;  ///< multiplies P
};

/// Solves a*Pz + b*P = 1 in K[X,Z] for P monic in `var` of degree >= 2.
/// Throws ComaximalityFails unless Res_var(P, Pz) is a nonzero constant.
/// The identity is checked by expansion before returning.
BezoutPair bezout_cofactors(const Poly& P, const Poly& Pz, std::string_view var = "Z");

/// True when Res_var(P, dP/dvar) is a nonzero constant, i.e. (P, P_var) = (1)
/// for P monic in `var`.
bool is_comaximal_with_derivative(const Poly& P, std::string_view var = "Z");

struct Factor {
  Poly poly;  ///< monic irreducible
  unsigned multiplicity;
};

struct Factorization {
  Scalar leading;
  std::vector<Factor> factors;  ///< sorted by degree, then by printed form

  Poly expand(const VarList& vars) const;
};

/// Complete factorization into monic irreducibles over Q or F_p. The seed
/// drives Cantor-Zassenhaus splitting for odd p; results do not depend on it.
/// Throws ZeroInput, NotUnivariate.
Factorization factor_univariate(const Poly& p, std::uint64_t seed = 0);

/// All roots in the coefficient field, repeated according to multiplicity,
/// in ascending order. Throws ZeroInput, NotUnivariate.
std::vector<Scalar> roots_in_field(const Poly& p);

/// Squarefree test for a nonzero univariate polynomial (over the closure).
bool is_squarefree(const Poly& p);

/// Product of the distinct monic irreducible factors.
Poly radical(const Poly& p);

/// Multiplicity of `root` as a root of the univariate polynomial p.
unsigned root_multiplicity(const Poly& p, const Scalar& root);

}  // namespace dsurf
