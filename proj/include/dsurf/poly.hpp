#pragma once

#include <cstdint>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dsurf/field.hpp"

namespace dsurf {

/// Degree of the zero polynomial.
inline constexpr int kNegInf = std::numeric_limits<int>::min();

using Exponents = std::vector<std::uint32_t>;
using VarList = std::vector<std::string>;

/// Graded-lexicographic order, largest first.
struct GrlexGreater {
  bool operator()(const Exponents& a, const Exponents& b) const;
};

using TermMap = std::map<Exponents, Scalar, GrlexGreater>;

/// Sparse multivariate polynomial over a FieldSpec with an ordered variable list.
/// No zero coefficients are ever stored. Binary operations require identical
/// fields and variable lists; use with_vars() to re-embed first.
class Poly {
 public:
  Poly(FieldSpec field, VarList vars);

  static Poly constant(FieldSpec field, VarList vars, const Scalar& c);
  static Poly constant(FieldSpec field, VarList vars, long c);
  static Poly variable(FieldSpec field, VarList vars, std::string_view name);
  static Poly monomial(FieldSpec field, VarList vars, Exponents exps, const Scalar& c);

  const FieldSpec& field() const noexcept { return field_; }
  const VarList& vars() const noexcept { return *vars_; }
  std::size_t nvars() const noexcept { return vars_->size(); }
  std::optional<std::size_t> index_of(std::string_view name) const;
  /// Throws UnknownVariable.
  std::size_t require_index(std::string_view name) const;
  const TermMap& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }

  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_constant() const;
  Scalar constant_term() const;
  /// Coefficient of the given exponent vector (zero if absent).
  Scalar coeff(const Exponents& exps) const;

  int degree(std::string_view name) const;
  int degree(std::size_t index) const;
  int total_degree() const;
  /// True when the variable occurs with positive exponent.
  bool uses(std::string_view name) const;
  /// Leading term in graded-lex order. Requires nonzero.
  const std::pair<const Exponents, Scalar>& leading_term() const;

  /// Adds c * monomial into this polynomial.
  void add_term(const Exponents& exps, const Scalar& c);

  Poly operator-() const;
  Poly& operator+=(const Poly& other);
  Poly& operator-=(const Poly& other);
  Poly& operator*=(const Poly& other);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  Poly scaled(const Scalar& c) const;
  Poly pow(unsigned e) const;

  Poly derivative(std::string_view name) const;
  /// The coefficient of name^k, as a polynomial over the same variable list.
  Poly coefficient(std::string_view name, unsigned k) const;
  /// Groups terms by the exponent of `name`; values do not contain `name`.
  std::map<unsigned, Poly> collect(std::string_view name) const;
  /// Multiplies by name^k.
  Poly shifted(std::string_view name, unsigned k) const;

  /// Re-expresses over another variable list. Throws UnknownVariable if a
  /// variable in use is missing from `vars`.
  Poly with_vars(const VarList& vars) const;
  /// Canonical graded-lex rendering with explicit `*` and `^`.
  std::string str() const;

  friend bool operator==(const Poly& a, const Poly& b);

 private:
  void check_compatible(const Poly& other) const;

  FieldSpec field_;
  std::shared_ptr<const VarList> vars_;
  TermMap terms_;
};

/// Simultaneous substitution. All binding values must share one field and
/// variable list W; unbound variables of `p` must also occur in W. The result
/// lives over W (over p's own variables when `bindings` is empty).
Poly substitute(const Poly& p, const std::map<std::string, Poly>& bindings);

/// Substitutes a scalar for one variable; the result keeps p's variable list.
Poly evaluate(const Poly& p, std::string_view name, const Scalar& value);

/// Returns q with a = b*q, or nullopt when b does not divide a.
/// Throws DivisionByZero for b = 0.
std::optional<Poly> exact_div(const Poly& a, const Poly& b);

/// Division by a polynomial monic in `name`: a = q*m + r with deg_name r < deg_name m.
std::pair<Poly, Poly> divrem_monic(const Poly& a, const Poly& m, std::string_view name);

/// Union of two variable lists, keeping the order of `a` then new names of `b`.
VarList merge_vars(const VarList& a, const VarList& b);

}  // namespace dsurf
