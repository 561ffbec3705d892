#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <variant>

#include <gmpxx.h>

#include "dsurf/error.hpp"

namespace dsurf {

/// The coefficient field: either Q or F_p for a prime p < 2^31.
class FieldSpec {
 public:
  enum class Kind { Rationals, PrimeField };

  static FieldSpec rationals() { return FieldSpec(Kind::Rationals, 0); }
  /// Throws NotPrime unless p is prime (checked by trial division).
  static FieldSpec prime(std::uint64_t p);
  /// Accepts the tags "Q" and "F<p>", e.g. "F2".
  static FieldSpec parse(std::string_view tag);

  Kind kind() const noexcept { return kind_; }
  bool is_rationals() const noexcept { return kind_ == Kind::Rationals; }
  bool is_prime_field() const noexcept { return kind_ == Kind::PrimeField; }
  std::uint32_t modulus() const noexcept { return modulus_; }
  std::uint32_t characteristic() const noexcept { return modulus_; }
  std::string tag() const;

  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;

 private:
  FieldSpec(Kind kind, std::uint32_t modulus) : kind_(kind), modulus_(modulus) {}

  Kind kind_;
  std::uint32_t modulus_;  // 0 for Q
};

bool is_prime(std::uint64_t n);

/// An exact element of a FieldSpec. Rationals are kept canonical (reduced,
/// positive denominator); residues live in [0, p).
class Scalar {
 public:
  Scalar(FieldSpec field, long value);
  Scalar(FieldSpec field, const mpz_class& value);
  /// Throws NonInvertible if the denominator vanishes mod p.
  Scalar(FieldSpec field, const mpq_class& value);

  static Scalar zero(FieldSpec field) { return Scalar(field, 0L); }
  static Scalar one(FieldSpec field) { return Scalar(field, 1L); }
  /// Parses "n", "-n", "a/b" in the given field.
  static Scalar parse(FieldSpec field, std::string_view text);

  const FieldSpec& field() const noexcept { return field_; }
  bool is_zero() const;
  bool is_one() const;

  /// Only valid over Q.
  const mpq_class& rational() const;
  /// Only valid over F_p.
  std::uint64_t residue() const;

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& other);
  Scalar& operator-=(const Scalar& other);
  Scalar& operator*=(const Scalar& other);
  Scalar& operator/=(const Scalar& other);
  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

  /// Throws DivisionByZero for zero.
  Scalar inverse() const;
  Scalar pow(std::uint64_t e) const;

  std::string str() const;

  friend bool operator==(const Scalar& a, const Scalar& b);
  /// Total order: numeric order over Q, residue order over F_p.
  friend std::strong_ordering operator<=>(const Scalar& a, const Scalar& b);

 private:
  void check_same_field(const Scalar& other) const;

  FieldSpec field_;
  std::variant<std::uint64_t, mpq_class> value_;
};

std::uint64_t mod_inverse(std::uint64_t a, std::uint64_t p);
std::uint64_t mod_pow(std::uint64_t base, std::uint64_t e, std::uint64_t p);

}  // namespace dsurf
