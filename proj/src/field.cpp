#include "dsurf/field.hpp"

#include <charconv>

namespace dsurf {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Parse: return "Parse";
    case ErrorKind::UnknownVariable: return "UnknownVariable";
    case ErrorKind::FieldMismatch: return "FieldMismatch";
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::NonInvertible: return "NonInvertible";
    case ErrorKind::NotPrime: return "NotPrime";
    case ErrorKind::NotMonic: return "NotMonic";
    case ErrorKind::DegreeTooSmall: return "DegreeTooSmall";
    case ErrorKind::NotUnivariate: return "NotUnivariate";
    case ErrorKind::ZeroInput: return "ZeroInput";
    case ErrorKind::ConstantInputs: return "ConstantInputs";
    case ErrorKind::ComaximalityFails: return "ComaximalityFails";
    case ErrorKind::NotDivisible: return "NotDivisible";
    case ErrorKind::Precondition: return "Precondition";
    case ErrorKind::SpecMismatch: return "SpecMismatch";
    case ErrorKind::Unverified: return "Unverified";
    case ErrorKind::SearchOverflow: return "SearchOverflow";
    case ErrorKind::Undecided: return "Undecided";
    case ErrorKind::ExponentOverflow: return "ExponentOverflow";
    case ErrorKind::Internal: return "Internal";
  }
  return "Unknown";
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::uint64_t mod_pow(std::uint64_t base, std::uint64_t e, std::uint64_t p) {
  std::uint64_t result = 1 % p;
  base %= p;
  while (e) {
    if (e & 1) result = result * base % p;
    base = base * base % p;
    e >>= 1;
  }
  return result;
}

std::uint64_t mod_inverse(std::uint64_t a, std::uint64_t p) {
  std::int64_t t = 0, new_t = 1;
  std::int64_t r = static_cast<std::int64_t>(p), new_r = static_cast<std::int64_t>(a % p);
  while (new_r != 0) {
    std::int64_t q = r / new_r;
    std::int64_t tmp = t - q * new_t;
    t = new_t;
    new_t = tmp;
    tmp = r - q * new_r;
    r = new_r;
    new_r = tmp;
  }
  if (r != 1) throw Error(ErrorKind::DivisionByZero, "residue is not invertible");
  if (t < 0) t += static_cast<std::int64_t>(p);
  return static_cast<std::uint64_t>(t);
}

FieldSpec FieldSpec::prime(std::uint64_t p) {
  if (p >= (1ULL << 31))
    throw Error(ErrorKind::NotPrime, "modulus " + std::to_string(p) + " exceeds 2^31");
  if (!is_prime(p)) throw Error(ErrorKind::NotPrime, std::to_string(p) + " is not prime");
  return FieldSpec(Kind::PrimeField, static_cast<std::uint32_t>(p));
}

FieldSpec FieldSpec::parse(std::string_view tag) {
  if (tag == "Q") return rationals();
  if (tag.size() >= 2 && tag[0] == 'F') {
    std::uint64_t p = 0;
    auto digits = tag.substr(1);
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), p);
    if (ec == std::errc() && ptr == digits.data() + digits.size()) return prime(p);
  }
  throw Error(ErrorKind::Parse, "bad field tag '" + std::string(tag) + "' (expected Q or F<p>)");
}

std::string FieldSpec::tag() const {
  return is_rationals() ? std::string("Q") : "F" + std::to_string(modulus_);
}

namespace {

std::uint64_t reduce(const mpz_class& v, std::uint32_t p) {
  mpz_class r = v % p;
  if (r < 0) r += p;
  return r.get_ui();
}

}  // namespace

Scalar::Scalar(FieldSpec field, long value) : field_(field) {
  if (field.is_rationals()) {
    value_ = mpq_class(value);
  } else {
    long p = field.modulus();
    long r = value % p;
    if (r < 0) r += p;
    value_ = static_cast<std::uint64_t>(r);
  }
}

Scalar::Scalar(FieldSpec field, const mpz_class& value) : field_(field) {
  if (field.is_rationals())
    value_ = mpq_class(value);
  else
    value_ = reduce(value, field.modulus());
}

Scalar::Scalar(FieldSpec field, const mpq_class& value) : field_(field) {
  if (field.is_rationals()) {
    mpq_class q = value;
    q.canonicalize();
    value_ = std::move(q);
    return;
  }
  std::uint64_t den = reduce(value.get_den(), field.modulus());
  if (den == 0)
    throw Error(ErrorKind::NonInvertible,
                "denominator " + value.get_den().get_str() + " vanishes in " + field.tag());
  std::uint64_t num = reduce(value.get_num(), field.modulus());
  value_ = num * mod_inverse(den, field.modulus()) % field.modulus();
}

Scalar Scalar::parse(FieldSpec field, std::string_view text) {
  std::string s(text);
  mpq_class q;
  if (s.empty() || q.set_str(s, 10) != 0)
    throw Error(ErrorKind::Parse, "bad scalar literal '" + s + "'");
  if (q.get_den() == 0) throw Error(ErrorKind::DivisionByZero, "zero denominator in '" + s + "'");
  q.canonicalize();
  return Scalar(field, q);
}

bool Scalar::is_zero() const {
  if (auto* r = std::get_if<std::uint64_t>(&value_)) return *r == 0;
  return std::get<mpq_class>(value_) == 0;
}

bool Scalar::is_one() const {
  if (auto* r = std::get_if<std::uint64_t>(&value_)) return *r == 1 % field_.modulus();
  return std::get<mpq_class>(value_) == 1;
}

const mpq_class& Scalar::rational() const {
  if (!field_.is_rationals()) throw Error(ErrorKind::FieldMismatch, "not a rational scalar");
  return std::get<mpq_class>(value_);
}

std::uint64_t Scalar::residue() const {
  if (!field_.is_prime_field()) throw Error(ErrorKind::FieldMismatch, "not a prime-field scalar");
  return std::get<std::uint64_t>(value_);
}

void Scalar::check_same_field(const Scalar& other) const {
  if (!(field_ == other.field_))
    throw Error(ErrorKind::FieldMismatch,
                "scalar field mismatch: " + field_.tag() + " vs " + other.field_.tag());
}

Scalar Scalar::operator-() const {
  Scalar r = *this;
  if (auto* v = std::get_if<std::uint64_t>(&r.value_)) {
    if (*v) *v = field_.modulus() - *v;
  } else {
    auto& q = std::get<mpq_class>(r.value_);
    q = -q;
  }
  return r;
}

Scalar& Scalar::operator+=(const Scalar& other) {
  check_same_field(other);
  if (auto* v = std::get_if<std::uint64_t>(&value_))
    *v = (*v + std::get<std::uint64_t>(other.value_)) % field_.modulus();
  else
    std::get<mpq_class>(value_) += std::get<mpq_class>(other.value_);
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& other) {
  check_same_field(other);
  if (auto* v = std::get_if<std::uint64_t>(&value_))
    *v = (*v + field_.modulus() - std::get<std::uint64_t>(other.value_)) % field_.modulus();
  else
    std::get<mpq_class>(value_) -= std::get<mpq_class>(other.value_);
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& other) {
  check_same_field(other);
  if (auto* v = std::get_if<std::uint64_t>(&value_))
    *v = (*v * std::get<std::uint64_t>(other.value_)) % field_.modulus();
  else
    std::get<mpq_class>(value_) *= std::get<mpq_class>(other.value_);
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& other) {
  check_same_field(other);
  return *this *= other.inverse();
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw Error(ErrorKind::DivisionByZero, "division by zero in " + field_.tag());
  Scalar r = *this;
  if (auto* v = std::get_if<std::uint64_t>(&r.value_)) {
    *v = mod_inverse(*v, field_.modulus());
  } else {
    auto& q = std::get<mpq_class>(r.value_);
    q = 1 / q;
  }
  return r;
}

Scalar Scalar::pow(std::uint64_t e) const {
  Scalar result = one(field_);
  Scalar base = *this;
  while (e) {
    if (e & 1) result *= base;
    e >>= 1;
    if (e) base *= base;
  }
  return result;
}

std::string Scalar::str() const {
  if (auto* v = std::get_if<std::uint64_t>(&value_)) return std::to_string(*v);
  return std::get<mpq_class>(value_).get_str();
}

bool operator==(const Scalar& a, const Scalar& b) {
  if (!(a.field_ == b.field_)) return false;
  return a.value_ == b.value_;
}

std::strong_ordering operator<=>(const Scalar& a, const Scalar& b) {
  a.check_same_field(b);
  if (auto* v = std::get_if<std::uint64_t>(&a.value_)) return *v <=> std::get<std::uint64_t>(b.value_);
  int c = cmp(std::get<mpq_class>(a.value_), std::get<mpq_class>(b.value_));
  return c < 0 ? std::strong_ordering::less
               : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

}  // namespace dsurf
