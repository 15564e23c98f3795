#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <gmpxx.h>

#include "zclass/error.hpp"

namespace zclass {

using BigInt = mpz_class;
using Rational = mpq_class;

/// The scalar field: either F_p for a prime p < 2^31, or the rationals.
class FieldSpec {
 public:
  enum class Kind : std::uint8_t { prime, rationals };

  /// Defaults to Q so that value types holding a spec stay default-constructible.
  FieldSpec() = default;

  static FieldSpec prime(std::uint64_t p);
  static FieldSpec rationals() { return FieldSpec(); }

  /// Accepts "Q" or "F<p>" (e.g. "F5").
  static FieldSpec parse(std::string_view text);

  Kind kind() const noexcept { return kind_; }
  bool is_prime() const noexcept { return kind_ == Kind::prime; }
  bool is_rationals() const noexcept { return kind_ == Kind::rationals; }

  /// p for F_p, 0 for Q.
  std::uint32_t characteristic() const noexcept { return p_; }

  /// Number of elements; throws NotEnumerable for Q.
  std::uint64_t order() const;

  std::string to_string() const;

  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;
  friend auto operator<=>(const FieldSpec&, const FieldSpec&) = default;

 private:
  FieldSpec(Kind kind, std::uint32_t p) : kind_(kind), p_(p) {}

  Kind kind_ = Kind::rationals;
  std::uint32_t p_ = 0;
};

bool is_prime(std::uint64_t n);

/// Throws FieldMismatch unless both specs agree.
void require_same_field(const FieldSpec& a, const FieldSpec& b);

/// Exact scalar. Residues are kept canonical in [0, p); rationals are always
/// in lowest terms with a positive denominator (GMP canonicalizes).
class FieldElement {
 public:
  FieldElement() : FieldElement(FieldSpec::rationals(), 0) {}
  FieldElement(const FieldSpec& spec, std::int64_t value);
  FieldElement(const FieldSpec& spec, const Rational& value);

  static FieldElement zero(const FieldSpec& spec) { return FieldElement(spec, 0); }
  static FieldElement one(const FieldSpec& spec) { return FieldElement(spec, 1); }

  /// Decimal residue ("3", "-2") or "num/den". Fractions over F_p are
  /// interpreted as num * den^{-1}.
  static FieldElement parse(const FieldSpec& spec, std::string_view text);

  const FieldSpec& spec() const noexcept { return spec_; }
  bool is_zero() const;
  bool is_one() const;

  std::uint32_t residue() const;
  const Rational& rational() const;

  std::string to_string() const;

  FieldElement operator-() const;
  FieldElement& operator+=(const FieldElement& rhs);
  FieldElement& operator-=(const FieldElement& rhs);
  FieldElement& operator*=(const FieldElement& rhs);
  FieldElement& operator/=(const FieldElement& rhs);

  friend FieldElement operator+(FieldElement a, const FieldElement& b) { return a += b; }
  friend FieldElement operator-(FieldElement a, const FieldElement& b) { return a -= b; }
  friend FieldElement operator*(FieldElement a, const FieldElement& b) { return a *= b; }
  friend FieldElement operator/(FieldElement a, const FieldElement& b) { return a /= b; }

  friend bool operator==(const FieldElement& a, const FieldElement& b);

 private:
  FieldSpec spec_;
  std::variant<std::uint32_t, Rational> value_;
};

FieldElement add(const FieldElement& x, const FieldElement& y);
FieldElement mul(const FieldElement& x, const FieldElement& y);
FieldElement inv(const FieldElement& x);
FieldElement pow(const FieldElement& x, std::uint64_t e);

/// The residues 0, 1, ..., p-1 in order.
std::vector<FieldElement> enumerate_field(const FieldSpec& spec);

namespace modp {

inline std::uint32_t add(std::uint32_t a, std::uint32_t b, std::uint32_t p) {
  std::uint64_t s = std::uint64_t(a) + b;
  return std::uint32_t(s >= p ? s - p : s);
}
inline std::uint32_t sub(std::uint32_t a, std::uint32_t b, std::uint32_t p) {
  return a >= b ? a - b : a + (p - b);
}
inline std::uint32_t mul(std::uint32_t a, std::uint32_t b, std::uint32_t p) {
  return std::uint32_t((std::uint64_t(a) * b) % p);
}
inline std::uint32_t neg(std::uint32_t a, std::uint32_t p) { return a == 0 ? 0 : p - a; }
std::uint32_t pow(std::uint32_t a, std::uint64_t e, std::uint32_t p);
/// Throws DivisionByZero for a == 0.
std::uint32_t inv(std::uint32_t a, std::uint32_t p);
std::uint32_t reduce(std::int64_t v, std::uint32_t p);
/// Multiplicative order of a nonzero residue.
std::uint64_t order(std::uint32_t a, std::uint32_t p);
/// Smallest generator of F_p^x.
std::uint32_t primitive_root(std::uint32_t p);

}  // namespace modp

}  // namespace zclass
