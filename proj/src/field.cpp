#include "zclass/field.hpp"

#include <charconv>
#include <limits>
#include <numeric>
#include <utility>

namespace zclass {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::field_mismatch: return "FieldMismatch";
    case ErrorCode::division_by_zero: return "DivisionByZero";
    case ErrorCode::not_prime: return "NotPrime";
    case ErrorCode::not_enumerable: return "NotEnumerable";
    case ErrorCode::dimension_mismatch: return "DimensionMismatch";
    case ErrorCode::not_invertible: return "NotInvertible";
    case ErrorCode::lower_triangular_position: return "LowerTriangularPosition";
    case ErrorCode::too_large: return "TooLarge";
    case ErrorCode::unsupported_dimension: return "UnsupportedDimension";
    case ErrorCode::not_unipotent: return "NotUnipotent";
    case ErrorCode::insufficient_eigenvalues: return "InsufficientEigenvalues";
    case ErrorCode::parse_error: return "ParseError";
    case ErrorCode::invalid_argument: return "InvalidArgument";
    case ErrorCode::internal_error: return "InternalError";
  }
  return "Unknown";
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

FieldSpec FieldSpec::prime(std::uint64_t p) {
  if (p >= (std::uint64_t(1) << 31))
    throw Error(ErrorCode::not_prime, "modulus " + std::to_string(p) + " exceeds 2^31");
  if (!zclass::is_prime(p)) throw Error(ErrorCode::not_prime, std::to_string(p) + " is not prime");
  return FieldSpec(Kind::prime, std::uint32_t(p));
}

FieldSpec FieldSpec::parse(std::string_view text) {
  if (text == "Q") return rationals();
  if (text.size() >= 2 && text[0] == 'F') {
    std::uint64_t p = 0;
    auto [ptr, ec] = std::from_chars(text.data() + 1, text.data() + text.size(), p);
    if (ec == std::errc() && ptr == text.data() + text.size()) return prime(p);
  }
  throw Error(ErrorCode::parse_error, "bad field spec '" + std::string(text) + "'");
}

std::uint64_t FieldSpec::order() const {
  if (!is_prime()) throw Error(ErrorCode::not_enumerable, "Q is infinite");
  return p_;
}

std::string FieldSpec::to_string() const {
  return is_prime() ? "F" + std::to_string(p_) : "Q";
}

void require_same_field(const FieldSpec& a, const FieldSpec& b) {
  if (a != b)
    throw Error(ErrorCode::field_mismatch, a.to_string() + " vs " + b.to_string());
}

namespace modp {

std::uint32_t pow(std::uint32_t a, std::uint64_t e, std::uint32_t p) {
  std::uint32_t result = 1 % p;
  while (e > 0) {
    if (e & 1) result = mul(result, a, p);
    a = mul(a, a, p);
    e >>= 1;
  }
  return result;
}

std::uint32_t inv(std::uint32_t a, std::uint32_t p) {
  if (a % p == 0) throw Error(ErrorCode::division_by_zero, "inverse of 0 in F" + std::to_string(p));
  // extended Euclid; p is prime so gcd is 1
  std::int64_t t = 0, new_t = 1, r = p, new_r = a;
  while (new_r != 0) {
    std::int64_t q = r / new_r;
    t = std::exchange(new_t, t - q * new_t);
    r = std::exchange(new_r, r - q * new_r);
  }
  return reduce(t, p);
}

std::uint32_t reduce(std::int64_t v, std::uint32_t p) {
  std::int64_t r = v % std::int64_t(p);
  return std::uint32_t(r < 0 ? r + p : r);
}

std::uint64_t order(std::uint32_t a, std::uint32_t p) {
  if (a % p == 0) throw Error(ErrorCode::division_by_zero, "order of 0");
  std::uint64_t ord = p - 1;
  std::vector<std::uint64_t> primes;
  std::uint64_t m = ord;
  for (std::uint64_t f = 2; f * f <= m; ++f) {
    if (m % f != 0) continue;
    primes.push_back(f);
    while (m % f == 0) m /= f;
  }
  if (m > 1) primes.push_back(m);
  // strip each prime factor of p-1 while a^(ord/f) == 1
  for (std::uint64_t f : primes)
    while (ord % f == 0 && pow(a, ord / f, p) == 1) ord /= f;
  return ord;
}

std::uint32_t primitive_root(std::uint32_t p) {
  if (p == 2) return 1;
  for (std::uint32_t g = 2; g < p; ++g)
    if (order(g, p) == p - 1) return g;
  throw Error(ErrorCode::internal_error, "no primitive root mod " + std::to_string(p));
}

}  // namespace modp

FieldElement::FieldElement(const FieldSpec& spec, std::int64_t value) : spec_(spec) {
  if (spec.is_prime())
    value_ = modp::reduce(value, spec.characteristic());
  else
    value_ = Rational(static_cast<long>(value));
}

FieldElement::FieldElement(const FieldSpec& spec, const Rational& value) : spec_(spec) {
  if (spec.is_prime()) {
    const std::uint32_t p = spec.characteristic();
    BigInt num = value.get_num() % p;
    BigInt den = value.get_den() % p;
    if (num < 0) num += p;
    if (den == 0) throw Error(ErrorCode::division_by_zero, "denominator divisible by p");
    value_ = modp::mul(std::uint32_t(num.get_ui()), modp::inv(std::uint32_t(den.get_ui()), p), p);
  } else {
    Rational q = value;
    q.canonicalize();
    value_ = std::move(q);
  }
}

FieldElement FieldElement::parse(const FieldSpec& spec, std::string_view text) {
  const std::string s(text);
  if (s.empty()) throw Error(ErrorCode::parse_error, "empty field element");
  Rational q;
  try {
    const auto slash = s.find('/');
    if (slash == std::string::npos) {
      q = Rational(BigInt(s, 10));
    } else {
      BigInt num(s.substr(0, slash), 10);
      BigInt den(s.substr(slash + 1), 10);
      if (den == 0) throw Error(ErrorCode::division_by_zero, "zero denominator in '" + s + "'");
      q = Rational(num, den);
      q.canonicalize();
    }
  } catch (const std::invalid_argument&) {
    throw Error(ErrorCode::parse_error, "bad field element '" + s + "'");
  }
  return FieldElement(spec, q);
}

bool FieldElement::is_zero() const {
  if (auto r = std::get_if<std::uint32_t>(&value_)) return *r == 0;
  return std::get<Rational>(value_) == 0;
}

bool FieldElement::is_one() const {
  if (auto r = std::get_if<std::uint32_t>(&value_)) return *r == 1;
  return std::get<Rational>(value_) == 1;
}

std::uint32_t FieldElement::residue() const {
  if (!spec_.is_prime()) throw Error(ErrorCode::field_mismatch, "residue() on a rational");
  return std::get<std::uint32_t>(value_);
}

const Rational& FieldElement::rational() const {
  if (spec_.is_prime()) throw Error(ErrorCode::field_mismatch, "rational() on a residue");
  return std::get<Rational>(value_);
}

std::string FieldElement::to_string() const {
  if (spec_.is_prime()) return std::to_string(std::get<std::uint32_t>(value_));
  return std::get<Rational>(value_).get_str();
}

FieldElement FieldElement::operator-() const {
  FieldElement r = *this;
  if (spec_.is_prime())
    r.value_ = modp::neg(std::get<std::uint32_t>(value_), spec_.characteristic());
  else
    r.value_ = Rational(-std::get<Rational>(value_));
  return r;
}

FieldElement& FieldElement::operator+=(const FieldElement& rhs) {
  require_same_field(spec_, rhs.spec_);
  if (spec_.is_prime())
    value_ = modp::add(std::get<std::uint32_t>(value_), std::get<std::uint32_t>(rhs.value_),
                       spec_.characteristic());
  else
    std::get<Rational>(value_) += std::get<Rational>(rhs.value_);
  return *this;
}

FieldElement& FieldElement::operator-=(const FieldElement& rhs) {
  require_same_field(spec_, rhs.spec_);
  if (spec_.is_prime())
    value_ = modp::sub(std::get<std::uint32_t>(value_), std::get<std::uint32_t>(rhs.value_),
                       spec_.characteristic());
  else
    std::get<Rational>(value_) -= std::get<Rational>(rhs.value_);
  return *this;
}

FieldElement& FieldElement::operator*=(const FieldElement& rhs) {
  require_same_field(spec_, rhs.spec_);
  if (spec_.is_prime())
    value_ = modp::mul(std::get<std::uint32_t>(value_), std::get<std::uint32_t>(rhs.value_),
                       spec_.characteristic());
  else
    std::get<Rational>(value_) *= std::get<Rational>(rhs.value_);
  return *this;
}

FieldElement& FieldElement::operator/=(const FieldElement& rhs) {
  return *this *= inv(rhs);
}

bool operator==(const FieldElement& a, const FieldElement& b) {
  return a.spec_ == b.spec_ && a.value_ == b.value_;
}

FieldElement add(const FieldElement& x, const FieldElement& y) { return x + y; }
FieldElement mul(const FieldElement& x, const FieldElement& y) { return x * y; }

FieldElement inv(const FieldElement& x) {
  if (x.is_zero()) throw Error(ErrorCode::division_by_zero, "inverse of zero");
  if (x.spec().is_prime())
    return FieldElement(x.spec(), modp::inv(x.residue(), x.spec().characteristic()));
  return FieldElement(x.spec(), Rational(1) / x.rational());
}

FieldElement pow(const FieldElement& x, std::uint64_t e) {
  FieldElement result = FieldElement::one(x.spec());
  FieldElement base = x;
  while (e > 0) {
    if (e & 1) result *= base;
    base *= base;
    e >>= 1;
  }
  return result;
}

std::vector<FieldElement> enumerate_field(const FieldSpec& spec) {
  if (!spec.is_prime()) throw Error(ErrorCode::not_enumerable, "Q cannot be enumerated");
  std::vector<FieldElement> out;
  out.reserve(spec.characteristic());
  for (std::uint32_t v = 0; v < spec.characteristic(); ++v) out.emplace_back(spec, v);
  return out;
}

}  // namespace zclass
