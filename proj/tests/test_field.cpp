#include <random>

#include "doctest.h"
#include "zclass/field.hpp"

using namespace zclass;

namespace {

FieldElement random_element(const FieldSpec& f, std::mt19937_64& rng) {
  if (f.is_prime()) return FieldElement(f, std::int64_t(rng() % f.characteristic()));
  const std::int64_t num = std::int64_t(rng() % 2001) - 1000;
  const std::int64_t den = std::int64_t(rng() % 999) + 1;
  return FieldElement(f, Rational(num, den));
}

}  // namespace

TEST_CASE("field specs parse and validate") {
  CHECK(FieldSpec::parse("F5") == FieldSpec::prime(5));
  CHECK(FieldSpec::parse("Q").is_rationals());
  CHECK(FieldSpec::prime(2).characteristic() == 2);
  CHECK(FieldSpec::rationals().characteristic() == 0);
  CHECK(FieldSpec::prime(7).order() == 7);
  CHECK_THROWS_AS(FieldSpec::prime(4), Error);
  CHECK_THROWS_AS(FieldSpec::parse("F"), Error);
  CHECK_THROWS_AS(FieldSpec::parse("G5"), Error);
  CHECK_THROWS_AS(FieldSpec::prime(std::uint64_t(1) << 31), Error);
  CHECK(FieldSpec::prime(2147483647).characteristic() == 2147483647u);
  try {
    FieldSpec::prime(9);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::not_prime);
  }
  try {
    (void)FieldSpec::rationals().order();
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::not_enumerable);
  }
}

TEST_CASE("add examples") {
  const FieldSpec f5 = FieldSpec::prime(5);
  CHECK(add(FieldElement(f5, 3), FieldElement(f5, 4)) == FieldElement(f5, 2));
  const FieldSpec q = FieldSpec::rationals();
  CHECK(add(FieldElement(q, Rational(1, 2)), FieldElement(q, Rational(1, 3))) == FieldElement(q, Rational(5, 6)));
  const FieldSpec f7 = FieldSpec::prime(7);
  for (const auto& x : enumerate_field(f7)) CHECK(add(FieldElement::zero(f7), x) == x);
  CHECK_THROWS_AS(add(FieldElement(f5, 1), FieldElement(f7, 1)), Error);
}

TEST_CASE("mul examples") {
  const FieldSpec f5 = FieldSpec::prime(5);
  CHECK(mul(FieldElement(f5, 3), FieldElement(f5, 4)) == FieldElement(f5, 2));
  const FieldSpec q = FieldSpec::rationals();
  CHECK(mul(FieldElement(q, Rational(2, 3)), FieldElement(q, Rational(3, 4))) == FieldElement(q, Rational(1, 2)));
  for (std::uint32_t p : {2u, 3u, 5u, 7u})
    for (const auto& x : enumerate_field(FieldSpec::prime(p)))
      CHECK(mul(FieldElement::one(x.spec()), x) == x);
  try {
    (void)mul(FieldElement(f5, 1), FieldElement(q, 1));
    FAIL("expected a field mismatch");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::field_mismatch);
  }
}

TEST_CASE("inv examples") {
  CHECK(inv(FieldElement(FieldSpec::prime(5), 2)) == FieldElement(FieldSpec::prime(5), 3));
  const FieldSpec q = FieldSpec::rationals();
  CHECK(inv(FieldElement(q, Rational(-3, 4))) == FieldElement(q, Rational(-4, 3)));
  CHECK(inv(FieldElement(FieldSpec::prime(7), 1)).is_one());
  try {
    (void)inv(FieldElement::zero(q));
    FAIL("expected division by zero");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::division_by_zero);
  }
  CHECK_THROWS_AS(inv(FieldElement::zero(FieldSpec::prime(3))), Error);
}

TEST_CASE("enumerate_field") {
  auto f2 = enumerate_field(FieldSpec::prime(2));
  REQUIRE(f2.size() == 2);
  CHECK(f2[0].residue() == 0);
  CHECK(f2[1].residue() == 1);
  auto f3 = enumerate_field(FieldSpec::prime(3));
  REQUIRE(f3.size() == 3);
  for (std::uint32_t i = 0; i < 3; ++i) CHECK(f3[i].residue() == i);
  try {
    (void)enumerate_field(FieldSpec::rationals());
    FAIL("expected NotEnumerable");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::not_enumerable);
  }
}

TEST_CASE("element parsing and canonical form") {
  const FieldSpec f7 = FieldSpec::prime(7);
  CHECK(FieldElement::parse(f7, "-1").residue() == 6);
  CHECK(FieldElement::parse(f7, "1/2") == FieldElement(f7, 4));
  CHECK(FieldElement(f7, 15).residue() == 1);
  const FieldSpec q = FieldSpec::rationals();
  CHECK(FieldElement::parse(q, "6/-4").to_string() == "-3/2");
  CHECK(FieldElement::parse(q, "10/5").to_string() == "2");
  CHECK_THROWS_AS(FieldElement::parse(q, "1/0"), Error);
  CHECK_THROWS_AS(FieldElement::parse(q, "abc"), Error);
  CHECK_THROWS_AS(FieldElement::parse(f7, ""), Error);
  CHECK(FieldElement(q, Rational(4, -6)).rational().get_den() == 3);
}

TEST_CASE("field axioms on random triples") {
  std::mt19937_64 rng(20261015);
  std::vector<FieldSpec> fields{FieldSpec::prime(2), FieldSpec::prime(3), FieldSpec::prime(5),
                                FieldSpec::prime(7), FieldSpec::prime(101), FieldSpec::rationals()};
  for (const FieldSpec& f : fields) {
    CAPTURE(f.to_string());
    for (int k = 0; k < 1000; ++k) {
      const FieldElement a = random_element(f, rng), b = random_element(f, rng), c = random_element(f, rng);
      CHECK((a + b) + c == a + (b + c));
      CHECK((a * b) * c == a * (b * c));
      CHECK(a * (b + c) == a * b + a * c);
      CHECK(a + b == b + a);
      CHECK(a * b == b * a);
      CHECK(a + (-a) == FieldElement::zero(f));
      if (!a.is_zero()) {
        CHECK(a * inv(a) == FieldElement::one(f));
        CHECK(inv(inv(a)) == a);
      }
    }
  }
}

TEST_CASE("rationals do not overflow") {
  const FieldSpec q = FieldSpec::rationals();
  FieldElement x = FieldElement(q, Rational(3, 2));
  const FieldElement big = pow(x, 200);
  CHECK(big.rational().get_num().get_str().size() > 90);
  CHECK(pow(inv(x), 200) * big == FieldElement::one(q));
}

TEST_CASE("modular helpers") {
  CHECK(modp::order(2, 5) == 4);
  CHECK(modp::order(4, 5) == 2);
  CHECK(modp::primitive_root(7) == 3);
  CHECK(modp::primitive_root(2) == 1);
  for (std::uint32_t a = 1; a < 101; ++a) CHECK(modp::mul(a, modp::inv(a, 101), 101) == 1);
  CHECK(modp::reduce(-7, 5) == 3);
}
