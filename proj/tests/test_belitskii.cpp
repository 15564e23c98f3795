#include <random>
#include <set>

#include "doctest.h"
#include "support.hpp"
#include "zclass/belitskii.hpp"
#include "zclass/classify.hpp"
#include "zclass/io.hpp"

using namespace zclass;
using testing_support::random_element;
using testing_support::random_unipotent;
using testing_support::to_dense;

namespace {

const FieldSpec F3 = FieldSpec::prime(3);
const FieldSpec F5 = FieldSpec::prime(5);
const FieldSpec Qf = FieldSpec::rationals();

TriMatrix m(const FieldSpec& f, const char* text) { return parse_matrix_text(f, text); }

// Indices of the representatives reachable from u by brute-force conjugation.
std::set<int> reachable_representatives(const TriMatrix& u, std::uint32_t q) {
  const auto reps = representatives(u.dim(), FieldSpec::prime(q));
  std::set<int> hits;
  const oracle::Dense du = to_dense(u);
  oracle::for_each_group_element(u.dim(), q, [&](const oracle::Dense& p) {
    const oracle::Dense c = oracle::conj(p, du, q);
    for (int k = 0; k < int(reps.size()); ++k)
      if (c == to_dense(reps[std::size_t(k)])) hits.insert(k);
  });
  return hits;
}

}  // namespace

TEST_CASE("entry order runs bottom row first, left to right") {
  const auto order = entry_order(3);
  const std::vector<std::pair<int, int>> expected{{2, 2}, {1, 1}, {1, 2}, {0, 0}, {0, 1}, {0, 2}};
  CHECK(order == expected);
  CHECK(entry_order(5).size() == 15);
}

TEST_CASE("canonical_form examples") {
  SUBCASE("identity has an empty trace") {
    const ReductionTrace t = canonical_form(TriMatrix::identity(5, Qf));
    CHECK(t.output.is_identity());
    CHECK(t.steps.empty());
    CHECK(t.conjugator.is_identity());
  }
  SUBCASE("I + 2 e_12 + 3 e_23 over F5") {
    const TriMatrix u = m(F5, "1,2,0;0,1,3;0,0,1");
    const TriMatrix expected = m(F5, "1,1,0;0,1,1;0,0,1");
    const ReductionTrace t = canonical_form(u);
    CHECK(t.output == expected);
    CHECK(conjugate(t.conjugator, u) == expected);
    // Oracle: among the listed forms, exactly this one is reachable.
    const auto hits = reachable_representatives(u, 5);
    REQUIRE(hits.size() == 1);
    CHECK(representatives(3, F5)[std::size_t(*hits.begin())] == expected);
  }
  SUBCASE("I + 7 e_14 over Q and over F11") {
    const TriMatrix u = m(Qf, "1,0,0,7;0,1,0,0;0,0,1,0;0,0,0,1");
    const TriMatrix expected = m(Qf, "1,0,0,1;0,1,0,0;0,0,1,0;0,0,0,1");
    const ReductionTrace t = canonical_form(u);
    CHECK(t.output == expected);
    CHECK(multiply(t.conjugator, u) == multiply(expected, t.conjugator));

    const FieldSpec f11 = FieldSpec::prime(11);
    const TriMatrix u11 = m(f11, "1,0,0,7;0,1,0,0;0,0,1,0;0,0,0,1");
    CHECK(canonical_form(u11).output == m(f11, "1,0,0,1;0,1,0,0;0,0,1,0;0,0,0,1"));
    bool found = false;
    const oracle::Dense target = to_dense(m(f11, "1,0,0,1;0,1,0,0;0,0,1,0;0,0,0,1"));
    // Diagonal conjugators suffice to scale a single corner entry.
    for (std::int64_t d = 1; d < 11 && !found; ++d) {
      oracle::Dense p = oracle::identity(4);
      p[0][0] = d;
      found = oracle::conj(p, to_dense(u11), 11) == target;
    }
    CHECK(found);
  }
}

TEST_CASE("canonical_form preconditions") {
  try {
    (void)canonical_form(TriMatrix::identity(6, F3));
    FAIL("expected UnsupportedDimension");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::unsupported_dimension);
  }
  try {
    (void)canonical_form(m(F3, "2,0;0,1"));
    FAIL("expected NotUnipotent");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::not_unipotent);
  }
}

TEST_CASE("steps record their rules and transforms") {
  std::mt19937_64 rng(3);
  std::set<ReductionRule> used;
  for (int k = 0; k < 2000; ++k) {
    const TriMatrix u = random_unipotent(5, 5, rng);
    const ReductionTrace t = canonical_form(u);
    TriMatrix acc = TriMatrix::identity(5, F5);
    TriMatrix cur = u;
    for (const ReductionStep& s : t.steps) {
      used.insert(s.rule);
      CHECK(s.row < s.col);
      acc = multiply(s.transform, acc);
      cur = conjugate(s.transform, cur);
    }
    CHECK(acc == t.conjugator);
    CHECK(cur == t.output);
  }
  CHECK(used.size() == 5);
  CHECK(to_string(ReductionRule::step4) == "Step4");
}

TEST_CASE("representative tables") {
  const std::vector<std::size_t> sizes{2, 5, 16, 60};
  for (int n = 2; n <= 5; ++n) {
    const auto reps = representatives(n, Qf);
    CHECK(reps.size() == sizes[std::size_t(n - 2)]);
    std::set<TriMatrix> distinct(reps.begin(), reps.end());
    CHECK(distinct.size() == reps.size());
    for (const auto& r : reps) {
      CHECK(r.is_unipotent());
      CHECK(r.is_zero_one());
    }
    CHECK(reps.back().is_identity());
  }
  CHECK(representatives(2, Qf)[0] == m(Qf, "1,1;0,1"));
  CHECK(representatives(3, Qf)[0] == m(Qf, "1,1,0;0,1,0;0,0,1"));
  CHECK_THROWS_AS(representatives(6, Qf), Error);
  CHECK_THROWS_AS(representatives(1, Qf), Error);
}

TEST_CASE("classify_unipotent examples") {
  const auto reps4 = representatives(4, Qf);
  CHECK(reps4[std::size_t(classify_unipotent(TriMatrix::identity(4, Qf)))].is_identity());
  const FieldSpec f7 = FieldSpec::prime(7);
  CHECK(classify_unipotent(m(f7, "1,3;0,1")) == 0);
  CHECK(*find_representative(m(f7, "1,1;0,1")) == 0);
  CHECK_FALSE(find_representative(m(f7, "1,2;0,1")).has_value());
}

TEST_CASE("exhaustive classification over F3") {
  // Expected counts per n: 2, 5, 16 table classes, all hit; for n = 5 the
  // reduction reaches the 60 listed forms plus one unlisted form, found by
  // an independent orbit count (see the classify tests).
  const std::vector<std::size_t> listed{2, 5, 16, 60};
  for (int n = 2; n <= 5; ++n) {
    std::set<int> hit;
    std::set<TriMatrix> unlisted;
    std::uint64_t total = 0;
    for (const auto& u : enumerate_unipotent(n, 3)) {
      const TriMatrix out = canonical_form(u).output;
      if (auto k = find_representative(out))
        hit.insert(*k);
      else
        unlisted.insert(out);
      ++total;
    }
    CHECK(hit.size() == listed[std::size_t(n - 2)]);
    CHECK(unlisted.size() == (n == 5 ? 1u : 0u));
    CHECK(total == GroupIndex(n, F3, Filter::unipotent).size());
  }
  const TriMatrix extra = m(F3, "1,1,0,0,0;0,1,0,1,0;0,0,1,0,1;0,0,0,1,0;0,0,0,0,1");
  CHECK(canonical_form(extra).output == extra);
  CHECK_FALSE(find_representative(extra).has_value());
  try {
    (void)classify_unipotent(extra);
    FAIL("expected InternalError");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::internal_error);
  }
}

TEST_CASE("idempotence") {
  std::mt19937_64 rng(4);
  for (int k = 0; k < 1000; ++k) {
    const TriMatrix u = random_unipotent(2 + int(rng() % 4), 7, rng);
    const TriMatrix out = canonical_form(u).output;
    CHECK(canonical_form(out).output == out);
  }
}

TEST_CASE("conjugation invariance") {
  SUBCASE("every conjugator, n <= 3 over F3 and F5, n = 4 over F3") {
    std::mt19937_64 rng(5);
    for (auto [n, q] : std::vector<std::pair<int, std::uint32_t>>{{2, 3}, {3, 3}, {2, 5}, {3, 5}, {4, 3}}) {
      const int samples = n == 4 ? 4 : 12;
      for (int s = 0; s < samples; ++s) {
        const TriMatrix u = random_unipotent(n, q, rng);
        const TriMatrix out = canonical_form(u).output;
        for (const auto& p : enumerate_group(n, q)) REQUIRE(canonical_form(conjugate(p, u)).output == out);
      }
    }
  }
  SUBCASE("sampled conjugators, n = 4 over F5 and n = 5 over F3, F5") {
    std::mt19937_64 rng(6);
    for (auto [n, q] : std::vector<std::pair<int, std::uint32_t>>{{4, 5}, {5, 3}, {5, 5}}) {
      for (int s = 0; s < 500; ++s) {
        const TriMatrix u = random_unipotent(n, q, rng);
        const TriMatrix p = random_element(n, q, rng);
        CHECK(canonical_form(conjugate(p, u)).output == canonical_form(u).output);
      }
    }
  }
}

TEST_CASE("representatives are pairwise non-conjugate") {
  for (int n = 2; n <= 4; ++n) {
    const auto reps = representatives(n, F3);
    for (std::size_t i = 0; i < reps.size(); ++i)
      for (std::size_t j = i + 1; j < reps.size(); ++j) {
        const ConjugacyResult r = conjugacy_test(reps[i], reps[j]);
        REQUIRE(r.verdict == Verdict::not_conjugate);
        if (n <= 3) CHECK_FALSE(oracle::conjugate_exists(to_dense(reps[i]), to_dense(reps[j]), 3));
      }
  }
  const auto reps5 = representatives(5, Qf);
  for (std::size_t i = 0; i < reps5.size(); ++i)
    for (std::size_t j = i + 1; j < reps5.size(); ++j)
      REQUIRE(conjugacy_test(reps5[i], reps5[j]).verdict == Verdict::not_conjugate);
}

TEST_CASE("reduction over Q keeps the trace sound") {
  std::mt19937_64 rng(8);
  for (int k = 0; k < 300; ++k) {
    const int n = 2 + int(rng() % 4);
    TriMatrix u = TriMatrix::identity(n, Qf);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (rng() % 3) u.set(i, j, FieldElement(Qf, Rational(std::int64_t(rng() % 19) - 9, std::int64_t(rng() % 5) + 1)));
    const ReductionTrace t = canonical_form(u);
    CHECK(conjugate(t.conjugator, u) == t.output);
    CHECK(t.output.is_zero_one());
  }
}
