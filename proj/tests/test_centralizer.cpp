#include <array>
#include <random>
#include <set>

#include "doctest.h"
#include "support.hpp"
#include "zclass/centralizer.hpp"
#include "zclass/io.hpp"
#include "zclass/linalg.hpp"

using namespace zclass;
using testing_support::random_element;
using testing_support::to_dense;

namespace {

const FieldSpec F2 = FieldSpec::prime(2);
const FieldSpec F3 = FieldSpec::prime(3);
const FieldSpec F5 = FieldSpec::prime(5);
const FieldSpec Qf = FieldSpec::rationals();

TriMatrix m(const FieldSpec& f, const char* text) { return parse_matrix_text(f, text); }

std::set<TriMatrix> oracle_centralizer(const TriMatrix& a) {
  const auto q = std::int64_t(a.field().characteristic());
  std::set<TriMatrix> out;
  for (const auto& d : oracle::centralizer(to_dense(a), q)) out.insert(TriMatrix::from_rows(a.field(), d));
  return out;
}

std::set<TriMatrix> as_set(const CentralizerSet& c) {
  const auto e = c.elements();
  return {e.begin(), e.end()};
}

// Dimension of {X upper : XA = AX} by an independent dense rank computation
// over F_p: one unknown per upper slot, one equation per upper position.
int oracle_commutant_dimension(const TriMatrix& a) {
  const int n = a.dim();
  const std::int64_t p = a.field().characteristic();
  const oracle::Dense da = to_dense(a);
  std::vector<std::pair<int, int>> slots;
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) slots.emplace_back(i, j);
  std::vector<std::vector<std::int64_t>> rows;
  for (auto [i, j] : slots) {
    std::vector<std::int64_t> row(slots.size(), 0);
    for (std::size_t s = 0; s < slots.size(); ++s) {
      const auto [r, c] = slots[s];
      // (XA - AX)_{ij} coefficient of X_{rc}.
      std::int64_t v = 0;
      if (r == i) v += da[std::size_t(c)][std::size_t(j)];
      if (c == j) v -= da[std::size_t(i)][std::size_t(r)];
      row[s] = oracle::md(v, p);
    }
    rows.push_back(row);
  }
  int rank = 0;
  for (std::size_t col = 0; col < slots.size() && rank < int(rows.size()); ++col) {
    std::size_t piv = std::size_t(rank);
    while (piv < rows.size() && rows[piv][col] == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[piv], rows[std::size_t(rank)]);
    const std::int64_t s = oracle::inv_scalar(rows[std::size_t(rank)][col], p);
    for (auto& v : rows[std::size_t(rank)]) v = oracle::md(v * s, p);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == std::size_t(rank) || rows[r][col] == 0) continue;
      const std::int64_t f = rows[r][col];
      for (std::size_t k = 0; k < slots.size(); ++k)
        rows[r][k] = oracle::md(rows[r][k] - f * rows[std::size_t(rank)][k], p);
    }
    ++rank;
  }
  return int(slots.size()) - rank;
}

std::array<FieldElement, 8> random_b(const FieldSpec& f, std::mt19937_64& rng) {
  std::array<FieldElement, 8> b{};
  for (auto& x : b) x = FieldElement(f, std::int64_t(rng() % f.characteristic()));
  return b;
}

}  // namespace

TEST_CASE("commutant examples") {
  const CommutantBasis id = commutant_basis(TriMatrix::identity(3, Qf));
  CHECK(id.dimension() == 6);
  const CommutantBasis dg = commutant_basis(m(F5, "1,0,0;0,2,0;0,0,3"));
  CHECK(dg.dimension() == 3);
  for (const auto& x : dg.basis) CHECK(x.is_diagonal());
  const TriMatrix u0 = make_u_alpha(FieldElement(F2, 0));
  CHECK(commutant_basis(u0).dimension() == 9);
  CHECK(oracle_commutant_dimension(u0) == 9);
}

TEST_CASE("commutant basis members commute and match the oracle dimension") {
  std::mt19937_64 rng(21);
  for (int k = 0; k < 200; ++k) {
    const int n = 2 + int(rng() % 5);
    const std::uint32_t q = k % 2 ? 3 : 5;
    const TriMatrix a = random_element(n, q, rng);
    const CommutantBasis c = commutant_basis(a);
    for (const auto& x : c.basis) CHECK(commutes(x, a));
    CHECK(c.dimension() == oracle_commutant_dimension(a));
  }
}

TEST_CASE("centralizer enumeration matches a whole-group scan") {
  const TriMatrix d = m(F5, "1,0;0,2");
  const CentralizerSet cd = centralizer_enumerate(d);
  CHECK(cd.order() == 16);
  CHECK(as_set(cd) == oracle_centralizer(d));

  const TriMatrix u0 = make_u_alpha(FieldElement(F2, 0));
  const CentralizerSet cu = centralizer_enumerate(u0);
  CHECK(cu.order() == 256);
  CHECK(as_set(cu) == oracle_centralizer(u0));
  CHECK(centralizer_order(u0) == 256);

  for (int n = 2; n <= 4; ++n) {
    const CentralizerSet whole = centralizer_enumerate(TriMatrix::identity(n, F3));
    CHECK(BigInt(static_cast<unsigned long>(whole.order())) == group_order(n, 3));
  }

  std::mt19937_64 rng(22);
  for (int k = 0; k < 40; ++k) {
    const TriMatrix a = random_element(3, k % 2 ? 3 : 5, rng);
    const CentralizerSet c = centralizer_enumerate(a);
    CHECK(as_set(c) == oracle_centralizer(a));
    CHECK(BigInt(static_cast<unsigned long>(c.order())) == centralizer_order(a));
    for (const auto& z : c.elements()) CHECK(c.contains(z));
  }
}

TEST_CASE("centralizer enumeration respects its budget") {
  try {
    (void)centralizer_enumerate(TriMatrix::identity(5, F5), 1000);
    FAIL("expected TooLarge");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::too_large);
  }
  CHECK_THROWS_AS(centralizer_order(TriMatrix::identity(2, Qf)), Error);
}

TEST_CASE("closed-form centralizer of the u_alpha family") {
  SUBCASE("a = 1, b = 0 gives the identity") {
    std::array<FieldElement, 8> b;
    b.fill(FieldElement(F5, 0));
    CHECK(ualpha_centralizer_element(FieldElement(F5, 2), FieldElement(F5, 1), b).is_identity());
    CHECK_THROWS_AS(ualpha_centralizer_element(FieldElement(F5, 2), FieldElement(F5, 0), b), Error);
  }
  SUBCASE("random instances commute with u_alpha") {
    std::mt19937_64 rng(23);
    for (int k = 0; k < 100; ++k) {
      const FieldElement alpha(F5, std::int64_t(rng() % 5));
      const FieldElement a(F5, std::int64_t(1 + rng() % 4));
      const auto b = random_b(F5, rng);
      const TriMatrix c = ualpha_centralizer_element(alpha, a, b);
      CHECK(commutes(c, make_u_alpha(alpha)));
      CHECK(c.is_invertible());
    }
  }
  SUBCASE("the closed form is exactly the centralizer for q = 2, 3") {
    for (const FieldSpec& f : {F2, F3}) {
      const std::uint32_t q = f.characteristic();
      for (std::uint32_t al = 0; al < q; ++al) {
        const FieldElement alpha(f, al);
        std::set<TriMatrix> closed;
        std::uint64_t produced = 0;
        std::array<FieldElement, 8> b{};
        std::uint64_t combos = 1;
        for (int i = 0; i < 8; ++i) combos *= q;
        for (std::uint32_t a = 1; a < q; ++a)
          for (std::uint64_t code = 0; code < combos; ++code) {
            std::uint64_t c = code;
            for (auto& x : b) {
              x = FieldElement(f, std::int64_t(c % q));
              c /= q;
            }
            closed.insert(ualpha_centralizer_element(alpha, FieldElement(f, a), b));
            ++produced;
          }
        CHECK(closed.size() == produced);  // injective parametrization
        CHECK(closed == as_set(centralizer_enumerate(make_u_alpha(alpha))));
      }
    }
  }
  CHECK(ualpha_centralizer_template().size() >= 6);
}

TEST_CASE("u_alpha family shape") {
  const TriMatrix u = make_u_alpha(FieldElement(F5, 3));
  CHECK(u.is_unipotent());
  CHECK(u.at(0, 2) == FieldElement(F5, 3));
  for (auto [i, j] : std::vector<std::pair<int, int>>{{0, 1}, {1, 4}, {2, 3}, {2, 4}, {4, 5}})
    CHECK(u.at(i, j).is_one());
  CHECK(make_x_alpha(FieldElement(F5, 3)).is_strictly_upper());
  // The commutant dimension does not depend on alpha.
  for (std::uint32_t q : {2u, 3u, 5u})
    for (std::uint32_t al = 0; al < q; ++al)
      CHECK(commutant_basis(make_u_alpha(FieldElement(FieldSpec::prime(q), al))).dimension() == 9);
}

TEST_CASE("embed_block") {
  const TriMatrix u = make_u_alpha(FieldElement(F3, 1));
  const TriMatrix e = embed_block(u, 8);
  CHECK(e.dim() == 8);
  for (int i = 0; i < 6; ++i)
    for (int j = i; j < 6; ++j) CHECK(e.at(i, j) == u.at(i, j));
  CHECK(e.at(6, 6).is_one());
  CHECK(e.at(7, 7).is_one());
  CHECK(e.at(5, 7).is_zero());
  CHECK(embed_block(u, 6) == u);
  CHECK_THROWS_AS(embed_block(u, 5), Error);
}

TEST_CASE("centralizers transform under conjugation") {
  std::mt19937_64 rng(24);
  for (int k = 0; k < 30; ++k) {
    const TriMatrix a = random_element(3, 5, rng), p = random_element(3, 5, rng);
    const CentralizerSet ca = centralizer_enumerate(a);
    std::set<TriMatrix> moved;
    for (const auto& z : ca.elements()) moved.insert(conjugate(p, z));
    CHECK(moved == as_set(centralizer_enumerate(conjugate(p, a))));
  }
}

TEST_CASE("orbit-stabilizer for small groups") {
  for (int n = 2; n <= 4; ++n)
    for (std::uint32_t q : {2u, 3u}) {
      if (n == 4 && q == 3) continue;  // covered by sampling below
      const auto group = oracle::group_elements(n, q);
      for (std::size_t s = 0; s < group.size(); s += 7) {
        const oracle::Dense& a = group[s];
        std::set<oracle::Dense> orbit;
        for (const auto& p : group) orbit.insert(oracle::conj(p, a, q));
        const TriMatrix ta = TriMatrix::from_rows(FieldSpec::prime(q), a);
        CHECK(BigInt(static_cast<unsigned long>(orbit.size())) * centralizer_order(ta) == group_order(n, q));
      }
    }
}

TEST_CASE("unit counting and splitting") {
  const CommutantBasis c = commutant_basis(TriMatrix::identity(2, F3));
  CHECK(count_units(c.basis) == 12);
  const DiagonalSplit s = split_by_diagonal(c.basis);
  CHECK(s.visible.size() == 2);
  CHECK(s.hidden.size() == 1);
  std::uint64_t seen = 0;
  for_each_unit(c.basis, [&](const TriMatrix& x) {
    CHECK(x.is_invertible());
    ++seen;
  });
  CHECK(seen == 12);
  const auto inter = intertwiner_basis(m(F3, "1,1;0,1"), m(F3, "1,2;0,1"));
  CHECK(inter.size() == 2);
  for (const auto& x : inter) CHECK(multiply(x, m(F3, "1,1;0,1")) == multiply(m(F3, "1,2;0,1"), x));
  const std::vector<TriMatrix> pair{m(F3, "1,1;0,1"), m(F3, "2,0;0,1")};
  CHECK(joint_commutant(pair).size() == 1);
}
