#include "zclass/centralizer.hpp"

#include <algorithm>

#include "zclass/linalg.hpp"

namespace zclass {

namespace {

TriMatrix unit_matrix(int n, const FieldSpec& field, int slot) {
  TriMatrix e = TriMatrix::zero(n, field);
  e.set_slot(slot, FieldElement::one(field));
  return e;
}

TriMatrix from_coordinates(int n, const FieldSpec& field, const Vector& coords) {
  TriMatrix m = TriMatrix::zero(n, field);
  for (int k = 0; k < m.slots(); ++k) m.set_slot(k, coords[std::size_t(k)]);
  return m;
}

// Solve the homogeneous system L(X) = 0 where L maps upper triangular
// matrices to tuples of upper triangular matrices, linearly.
template <class LinearMap>
std::vector<TriMatrix> solve_homogeneous(int n, const FieldSpec& field, int images,
                                         LinearMap&& map) {
  const int s = slot_count(n);
  DenseMatrix system(images * s, s, field);
  for (int k = 0; k < s; ++k) {
    const std::vector<TriMatrix> out = map(unit_matrix(n, field, k));
    for (int t = 0; t < images; ++t)
      for (int r = 0; r < s; ++r) system(t * s + r, k) = out[std::size_t(t)].slot(r);
  }
  std::vector<TriMatrix> basis;
  for (const Vector& v : nullspace(system)) basis.push_back(from_coordinates(n, field, v));
  return basis;
}

std::uint64_t checked_pow(std::uint64_t base, int exp, std::uint64_t budget) {
  std::uint64_t r = 1;
  for (int i = 0; i < exp; ++i) {
    if (r > budget / base) return budget + 1;
    r *= base;
  }
  return r;
}

}  // namespace

CommutantBasis commutant_basis(const TriMatrix& a) {
  auto basis = solve_homogeneous(a.dim(), a.field(), 1, [&](const TriMatrix& x) {
    return std::vector<TriMatrix>{commutator(x, a)};
  });
  return CommutantBasis{a, std::move(basis)};
}

std::vector<TriMatrix> joint_commutant(std::span<const TriMatrix> matrices) {
  if (matrices.empty()) throw Error(ErrorCode::invalid_argument, "no matrices");
  for (const auto& m : matrices) {
    if (m.dim() != matrices[0].dim()) throw Error(ErrorCode::dimension_mismatch, "joint_commutant");
    require_same_field(m.field(), matrices[0].field());
  }
  return solve_homogeneous(matrices[0].dim(), matrices[0].field(), int(matrices.size()),
                           [&](const TriMatrix& x) {
                             std::vector<TriMatrix> out;
                             for (const auto& m : matrices) out.push_back(commutator(x, m));
                             return out;
                           });
}

std::vector<TriMatrix> intertwiner_basis(const TriMatrix& a, const TriMatrix& b) {
  if (a.dim() != b.dim()) throw Error(ErrorCode::dimension_mismatch, "intertwiner_basis");
  require_same_field(a.field(), b.field());
  return solve_homogeneous(a.dim(), a.field(), 1, [&](const TriMatrix& p) {
    return std::vector<TriMatrix>{multiply(p, a) - multiply(b, p)};
  });
}

DiagonalSplit split_by_diagonal(std::span<const TriMatrix> basis) {
  DiagonalSplit split;
  if (basis.empty()) return split;
  const int n = basis[0].dim();
  const FieldSpec field = basis[0].field();
  const int s = slot_count(n);
  // Column order: diagonal slots first, then the strictly upper slots.
  std::vector<int> order;
  for (int i = 0; i < n; ++i) order.push_back(slot_of(n, i, i));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) order.push_back(slot_of(n, i, j));

  DenseMatrix rows(int(basis.size()), s, field);
  for (int r = 0; r < int(basis.size()); ++r)
    for (int c = 0; c < s; ++c) rows(r, c) = basis[std::size_t(r)].slot(order[std::size_t(c)]);
  const RowEchelon e = rref(rows);
  for (int r = 0; r < e.rank(); ++r) {
    TriMatrix m = TriMatrix::zero(n, field);
    for (int c = 0; c < s; ++c) m.set_slot(order[std::size_t(c)], e.reduced(r, c));
    if (e.pivots[std::size_t(r)] < n)
      split.visible.push_back(std::move(m));
    else
      split.hidden.push_back(std::move(m));
  }
  return split;
}

namespace {

// Walk all coordinate vectors of `vectors` over F_q, accumulating residues.
template <class Leaf>
void walk(std::span<const TriMatrix> vectors, std::size_t depth, TriMatrix& acc, std::uint32_t q,
          Leaf&& leaf) {
  if (depth == vectors.size()) {
    leaf(acc);
    return;
  }
  const int s = acc.slots();
  const auto v = vectors[depth].residues();
  auto r = acc.residues();
  walk(vectors, depth + 1, acc, q, leaf);
  for (std::uint32_t c = 1; c < q; ++c) {
    for (int k = 0; k < s; ++k) r[std::size_t(k)] = modp::add(r[std::size_t(k)], v[std::size_t(k)], q);
    walk(vectors, depth + 1, acc, q, leaf);
  }
  // undo: q additions of v bring acc back to where it started
  for (int k = 0; k < s; ++k) r[std::size_t(k)] = modp::add(r[std::size_t(k)], v[std::size_t(k)], q);
}

}  // namespace

BigInt count_units(std::span<const TriMatrix> basis) {
  if (basis.empty()) return 0;
  const FieldSpec field = basis[0].field();
  if (!field.is_prime()) throw Error(ErrorCode::not_enumerable, "unit count over Q");
  const std::uint32_t q = field.characteristic();
  const DiagonalSplit split = split_by_diagonal(basis);
  TriMatrix acc = TriMatrix::zero(basis[0].dim(), field);
  std::uint64_t visible_units = 0;
  walk(split.visible, 0, acc, q, [&](const TriMatrix& m) {
    if (m.is_invertible()) ++visible_units;
  });
  BigInt hidden;
  mpz_ui_pow_ui(hidden.get_mpz_t(), q, split.hidden.size());
  return BigInt(static_cast<unsigned long>(visible_units)) * hidden;
}

BigInt centralizer_order(const TriMatrix& a) {
  const CommutantBasis c = commutant_basis(a);
  return count_units(c.basis);
}

void for_each_unit(std::span<const TriMatrix> basis, const std::function<void(const TriMatrix&)>& fn,
                   std::uint64_t budget) {
  if (basis.empty()) return;
  const FieldSpec field = basis[0].field();
  if (!field.is_prime()) throw Error(ErrorCode::not_enumerable, "unit enumeration over Q");
  const std::uint32_t q = field.characteristic();
  const DiagonalSplit split = split_by_diagonal(basis);
  if (checked_pow(q, int(basis.size()), budget) > budget)
    throw Error(ErrorCode::too_large, "q^" + std::to_string(basis.size()) +
                                          " exceeds enumeration budget " + std::to_string(budget));
  TriMatrix acc = TriMatrix::zero(basis[0].dim(), field);
  walk(split.visible, 0, acc, q, [&](const TriMatrix& diag_part) {
    if (!diag_part.is_invertible()) return;
    TriMatrix inner = diag_part;
    walk(split.hidden, 0, inner, q, [&](const TriMatrix& m) { fn(m); });
  });
}

CentralizerSet::CentralizerSet(TriMatrix base, std::vector<std::uint64_t> sorted_indices)
    : base_(std::move(base)), index_(base_.dim(), base_.field()), indices_(std::move(sorted_indices)) {}

bool CentralizerSet::contains(const TriMatrix& m) const {
  if (!index_.contains(m)) return false;
  return std::binary_search(indices_.begin(), indices_.end(), index_.index_of(m));
}

std::vector<TriMatrix> CentralizerSet::elements() const {
  std::vector<TriMatrix> out;
  out.reserve(indices_.size());
  for (std::uint64_t i : indices_) out.push_back(index_.element(i));
  return out;
}

CentralizerSet centralizer_enumerate(const TriMatrix& a, std::uint64_t budget) {
  if (!a.field().is_prime()) throw Error(ErrorCode::not_enumerable, "centralizer over Q");
  const CommutantBasis c = commutant_basis(a);
  if (checked_pow(a.field().characteristic(), c.dimension(), budget) > budget)
    throw Error(ErrorCode::too_large, "q^" + std::to_string(c.dimension()) +
                                          " exceeds centralizer budget " + std::to_string(budget));
  const GroupIndex index(a.dim(), a.field());
  std::vector<std::uint64_t> indices;
  for_each_unit(c.basis, [&](const TriMatrix& m) { indices.push_back(index.index_of(m)); }, budget);
  std::sort(indices.begin(), indices.end());
  return CentralizerSet(a, std::move(indices));
}

std::vector<std::uint64_t> index_set(const GroupIndex& index, std::span<const TriMatrix> elements) {
  std::vector<std::uint64_t> out;
  out.reserve(elements.size());
  for (const auto& m : elements) out.push_back(index.index_of(m));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

TriMatrix make_x_alpha(const FieldElement& alpha) {
  const FieldSpec& f = alpha.spec();
  TriMatrix x = TriMatrix::zero(6, f);
  x.set(0, 1, 1);
  x.set(0, 2, alpha);
  x.set(1, 4, 1);
  x.set(2, 3, 1);
  x.set(2, 4, 1);
  x.set(4, 5, 1);
  return x;
}

TriMatrix make_u_alpha(const FieldElement& alpha) {
  return TriMatrix::identity(6, alpha.spec()) + make_x_alpha(alpha);
}

const std::vector<TemplateEntry>& ualpha_centralizer_template() {
  static const std::vector<TemplateEntry> entries = [] {
    std::vector<TemplateEntry> t;
    for (int k = 0; k < 6; ++k) t.push_back({k, k, {{1, false, 0}}});
    // first row: b1 .. b5
    for (int j = 1; j <= 5; ++j) t.push_back({0, j, {{1, false, j}}});
    t.push_back({1, 2, {}});
    t.push_back({1, 3, {{1, false, 2}, {-1, true, 6}}});
    t.push_back({1, 4, {{1, false, 1}, {1, false, 2}, {-1, true, 7}}});
    t.push_back({1, 5, {{1, false, 4}, {-1, true, 8}}});
    t.push_back({2, 3, {{1, false, 6}}});
    t.push_back({2, 4, {{1, false, 7}}});
    t.push_back({2, 5, {{1, false, 8}}});
    t.push_back({3, 4, {}});
    t.push_back({3, 5, {{1, true, 7}, {1, false, 7}, {-1, false, 1}, {-1, false, 2}}});
    t.push_back({4, 5, {{1, false, 1}, {1, false, 2}, {-1, true, 7}}});
    return t;
  }();
  return entries;
}

TriMatrix ualpha_centralizer_element(const FieldElement& alpha, const FieldElement& a,
                                     std::span<const FieldElement, 8> b) {
  const FieldSpec& f = alpha.spec();
  require_same_field(f, a.spec());
  if (a.is_zero()) throw Error(ErrorCode::not_invertible, "a must be nonzero");
  std::array<FieldElement, 9> vars{a, b[0], b[1], b[2], b[3], b[4], b[5], b[6], b[7]};
  TriMatrix m = TriMatrix::zero(6, f);
  for (const TemplateEntry& e : ualpha_centralizer_template()) {
    FieldElement v = FieldElement::zero(f);
    for (const AffineTerm& t : e.terms) {
      FieldElement term = FieldElement(f, t.coeff) * vars[std::size_t(t.var)];
      if (t.times_alpha) term *= alpha;
      v += term;
    }
    m.set(e.row, e.col, v);
  }
  return m;
}

TriMatrix embed_block(const TriMatrix& u, int n) {
  if (u.dim() != 6) throw Error(ErrorCode::dimension_mismatch, "embed_block expects a 6x6 block");
  if (n < 6) throw Error(ErrorCode::unsupported_dimension, "embed_block needs n >= 6");
  TriMatrix m = TriMatrix::identity(n, u.field());
  for (int i = 0; i < 6; ++i)
    for (int j = i; j < 6; ++j) m.set(i, j, u.at(i, j));
  return m;
}

}  // namespace zclass
