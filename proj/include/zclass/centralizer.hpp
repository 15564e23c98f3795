#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "zclass/trimatrix.hpp"

namespace zclass {

/// Basis of the algebra {X upper triangular : XA = AX}. Its invertible
/// elements are the centralizer of A in B_n.
struct CommutantBasis {
  TriMatrix base_matrix;
  std::vector<TriMatrix> basis;

  int dimension() const { return int(basis.size()); }
};

/// Exact Gaussian elimination on XA - AX = 0 in the n(n+1)/2 packed unknowns.
/// The basis is the nullspace basis in reduced echelon coordinates.
CommutantBasis commutant_basis(const TriMatrix& a);

/// Matrices commuting with every member of `matrices`.
std::vector<TriMatrix> joint_commutant(std::span<const TriMatrix> matrices);

/// Basis of {P upper triangular : P A = B P}.
std::vector<TriMatrix> intertwiner_basis(const TriMatrix& a, const TriMatrix& b);

/// A linear space of upper triangular matrices, rebased so that the first
/// vectors have linearly independent diagonals and the rest have zero
/// diagonal. Invertibility of a combination depends only on the visible part.
struct DiagonalSplit {
  std::vector<TriMatrix> visible;
  std::vector<TriMatrix> hidden;
};

DiagonalSplit split_by_diagonal(std::span<const TriMatrix> basis);

inline constexpr std::uint64_t kDefaultCentralizerBudget = std::uint64_t(1) << 24;

/// Number of invertible elements in span(basis) over F_q: (combinations of the
/// visible part with nonzero diagonal) * q^{hidden}.
BigInt count_units(std::span<const TriMatrix> basis);

/// |Z_{B_n(F_q)}(a)| without materializing the set.
BigInt centralizer_order(const TriMatrix& a);

/// Calls `fn` on every invertible element of span(basis) over F_q. Throws
/// TooLarge if the number of coordinate vectors scanned would exceed `budget`.
void for_each_unit(std::span<const TriMatrix> basis, const std::function<void(const TriMatrix&)>& fn,
                   std::uint64_t budget = kDefaultCentralizerBudget);

/// The centralizer of a matrix in B_n(F_q) as an explicit set, stored as the
/// sorted GroupIndex indices of its elements.
class CentralizerSet {
 public:
  CentralizerSet(TriMatrix base, std::vector<std::uint64_t> sorted_indices);

  const TriMatrix& base_matrix() const { return base_; }
  std::uint64_t order() const { return indices_.size(); }
  bool contains(const TriMatrix& m) const;
  const std::vector<std::uint64_t>& indices() const { return indices_; }
  const GroupIndex& index() const { return index_; }
  std::vector<TriMatrix> elements() const;

  friend bool operator==(const CentralizerSet& a, const CentralizerSet& b) {
    return a.indices_ == b.indices_ && a.base_.dim() == b.base_.dim() &&
           a.base_.field() == b.base_.field();
  }

 private:
  TriMatrix base_;
  GroupIndex index_;
  std::vector<std::uint64_t> indices_;
};

/// Enumerates all coordinate vectors over the commutant basis and keeps the
/// invertible ones. Requires q^dimension <= budget.
CentralizerSet centralizer_enumerate(const TriMatrix& a,
                                     std::uint64_t budget = kDefaultCentralizerBudget);

/// Set of sorted GroupIndex indices for an arbitrary matrix collection.
std::vector<std::uint64_t> index_set(const GroupIndex& index, std::span<const TriMatrix> elements);

// The one-parameter family in B_6.

/// Strictly upper 6 x 6 matrix with ones at (1,2), (2,5), (3,4), (3,5), (5,6)
/// and alpha at (1,3) (1-based).
TriMatrix make_x_alpha(const FieldElement& alpha);
/// I_6 + x_alpha.
TriMatrix make_u_alpha(const FieldElement& alpha);

/// One entry of the closed-form centralizer of u_alpha, as an affine
/// expression sum(coeff * [alpha] * var) with var 0 = a, var k = b_k.
struct AffineTerm {
  int coeff;
  bool times_alpha;
  int var;
};

struct TemplateEntry {
  int row;
  int col;
  std::vector<AffineTerm> terms;
};

/// The closed-form centralizer of u_alpha as data, 0-based positions.
const std::vector<TemplateEntry>& ualpha_centralizer_template();

/// Evaluates the template at (alpha, a, b_1..b_8). Throws NotInvertible for a = 0.
TriMatrix ualpha_centralizer_element(const FieldElement& alpha, const FieldElement& a,
                                     std::span<const FieldElement, 8> b);

/// diag(u, I_{n-6}) for a 6 x 6 matrix u and n >= 6.
TriMatrix embed_block(const TriMatrix& u, int n);

}  // namespace zclass
