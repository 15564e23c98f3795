#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "zclass/trimatrix.hpp"

namespace zclass {

/// Which of the five reduction rules produced a transformation.
enum class ReductionRule { step1 = 1, step2, step3, step4, step5 };

std::string to_string(ReductionRule rule);

struct ReductionStep {
  ReductionRule rule;
  /// The entry being reduced, 0-based.
  int row;
  int col;
  /// The matrix P of the applied transformation A -> P A P^{-1}.
  TriMatrix transform;
};

struct ReductionTrace {
  TriMatrix input;
  TriMatrix output;
  /// Product of the step transforms, last step leftmost:
  /// conjugator * input * conjugator^{-1} == output.
  TriMatrix conjugator;
  std::vector<ReductionStep> steps;
};

/// Positions in reduction order: rows from the bottom row up, each row left
/// to right, starting at the diagonal.
std::vector<std::pair<int, int>> entry_order(int n);

/// Belitskii reduction of a unipotent upper triangular matrix, 2 <= n <= 5.
///
/// Entries are visited in entry_order(). A nonzero entry a_pq is handled by
/// the first applicable rule:
///   1. some row i > p has its leading entry a_iq = 1: clear a_pq with I + e_pi(-a_pq);
///   2. a_pq leads its row: scale it to 1 with I + e_pp(a_pq^{-1} - 1);
///   3. row p leads at r < q and row q is zero: clear a_pq with I + e_rq(a_pq);
///   4. as 3, but rows r and q lead at columns i < j: clear with I + e_rq(a_pq)
///      and repair row r with I + e_ij(a_pq);
///   5. as 4, but row r has nothing before column j: scale a_pq to 1 with
///      I + e_qq(a_pq - 1), then repair the leading entries that scaling moved,
///      with the same scaling at column j and at the leading column of row j.
/// Entries no rule handles are left in place.
///
/// Throws UnsupportedDimension for n > 5, NotUnipotent for other inputs, and
/// InternalError if the output is not a {0,1} matrix or the conjugator check
/// fails.
ReductionTrace canonical_form(const TriMatrix& u);

/// The {0,1} unipotent representatives listed for B_n, in listing order,
/// instantiated over `field`. Lengths 2, 5, 16, 60 for n = 2..5.
std::vector<TriMatrix> representatives(int n, const FieldSpec& field);

/// Index of `m` in representatives(n), if listed.
std::optional<int> find_representative(const TriMatrix& m);

/// Index of canonical_form(u).output in representatives(n). Throws
/// InternalError when the canonical form is missing from the table.
int classify_unipotent(const TriMatrix& u);

}  // namespace zclass
