#pragma once

#include <vector>

#include "zclass/field.hpp"

namespace zclass {

using Vector = std::vector<FieldElement>;

/// Small dense matrix over an exact field, row-major.
class DenseMatrix {
 public:
  DenseMatrix(int rows, int cols, const FieldSpec& field);

  int rows() const noexcept { return rows_; }
  int cols() const noexcept { return cols_; }
  const FieldSpec& field() const noexcept { return field_; }

  FieldElement& operator()(int r, int c) { return data_[std::size_t(r * cols_ + c)]; }
  const FieldElement& operator()(int r, int c) const { return data_[std::size_t(r * cols_ + c)]; }

  Vector row(int r) const;
  Vector apply(const Vector& x) const;

 private:
  int rows_;
  int cols_;
  FieldSpec field_;
  std::vector<FieldElement> data_;
};

struct RowEchelon {
  DenseMatrix reduced;
  /// Pivot column of each nonzero row, increasing.
  std::vector<int> pivots;
  int rank() const { return int(pivots.size()); }
};

/// Reduced row echelon form. Pivots are chosen as the first nonzero entry in
/// column order, so the result is unique and platform-independent.
RowEchelon rref(DenseMatrix m);

/// Basis of {x : m x = 0}, one vector per free column in increasing order;
/// each basis vector has a 1 at its free column and 0 at the other free columns.
std::vector<Vector> nullspace(const DenseMatrix& m);

/// Pick from `vectors` an index subset whose images under `m` are a basis of
/// the span of all images. Greedy, first-come.
std::vector<int> independent_images(const DenseMatrix& m, const std::vector<Vector>& vectors);

}  // namespace zclass
