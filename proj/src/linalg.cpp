#include "zclass/linalg.hpp"

namespace zclass {

DenseMatrix::DenseMatrix(int rows, int cols, const FieldSpec& field)
    : rows_(rows), cols_(cols), field_(field),
      data_(std::size_t(rows * cols), FieldElement::zero(field)) {}

Vector DenseMatrix::row(int r) const {
  return Vector(data_.begin() + r * cols_, data_.begin() + (r + 1) * cols_);
}

Vector DenseMatrix::apply(const Vector& x) const {
  if (int(x.size()) != cols_) throw Error(ErrorCode::dimension_mismatch, "vector length");
  Vector y(std::size_t(rows_), FieldElement::zero(field_));
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < cols_; ++c)
      if (!(*this)(r, c).is_zero() && !x[std::size_t(c)].is_zero())
        y[std::size_t(r)] += (*this)(r, c) * x[std::size_t(c)];
  return y;
}

RowEchelon rref(DenseMatrix m) {
  std::vector<int> pivots;
  int row = 0;
  for (int col = 0; col < m.cols() && row < m.rows(); ++col) {
    int pivot = -1;
    for (int r = row; r < m.rows(); ++r)
      if (!m(r, col).is_zero()) {
        pivot = r;
        break;
      }
    if (pivot < 0) continue;
    if (pivot != row)
      for (int c = 0; c < m.cols(); ++c) std::swap(m(pivot, c), m(row, c));
    const FieldElement scale = inv(m(row, col));
    for (int c = col; c < m.cols(); ++c) m(row, c) *= scale;
    for (int r = 0; r < m.rows(); ++r) {
      if (r == row || m(r, col).is_zero()) continue;
      const FieldElement f = m(r, col);
      for (int c = col; c < m.cols(); ++c)
        if (!m(row, c).is_zero()) m(r, c) -= f * m(row, c);
    }
    pivots.push_back(col);
    ++row;
  }
  return RowEchelon{std::move(m), std::move(pivots)};
}

std::vector<Vector> nullspace(const DenseMatrix& m) {
  const RowEchelon e = rref(m);
  std::vector<bool> is_pivot(std::size_t(m.cols()), false);
  for (int c : e.pivots) is_pivot[std::size_t(c)] = true;

  std::vector<Vector> basis;
  for (int free = 0; free < m.cols(); ++free) {
    if (is_pivot[std::size_t(free)]) continue;
    Vector v(std::size_t(m.cols()), FieldElement::zero(m.field()));
    v[std::size_t(free)] = FieldElement::one(m.field());
    for (int r = 0; r < e.rank(); ++r)
      v[std::size_t(e.pivots[std::size_t(r)])] = -e.reduced(r, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::vector<int> independent_images(const DenseMatrix& m, const std::vector<Vector>& vectors) {
  std::vector<int> chosen;
  // rows of `acc` are the images chosen so far, kept in echelon form
  std::vector<Vector> acc;
  std::vector<int> acc_pivot;
  for (int k = 0; k < int(vectors.size()); ++k) {
    Vector y = m.apply(vectors[std::size_t(k)]);
    for (std::size_t r = 0; r < acc.size(); ++r) {
      const FieldElement f = y[std::size_t(acc_pivot[r])];
      if (f.is_zero()) continue;
      for (std::size_t c = 0; c < y.size(); ++c) y[c] -= f * acc[r][c];
    }
    int pivot = -1;
    for (int c = 0; c < int(y.size()); ++c)
      if (!y[std::size_t(c)].is_zero()) {
        pivot = c;
        break;
      }
    if (pivot < 0) continue;
    const FieldElement s = inv(y[std::size_t(pivot)]);
    for (auto& v : y) v *= s;
    // keep earlier rows reduced at the new pivot
    for (std::size_t r = 0; r < acc.size(); ++r) {
      const FieldElement f = acc[r][std::size_t(pivot)];
      if (f.is_zero()) continue;
      for (std::size_t c = 0; c < y.size(); ++c) acc[r][c] -= f * y[c];
    }
    acc.push_back(std::move(y));
    acc_pivot.push_back(pivot);
    chosen.push_back(k);
  }
  return chosen;
}

}  // namespace zclass
