#pragma once

#include <random>

#include "oracle.hpp"
#include "zclass/trimatrix.hpp"

namespace testing_support {

inline oracle::Dense to_dense(const zclass::TriMatrix& m) {
  oracle::Dense d(std::size_t(m.dim()), std::vector<std::int64_t>(std::size_t(m.dim()), 0));
  for (int i = 0; i < m.dim(); ++i)
    for (int j = i; j < m.dim(); ++j) d[std::size_t(i)][std::size_t(j)] = m.residue(i, j);
  return d;
}

inline zclass::TriMatrix from_dense(const zclass::FieldSpec& f, const oracle::Dense& d) {
  return zclass::TriMatrix::from_rows(f, d);
}

inline zclass::TriMatrix random_element(int n, std::uint32_t q, std::mt19937_64& rng) {
  const zclass::GroupIndex g(n, zclass::FieldSpec::prime(q));
  return g.element(rng() % g.size());
}

inline zclass::TriMatrix random_unipotent(int n, std::uint32_t q, std::mt19937_64& rng) {
  const zclass::GroupIndex g(n, zclass::FieldSpec::prime(q), zclass::Filter::unipotent);
  return g.element(rng() % g.size());
}

}  // namespace testing_support
