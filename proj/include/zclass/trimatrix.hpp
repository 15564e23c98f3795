#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <ranges>
#include <span>
#include <string>
#include <vector>

#include "zclass/field.hpp"

namespace zclass {

inline constexpr int kMinDim = 2;
inline constexpr int kMaxDim = 8;
inline constexpr int kMaxSlots = kMaxDim * (kMaxDim + 1) / 2;

/// Number of on-or-above-diagonal entries of an n x n upper triangular matrix.
constexpr int slot_count(int n) { return n * (n + 1) / 2; }

/// Packed row-major position of (i, j), i <= j, 0-based.
constexpr int slot_of(int n, int i, int j) { return i * n - i * (i - 1) / 2 + (j - i); }

/// An n x n upper triangular matrix over F_p or Q. Entries below the diagonal
/// are not stored. Indices are 0-based throughout the C++ interface.
///
/// Over F_p the packed entries live inline (no allocation), which keeps the
/// brute-force scans over B_n(F_q) cheap. Over Q they are GMP rationals.
class TriMatrix {
 public:
  TriMatrix() = default;

  static TriMatrix zero(int n, const FieldSpec& field);
  static TriMatrix identity(int n, const FieldSpec& field);
  static TriMatrix diagonal(const FieldSpec& field, std::span<const std::int64_t> entries);
  static TriMatrix diagonal(std::span<const FieldElement> entries);
  /// Rows must form an upper triangular n x n array; below-diagonal entries must be 0.
  static TriMatrix from_rows(const FieldSpec& field,
                             const std::vector<std::vector<std::int64_t>>& rows);
  static TriMatrix from_rows(const FieldSpec& field,
                             const std::vector<std::vector<FieldElement>>& rows);

  int dim() const noexcept { return n_; }
  int slots() const noexcept { return slot_count(n_); }
  const FieldSpec& field() const noexcept { return field_; }

  FieldElement at(int i, int j) const;
  void set(int i, int j, const FieldElement& value);
  void set(int i, int j, std::int64_t value);

  /// Packed-slot access, used by the linear solvers.
  FieldElement slot(int k) const;
  void set_slot(int k, const FieldElement& value);

  /// Raw residue access for F_p matrices (no bounds or field checks).
  std::uint32_t residue(int i, int j) const { return res_[slot_of(n_, i, j)]; }
  void set_residue(int i, int j, std::uint32_t v) { res_[slot_of(n_, i, j)] = v; }
  std::span<const std::uint32_t> residues() const { return {res_.data(), std::size_t(slots())}; }
  std::span<std::uint32_t> residues() { return {res_.data(), std::size_t(slots())}; }

  bool is_zero_entry(int i, int j) const;
  bool is_one_entry(int i, int j) const;

  std::vector<FieldElement> diagonal_entries() const;
  bool is_invertible() const;
  bool is_unipotent() const;
  bool is_diagonal() const;
  bool is_strictly_upper() const;
  bool is_identity() const;
  /// All stored entries lie in {0, 1}.
  bool is_zero_one() const;

  /// Dense rows, including the zeros below the diagonal.
  std::vector<std::vector<FieldElement>> rows() const;

  TriMatrix& operator+=(const TriMatrix& rhs);
  TriMatrix& operator-=(const TriMatrix& rhs);
  TriMatrix& operator*=(const FieldElement& scalar);

  friend bool operator==(const TriMatrix& a, const TriMatrix& b);
  /// Total order on (n, field, packed entries); used for sorted element sets.
  friend bool operator<(const TriMatrix& a, const TriMatrix& b);

  std::size_t hash() const noexcept;

 private:
  void check_position(int i, int j) const;

  int n_ = 0;
  FieldSpec field_;
  std::array<std::uint32_t, kMaxSlots> res_{};
  std::vector<Rational> rat_;
};

TriMatrix operator+(TriMatrix a, const TriMatrix& b);
TriMatrix operator-(TriMatrix a, const TriMatrix& b);
TriMatrix operator*(const TriMatrix& a, const TriMatrix& b);

TriMatrix multiply(const TriMatrix& a, const TriMatrix& b);
/// Back-substitution; throws NotInvertible on a zero diagonal entry.
TriMatrix inverse(const TriMatrix& a);
/// P * A * P^{-1}.
TriMatrix conjugate(const TriMatrix& p, const TriMatrix& a);
/// AB - BA.
TriMatrix commutator(const TriMatrix& a, const TriMatrix& b);
bool commutes(const TriMatrix& a, const TriMatrix& b);
TriMatrix power(const TriMatrix& a, std::uint64_t e);

/// I + e_ij(alpha): the identity with alpha added at (i, j). With i == j this
/// is the row/column scaling transformation, which needs alpha != -1 to stay
/// invertible.
TriMatrix elementary(int n, int i, int j, const FieldElement& alpha);

/// Multiplicative order of g in B_n(F_q).
std::uint64_t element_order(const TriMatrix& g);

/// Which subset of B_n(F_q) an index ranges over.
enum class Filter { all, unipotent, diagonal };

std::string to_string(Filter filter);
Filter parse_filter(std::string_view text);

inline constexpr std::uint64_t kDefaultGroupBudget = std::uint64_t(1) << 26;

/// Bijection between [0, size) and the elements of B_n(F_q) (or its unipotent
/// or diagonal subset). Diagonal slots are digits in 1..q-1, strictly upper
/// slots digits in 0..q-1, packed slot 0 least significant. Index 0 is the
/// identity for every filter.
class GroupIndex {
 public:
  GroupIndex(int n, const FieldSpec& field, Filter filter = Filter::all);

  int dim() const noexcept { return n_; }
  const FieldSpec& field() const noexcept { return field_; }
  Filter filter() const noexcept { return filter_; }

  /// Throws TooLarge if the count does not fit in 64 bits.
  std::uint64_t size() const;

  TriMatrix element(std::uint64_t index) const;
  /// Throws InvalidArgument if m is not in this universe.
  std::uint64_t index_of(const TriMatrix& m) const;
  bool contains(const TriMatrix& m) const;

 private:
  int n_;
  FieldSpec field_;
  Filter filter_;
  std::uint32_t q_;
  bool overflow_ = false;
  std::uint64_t size_ = 0;
};

/// (q-1)^n q^{n(n-1)/2} as an exact integer.
BigInt group_order(int n, std::uint32_t q);

/// Lazily generated elements of B_n(F_q) in index order.
inline auto enumerate_group(int n, std::uint32_t q, std::uint64_t budget = kDefaultGroupBudget) {
  GroupIndex index(n, FieldSpec::prime(q), Filter::all);
  if (index.size() > budget)
    throw Error(ErrorCode::too_large, "|B_" + std::to_string(n) + "(F_" + std::to_string(q) +
                                          ")| = " + std::to_string(index.size()) + " exceeds budget");
  return std::views::iota(std::uint64_t(0), index.size()) |
         std::views::transform([index](std::uint64_t i) { return index.element(i); });
}

/// Lazily generated unipotent elements of B_n(F_q) in index order.
inline auto enumerate_unipotent(int n, std::uint32_t q, std::uint64_t budget = kDefaultGroupBudget) {
  GroupIndex index(n, FieldSpec::prime(q), Filter::unipotent);
  if (index.size() > budget)
    throw Error(ErrorCode::too_large, "unipotent count " + std::to_string(index.size()) +
                                          " exceeds budget");
  return std::views::iota(std::uint64_t(0), index.size()) |
         std::views::transform([index](std::uint64_t i) { return index.element(i); });
}

/// Generators of B_n(F_q): I + e_ij(1) for i < j, and the diagonal matrices
/// carrying a primitive root in one position.
std::vector<TriMatrix> group_generators(int n, std::uint32_t q);

}  // namespace zclass

template <>
struct std::hash<zclass::TriMatrix> {
  std::size_t operator()(const zclass::TriMatrix& m) const noexcept { return m.hash(); }
};
