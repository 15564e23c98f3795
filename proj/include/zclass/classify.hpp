#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "zclass/trimatrix.hpp"

namespace zclass {

// Partitions and diagonal patterns.

/// A partition of n in exponent form: exponents[i - 1] parts of size i.
struct Partition {
  int n = 0;
  std::vector<int> exponents;

  /// Parts in non-increasing order.
  std::vector<int> parts() const;
  /// Exponent notation, e.g. "1^1 2^2".
  std::string to_string() const;

  friend bool operator==(const Partition&, const Partition&) = default;
};

/// All partitions of n, 1 <= n <= 20, in reverse lexicographic order of their
/// non-increasing part lists: (n), (n-1, 1), ..., (1, ..., 1).
std::vector<Partition> partitions(int n);

/// n! / prod_j (j!)^{k_j} k_j!: the number of ways to split n diagonal
/// positions into blocks with the partition's block sizes.
BigInt partition_term(const Partition& lambda);

/// Number of semisimple z-classes in B_n over a large enough field: the sum
/// of partition_term over all partitions of n.
BigInt semisimple_zclass_count(int n);

/// An assignment of eigenvalue symbols to diagonal positions, with symbols
/// named 0, 1, 2, ... by first occurrence. Two assignments that differ by
/// renaming symbols of equal multiplicity get the same canonical form.
struct DiagonalPattern {
  std::vector<int> symbols;

  int dim() const { return int(symbols.size()); }
  int distinct() const;
  /// The partition formed by the symbol multiplicities.
  Partition profile() const;
  std::string to_string() const;

  friend bool operator==(const DiagonalPattern&, const DiagonalPattern&) = default;
  friend auto operator<=>(const DiagonalPattern&, const DiagonalPattern&) = default;
};

/// Canonical pattern of arbitrary labels (first-occurrence renaming).
DiagonalPattern canonical_pattern(std::span<const int> labels);
/// Canonical pattern of the diagonal of m.
DiagonalPattern diagonal_pattern(const TriMatrix& m);

struct PatternGroup {
  Partition partition;
  std::vector<DiagonalPattern> patterns;
};

/// For each partition of n (same order as partitions(n)), the distinct
/// canonical patterns obtained from all orderings of its multiset of
/// symbols. n <= 8.
std::vector<PatternGroup> pattern_representatives(int n);

/// Diagonal matrix over F_q giving the k-th symbol the residue k + 1. Throws
/// InsufficientEigenvalues when q - 1 < number of symbols.
TriMatrix instantiate_pattern(const DiagonalPattern& pattern, std::uint32_t q);

// Conjugacy.

enum class Verdict { conjugate, not_conjugate, inconclusive };
std::string to_string(Verdict v);

struct ConjugacyResult {
  Verdict verdict = Verdict::inconclusive;
  /// P with P A P^{-1} = B, when verdict == conjugate.
  std::optional<TriMatrix> witness;
  /// How the verdict was reached.
  std::string certificate;
  /// Candidate diagonals examined by the search.
  std::uint64_t scanned = 0;
};

inline constexpr std::uint64_t kDefaultScanBudget = std::uint64_t(1) << 22;

/// Decides whether B = P A P^{-1} for some P in B_n(k).
///
/// The solutions of P A = B P form a linear space. It is rebased so that d <= n
/// vectors carry linearly independent diagonals and the rest have zero
/// diagonal; a solution is invertible iff its diagonal has no zero entry, which
/// depends only on the d visible coordinates. Then:
///  - a diagonal position vanishing on the whole space gives not_conjugate;
///  - over F_q with q^d <= scan_budget all q^d visible coordinate vectors are
///    scanned, so a miss is a proof;
///  - over Q, or when q > n(d - 1), the diagonal entries are nonzero
///    polynomials of degree < d along t -> (1, t, ..., t^{d-1}), and one of
///    t = 0..n(d-1) avoids all their roots;
///  - otherwise the first scan_budget vectors are tried and a miss is
///    inconclusive.
ConjugacyResult conjugacy_test(const TriMatrix& a, const TriMatrix& b,
                               std::uint64_t scan_budget = kDefaultScanBudget, int jobs = 1);

enum class Relation { conjugacy, z_equivalence };
std::string to_string(Relation r);

struct ClassEntry {
  TriMatrix representative;
  std::uint64_t size = 0;
  /// Indices of the members, in the class table's universe numbering.
  std::vector<std::uint64_t> members;
};

struct ClassTable {
  int n = 0;
  FieldSpec field;
  /// "all", "unipotent", "diagonal", or "custom" for caller-supplied universes.
  std::string universe;
  Relation relation = Relation::conjugacy;
  std::uint64_t universe_size = 0;
  std::vector<ClassEntry> classes;
  /// "char-2 proxy" for q = 2; other notes about how the table was certified.
  std::vector<std::string> flags;

  bool has_flag(std::string_view flag) const;
};

inline constexpr std::uint64_t kDefaultClassBudget = std::uint64_t(1) << 22;

/// Partition of the elements of B_n(F_q) passing `filter` into conjugacy
/// classes. Members are GroupIndex(n, F_q, filter) indices.
///
/// Unipotent universes with n <= 5 are grouped by Belitskii canonical form;
/// every pair of class representatives is then run through conjugacy_test,
/// and a conjugate pair raises InternalError. Classes whose canonical form
/// is not in the listed representative table are kept and flagged. Other
/// universes closed under conjugation are split into orbits by conjugating
/// with group generators. The diagonal universe is not closed under
/// conjugation, so it is grouped with conjugacy_test.
///
/// For conjugation-closed universes each class size is checked against
/// |B_n(F_q)| / |centralizer of its representative|.
ClassTable conjugacy_classes(int n, std::uint32_t q, Filter filter,
                             std::uint64_t budget = kDefaultClassBudget, int jobs = 1);

// Jordan decomposition.

struct JordanPair {
  TriMatrix g;
  TriMatrix semisimple;
  TriMatrix unipotent;
};

/// g = g_s g_u with g_s of order prime to p and g_u of p-power order, both
/// powers of g. Finite fields only.
JordanPair jordan_decompose(const TriMatrix& g);

// z-equivalence.

struct ZConjugacyResult {
  std::optional<TriMatrix> witness;
  /// Candidates P examined (the witness index + 1, or the group order).
  std::uint64_t scanned = 0;
  bool orders_differ = false;
};

/// Smallest-index P in B_n(F_q) with P Z(x) P^{-1} = Z(y), if any.
///
/// Centralizer orders are compared first. Otherwise a generating set of
/// Z(x) is extracted and each P is accepted when every generator commutes
/// with P^{-1} y P, i.e. Z(x) <= Z(P^{-1} y P); equal orders make this an
/// equality. Throws TooLarge when |B_n(F_q)| exceeds `budget`.
ZConjugacyResult zconjugacy_test(const TriMatrix& x, const TriMatrix& y,
                                 std::uint64_t budget = kDefaultGroupBudget, int jobs = 1);

/// A generating set of the centralizer of x in B_n(F_q), chosen greedily in
/// GroupIndex order.
std::vector<TriMatrix> centralizer_generators(const TriMatrix& x);

/// z-classes of `universe`. Elements are bucketed by the order of their
/// centralizer and the dimension of its commutant, and each element is tested only against the class representatives already
/// found in its bucket. Members are positions in `universe`.
ClassTable zclass_partition(std::span<const TriMatrix> universe, std::string universe_label = "custom",
                            std::uint64_t budget = kDefaultGroupBudget, int jobs = 1);

/// z-classes of the elements of B_n(F_q) passing `filter`, with members as
/// GroupIndex(n, F_q, filter) indices and each class represented by its
/// smallest member. Conjugate elements are z-equivalent, so conjugation-closed
/// universes are first split into conjugacy classes and only their
/// representatives are compared. Same result as zclass_partition on the
/// whole universe.
ClassTable zclass_classes(int n, std::uint32_t q, Filter filter, std::uint64_t budget = kDefaultGroupBudget,
                          int jobs = 1);

// Centralizers of Jordan parts.

struct JordanCentralizerCheck {
  /// a Z_{Z(g_s)}(g_u) a^{-1} == Z_{a Z(g_s) a^{-1}}(a g_u a^{-1}).
  bool conjugation_identity = false;
  /// Z(g) == Z(g_s) ∩ Z(g_u).
  bool intersection_identity = false;
  std::uint64_t left_size = 0;
  std::uint64_t right_size = 0;
  std::uint64_t centralizer_size = 0;

  bool holds() const { return conjugation_identity && intersection_identity; }
};

/// Both sides of each identity as explicit sorted index sets in B_n(F_q).
JordanCentralizerCheck jordan_centralizer_check(const TriMatrix& g, const TriMatrix& a);

/// Union-find over [0, size) with path halving; the smaller root wins a union.
class DisjointSets {
 public:
  explicit DisjointSets(std::size_t size);
  std::size_t find(std::size_t x);
  void unite(std::size_t a, std::size_t b);

 private:
  std::vector<std::size_t> parent_;
};

}  // namespace zclass
