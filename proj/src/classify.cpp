#include "zclass/classify.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <unordered_set>

#include "zclass/belitskii.hpp"
#include "zclass/centralizer.hpp"
#include "zclass/parallel.hpp"

namespace zclass {

namespace {

constexpr std::string_view kChar2Flag = "char-2 proxy";

std::uint64_t saturating_pow(std::uint64_t base, int exp, std::uint64_t cap) {
  std::uint64_t r = 1;
  for (int i = 0; i < exp; ++i) {
    if (base != 0 && r > cap / base) return cap + 1;
    r *= base;
  }
  return r;
}

void require_finite(const TriMatrix& m, const char* what) {
  if (!m.field().is_prime())
    throw Error(ErrorCode::not_enumerable, std::string(what) + " needs a finite field");
}

void require_compatible(const TriMatrix& a, const TriMatrix& b) {
  if (a.dim() != b.dim())
    throw Error(ErrorCode::dimension_mismatch,
                std::to_string(a.dim()) + " vs " + std::to_string(b.dim()));
  require_same_field(a.field(), b.field());
}

// Modular inverse of a modulo m (m >= 1, gcd(a, m) = 1); 0 when m == 1.
std::uint64_t inverse_mod(std::uint64_t a, std::uint64_t m) {
  if (m == 1) return 0;
  BigInt r;
  if (mpz_invert(r.get_mpz_t(), BigInt(static_cast<unsigned long>(a % m)).get_mpz_t(),
                 BigInt(static_cast<unsigned long>(m)).get_mpz_t()) == 0)
    throw Error(ErrorCode::internal_error, "no inverse modulo " + std::to_string(m));
  return r.get_ui();
}

}  // namespace

// ---------------------------------------------------------------------------
// Partitions and patterns

std::vector<int> Partition::parts() const {
  std::vector<int> out;
  for (int i = int(exponents.size()); i >= 1; --i)
    for (int k = 0; k < exponents[std::size_t(i - 1)]; ++k) out.push_back(i);
  return out;
}

std::string Partition::to_string() const {
  std::string out;
  for (int i = 1; i <= int(exponents.size()); ++i) {
    const int k = exponents[std::size_t(i - 1)];
    if (k == 0) continue;
    if (!out.empty()) out += ' ';
    out += std::to_string(i) + "^" + std::to_string(k);
  }
  return out;
}

namespace {

void partitions_into(int remaining, int max_part, std::vector<int>& prefix,
                     std::vector<std::vector<int>>& out) {
  if (remaining == 0) {
    out.push_back(prefix);
    return;
  }
  for (int part = std::min(remaining, max_part); part >= 1; --part) {
    prefix.push_back(part);
    partitions_into(remaining - part, part, prefix, out);
    prefix.pop_back();
  }
}

Partition from_parts(int n, const std::vector<int>& parts) {
  Partition p{n, std::vector<int>(std::size_t(n), 0)};
  for (int part : parts) ++p.exponents[std::size_t(part - 1)];
  return p;
}

}  // namespace

std::vector<Partition> partitions(int n) {
  if (n < 1 || n > 20) throw Error(ErrorCode::invalid_argument, "partitions need 1 <= n <= 20");
  std::vector<std::vector<int>> lists;
  std::vector<int> prefix;
  partitions_into(n, n, prefix, lists);
  std::vector<Partition> out;
  for (const auto& parts : lists) out.push_back(from_parts(n, parts));
  return out;
}

BigInt partition_term(const Partition& lambda) {
  auto factorial = [](unsigned long k) {
    BigInt f;
    mpz_fac_ui(f.get_mpz_t(), k);
    return f;
  };
  BigInt denominator = 1;
  for (int j = 1; j <= int(lambda.exponents.size()); ++j) {
    const int k = lambda.exponents[std::size_t(j - 1)];
    BigInt jf = factorial(static_cast<unsigned long>(j));
    BigInt power;
    mpz_pow_ui(power.get_mpz_t(), jf.get_mpz_t(), static_cast<unsigned long>(k));
    denominator *= power * factorial(static_cast<unsigned long>(k));
  }
  return factorial(static_cast<unsigned long>(lambda.n)) / denominator;
}

BigInt semisimple_zclass_count(int n) {
  BigInt total = 0;
  for (const Partition& p : partitions(n)) total += partition_term(p);
  return total;
}

int DiagonalPattern::distinct() const {
  int m = -1;
  for (int s : symbols) m = std::max(m, s);
  return m + 1;
}

Partition DiagonalPattern::profile() const {
  std::vector<int> counts(std::size_t(distinct()), 0);
  for (int s : symbols) ++counts[std::size_t(s)];
  return from_parts(dim(), counts);
}

std::string DiagonalPattern::to_string() const {
  std::string out;
  for (int s : symbols) out += char('a' + s);
  return out;
}

DiagonalPattern canonical_pattern(std::span<const int> labels) {
  std::vector<int> seen;
  DiagonalPattern p;
  for (int label : labels) {
    auto it = std::find(seen.begin(), seen.end(), label);
    if (it == seen.end()) {
      p.symbols.push_back(int(seen.size()));
      seen.push_back(label);
    } else {
      p.symbols.push_back(int(it - seen.begin()));
    }
  }
  return p;
}

DiagonalPattern diagonal_pattern(const TriMatrix& m) {
  std::vector<FieldElement> diag = m.diagonal_entries();
  std::vector<int> labels;
  for (std::size_t i = 0; i < diag.size(); ++i) {
    std::size_t first = i;
    for (std::size_t k = 0; k < i; ++k)
      if (diag[k] == diag[i]) {
        first = k;
        break;
      }
    labels.push_back(int(first));
  }
  return canonical_pattern(labels);
}

std::vector<PatternGroup> pattern_representatives(int n) {
  if (n < 1 || n > kMaxDim) throw Error(ErrorCode::invalid_argument, "patterns need 1 <= n <= 8");
  std::vector<PatternGroup> out;
  for (const Partition& lambda : partitions(n)) {
    std::vector<int> word;
    const std::vector<int> parts = lambda.parts();
    for (int s = 0; s < int(parts.size()); ++s)
      for (int k = 0; k < parts[std::size_t(s)]; ++k) word.push_back(s);
    std::sort(word.begin(), word.end());
    std::set<DiagonalPattern> seen;
    do {
      seen.insert(canonical_pattern(word));
    } while (std::next_permutation(word.begin(), word.end()));
    out.push_back({lambda, std::vector<DiagonalPattern>(seen.begin(), seen.end())});
  }
  return out;
}

TriMatrix instantiate_pattern(const DiagonalPattern& pattern, std::uint32_t q) {
  const FieldSpec field = FieldSpec::prime(q);
  if (pattern.dim() < kMinDim || pattern.dim() > kMaxDim)
    throw Error(ErrorCode::unsupported_dimension, "pattern length " + std::to_string(pattern.dim()));
  if (std::uint64_t(pattern.distinct()) > q - 1)
    throw Error(ErrorCode::insufficient_eigenvalues,
                std::to_string(pattern.distinct()) + " distinct eigenvalues needed, F_" +
                    std::to_string(q) + " has " + std::to_string(q - 1) + " nonzero elements");
  std::vector<std::int64_t> diag;
  for (int s : pattern.symbols) diag.push_back(s + 1);
  return TriMatrix::diagonal(field, diag);
}

// ---------------------------------------------------------------------------
// Conjugacy

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::conjugate: return "conjugate";
    case Verdict::not_conjugate: return "not-conjugate";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "?";
}

std::string to_string(Relation r) {
  return r == Relation::conjugacy ? "conjugacy" : "z-equivalence";
}

namespace {

TriMatrix combine(std::span<const TriMatrix> vectors, std::span<const FieldElement> coords,
                  const TriMatrix& zero) {
  TriMatrix m = zero;
  for (std::size_t k = 0; k < vectors.size(); ++k) {
    if (coords[k].is_zero()) continue;
    TriMatrix term = vectors[k];
    term *= coords[k];
    m += term;
  }
  return m;
}

ConjugacyResult accept(const TriMatrix& a, const TriMatrix& b, TriMatrix p, std::string certificate,
                       std::uint64_t scanned) {
  if (conjugate(p, a) != b)
    throw Error(ErrorCode::internal_error, "conjugacy witness fails P A P^-1 = B");
  return ConjugacyResult{Verdict::conjugate, std::move(p), std::move(certificate), scanned};
}

}  // namespace

ConjugacyResult conjugacy_test(const TriMatrix& a, const TriMatrix& b, std::uint64_t scan_budget,
                               int jobs) {
  require_compatible(a, b);
  const int n = a.dim();
  const FieldSpec field = a.field();
  if (a.diagonal_entries() != b.diagonal_entries())
    return {Verdict::not_conjugate, std::nullopt, "diagonals differ", 0};

  const std::vector<TriMatrix> basis = intertwiner_basis(a, b);
  const DiagonalSplit split = split_by_diagonal(basis);
  const int d = int(split.visible.size());
  for (int i = 0; i < n; ++i) {
    const bool vanishes = std::all_of(split.visible.begin(), split.visible.end(),
                                      [&](const TriMatrix& v) { return v.is_zero_entry(i, i); });
    if (vanishes)
      return {Verdict::not_conjugate, std::nullopt,
              "diagonal entry " + std::to_string(i + 1) + " is zero on every solution of PA = BP", 0};
  }

  const TriMatrix zero = TriMatrix::zero(n, field);
  if (field.is_prime()) {
    const std::uint32_t q = field.characteristic();
    const std::uint64_t total = saturating_pow(q, d, scan_budget);
    const std::uint64_t tried = std::min(total, scan_budget);
    // Residues of the visible diagonals, vector-major.
    std::vector<std::uint32_t> diag(static_cast<std::size_t>(d * n), 0u);
    for (int k = 0; k < d; ++k)
      for (int i = 0; i < n; ++i) diag[std::size_t(k * n + i)] = split.visible[std::size_t(k)].residue(i, i);
    auto coords_of = [&](std::uint64_t index) {
      std::vector<std::uint32_t> c(static_cast<std::size_t>(d), 0u);
      for (int k = 0; k < d; ++k) {
        c[std::size_t(k)] = std::uint32_t(index % q);
        index /= q;
      }
      return c;
    };
    auto has_unit_diagonal = [&](std::uint64_t index) {
      const std::vector<std::uint32_t> c = coords_of(index);
      for (int i = 0; i < n; ++i) {
        std::uint32_t s = 0;
        for (int k = 0; k < d; ++k)
          s = modp::add(s, modp::mul(c[std::size_t(k)], diag[std::size_t(k * n + i)], q), q);
        if (s == 0) return false;
      }
      return true;
    };
    const bool exhaustive = total <= scan_budget;
    const bool curve_decides = std::uint64_t(q) > std::uint64_t(n) * std::uint64_t(d - 1);
    if (exhaustive || !curve_decides) {
      if (auto hit = parallel_find_first(tried, jobs, has_unit_diagonal)) {
        std::vector<FieldElement> coords;
        for (std::uint32_t c : coords_of(*hit)) coords.emplace_back(field, std::int64_t(c));
        return accept(a, b, combine(split.visible, coords, zero),
                      "witness found by coordinate scan", *hit + 1);
      }
      if (exhaustive)
        return {Verdict::not_conjugate, std::nullopt,
                "exhaustive scan of " + std::to_string(total) + " diagonal coordinate vectors", total};
      return {Verdict::inconclusive, std::nullopt,
              "scan budget of " + std::to_string(scan_budget) + " exhausted before " +
                  std::to_string(q) + "^" + std::to_string(d) + " vectors",
              tried};
    }
  }

  // Moment curve: each diagonal entry is a nonzero polynomial of degree < d in t.
  const std::int64_t last = std::int64_t(n) * std::int64_t(std::max(d - 1, 0));
  for (std::int64_t t = 0; t <= last; ++t) {
    std::vector<FieldElement> coords;
    FieldElement power = FieldElement::one(field);
    for (int k = 0; k < d; ++k) {
      coords.push_back(power);
      power *= FieldElement(field, t);
    }
    TriMatrix p = combine(split.visible, coords, zero);
    if (p.is_invertible())
      return accept(a, b, std::move(p), "witness on the moment curve at t = " + std::to_string(t),
                    std::uint64_t(t + 1));
  }
  throw Error(ErrorCode::internal_error, "moment curve search exhausted without a witness");
}

bool ClassTable::has_flag(std::string_view flag) const {
  return std::find(flags.begin(), flags.end(), flag) != flags.end();
}

namespace {

void check_orbit_stabilizer(const ClassTable& table, std::uint32_t q) {
  const BigInt order = group_order(table.n, q);
  for (const ClassEntry& c : table.classes) {
    const BigInt stabilizer = centralizer_order(c.representative);
    if (BigInt(static_cast<unsigned long>(c.size)) * stabilizer != order)
      throw Error(ErrorCode::internal_error,
                  "class size " + std::to_string(c.size) + " times centralizer order " +
                      stabilizer.get_str() + " is not |B_n(F_q)| = " + order.get_str());
  }
}

void unipotent_by_canonical_form(ClassTable& table, const GroupIndex& universe, int jobs) {
  const std::uint64_t size = universe.size();
  std::vector<TriMatrix> outputs(size);
  parallel_for(size, jobs, [&](std::uint64_t i) { outputs[i] = canonical_form(universe.element(i)).output; });

  std::map<TriMatrix, std::vector<std::uint64_t>> groups;
  for (std::uint64_t i = 0; i < size; ++i) groups[outputs[i]].push_back(i);

  std::vector<std::pair<int, ClassEntry>> listed;
  std::vector<ClassEntry> unlisted;
  for (auto& [form, members] : groups) {
    ClassEntry entry{form, members.size(), std::move(members)};
    if (auto k = find_representative(form))
      listed.emplace_back(*k, std::move(entry));
    else
      unlisted.push_back(std::move(entry));
  }
  std::sort(listed.begin(), listed.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  for (auto& [k, entry] : listed) table.classes.push_back(std::move(entry));
  for (auto& entry : unlisted) table.classes.push_back(std::move(entry));
  if (!unlisted.empty()) table.flags.push_back("canonical form outside representative table");

  // Every pair of representatives must be provably non-conjugate.
  const std::size_t k = table.classes.size();
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j) pairs.emplace_back(i, j);
  std::vector<Verdict> verdicts(pairs.size());
  parallel_for(pairs.size(), jobs, [&](std::uint64_t t) {
    verdicts[t] = conjugacy_test(table.classes[pairs[t].first].representative,
                                 table.classes[pairs[t].second].representative)
                      .verdict;
  });
  bool inconclusive = false;
  for (std::size_t t = 0; t < pairs.size(); ++t) {
    if (verdicts[t] == Verdict::conjugate)
      throw Error(ErrorCode::internal_error,
                  "canonical forms " + std::to_string(pairs[t].first) + " and " +
                      std::to_string(pairs[t].second) + " are conjugate");
    inconclusive |= verdicts[t] == Verdict::inconclusive;
  }
  table.flags.push_back(inconclusive ? "separation inconclusive" : "separation certified");
}

void orbits_by_generators(ClassTable& table, const GroupIndex& universe, std::uint32_t q) {
  const std::uint64_t size = universe.size();
  std::vector<TriMatrix> gens = group_generators(table.n, q);
  std::vector<TriMatrix> gen_inv;
  for (const auto& g : gens) gen_inv.push_back(inverse(g));
  std::vector<bool> seen(size, false);
  for (std::uint64_t start = 0; start < size; ++start) {
    if (seen[start]) continue;
    ClassEntry entry{universe.element(start), 0, {}};
    std::deque<std::uint64_t> queue{start};
    seen[start] = true;
    while (!queue.empty()) {
      const std::uint64_t cur = queue.front();
      queue.pop_front();
      entry.members.push_back(cur);
      const TriMatrix x = universe.element(cur);
      for (std::size_t g = 0; g < gens.size(); ++g) {
        const std::uint64_t next = universe.index_of(multiply(multiply(gens[g], x), gen_inv[g]));
        if (!seen[next]) {
          seen[next] = true;
          queue.push_back(next);
        }
      }
    }
    std::sort(entry.members.begin(), entry.members.end());
    entry.size = entry.members.size();
    table.classes.push_back(std::move(entry));
  }
}

void group_by_conjugacy_test(ClassTable& table, const GroupIndex& universe) {
  const std::uint64_t size = universe.size();
  DisjointSets sets(size);
  auto diag_key = [](const TriMatrix& m) {
    std::vector<std::uint32_t> key;
    for (int i = 0; i < m.dim(); ++i) key.push_back(m.residue(i, i));
    return key;
  };
  std::map<std::vector<std::uint32_t>, std::vector<std::uint64_t>> reps;
  bool inconclusive = false;
  for (std::uint64_t i = 0; i < size; ++i) {
    const TriMatrix m = universe.element(i);
    auto& bucket = reps[diag_key(m)];
    bool merged = false;
    for (std::uint64_t r : bucket) {
      const ConjugacyResult res = conjugacy_test(universe.element(r), m);
      inconclusive |= res.verdict == Verdict::inconclusive;
      if (res.verdict == Verdict::conjugate) {
        sets.unite(r, i);
        merged = true;
        break;
      }
    }
    if (!merged) bucket.push_back(i);
  }
  std::map<std::size_t, ClassEntry> classes;
  for (std::uint64_t i = 0; i < size; ++i) {
    const std::size_t root = sets.find(i);
    auto [it, fresh] = classes.try_emplace(root);
    if (fresh) it->second.representative = universe.element(root);
    it->second.members.push_back(i);
  }
  for (auto& [root, entry] : classes) {
    entry.size = entry.members.size();
    table.classes.push_back(std::move(entry));
  }
  if (inconclusive) table.flags.push_back("separation inconclusive");
}

}  // namespace

ClassTable conjugacy_classes(int n, std::uint32_t q, Filter filter, std::uint64_t budget, int jobs) {
  const FieldSpec field = FieldSpec::prime(q);
  const GroupIndex universe(n, field, filter);
  if (universe.size() > budget)
    throw Error(ErrorCode::too_large, "universe of " + std::to_string(universe.size()) +
                                          " elements exceeds budget " + std::to_string(budget));
  ClassTable table;
  table.n = n;
  table.field = field;
  table.universe = to_string(filter);
  table.relation = Relation::conjugacy;
  table.universe_size = universe.size();
  if (q == 2) table.flags.emplace_back(kChar2Flag);

  if (filter == Filter::unipotent && n <= 5) {
    unipotent_by_canonical_form(table, universe, jobs);
  } else if (filter == Filter::diagonal) {
    group_by_conjugacy_test(table, universe);
  } else {
    orbits_by_generators(table, universe, q);
  }
  if (filter != Filter::diagonal) check_orbit_stabilizer(table, q);
  return table;
}

// ---------------------------------------------------------------------------
// Jordan decomposition

JordanPair jordan_decompose(const TriMatrix& g) {
  require_finite(g, "Jordan decomposition");
  if (!g.is_invertible()) throw Error(ErrorCode::not_invertible, "zero diagonal entry");
  const std::uint64_t p = g.field().characteristic();
  std::uint64_t m = element_order(g);
  std::uint64_t pe = 1;
  while (m % p == 0) {
    m /= p;
    pe *= p;
  }
  const std::uint64_t y = inverse_mod(pe, m);
  const std::uint64_t x = inverse_mod(m, pe);
  JordanPair out{g, power(g, pe * y), power(g, m * x)};
  if (multiply(out.semisimple, out.unipotent) != g)
    throw Error(ErrorCode::internal_error, "g_s g_u != g");
  return out;
}

// ---------------------------------------------------------------------------
// z-equivalence

std::vector<TriMatrix> centralizer_generators(const TriMatrix& x) {
  require_finite(x, "centralizer generators");
  const CentralizerSet z = centralizer_enumerate(x);
  const GroupIndex& index = z.index();
  std::vector<TriMatrix> gens;
  std::unordered_set<std::uint64_t> subgroup{index.index_of(TriMatrix::identity(x.dim(), x.field()))};
  for (std::uint64_t candidate : z.indices()) {
    if (subgroup.contains(candidate)) continue;
    gens.push_back(index.element(candidate));
    // Closure from the identity under right multiplication by the generators.
    std::vector<std::uint64_t> frontier(subgroup.begin(), subgroup.end());
    std::sort(frontier.begin(), frontier.end());
    while (!frontier.empty()) {
      std::vector<std::uint64_t> next;
      for (std::uint64_t h : frontier) {
        const TriMatrix hm = index.element(h);
        for (const TriMatrix& g : gens) {
          const std::uint64_t prod = index.index_of(multiply(hm, g));
          if (subgroup.insert(prod).second) next.push_back(prod);
        }
      }
      frontier = std::move(next);
    }
    if (subgroup.size() == z.order()) break;
  }
  if (subgroup.size() != z.order())
    throw Error(ErrorCode::internal_error, "generated subgroup differs from the centralizer");
  return gens;
}

ZConjugacyResult zconjugacy_test(const TriMatrix& x, const TriMatrix& y, std::uint64_t budget, int jobs) {
  require_compatible(x, y);
  require_finite(x, "z-conjugacy test");
  const GroupIndex group(x.dim(), x.field());
  if (group.size() > budget)
    throw Error(ErrorCode::too_large, "|B_n(F_q)| = " + std::to_string(group.size()) +
                                          " exceeds budget " + std::to_string(budget));
  if (centralizer_order(x) != centralizer_order(y)) return {std::nullopt, 0, true};

  const std::vector<TriMatrix> gens = centralizer_generators(x);
  auto maps_onto = [&](std::uint64_t i) {
    const TriMatrix p = group.element(i);
    const TriMatrix moved = multiply(multiply(inverse(p), y), p);
    return std::all_of(gens.begin(), gens.end(), [&](const TriMatrix& g) { return commutes(g, moved); });
  };
  if (auto hit = parallel_find_first(group.size(), jobs, maps_onto))
    return {group.element(*hit), *hit + 1, false};
  return {std::nullopt, group.size(), false};
}

DisjointSets::DisjointSets(std::size_t size) : parent_(size) {
  for (std::size_t i = 0; i < size; ++i) parent_[i] = i;
}

std::size_t DisjointSets::find(std::size_t x) {
  while (parent_[x] != x) {
    parent_[x] = parent_[parent_[x]];
    x = parent_[x];
  }
  return x;
}

void DisjointSets::unite(std::size_t a, std::size_t b) {
  a = find(a);
  b = find(b);
  if (a == b) return;
  if (b < a) std::swap(a, b);
  parent_[b] = a;
}

ClassTable zclass_partition(std::span<const TriMatrix> universe, std::string universe_label,
                            std::uint64_t budget, int jobs) {
  ClassTable table;
  table.relation = Relation::z_equivalence;
  table.universe = std::move(universe_label);
  table.universe_size = universe.size();
  if (universe.empty()) return table;
  table.n = universe[0].dim();
  table.field = universe[0].field();
  for (const auto& m : universe) require_compatible(universe[0], m);
  require_finite(universe[0], "z-class partition");
  if (table.field.characteristic() == 2) table.flags.emplace_back(kChar2Flag);

  // Conjugation invariants of Z(x): its order and the dimension of its commutant.
  using Invariant = std::pair<BigInt, int>;
  std::vector<Invariant> invariants(universe.size());
  parallel_for(universe.size(), jobs, [&](std::uint64_t i) {
    const std::vector<TriMatrix> gens = centralizer_generators(universe[i]);
    invariants[i] = {centralizer_order(universe[i]), int(joint_commutant(gens).size())};
  });

  std::map<Invariant, std::vector<std::size_t>> reps;
  DisjointSets sets(universe.size());
  for (std::size_t i = 0; i < universe.size(); ++i) {
    auto& bucket = reps[invariants[i]];
    bool merged = false;
    for (std::size_t r : bucket) {
      if (zconjugacy_test(universe[r], universe[i], budget, jobs).witness) {
        sets.unite(r, i);
        merged = true;
        break;
      }
    }
    if (!merged) bucket.push_back(i);
  }

  std::map<std::size_t, ClassEntry> classes;
  for (std::size_t i = 0; i < universe.size(); ++i) {
    const std::size_t root = sets.find(i);
    auto [it, fresh] = classes.try_emplace(root);
    if (fresh) it->second.representative = universe[root];
    it->second.members.push_back(i);
  }
  for (auto& [root, entry] : classes) {
    entry.size = entry.members.size();
    table.classes.push_back(std::move(entry));
  }
  return table;
}

// ---------------------------------------------------------------------------
// Centralizers of Jordan parts

JordanCentralizerCheck jordan_centralizer_check(const TriMatrix& g, const TriMatrix& a) {
  require_compatible(g, a);
  require_finite(g, "Jordan centralizer check");
  if (!a.is_invertible()) throw Error(ErrorCode::not_invertible, "conjugating element a");
  const JordanPair jp = jordan_decompose(g);
  const GroupIndex group(g.dim(), g.field());
  const TriMatrix a_inv = inverse(a);
  const TriMatrix moved_u = multiply(multiply(a, jp.unipotent), a_inv);

  std::vector<std::uint64_t> filtered;  // Z(g_s) ∩ Z(g_u)
  std::vector<std::uint64_t> left;      // a (Z(g_s) ∩ Z(g_u)) a^{-1}
  std::vector<std::uint64_t> right;     // {h in a Z(g_s) a^{-1} : h commutes with a g_u a^{-1}}
  const CommutantBasis zs = commutant_basis(jp.semisimple);
  for_each_unit(zs.basis, [&](const TriMatrix& z) {
    const TriMatrix moved = multiply(multiply(a, z), a_inv);
    if (commutes(z, jp.unipotent)) {
      filtered.push_back(group.index_of(z));
      left.push_back(group.index_of(moved));
    }
    if (commutes(moved, moved_u)) right.push_back(group.index_of(moved));
  });
  std::sort(filtered.begin(), filtered.end());
  std::sort(left.begin(), left.end());
  std::sort(right.begin(), right.end());
  const CentralizerSet zg = centralizer_enumerate(g);

  JordanCentralizerCheck out;
  out.conjugation_identity = left == right;
  out.intersection_identity = zg.indices() == filtered;
  out.left_size = left.size();
  out.right_size = right.size();
  out.centralizer_size = zg.order();
  return out;
}

}  // namespace zclass

namespace zclass {

ClassTable zclass_classes(int n, std::uint32_t q, Filter filter, std::uint64_t budget, int jobs) {
  const GroupIndex index(n, FieldSpec::prime(q), filter);
  if (index.size() > budget)
    throw Error(ErrorCode::too_large, "universe of " + std::to_string(index.size()) + " elements");
  if (filter == Filter::diagonal) {
    std::vector<TriMatrix> elements;
    for (std::uint64_t i = 0; i < index.size(); ++i) elements.push_back(index.element(i));
    ClassTable t = zclass_partition(elements, to_string(filter), budget, jobs);
    t.n = n;
    t.field = index.field();
    return t;
  }

  const ClassTable conj = conjugacy_classes(n, q, filter, budget, jobs);
  std::vector<TriMatrix> reps;
  for (const auto& c : conj.classes) reps.push_back(c.representative);
  const ClassTable zreps = zclass_partition(reps, to_string(filter), budget, jobs);

  std::map<std::uint64_t, std::vector<std::uint64_t>> merged;
  for (const auto& z : zreps.classes) {
    std::vector<std::uint64_t> members;
    for (std::uint64_t r : z.members)
      members.insert(members.end(), conj.classes[r].members.begin(), conj.classes[r].members.end());
    std::sort(members.begin(), members.end());
    merged.emplace(members.front(), std::move(members));
  }

  ClassTable table;
  table.n = n;
  table.field = index.field();
  table.universe = to_string(filter);
  table.relation = Relation::z_equivalence;
  table.universe_size = index.size();
  table.flags = zreps.flags;
  for (auto& [first, members] : merged) {
    ClassEntry e;
    e.representative = index.element(first);
    e.size = members.size();
    e.members = std::move(members);
    table.classes.push_back(std::move(e));
  }
  return table;
}

}  // namespace zclass
