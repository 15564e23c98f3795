#include "zclass/trimatrix.hpp"

#include <algorithm>
#include <numeric>

namespace zclass {

namespace {

void require_dim(int n) {
  if (n < kMinDim || n > kMaxDim)
    throw Error(ErrorCode::unsupported_dimension,
                "dimension " + std::to_string(n) + " outside [2, 8]");
}

void require_compatible(const TriMatrix& a, const TriMatrix& b) {
  if (a.dim() != b.dim())
    throw Error(ErrorCode::dimension_mismatch,
                std::to_string(a.dim()) + " vs " + std::to_string(b.dim()));
  require_same_field(a.field(), b.field());
}

// Scalar-generic kernels. `Entries` is either the inline residue array or the
// rational vector; `Ops` supplies the field arithmetic.
struct PrimeOps {
  std::uint32_t p;
  std::uint32_t zero() const { return 0; }
  std::uint32_t add(std::uint32_t a, std::uint32_t b) const { return modp::add(a, b, p); }
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const { return modp::sub(a, b, p); }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const { return modp::mul(a, b, p); }
  std::uint32_t inv(std::uint32_t a) const { return modp::inv(a, p); }
  bool is_zero(std::uint32_t a) const { return a == 0; }
};

struct RationalOps {
  Rational zero() const { return Rational(0); }
  Rational add(const Rational& a, const Rational& b) const { return a + b; }
  Rational sub(const Rational& a, const Rational& b) const { return a - b; }
  Rational mul(const Rational& a, const Rational& b) const { return a * b; }
  Rational inv(const Rational& a) const { return Rational(1) / a; }
  bool is_zero(const Rational& a) const { return a == 0; }
};

template <class T, class Ops>
void multiply_kernel(int n, const T* a, const T* b, T* c, const Ops& ops) {
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      T acc = ops.zero();
      for (int k = i; k <= j; ++k)
        acc = ops.add(acc, ops.mul(a[slot_of(n, i, k)], b[slot_of(n, k, j)]));
      c[slot_of(n, i, j)] = acc;
    }
  }
}

template <class T, class Ops>
void inverse_kernel(int n, const T* a, T* x, const Ops& ops) {
  for (int i = n - 1; i >= 0; --i) {
    const T d = ops.inv(a[slot_of(n, i, i)]);
    x[slot_of(n, i, i)] = d;
    for (int j = i + 1; j < n; ++j) {
      T acc = ops.zero();
      for (int k = i + 1; k <= j; ++k)
        acc = ops.add(acc, ops.mul(a[slot_of(n, i, k)], x[slot_of(n, k, j)]));
      x[slot_of(n, i, j)] = ops.sub(ops.zero(), ops.mul(d, acc));
    }
  }
}

}  // namespace

TriMatrix TriMatrix::zero(int n, const FieldSpec& field) {
  require_dim(n);
  TriMatrix m;
  m.n_ = n;
  m.field_ = field;
  if (field.is_rationals()) m.rat_.assign(std::size_t(slot_count(n)), Rational(0));
  return m;
}

TriMatrix TriMatrix::identity(int n, const FieldSpec& field) {
  TriMatrix m = zero(n, field);
  for (int i = 0; i < n; ++i) m.set(i, i, 1);
  return m;
}

TriMatrix TriMatrix::diagonal(const FieldSpec& field, std::span<const std::int64_t> entries) {
  TriMatrix m = zero(int(entries.size()), field);
  for (int i = 0; i < m.n_; ++i) m.set(i, i, entries[std::size_t(i)]);
  return m;
}

TriMatrix TriMatrix::diagonal(std::span<const FieldElement> entries) {
  if (entries.empty()) throw Error(ErrorCode::invalid_argument, "empty diagonal");
  TriMatrix m = zero(int(entries.size()), entries.front().spec());
  for (int i = 0; i < m.n_; ++i) m.set(i, i, entries[std::size_t(i)]);
  return m;
}

TriMatrix TriMatrix::from_rows(const FieldSpec& field,
                               const std::vector<std::vector<std::int64_t>>& rows) {
  std::vector<std::vector<FieldElement>> converted;
  for (const auto& row : rows) {
    auto& out = converted.emplace_back();
    for (std::int64_t v : row) out.emplace_back(field, v);
  }
  return from_rows(field, converted);
}

TriMatrix TriMatrix::from_rows(const FieldSpec& field,
                               const std::vector<std::vector<FieldElement>>& rows) {
  const int n = int(rows.size());
  TriMatrix m = zero(n, field);
  for (int i = 0; i < n; ++i) {
    if (int(rows[std::size_t(i)].size()) != n)
      throw Error(ErrorCode::dimension_mismatch, "row " + std::to_string(i + 1) + " has " +
                                                     std::to_string(rows[std::size_t(i)].size()) +
                                                     " entries, expected " + std::to_string(n));
    for (int j = 0; j < n; ++j) {
      const FieldElement& v = rows[std::size_t(i)][std::size_t(j)];
      require_same_field(field, v.spec());
      if (j < i) {
        if (!v.is_zero())
          throw Error(ErrorCode::lower_triangular_position,
                      "nonzero entry at (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")");
        continue;
      }
      m.set(i, j, v);
    }
  }
  return m;
}

void TriMatrix::check_position(int i, int j) const {
  if (i < 0 || j < 0 || i >= n_ || j >= n_)
    throw Error(ErrorCode::invalid_argument, "position out of range");
  if (i > j)
    throw Error(ErrorCode::lower_triangular_position,
                "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ") is below the diagonal");
}

FieldElement TriMatrix::at(int i, int j) const {
  if (i > j && i < n_ && j >= 0) return FieldElement::zero(field_);
  check_position(i, j);
  return slot(slot_of(n_, i, j));
}

void TriMatrix::set(int i, int j, const FieldElement& value) {
  check_position(i, j);
  set_slot(slot_of(n_, i, j), value);
}

void TriMatrix::set(int i, int j, std::int64_t value) { set(i, j, FieldElement(field_, value)); }

FieldElement TriMatrix::slot(int k) const {
  if (field_.is_prime()) return FieldElement(field_, res_[std::size_t(k)]);
  return FieldElement(field_, rat_[std::size_t(k)]);
}

void TriMatrix::set_slot(int k, const FieldElement& value) {
  require_same_field(field_, value.spec());
  if (field_.is_prime())
    res_[std::size_t(k)] = value.residue();
  else
    rat_[std::size_t(k)] = value.rational();
}

bool TriMatrix::is_zero_entry(int i, int j) const {
  if (i > j) return true;
  const int k = slot_of(n_, i, j);
  return field_.is_prime() ? res_[std::size_t(k)] == 0 : rat_[std::size_t(k)] == 0;
}

bool TriMatrix::is_one_entry(int i, int j) const {
  if (i > j) return false;
  const int k = slot_of(n_, i, j);
  return field_.is_prime() ? res_[std::size_t(k)] == 1 : rat_[std::size_t(k)] == 1;
}

std::vector<FieldElement> TriMatrix::diagonal_entries() const {
  std::vector<FieldElement> d;
  for (int i = 0; i < n_; ++i) d.push_back(at(i, i));
  return d;
}

bool TriMatrix::is_invertible() const {
  for (int i = 0; i < n_; ++i)
    if (is_zero_entry(i, i)) return false;
  return true;
}

bool TriMatrix::is_unipotent() const {
  for (int i = 0; i < n_; ++i)
    if (!is_one_entry(i, i)) return false;
  return true;
}

bool TriMatrix::is_diagonal() const {
  for (int i = 0; i < n_; ++i)
    for (int j = i + 1; j < n_; ++j)
      if (!is_zero_entry(i, j)) return false;
  return true;
}

bool TriMatrix::is_strictly_upper() const {
  for (int i = 0; i < n_; ++i)
    if (!is_zero_entry(i, i)) return false;
  return true;
}

bool TriMatrix::is_identity() const { return is_unipotent() && is_diagonal(); }

bool TriMatrix::is_zero_one() const {
  for (int i = 0; i < n_; ++i)
    for (int j = i; j < n_; ++j)
      if (!is_zero_entry(i, j) && !is_one_entry(i, j)) return false;
  return true;
}

std::vector<std::vector<FieldElement>> TriMatrix::rows() const {
  std::vector<std::vector<FieldElement>> out;
  out.resize(std::size_t(n_));
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) out[std::size_t(i)].push_back(at(i, j));
  return out;
}

TriMatrix& TriMatrix::operator+=(const TriMatrix& rhs) {
  require_compatible(*this, rhs);
  const int s = slots();
  if (field_.is_prime()) {
    const std::uint32_t p = field_.characteristic();
    for (int k = 0; k < s; ++k) res_[std::size_t(k)] = modp::add(res_[std::size_t(k)], rhs.res_[std::size_t(k)], p);
  } else {
    for (int k = 0; k < s; ++k) rat_[std::size_t(k)] += rhs.rat_[std::size_t(k)];
  }
  return *this;
}

TriMatrix& TriMatrix::operator-=(const TriMatrix& rhs) {
  require_compatible(*this, rhs);
  const int s = slots();
  if (field_.is_prime()) {
    const std::uint32_t p = field_.characteristic();
    for (int k = 0; k < s; ++k) res_[std::size_t(k)] = modp::sub(res_[std::size_t(k)], rhs.res_[std::size_t(k)], p);
  } else {
    for (int k = 0; k < s; ++k) rat_[std::size_t(k)] -= rhs.rat_[std::size_t(k)];
  }
  return *this;
}

TriMatrix& TriMatrix::operator*=(const FieldElement& scalar) {
  require_same_field(field_, scalar.spec());
  const int s = slots();
  if (field_.is_prime()) {
    const std::uint32_t p = field_.characteristic();
    const std::uint32_t c = scalar.residue();
    for (int k = 0; k < s; ++k) res_[std::size_t(k)] = modp::mul(res_[std::size_t(k)], c, p);
  } else {
    for (int k = 0; k < s; ++k) rat_[std::size_t(k)] *= scalar.rational();
  }
  return *this;
}

bool operator==(const TriMatrix& a, const TriMatrix& b) {
  if (a.n_ != b.n_ || a.field_ != b.field_) return false;
  if (a.field_.is_prime())
    return std::equal(a.res_.begin(), a.res_.begin() + a.slots(), b.res_.begin());
  return a.rat_ == b.rat_;
}

bool operator<(const TriMatrix& a, const TriMatrix& b) {
  if (a.n_ != b.n_) return a.n_ < b.n_;
  if (a.field_ != b.field_) return a.field_ < b.field_;
  if (a.field_.is_prime())
    return std::lexicographical_compare(a.res_.begin(), a.res_.begin() + a.slots(), b.res_.begin(),
                                        b.res_.begin() + b.slots());
  return std::lexicographical_compare(a.rat_.begin(), a.rat_.end(), b.rat_.begin(), b.rat_.end());
}

std::size_t TriMatrix::hash() const noexcept {
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&h](std::uint64_t v) {
    h ^= v;
    h *= 1099511628211ull;
  };
  mix(std::uint64_t(n_));
  mix(field_.characteristic());
  if (field_.is_prime()) {
    for (int k = 0; k < slots(); ++k) mix(res_[std::size_t(k)]);
  } else {
    for (const auto& q : rat_) mix(std::hash<std::string>{}(q.get_str()));
  }
  return std::size_t(h);
}

TriMatrix operator+(TriMatrix a, const TriMatrix& b) { return a += b; }
TriMatrix operator-(TriMatrix a, const TriMatrix& b) { return a -= b; }
TriMatrix operator*(const TriMatrix& a, const TriMatrix& b) { return multiply(a, b); }

TriMatrix multiply(const TriMatrix& a, const TriMatrix& b) {
  require_compatible(a, b);
  TriMatrix c = TriMatrix::zero(a.dim(), a.field());
  if (a.field().is_prime()) {
    multiply_kernel(a.dim(), a.residues().data(), b.residues().data(), c.residues().data(),
                    PrimeOps{a.field().characteristic()});
  } else {
    std::vector<Rational> ea, eb, ec(std::size_t(a.slots()));
    for (int k = 0; k < a.slots(); ++k) {
      ea.push_back(a.slot(k).rational());
      eb.push_back(b.slot(k).rational());
    }
    multiply_kernel(a.dim(), ea.data(), eb.data(), ec.data(), RationalOps{});
    for (int k = 0; k < a.slots(); ++k) c.set_slot(k, FieldElement(a.field(), ec[std::size_t(k)]));
  }
  return c;
}

TriMatrix inverse(const TriMatrix& a) {
  if (!a.is_invertible()) throw Error(ErrorCode::not_invertible, "zero diagonal entry");
  TriMatrix x = TriMatrix::zero(a.dim(), a.field());
  if (a.field().is_prime()) {
    inverse_kernel(a.dim(), a.residues().data(), x.residues().data(),
                   PrimeOps{a.field().characteristic()});
  } else {
    std::vector<Rational> ea, ex(std::size_t(a.slots()));
    for (int k = 0; k < a.slots(); ++k) ea.push_back(a.slot(k).rational());
    inverse_kernel(a.dim(), ea.data(), ex.data(), RationalOps{});
    for (int k = 0; k < a.slots(); ++k) x.set_slot(k, FieldElement(a.field(), ex[std::size_t(k)]));
  }
  return x;
}

TriMatrix conjugate(const TriMatrix& p, const TriMatrix& a) {
  return multiply(multiply(p, a), inverse(p));
}

TriMatrix commutator(const TriMatrix& a, const TriMatrix& b) {
  return multiply(a, b) - multiply(b, a);
}

bool commutes(const TriMatrix& a, const TriMatrix& b) { return multiply(a, b) == multiply(b, a); }

TriMatrix power(const TriMatrix& a, std::uint64_t e) {
  TriMatrix result = TriMatrix::identity(a.dim(), a.field());
  TriMatrix base = a;
  while (e > 0) {
    if (e & 1) result = multiply(result, base);
    base = multiply(base, base);
    e >>= 1;
  }
  return result;
}

TriMatrix elementary(int n, int i, int j, const FieldElement& alpha) {
  TriMatrix m = TriMatrix::identity(n, alpha.spec());
  if (i > j)
    throw Error(ErrorCode::lower_triangular_position,
                "e_" + std::to_string(i + 1) + std::to_string(j + 1) + " is below the diagonal");
  m.set(i, j, m.at(i, j) + alpha);
  if (i == j && m.at(i, i).is_zero())
    throw Error(ErrorCode::not_invertible, "I + e_ii(-1) is singular");
  return m;
}

std::uint64_t element_order(const TriMatrix& g) {
  if (!g.field().is_prime())
    throw Error(ErrorCode::not_enumerable, "element order needs a finite field");
  if (!g.is_invertible()) throw Error(ErrorCode::not_invertible, "zero diagonal entry");
  const std::uint32_t p = g.field().characteristic();
  std::uint64_t m = 1;
  for (int i = 0; i < g.dim(); ++i) m = std::lcm(m, modp::order(g.residue(i, i), p));
  TriMatrix u = power(g, m);
  std::uint64_t pe = 1;
  while (!u.is_identity()) {
    u = power(u, p);
    pe *= p;
  }
  return m * pe;
}

std::string to_string(Filter filter) {
  switch (filter) {
    case Filter::all: return "all";
    case Filter::unipotent: return "unipotent";
    case Filter::diagonal: return "diagonal";
  }
  return "all";
}

Filter parse_filter(std::string_view text) {
  if (text == "all") return Filter::all;
  if (text == "unipotent") return Filter::unipotent;
  if (text == "diagonal") return Filter::diagonal;
  throw Error(ErrorCode::parse_error, "bad filter '" + std::string(text) + "'");
}

BigInt group_order(int n, std::uint32_t q) {
  BigInt a, b;
  mpz_ui_pow_ui(a.get_mpz_t(), q - 1, unsigned(n));
  mpz_ui_pow_ui(b.get_mpz_t(), q, unsigned(n * (n - 1) / 2));
  return a * b;
}

GroupIndex::GroupIndex(int n, const FieldSpec& field, Filter filter)
    : n_(n), field_(field), filter_(filter) {
  require_dim(n);
  if (!field.is_prime()) throw Error(ErrorCode::not_enumerable, "B_n(Q) is infinite");
  q_ = field.characteristic();
  unsigned __int128 size = 1;
  const std::uint64_t limit = ~std::uint64_t(0);
  for (int i = 0; i < n && !overflow_; ++i) {
    for (int j = i; j < n && !overflow_; ++j) {
      std::uint64_t radix = 1;
      if (i == j && filter != Filter::unipotent) radix = q_ - 1;
      if (i != j && filter != Filter::diagonal) radix = q_;
      size *= radix;
      if (size > limit) overflow_ = true;
    }
  }
  size_ = overflow_ ? 0 : std::uint64_t(size);
}

std::uint64_t GroupIndex::size() const {
  if (overflow_) throw Error(ErrorCode::too_large, "universe size exceeds 2^64");
  return size_;
}

TriMatrix GroupIndex::element(std::uint64_t index) const {
  TriMatrix m = TriMatrix::zero(n_, field_);
  auto res = m.residues();
  for (int i = 0; i < n_; ++i) {
    for (int j = i; j < n_; ++j) {
      const int k = slot_of(n_, i, j);
      if (i == j) {
        if (filter_ == Filter::unipotent) {
          res[std::size_t(k)] = 1;
        } else {
          res[std::size_t(k)] = std::uint32_t(index % (q_ - 1)) + 1;
          index /= (q_ - 1);
        }
      } else if (filter_ != Filter::diagonal) {
        res[std::size_t(k)] = std::uint32_t(index % q_);
        index /= q_;
      }
    }
  }
  return m;
}

bool GroupIndex::contains(const TriMatrix& m) const {
  if (m.dim() != n_ || m.field() != field_ || !m.is_invertible()) return false;
  if (filter_ == Filter::unipotent) return m.is_unipotent();
  if (filter_ == Filter::diagonal) return m.is_diagonal();
  return true;
}

std::uint64_t GroupIndex::index_of(const TriMatrix& m) const {
  if (!contains(m)) throw Error(ErrorCode::invalid_argument, "matrix is not in this universe");
  std::uint64_t index = 0;
  std::uint64_t scale = 1;
  for (int i = 0; i < n_; ++i) {
    for (int j = i; j < n_; ++j) {
      const std::uint32_t v = m.residue(i, j);
      if (i == j) {
        if (filter_ != Filter::unipotent) {
          index += scale * (v - 1);
          scale *= (q_ - 1);
        }
      } else if (filter_ != Filter::diagonal) {
        index += scale * v;
        scale *= q_;
      }
    }
  }
  return index;
}

std::vector<TriMatrix> group_generators(int n, std::uint32_t q) {
  const FieldSpec field = FieldSpec::prime(q);
  std::vector<TriMatrix> gens;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) gens.push_back(elementary(n, i, j, FieldElement::one(field)));
  if (q > 2) {
    const FieldElement g(field, modp::primitive_root(q));
    for (int i = 0; i < n; ++i) gens.push_back(elementary(n, i, i, g - FieldElement::one(field)));
  }
  return gens;
}

}  // namespace zclass
