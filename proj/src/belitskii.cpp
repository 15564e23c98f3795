#include "zclass/belitskii.hpp"

#include <array>
#include <mutex>

#include "zclass/io.hpp"

namespace zclass {

namespace detail {
std::string_view unipotent_reps_json(int n);
}

std::string to_string(ReductionRule rule) {
  return "Step" + std::to_string(static_cast<int>(rule));
}

std::vector<std::pair<int, int>> entry_order(int n) {
  std::vector<std::pair<int, int>> order;
  for (int i = n - 1; i >= 0; --i)
    for (int j = i; j < n; ++j) order.emplace_back(i, j);
  return order;
}

namespace {

constexpr int kMaxBelitskiiDim = 5;

// Column of the first nonzero strictly-upper entry in `row`, or -1.
int leading_column(const TriMatrix& a, int row) {
  for (int c = row + 1; c < a.dim(); ++c)
    if (!a.is_zero_entry(row, c)) return c;
  return -1;
}

class Reducer {
 public:
  explicit Reducer(const TriMatrix& u)
      : field_(u.field()), n_(u.dim()), a_(u), conj_(TriMatrix::identity(u.dim(), u.field())) {}

  void apply(ReductionRule rule, int p, int q, int i, int j, const FieldElement& alpha) {
    TriMatrix t = elementary(n_, i, j, alpha);
    a_ = conjugate(t, a_);
    conj_ = multiply(t, conj_);
    steps_.push_back({rule, p, q, std::move(t)});
  }

  // I + e_kk(s - 1): multiply row k by s and column k by s^{-1}.
  void scale(ReductionRule rule, int p, int q, int k, const FieldElement& s) {
    apply(rule, p, q, k, k, s - FieldElement::one(field_));
  }

  void reduce_entry(int p, int q) {
    const FieldElement value = a_.at(p, q);
    if (value.is_zero()) return;

    // Step 1: a pivot 1 below in the same column.
    for (int i = p + 1; i < q; ++i) {
      if (a_.is_one_entry(i, q) && leading_column(a_, i) == q) {
        apply(ReductionRule::step1, p, q, p, i, -value);
        return;
      }
    }

    const int r = leading_column(a_, p);
    // Step 2: a_pq leads its row.
    if (r == q) {
      if (!value.is_one()) scale(ReductionRule::step2, p, q, p, inv(value));
      return;
    }

    const int j = leading_column(a_, q);
    // Step 3: row q is zero, so adding a multiple of it to row r is harmless.
    if (j < 0) {
      apply(ReductionRule::step3, p, q, r, q, value);
      return;
    }

    const int i = leading_column(a_, r);
    // Step 4: clearing a_pq pushes a_pq into (r, j); column operation j -= a_pq * i restores it.
    if (i >= 0 && i < j) {
      apply(ReductionRule::step4, p, q, r, q, value);
      apply(ReductionRule::step4, p, q, i, j, value);
      return;
    }

    // Step 5: row r has nothing before column j. Scale a_pq to 1 and walk
    // the chain of leading entries that the scaling disturbed.
    if (i < 0 || i > j) {
      if (value.is_one()) return;
      scale(ReductionRule::step5, p, q, q, value);
      scale(ReductionRule::step5, p, q, j, value);
      if (const int k = leading_column(a_, j); k >= 0) scale(ReductionRule::step5, p, q, k, value);
    }
  }

  ReductionTrace finish(const TriMatrix& input) {
    return ReductionTrace{input, a_, conj_, std::move(steps_)};
  }

 private:
  FieldSpec field_;
  int n_;
  TriMatrix a_;
  TriMatrix conj_;
  std::vector<ReductionStep> steps_;
};

}  // namespace

ReductionTrace canonical_form(const TriMatrix& u) {
  if (u.dim() > kMaxBelitskiiDim)
    throw Error(ErrorCode::unsupported_dimension,
                "Belitskii reduction is only valid for n <= 5 (got n = " + std::to_string(u.dim()) +
                    "); the restoration in step 4 can disturb reduced entries from n = 6 on");
  if (!u.is_unipotent()) throw Error(ErrorCode::not_unipotent, "input diagonal is not all ones");

  Reducer reducer(u);
  for (auto [p, q] : entry_order(u.dim())) {
    if (p == q) continue;
    reducer.reduce_entry(p, q);
  }
  ReductionTrace trace = reducer.finish(u);

  if (conjugate(trace.conjugator, trace.input) != trace.output)
    throw Error(ErrorCode::internal_error, "conjugator does not map input to output");
  if (!trace.output.is_zero_one())
    throw Error(ErrorCode::internal_error,
                "reduction left a non-{0,1} entry: " + format_matrix_text(trace.output));
  return trace;
}

namespace {

using IntRows = std::vector<std::vector<std::int64_t>>;

const std::vector<IntRows>& table(int n) {
  static std::once_flag once;
  static std::array<std::vector<IntRows>, kMaxBelitskiiDim + 1> tables;
  std::call_once(once, [] {
    for (int k = 2; k <= kMaxBelitskiiDim; ++k) {
      const Json doc = Json::parse(detail::unipotent_reps_json(k));
      if (doc.at("n").get<int>() != k)
        throw Error(ErrorCode::internal_error, "representative table header mismatch");
      for (const Json& rep : doc.at("reps")) tables[std::size_t(k)].push_back(rep.at("rows").get<IntRows>());
    }
  });
  if (n < 2 || n > kMaxBelitskiiDim)
    throw Error(ErrorCode::unsupported_dimension,
                "representative tables cover 2 <= n <= 5 (got " + std::to_string(n) + ")");
  return tables[std::size_t(n)];
}

}  // namespace

std::vector<TriMatrix> representatives(int n, const FieldSpec& field) {
  std::vector<TriMatrix> out;
  for (const IntRows& rows : table(n)) out.push_back(TriMatrix::from_rows(field, rows));
  return out;
}

std::optional<int> find_representative(const TriMatrix& m) {
  if (m.dim() < 2 || m.dim() > kMaxBelitskiiDim) return std::nullopt;
  const auto& reps = table(m.dim());
  for (int k = 0; k < int(reps.size()); ++k) {
    bool equal = true;
    for (int i = 0; i < m.dim() && equal; ++i)
      for (int j = i; j < m.dim() && equal; ++j)
        equal = m.at(i, j) == FieldElement(m.field(), reps[std::size_t(k)][std::size_t(i)][std::size_t(j)]);
    if (equal) return k;
  }
  return std::nullopt;
}

int classify_unipotent(const TriMatrix& u) {
  const ReductionTrace trace = canonical_form(u);
  if (auto k = find_representative(trace.output)) return *k;
  throw Error(ErrorCode::internal_error,
              "canonical form " + format_matrix_text(trace.output) + " is not in the n=" +
                  std::to_string(u.dim()) + " representative table");
}

}  // namespace zclass
