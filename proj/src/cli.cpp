#include "zclass/cli.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"

#include "zclass/belitskii.hpp"
#include "zclass/centralizer.hpp"
#include "zclass/classify.hpp"

namespace zclass {

namespace fs = std::filesystem;

namespace {

constexpr std::uint64_t kInlineElementLimit = 10000;
constexpr std::string_view kChar2Flag = "char-2 proxy";

Json bigint_json(const BigInt& v) {
  if (mpz_fits_ulong_p(v.get_mpz_t())) return std::uint64_t(v.get_ui());
  return v.get_str();
}

std::string join(const std::vector<std::string>& parts, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

int exit_code_for(const Error& e) {
  switch (e.code()) {
    case ErrorCode::parse_error: return exit_parse_error;
    case ErrorCode::internal_error: return exit_check_failed;
    default: return exit_precondition;
  }
}

FieldSpec field_of(const RunConfig& c, std::string_view fallback) {
  return FieldSpec::parse(c.field.empty() ? fallback : std::string_view(c.field));
}

std::uint32_t finite_q(const RunConfig& c, std::string_view fallback) {
  const FieldSpec f = field_of(c, fallback);
  if (!f.is_prime())
    throw Error(ErrorCode::not_enumerable, "'" + c.command + "' needs a finite field (--q or --field F<p>)");
  return f.characteristic();
}

int required_n(const RunConfig& c) {
  if (!c.n) throw Error(ErrorCode::invalid_argument, "'" + c.command + "' needs --n");
  return *c.n;
}

TriMatrix matrix_arg(const RunConfig& c, std::string_view fallback_field) {
  if (c.args.size() != 1)
    throw Error(ErrorCode::parse_error, "'" + c.command + "' takes exactly one matrix argument");
  const TriMatrix m = parse_matrix_text(field_of(c, fallback_field), c.args[0]);
  if (c.n && *c.n != m.dim())
    throw Error(ErrorCode::dimension_mismatch,
                "--n " + std::to_string(*c.n) + " but the matrix is " + std::to_string(m.dim()) + "x" +
                    std::to_string(m.dim()));
  return m;
}

Json class_table_json(const ClassTable& t) {
  Json classes = Json::array();
  for (const ClassEntry& c : t.classes)
    classes.push_back({{"rep", matrix_to_json(c.representative)}, {"size", c.size}});
  Json q = t.field.is_prime() ? Json(t.field.characteristic()) : Json(nullptr);
  return Json{{"n", t.n},
              {"q", q},
              {"filter", t.universe},
              {"relation", to_string(t.relation)},
              {"universe_size", t.universe_size},
              {"classes", std::move(classes)},
              {"flags", t.flags}};
}

// --- commands -------------------------------------------------------------

Json cmd_canonical(const RunConfig& c) {
  const TriMatrix u = matrix_arg(c, "Q");
  const ReductionTrace trace = canonical_form(u);
  Json steps = Json::array();
  for (const ReductionStep& s : trace.steps)
    steps.push_back({{"rule", to_string(s.rule)},
                     {"position", {s.row + 1, s.col + 1}},
                     {"transform", matrix_to_json(s.transform)}});
  const auto index = find_representative(trace.output);
  return Json{{"input", matrix_to_json(trace.input)},
              {"output", matrix_to_json(trace.output)},
              {"representative_index", index ? Json(*index + 1) : Json(nullptr)},
              {"conjugator", matrix_to_json(trace.conjugator)},
              {"steps", std::move(steps)}};
}

Json cmd_centralizer(const RunConfig& c, const std::optional<fs::path>& elements_dir) {
  const TriMatrix a = matrix_arg(c, "Q");
  const CommutantBasis basis = commutant_basis(a);
  Json out{{"input", matrix_to_json(a)}, {"dimension", basis.dimension()}};
  Json basis_json = Json::array();
  for (const auto& b : basis.basis) basis_json.push_back(matrix_to_json(b));
  out["basis"] = std::move(basis_json);
  out["order"] = nullptr;
  out["elements_file"] = nullptr;
  if (!a.field().is_prime()) return out;

  const BigInt order = count_units(basis.basis);
  out["order"] = bigint_json(order);
  const std::uint64_t budget = c.budget.value_or(kDefaultCentralizerBudget);
  std::optional<CentralizerSet> set;
  try {
    set.emplace(centralizer_enumerate(a, budget));
  } catch (const Error& e) {
    if (e.code() != ErrorCode::too_large) throw;
    return out;
  }

  Json elements = Json::array();
  for (const auto& m : set->elements()) elements.push_back(matrix_to_json(m));
  if (set->order() <= kInlineElementLimit) {
    out["elements"] = std::move(elements);
  } else if (elements_dir) {
    fs::create_directories(*elements_dir);
    const fs::path file = *elements_dir / ("centralizer-" + ResultCache::key_hash(c.key()) + ".json");
    std::ofstream(file) << canonical_dump(Json{{"input", matrix_to_json(a)}, {"elements", elements}}) << '\n';
    out["elements_file"] = file.string();
  }
  return out;
}

Json cmd_classes(const RunConfig& c) {
  const ClassTable t = conjugacy_classes(required_n(c), finite_q(c, "F3"), c.filter,
                                         c.budget.value_or(kDefaultClassBudget), c.jobs);
  return class_table_json(t);
}

Json cmd_zclasses(const RunConfig& c) {
  const int n = required_n(c);
  return class_table_json(
      zclass_classes(n, finite_q(c, "F3"), c.filter, c.budget.value_or(kDefaultGroupBudget), c.jobs));
}

Json cmd_jordan(const RunConfig& c) {
  const TriMatrix g = matrix_arg(c, "F3");
  const JordanPair jp = jordan_decompose(g);
  return Json{{"g", matrix_to_json(jp.g)},
              {"semisimple", matrix_to_json(jp.semisimple)},
              {"unipotent", matrix_to_json(jp.unipotent)},
              {"order", element_order(g)}};
}

Json cmd_semisimple_count(const RunConfig& c) {
  const int n = required_n(c);
  Json groups = Json::array();
  if (n <= kMaxDim) {
    for (const PatternGroup& g : pattern_representatives(n)) {
      Json patterns = Json::array();
      for (const auto& p : g.patterns) patterns.push_back(p.to_string());
      groups.push_back({{"partition", g.partition.to_string()},
                        {"term", bigint_json(partition_term(g.partition))},
                        {"patterns", std::move(patterns)}});
    }
  } else {
    for (const Partition& p : partitions(n))
      groups.push_back({{"partition", p.to_string()}, {"term", bigint_json(partition_term(p))}});
  }
  return Json{{"n", n}, {"count", bigint_json(semisimple_zclass_count(n))}, {"partitions", std::move(groups)}};
}

// --- verify suites ----------------------------------------------------------

class SuiteRunner {
 public:
  explicit SuiteRunner(VerificationReport& report) : report_(report) {}

  void check(std::string name, std::string expected, Provenance provenance,
             const std::function<std::string()>& actual_fn) {
    const auto t0 = std::chrono::steady_clock::now();
    CheckResult r{std::move(name), std::move(expected), "", "", provenance, 0};
    try {
      r.actual = actual_fn();
      if (r.actual == r.expected)
        r.verdict = "pass";
      else
        r.verdict = r.actual == "inconclusive" ? "inconclusive" : "fail";
    } catch (const Error& e) {
      r.actual = std::string("error: ") + e.what();
      r.verdict = "fail";
    }
    r.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    report_.checks.push_back(std::move(r));
  }

  void flag(std::string_view f) {
    if (std::find(report_.flags.begin(), report_.flags.end(), f) == report_.flags.end())
      report_.flags.emplace_back(f);
  }

 private:
  VerificationReport& report_;
};

std::vector<std::uint32_t> suite_fields(const RunConfig& c, std::vector<std::uint32_t> defaults) {
  if (c.field.empty()) return defaults;
  const FieldSpec f = FieldSpec::parse(c.field);
  if (!f.is_prime()) throw Error(ErrorCode::not_enumerable, "verify suites need a finite field");
  return {f.characteristic()};
}

void suite_semisimple_counts(SuiteRunner& run) {
  const std::vector<std::string> counts{"1", "2", "5", "15", "52"};
  for (int n = 1; n <= 5; ++n)
    run.check("semisimple z-class count n=" + std::to_string(n), counts[std::size_t(n - 1)],
              n == 5 ? Provenance::published : Provenance::derived_oracle,
              [n] { return semisimple_zclass_count(n).get_str(); });
  for (int n = 1; n <= 6; ++n)
    run.check("pattern total matches formula n=" + std::to_string(n), semisimple_zclass_count(n).get_str(),
              Provenance::derived_oracle, [n] {
                std::size_t total = 0;
                for (const auto& g : pattern_representatives(n)) total += g.patterns.size();
                return std::to_string(total);
              });
  run.check("patterns per partition n=5", "1,5,10,10,15,10,1", Provenance::published, [] {
    std::vector<std::string> sizes;
    for (const auto& g : pattern_representatives(5)) sizes.push_back(std::to_string(g.patterns.size()));
    return join(sizes, ",");
  });
  run.check("formula terms per partition n=5", "1,5,10,10,15,10,1", Provenance::published, [] {
    std::vector<std::string> terms;
    for (const auto& p : partitions(5)) terms.push_back(partition_term(p).get_str());
    return join(terms, ",");
  });
}

std::string ualpha_separation(std::uint32_t q) {
  const FieldSpec f = FieldSpec::prime(q);
  for (std::uint32_t a = 0; a < q; ++a)
    for (std::uint32_t b = 0; b < q; ++b) {
      const ConjugacyResult r = conjugacy_test(make_u_alpha(FieldElement(f, a)), make_u_alpha(FieldElement(f, b)));
      if (r.verdict == Verdict::inconclusive) return "inconclusive";
      if ((a == b) != (r.verdict == Verdict::conjugate))
        return "alpha=" + std::to_string(a) + " beta=" + std::to_string(b) + ": " + to_string(r.verdict);
    }
  return "conjugate iff alpha = beta";
}

void suite_unipotent_classes(SuiteRunner& run, const RunConfig& c) {
  const std::uint32_t q = suite_fields(c, {3}).front();
  if (q == 2) run.flag(kChar2Flag);
  const std::vector<std::string> counts{"2", "5", "16", "60"};
  for (int n = 2; n <= 5; ++n) {
    std::optional<ClassTable> table;
    auto get = [&]() -> const ClassTable& {
      if (!table) table = conjugacy_classes(n, q, Filter::unipotent, kDefaultClassBudget, c.jobs);
      return *table;
    };
    const std::string tag = " n=" + std::to_string(n) + " over F" + std::to_string(q);
    run.check("unipotent conjugacy classes" + tag, counts[std::size_t(n - 2)], Provenance::published,
              [&] { return std::to_string(get().classes.size()); });
    BigInt total;
    mpz_ui_pow_ui(total.get_mpz_t(), q, static_cast<unsigned long>(n * (n - 1) / 2));
    run.check("class sizes sum to unipotent count" + tag, total.get_str(), Provenance::trivial, [&] {
      std::uint64_t s = 0;
      for (const auto& cl : get().classes) s += cl.size;
      return std::to_string(s);
    });
    run.check("representatives pairwise non-conjugate" + tag, "separation certified",
              Provenance::derived_oracle, [&] {
                return get().has_flag("separation certified") ? std::string("separation certified")
                                                                : std::string("inconclusive");
              });
  }
  for (std::uint32_t p : suite_fields(c, {3, 5}))
    run.check("u_alpha conjugacy separation over F" + std::to_string(p), "conjugate iff alpha = beta",
              Provenance::published, [p] { return ualpha_separation(p); });
}

void suite_ualpha_family(SuiteRunner& run, const RunConfig& c) {
  const std::uint32_t q = suite_fields(c, {2}).front();
  if (q == 2) run.flag(kChar2Flag);
  const FieldSpec f = FieldSpec::prime(q);
  run.check("u_0 and u_1 not z-equivalent in B_6(F" + std::to_string(q) + ")", "none",
            Provenance::derived_oracle, [&] {
              const ZConjugacyResult r = zconjugacy_test(make_u_alpha(FieldElement(f, 0)), make_u_alpha(FieldElement(f, 1)),
                                                         c.budget.value_or(kDefaultGroupBudget), c.jobs);
              return r.witness ? std::string("some") : std::string("none");
            });
  run.check("u_alpha family z-classes over F" + std::to_string(q), std::to_string(q),
            Provenance::derived_oracle, [&] {
              std::vector<TriMatrix> family;
              for (std::uint32_t a = 0; a < q; ++a) family.push_back(make_u_alpha(FieldElement(f, a)));
              return std::to_string(zclass_partition(family, "custom", c.budget.value_or(kDefaultGroupBudget), c.jobs)
                                        .classes.size());
            });
  for (std::uint32_t p : suite_fields(c, {2, 3})) {
    if (p == 2) run.flag(kChar2Flag);
    run.check("closed-form centralizer equals enumeration over F" + std::to_string(p), "equal for every alpha",
              Provenance::published, [p] {
                const FieldSpec fp = FieldSpec::prime(p);
                const GroupIndex group(6, fp);
                for (std::uint32_t alpha = 0; alpha < p; ++alpha) {
                  const FieldElement al(fp, alpha);
                  std::vector<std::uint64_t> closed;
                  std::array<FieldElement, 8> b;
                  std::uint64_t combos = 1;
                  for (int k = 0; k < 8; ++k) combos *= p;
                  for (std::uint32_t a = 1; a < p; ++a)
                    for (std::uint64_t code = 0; code < combos; ++code) {
                      std::uint64_t rest = code;
                      for (auto& bk : b) {
                        bk = FieldElement(fp, std::int64_t(rest % p));
                        rest /= p;
                      }
                      closed.push_back(group.index_of(ualpha_centralizer_element(al, FieldElement(fp, a), b)));
                    }
                  std::sort(closed.begin(), closed.end());
                  if (centralizer_enumerate(make_u_alpha(al)).indices() != closed)
                    return "differs at alpha=" + std::to_string(alpha);
                }
                return std::string("equal for every alpha");
              });
  }
  for (std::uint32_t p : {2u, 3u, 5u})
    run.check("commutant dimension of u_alpha over F" + std::to_string(p), "9 for every alpha",
              Provenance::derived_oracle, [p] {
                const FieldSpec fp = FieldSpec::prime(p);
                for (std::uint32_t alpha = 0; alpha < p; ++alpha) {
                  const int d = commutant_basis(make_u_alpha(FieldElement(fp, alpha))).dimension();
                  if (d != 9) return "dimension " + std::to_string(d) + " at alpha=" + std::to_string(alpha);
                }
                return std::string("9 for every alpha");
              });
}

void suite_jordan_centralizers(SuiteRunner& run, const RunConfig& c) {
  run.check("Jordan centralizer identities on 100 seeded pairs in B_4(F_5)", "100/100",
            Provenance::derived_oracle, [&] {
              std::mt19937_64 rng(c.seed);
              const GroupIndex group(4, FieldSpec::prime(5));
              int ok = 0;
              for (int k = 0; k < 100; ++k) {
                const TriMatrix g = group.element(rng() % group.size());
                const TriMatrix a = group.element(rng() % group.size());
                ok += jordan_centralizer_check(g, a).holds();
              }
              return std::to_string(ok) + "/100";
            });
  run.check("Jordan decomposition over all of B_3(F_5)", "8000/8000", Provenance::derived_oracle, [] {
    const GroupIndex group(3, FieldSpec::prime(5));
    std::uint64_t ok = 0;
    for (std::uint64_t i = 0; i < group.size(); ++i) {
      const TriMatrix g = group.element(i);
      const JordanPair jp = jordan_decompose(g);
      const std::uint64_t os = element_order(jp.semisimple);
      std::uint64_t ou = element_order(jp.unipotent);
      while (ou % 5 == 0) ou /= 5;
      const bool good = multiply(jp.semisimple, jp.unipotent) == g &&
                        multiply(jp.unipotent, jp.semisimple) == g && os % 5 != 0 && 4 % os == 0 &&
                        ou == 1 && jp.semisimple.diagonal_entries() == g.diagonal_entries();
      ok += good;
    }
    return std::to_string(ok) + "/" + std::to_string(group.size());
  });
  run.check("Jordan decomposition of [[2,1],[0,2]] over F5", "2,0;0,2 * 1,3;0,1", Provenance::derived_oracle, [] {
    const JordanPair jp = jordan_decompose(parse_matrix_text(FieldSpec::prime(5), "2,1;0,2"));
    return format_matrix_text(jp.semisimple) + " * " + format_matrix_text(jp.unipotent);
  });
}

void suite_representative_tables(SuiteRunner& run, const RunConfig& c) {
  const std::uint32_t q = suite_fields(c, {3}).front();
  if (q == 2) run.flag(kChar2Flag);
  run.check("representative table lengths", "2,5,16,60", Provenance::published, [] {
    std::vector<std::string> out;
    for (int n = 2; n <= 5; ++n) out.push_back(std::to_string(representatives(n, FieldSpec::rationals()).size()));
    return join(out, ",");
  });
  run.check("table entries are {0,1} unipotent", "yes", Provenance::published, [] {
    for (int n = 2; n <= 5; ++n)
      for (const auto& m : representatives(n, FieldSpec::rationals()))
        if (!m.is_zero_one() || !m.is_unipotent()) return std::string("no");
    return std::string("yes");
  });
  for (int n = 2; n <= 5; ++n)
    run.check("canonical forms of 10000 random unipotents in table n=" + std::to_string(n) + " over F" +
                  std::to_string(q),
              "10000/10000", Provenance::published, [&, n] {
                std::mt19937_64 rng(c.seed + std::uint64_t(n));
                const FieldSpec f = FieldSpec::prime(q);
                int hits = 0;
                for (int k = 0; k < 10000; ++k) {
                  TriMatrix u = TriMatrix::identity(n, f);
                  for (int i = 0; i < n; ++i)
                    for (int j = i + 1; j < n; ++j) u.set_residue(i, j, std::uint32_t(rng() % q));
                  hits += find_representative(canonical_form(u).output).has_value();
                }
                return std::to_string(hits) + "/10000";
              });
  run.check("canonical form of 1,2,0;0,1,3;0,0,1 over F5", "1,1,0;0,1,1;0,0,1", Provenance::derived_oracle, [] {
    return format_matrix_text(canonical_form(parse_matrix_text(FieldSpec::prime(5), "1,2,0;0,1,3;0,0,1")).output);
  });
}

std::optional<fs::path> cache_dir_of(const RunConfig& c) {
  if (c.cache_dir) return c.cache_dir;
  if (const char* env = std::getenv("ZCLASS_CACHE_DIR"); env && *env) return fs::path(env);
  return std::nullopt;
}

// --- rendering --------------------------------------------------------------

std::string entry_text(const Json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

std::string matrix_json_text(const Json& m) {
  std::vector<std::string> rows;
  for (const Json& row : m.at("rows")) {
    std::vector<std::string> entries;
    for (const Json& v : row) entries.push_back(entry_text(v));
    rows.push_back(join(entries, ","));
  }
  return join(rows, ";");
}

void render_table(const RunConfig& c, const Json& result, std::ostream& out) {
  if (c.command == "classes" || c.command == "zclasses") {
    out << result.at("relation").get<std::string>() << " classes of " << result.at("filter").get<std::string>()
        << " elements of B_" << result.at("n") << "(F_" << result.at("q") << "): " << result.at("classes").size()
        << '\n';
    for (const Json& cl : result.at("classes"))
      out << cl.at("size") << '\t' << matrix_json_text(cl.at("rep")) << '\n';
    for (const Json& f : result.at("flags")) out << "flag: " << f.get<std::string>() << '\n';
  } else if (c.command == "canonical") {
    out << "output:     " << matrix_json_text(result.at("output")) << '\n';
    out << "index:      " << result.at("representative_index").dump() << '\n';
    out << "conjugator: " << matrix_json_text(result.at("conjugator")) << '\n';
    for (const Json& s : result.at("steps"))
      out << "  " << s.at("rule").get<std::string>() << " at " << s.at("position").dump() << ": "
          << matrix_json_text(s.at("transform")) << '\n';
  } else if (c.command == "jordan") {
    out << "semisimple: " << matrix_json_text(result.at("semisimple")) << '\n';
    out << "unipotent:  " << matrix_json_text(result.at("unipotent")) << '\n';
    out << "order:      " << result.at("order") << '\n';
  } else if (c.command == "semisimple-count") {
    out << "n = " << result.at("n") << ": " << result.at("count").dump() << '\n';
    for (const Json& g : result.at("partitions"))
      out << "  " << g.at("partition").get<std::string>() << '\t' << g.at("term").dump() << '\n';
  } else if (c.command == "centralizer") {
    out << "dimension: " << result.at("dimension") << '\n';
    out << "order:     " << result.at("order").dump() << '\n';
    for (const Json& b : result.at("basis")) out << "  " << matrix_json_text(b) << '\n';
    if (!result.at("elements_file").is_null())
      out << "elements:  " << result.at("elements_file").get<std::string>() << '\n';
  } else {
    out << result.dump(2) << '\n';
  }
}

void render_report(const RunConfig& c, const VerificationReport& r, std::ostream& out) {
  if (c.format == "table") {
    for (const CheckResult& k : r.checks) {
      std::string tag = k.verdict == "pass" ? "PASS" : k.verdict == "fail" ? "FAIL" : "INCONCLUSIVE";
      out << tag << "  " << k.name << "  expected=" << k.expected << "  actual=" << k.actual << "  ["
          << to_string(k.provenance) << "]\n";
    }
    for (const auto& f : r.flags) out << "flag: " << f << '\n';
  } else {
    out << canonical_dump(r.to_json(false)) << '\n';
  }
}

Json compute(const RunConfig& c, const std::optional<fs::path>& dir) {
  if (c.command == "canonical") return cmd_canonical(c);
  if (c.command == "centralizer") return cmd_centralizer(c, dir);
  if (c.command == "classes") return cmd_classes(c);
  if (c.command == "zclasses") return cmd_zclasses(c);
  if (c.command == "jordan") return cmd_jordan(c);
  if (c.command == "semisimple-count") return cmd_semisimple_count(c);
  throw Error(ErrorCode::parse_error, "unknown command '" + c.command + "'");
}

}  // namespace

Json RunConfig::key() const {
  return Json{{"command", command},
              {"args", args},
              {"n", n ? Json(*n) : Json(nullptr)},
              {"field", field},
              {"filter", to_string(filter)},
              {"budget", budget ? Json(*budget) : Json(nullptr)},
              {"seed", seed}};
}

std::string to_string(Provenance p) {
  switch (p) {
    case Provenance::published: return "paper";
    case Provenance::derived_oracle: return "derived-oracle";
    case Provenance::trivial: return "trivial";
  }
  return "?";
}

bool VerificationReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.verdict == "pass"; });
}

int VerificationReport::exit_code() const {
  bool inconclusive = false;
  for (const auto& c : checks) {
    if (c.verdict == "fail") return exit_check_failed;
    inconclusive |= c.verdict == "inconclusive";
  }
  return inconclusive ? exit_inconclusive : exit_pass;
}

Json VerificationReport::to_json(bool with_runtimes) const {
  Json list = Json::array();
  for (const CheckResult& c : checks) {
    Json j{{"name", c.name},
           {"expected", c.expected},
           {"actual", c.actual},
           {"verdict", c.verdict},
           {"provenance", to_string(c.provenance)}};
    if (with_runtimes) j["runtime_ms"] = c.runtime_ms;
    list.push_back(std::move(j));
  }
  return Json{{"suite", suite}, {"checks", std::move(list)}, {"flags", flags}, {"passed", passed()}};
}

ResultCache::ResultCache(fs::path dir, std::string version) : dir_(std::move(dir)), version_(std::move(version)) {}

std::string ResultCache::key_hash(const Json& key) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char ch : canonical_dump(key)) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  std::ostringstream s;
  s << std::hex;
  s.width(16);
  s.fill('0');
  s << h;
  return s.str();
}

fs::path ResultCache::path_for(const Json& key) const { return dir_ / (key_hash(key) + ".json"); }

std::optional<Json> ResultCache::lookup(const Json& key, std::ostream& warn) const {
  const fs::path file = path_for(key);
  std::ifstream in(file);
  if (!in) return std::nullopt;
  Json entry = Json::parse(in, nullptr, false);
  if (entry.is_discarded() || !entry.is_object() || !entry.contains("version") || !entry.contains("key") ||
      !entry.contains("result")) {
    warn << "warning: corrupt cache entry " << file.string() << ", recomputing\n";
    return std::nullopt;
  }
  if (entry.at("version") != version_ || entry.at("key") != key) return std::nullopt;
  return entry.at("result");
}

void ResultCache::store(const Json& key, const Json& result) const {
  fs::create_directories(dir_);
  const fs::path file = path_for(key);
  const fs::path tmp = file.string() + ".tmp";
  {
    std::ofstream out(tmp);
    out << canonical_dump(Json{{"version", version_}, {"key", key}, {"result", result}}) << '\n';
  }
  fs::rename(tmp, file);
}

VerificationReport run_verify(const std::string& suite, const RunConfig& config) {
  static const std::vector<std::string> known{"prop21", "prop32", "lemma33", "lemma41", "appendix", "all"};
  if (std::find(known.begin(), known.end(), suite) == known.end())
    throw Error(ErrorCode::parse_error, "unknown suite '" + suite + "' (expected one of " + join(known, ", ") + ")");
  VerificationReport report{suite, {}, {}};
  SuiteRunner run(report);
  const bool all = suite == "all";
  if (all || suite == "prop21") suite_semisimple_counts(run);
  if (all || suite == "prop32") suite_unipotent_classes(run, config);
  if (all || suite == "lemma33") suite_ualpha_family(run, config);
  if (all || suite == "lemma41") suite_jordan_centralizers(run, config);
  if (all || suite == "appendix") suite_representative_tables(run, config);
  return report;
}

int run_command(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    if (config.format != "json" && config.format != "table")
      throw Error(ErrorCode::parse_error, "--format must be json or table");
    const std::optional<fs::path> dir = cache_dir_of(config);

    if (config.command == "verify") {
      if (config.args.size() != 1) throw Error(ErrorCode::parse_error, "verify takes one suite name");
      const VerificationReport report = run_verify(config.args[0], config);
      for (const CheckResult& c : report.checks)
        err << "[verify] " << c.verdict << " " << c.name << " (" << c.runtime_ms << " ms)\n";
      if (dir) {
        fs::create_directories(*dir);
        const fs::path file = *dir / ("verify-" + config.args[0] + "-" + ResultCache::key_hash(config.key()) + ".json");
        std::ofstream(file) << canonical_dump(report.to_json(true)) << '\n';
        err << "[verify] report written to " << file.string() << '\n';
      }
      render_report(config, report, out);
      return report.exit_code();
    }

    std::optional<ResultCache> cache;
    if (dir && config.use_cache) cache.emplace(*dir);
    const Json key = config.key();
    std::optional<Json> result;
    if (cache) {
      result = cache->lookup(key, err);
      if (result && result->contains("elements_file") && !(*result)["elements_file"].is_null() &&
          !fs::exists((*result)["elements_file"].get<std::string>()))
        result.reset();
      if (result) err << "cache hit: " << cache->path_for(key).string() << '\n';
    }
    if (!result) {
      result = compute(config, dir);
      if (cache) cache->store(key, *result);
    }
    if (config.format == "table")
      render_table(config, *result, out);
    else
      out << canonical_dump(*result) << '\n';
    return exit_pass;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e);
  } catch (const Json::exception& e) {
    err << "error: " << e.what() << '\n';
    return exit_parse_error;
  }
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact conjugacy classes, centralizers and z-classes in groups of upper triangular matrices",
               "zclass"};
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig config;
  std::optional<std::uint32_t> q;
  std::string filter = "all";
  std::string cache_dir;
  std::uint64_t budget = 0;

  app.add_option("--n", config.n, "matrix dimension");
  app.add_option("--field", config.field, "field: Q or F<p>");
  app.add_option("--q", q, "prime field order (same as --field F<q>)");
  app.add_option("--filter", filter, "all, unipotent or diagonal");
  app.add_option("--format", config.format, "json or table");
  app.add_option("--cache-dir", cache_dir, "result cache directory (default: $ZCLASS_CACHE_DIR)");
  app.add_flag("--no-cache", [&](std::int64_t) { config.use_cache = false; }, "bypass the result cache");
  app.add_option("--budget", budget, "override the enumeration budget");
  app.add_option("--seed", config.seed, "seed for randomized checks");
  app.add_option("--jobs", config.jobs, "worker threads (default: number of processors)");

  struct Sub {
    const char* name;
    const char* help;
    const char* positional;
  };
  const std::vector<Sub> subs{
      {"canonical", "Belitskii canonical form of a unipotent matrix (n <= 5)", "matrix"},
      {"centralizer", "commutant basis and centralizer order", "matrix"},
      {"classes", "conjugacy classes of B_n(F_q) or a subset", nullptr},
      {"zclasses", "z-classes of B_n(F_q) or a subset", nullptr},
      {"jordan", "Jordan decomposition over F_q", "matrix"},
      {"semisimple-count", "number of semisimple z-classes by partition", nullptr},
      {"verify", "run a verification suite: prop21, prop32, lemma33, lemma41, appendix, all", "suite"},
  };
  std::vector<std::string> positional;
  for (const Sub& s : subs) {
    CLI::App* sub = app.add_subcommand(s.name, s.help);
    if (s.positional) sub->add_option(s.positional, positional, s.positional)->required();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? exit_pass : exit_parse_error;
  }

  for (const Sub& s : subs)
    if (app.got_subcommand(s.name)) config.command = s.name;
  config.args = positional;
  if (!cache_dir.empty()) config.cache_dir = cache_dir;
  if (budget) config.budget = budget;
  try {
    config.filter = parse_filter(filter);
    if (q) {
      const std::string from_q = "F" + std::to_string(*q);
      if (!config.field.empty() && config.field != from_q)
        throw Error(ErrorCode::parse_error, "--q " + std::to_string(*q) + " disagrees with --field " + config.field);
      config.field = from_q;
    }
    if (!config.field.empty()) FieldSpec::parse(config.field);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e);
  }
  return run_command(config, out, err);
}

}  // namespace zclass
