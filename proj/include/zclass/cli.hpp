#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "zclass/io.hpp"
#include "zclass/trimatrix.hpp"

namespace zclass {

/// Bumped whenever a cached result's meaning or layout changes.
inline constexpr std::string_view kCacheVersion = "zclass-cache-1";

enum ExitCode : int {
  exit_pass = 0,
  exit_check_failed = 1,
  exit_parse_error = 2,
  exit_precondition = 3,
  exit_inconclusive = 4,
};

/// Everything that determines a command's result, plus the knobs that only
/// affect where and how fast it is produced (format, cache, jobs).
struct RunConfig {
  std::string command;
  /// Positional arguments: a matrix for canonical / centralizer / jordan, a
  /// suite name for verify.
  std::vector<std::string> args;
  std::optional<int> n;
  /// "Q" or "F<p>"; empty means the command's default.
  std::string field;
  Filter filter = Filter::all;
  std::string format = "json";
  std::optional<std::filesystem::path> cache_dir;
  bool use_cache = true;
  std::optional<std::uint64_t> budget;
  std::uint64_t seed = 0;
  int jobs = 0;

  /// The result-determining fields, canonically ordered; the cache key.
  Json key() const;
};

enum class Provenance { published, derived_oracle, trivial };
std::string to_string(Provenance p);

struct CheckResult {
  std::string name;
  std::string expected;
  std::string actual;
  /// "pass", "fail" or "inconclusive".
  std::string verdict;
  Provenance provenance = Provenance::derived_oracle;
  double runtime_ms = 0;
};

struct VerificationReport {
  std::string suite;
  std::vector<CheckResult> checks;
  std::vector<std::string> flags;

  bool passed() const;
  int exit_code() const;
  /// Runtimes are left out unless requested so stdout stays reproducible.
  Json to_json(bool with_runtimes) const;
};

/// Content-addressed result store: <dir>/<fnv1a64 of key>.json holding
/// {"version", "key", "result"}. Entries with another version are misses;
/// unreadable entries are reported to `warn` and treated as misses.
class ResultCache {
 public:
  ResultCache(std::filesystem::path dir, std::string version = std::string(kCacheVersion));

  std::optional<Json> lookup(const Json& key, std::ostream& warn) const;
  void store(const Json& key, const Json& result) const;
  std::filesystem::path path_for(const Json& key) const;

  static std::string key_hash(const Json& key);

 private:
  std::filesystem::path dir_;
  std::string version_;
};

/// Suites: prop21, prop32, lemma33, lemma41, appendix, all.
VerificationReport run_verify(const std::string& suite, const RunConfig& config);

/// Runs one parsed command, writing results to `out` and diagnostics to `err`.
int run_command(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Full command line front end; returns the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace zclass
