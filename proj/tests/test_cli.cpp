#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "zclass/cli.hpp"

using namespace zclass;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "zclass");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(int(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / ("zclass-test-" + name)) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

bool contains(const std::string& hay, const std::string& needle) { return hay.find(needle) != std::string::npos; }

}  // namespace

TEST_CASE("canonical command golden") {
  const Run r = run({"canonical", "--no-cache", "--n", "3", "--field", "F5", "1,2,0;0,1,3;0,0,1"});
  CHECK(r.code == 0);
  CHECK(r.out ==
        R"({"conjugator":{"field":"F5","n":3,"rows":[[1,0,0],[0,2,0],[0,0,1]]},"input":{"field":"F5","n":3,"rows":[[1,2,0],[0,1,3],[0,0,1]]},"output":{"field":"F5","n":3,"rows":[[1,1,0],[0,1,1],[0,0,1]]},"representative_index":4,"steps":[{"position":[2,3],"rule":"Step2","transform":{"field":"F5","n":3,"rows":[[1,0,0],[0,2,0],[0,0,1]]}}]})"
        "\n");
}

TEST_CASE("other command goldens") {
  const Run ss = run({"semisimple-count", "--no-cache", "--n", "3"});
  CHECK(ss.code == 0);
  CHECK(ss.out ==
        R"({"count":5,"n":3,"partitions":[{"partition":"3^1","patterns":["aaa"],"term":1},{"partition":"1^1 2^1","patterns":["aab","aba","abb"],"term":3},{"partition":"1^3","patterns":["abc"],"term":1}]})"
        "\n");

  const Run j = run({"jordan", "--no-cache", "--q", "5", "2,1;0,2"});
  CHECK(j.code == 0);
  CHECK(contains(j.out, R"("semisimple":{"field":"F5","n":2,"rows":[[2,0],[0,2]]})"));
  CHECK(contains(j.out, R"("unipotent":{"field":"F5","n":2,"rows":[[1,3],[0,1]]})"));
  CHECK(contains(j.out, R"("order":20)"));

  const Run c = run({"classes", "--no-cache", "--n", "3", "--q", "3", "--filter", "unipotent"});
  CHECK(c.code == 0);
  const Json cj = Json::parse(c.out);
  CHECK(cj["classes"].size() == 5);
  CHECK(cj["universe_size"] == 27);
  CHECK(cj["relation"] == "conjugacy");

  const Run z = run({"zclasses", "--no-cache", "--n", "3", "--q", "5", "--filter", "diagonal"});
  CHECK(z.code == 0);
  CHECK(Json::parse(z.out)["classes"].size() == 5);

  const Run cz = run({"centralizer", "--no-cache", "--field", "F5", "1,0;0,2"});
  CHECK(cz.code == 0);
  const Json czj = Json::parse(cz.out);
  CHECK(czj["dimension"] == 2);
  CHECK(czj["order"] == 16);
  CHECK(czj["elements"].size() == 16);

  const Run cq = run({"centralizer", "--no-cache", "1,1;0,1"});
  CHECK(cq.code == 0);
  CHECK(Json::parse(cq.out)["order"].is_null());
}

TEST_CASE("table format") {
  const Run t = run({"classes", "--no-cache", "--n", "3", "--q", "3", "--filter", "unipotent", "--format", "table"});
  CHECK(t.code == 0);
  CHECK(contains(t.out, "conjugacy classes of unipotent elements of B_3(F_3): 5\n"));
}

TEST_CASE("exit codes") {
  CHECK(run({"canonical", "--no-cache", "1,0,0,0,0,0;0,1,0,0,0,0;0,0,1,0,0,0;0,0,0,1,0,0;0,0,0,0,1,0;0,0,0,0,0,1"})
            .code == 3);
  CHECK(run({"canonical", "--no-cache", "1,0;1,1"}).code == 2);
  CHECK(run({"canonical", "--no-cache", "--field", "F4", "1,1;0,1"}).code == 3);  // not prime
  CHECK(run({"canonical", "--no-cache", "--field", "G5", "1,1;0,1"}).code == 2);
  CHECK(run({"canonical", "--no-cache", "--field", "F5", "2,1;0,1"}).code == 3);
  CHECK(run({"jordan", "--no-cache", "--q", "3", "--field", "F5", "1,1;0,1"}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"--help"}).code == 0);
  CHECK(run({"verify", "--no-cache", "nonsense"}).code != 0);
  CHECK(run({"classes", "--no-cache", "--n", "6", "--q", "5"}).code == 3);
}

TEST_CASE("output is deterministic") {
  const std::vector<std::string> args{"classes", "--no-cache", "--n", "3", "--q", "3"};
  CHECK(run(args).out == run(args).out);
  const std::vector<std::string> v{"verify", "--no-cache", "prop21"};
  CHECK(run(v).out == run(v).out);
}

TEST_CASE("result cache") {
  TempDir dir("cache");
  const std::vector<std::string> args{"classes", "--cache-dir", dir.path.string(), "--n", "3", "--q", "3"};
  const Run first = run(args);
  CHECK(first.code == 0);
  CHECK_FALSE(contains(first.err, "cache hit"));
  const Run second = run(args);
  CHECK(contains(second.err, "cache hit"));
  CHECK(second.out == first.out);

  std::vector<std::string> bypass = args;
  bypass.push_back("--no-cache");
  CHECK_FALSE(contains(run(bypass).err, "cache hit"));

  // A different seed is a different key.
  std::vector<std::string> seeded = args;
  seeded.insert(seeded.end(), {"--seed", "9"});
  CHECK_FALSE(contains(run(seeded).err, "cache hit"));

  // Corrupt every entry: recomputed with a warning, same output.
  for (const auto& e : fs::directory_iterator(dir.path)) std::ofstream(e.path()) << "{not json";
  const Run corrupt = run(args);
  CHECK(contains(corrupt.err, "warning: corrupt cache entry"));
  CHECK(corrupt.out == first.out);
  CHECK(contains(run(args).err, "cache hit"));
}

TEST_CASE("cache versions and keys") {
  TempDir dir("version");
  const Json key = Json::parse(R"({"command":"x","n":3})");
  ResultCache v1(dir.path, "v1"), v2(dir.path, "v2");
  std::ostringstream warn;
  v1.store(key, Json::parse(R"({"answer":42})"));
  REQUIRE(v1.lookup(key, warn));
  CHECK((*v1.lookup(key, warn))["answer"] == 42);
  CHECK_FALSE(v2.lookup(key, warn));
  CHECK_FALSE(v1.lookup(Json::parse(R"({"command":"x","n":4})"), warn));
  CHECK(ResultCache::key_hash(key) == ResultCache::key_hash(Json::parse(R"({"n":3,"command":"x"})")));
  CHECK(ResultCache::key_hash(key).size() == 16);
  CHECK(warn.str().empty());
}

TEST_CASE("cache directory from the environment") {
  TempDir dir("env");
  ::setenv("ZCLASS_CACHE_DIR", dir.path.string().c_str(), 1);
  const std::vector<std::string> args{"semisimple-count", "--n", "4"};
  run(args);
  CHECK(contains(run(args).err, "cache hit"));
  ::unsetenv("ZCLASS_CACHE_DIR");
  CHECK_FALSE(fs::is_empty(dir.path));
}

TEST_CASE("large centralizers go to an elements file") {
  TempDir dir("elements");
  const Run r = run({"centralizer", "--cache-dir", dir.path.string(), "--field", "F7", "1,0,0;0,1,0;0,0,1"});
  CHECK(r.code == 0);
  const Json j = Json::parse(r.out);
  CHECK(j["order"] == 74088);
  CHECK_FALSE(j.contains("elements"));
  REQUIRE(j["elements_file"].is_string());
  const fs::path file = j["elements_file"].get<std::string>();
  REQUIRE(fs::exists(file));
  std::ifstream in(file);
  const Json elems = Json::parse(in);
  CHECK(elems["elements"].size() == 74088);
}

TEST_CASE("verify suites") {
  const Run p = run({"verify", "--no-cache", "prop21"});
  CHECK(p.code == 0);
  const Json pj = Json::parse(p.out);
  CHECK(pj["suite"] == "prop21");
  for (const auto& c : pj["checks"]) {
    CHECK(c["verdict"] == "pass");
    CHECK_FALSE(c.contains("runtime_ms"));
  }
  const Run l = run({"verify", "--no-cache", "lemma33"});
  CHECK(l.code == 0);
  const Json lj = Json::parse(l.out);
  bool flagged = false;
  for (const auto& f : lj["flags"]) flagged |= f == "char-2 proxy";
  CHECK(flagged);
}
