#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "gct/cli.hpp"
#include "support.hpp"

using namespace gct::testing;
namespace fs = std::filesystem;

namespace {

struct CliRun {
  int code = 0;
  std::string out;
  std::string err;
};

CliRun gct_run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = gct::run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "gct_cli_test";
  fs::create_directories(dir);
  return (dir / name).string();
}

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(f), {}};
}

void spit(const std::string& path, const std::string& text) { std::ofstream(path, std::ios::binary) << text; }

bool contains(const std::string& hay, const std::string& needle) { return hay.find(needle) != std::string::npos; }

}  // namespace

TEST(Cli, VerifyExitCodes) {
  for (const char* name : {"vec_z2", "vec_z3", "vec_s3", "ising", "fib"}) {
    const CliRun r = gct_run({"verify", data_path(name)});
    EXPECT_EQ(r.code, 0) << name << r.err;
    EXPECT_TRUE(contains(r.out, "pass")) << name;
  }
  EXPECT_EQ(gct_run({"verify", data_path("vec_z2"), "--tol", "1e-15"}).code, 0);

  const CliRun broken = gct_run({"verify", fault_path("broken_pentagon.json")});
  EXPECT_EQ(broken.code, 2);
  EXPECT_TRUE(contains(broken.out + broken.err, "pentagon"));

  const CliRun junk = gct_run({"verify", fault_path("not_json.json")});
  EXPECT_EQ(junk.code, 2);
  EXPECT_TRUE(contains(junk.err, "[schema]"));

  const CliRun qdim = gct_run({"verify", fault_path("bad_qdim.json")});
  EXPECT_EQ(qdim.code, 2);
  EXPECT_TRUE(contains(qdim.out + qdim.err, "qdim"));

  const CliRun action = gct_run({"verify", fault_path("bad_action.json")});
  EXPECT_EQ(action.code, 2);
  EXPECT_TRUE(contains(action.out + action.err, "action"));

  EXPECT_EQ(gct_run({"verify", temp_file("does_not_exist.json")}).code, 1);
}

TEST(Cli, ParseErrors) {
  EXPECT_EQ(gct_run({}).code, 2);
  EXPECT_EQ(gct_run({"verify"}).code, 2);
  EXPECT_EQ(gct_run({"frobnicate", data_path("fib")}).code, 2);
  EXPECT_EQ(gct_run({"verify", data_path("fib"), "--tol", "abc"}).code, 2);
}

TEST(Cli, TubeSummary) {
  const CliRun ising = gct_run({"tube", data_path("ising")});
  EXPECT_EQ(ising.code, 0) << ising.err;
  EXPECT_TRUE(contains(ising.out, "dim 4, 4 blocks")) << ising.out;
  EXPECT_TRUE(contains(ising.out, "dim 2, 2 blocks")) << ising.out;

  const CliRun fib = gct_run({"tube", data_path("fib"), "--subcat", "all"});
  EXPECT_EQ(fib.code, 0) << fib.err;
  EXPECT_TRUE(contains(fib.out, "dim 7, 4 blocks, ranks [1 2 1 1]")) << fib.out;

  EXPECT_EQ(gct_run({"tube", data_path("fib"), "--subcat", "tau"}).code, 2);
  EXPECT_EQ(gct_run({"tube", data_path("ising"), "--grade", "7"}).code, 2);
}

TEST(Cli, CenterCounts) {
  const CliRun ising = gct_run({"center", data_path("ising")});
  EXPECT_EQ(ising.code, 0) << ising.err;
  EXPECT_TRUE(contains(ising.out, ": 6 simples")) << ising.out;

  const CliRun s3 = gct_run({"center", data_path("vec_s3"), "--subcat", "all"});
  EXPECT_EQ(s3.code, 0) << s3.err;
  EXPECT_TRUE(contains(s3.out, ": 8 simples")) << s3.out;
  EXPECT_TRUE(contains(s3.out, "braiding residual")) << s3.out;

  const CliRun fib = gct_run({"center", data_path("fib"), "--subcat", "all"});
  EXPECT_EQ(fib.code, 0) << fib.err;
  EXPECT_TRUE(contains(fib.out, ": 4 simples")) << fib.out;
}

TEST(Cli, GCenter) {
  const CliRun z3 = gct_run({"gcenter", data_path("vec_z3"), "--action", "inversion"});
  EXPECT_EQ(z3.code, 0) << z3.err;
  EXPECT_TRUE(contains(z3.out, "equivariant count 8")) << z3.out;
  EXPECT_TRUE(contains(z3.out, "8 simples match")) << z3.out;

  const CliRun nope = gct_run({"gcenter", data_path("vec_z3"), "--action", "nope"});
  EXPECT_EQ(nope.code, 2);
  EXPECT_TRUE(contains(nope.err, "[action]")) << nope.err;

  EXPECT_EQ(gct_run({"gcenter", data_path("fib")}).code, 2);
}

TEST(Cli, BraidCheckRoundTrip) {
  const std::string report = temp_file("z3_center.json");
  const std::string braiding = temp_file("z3_braiding.json");
  ASSERT_EQ(gct_run({"gcenter", data_path("vec_z3"), "--action", "inversion", "--json", report, "--braiding-out",
                     braiding})
                .code,
            0);

  const CliRun ok = gct_run({"braid-check", data_path("vec_z3"), "--center", report, "--braiding", braiding});
  EXPECT_EQ(ok.code, 0) << ok.err;
  EXPECT_TRUE(contains(ok.out, "pass")) << ok.out;

  nlohmann::json j = nlohmann::json::parse(slurp(braiding));
  bool flipped = false;
  for (auto& e : j["entries"]) {
    if (e["x"] != 3 || e["y"] != 4) continue;
    for (auto& block : e["E"])
      for (auto& z : block["data"]) {
        z[0] = -z[0].get<double>();
        z[1] = -z[1].get<double>();
      }
    flipped = true;
  }
  ASSERT_TRUE(flipped);
  const std::string bad = temp_file("z3_braiding_flipped.json");
  spit(bad, j.dump());
  const CliRun fail = gct_run({"braid-check", data_path("vec_z3"), "--center", report, "--braiding", bad});
  EXPECT_EQ(fail.code, 2);
  EXPECT_TRUE(contains(fail.out, "BF2")) << fail.out;
  EXPECT_TRUE(contains(fail.out, "FAIL")) << fail.out;

  j["entries"] = nlohmann::json::array();
  const std::string empty = temp_file("z3_braiding_empty.json");
  spit(empty, j.dump());
  const CliRun missing = gct_run({"braid-check", data_path("vec_z3"), "--center", report, "--braiding", empty});
  EXPECT_EQ(missing.code, 2);
  EXPECT_TRUE(contains(missing.err, "missing entries")) << missing.err;

  const CliRun other = gct_run({"braid-check", data_path("fib"), "--center", report, "--braiding", braiding});
  EXPECT_EQ(other.code, 2);
}

TEST(Cli, JsonIsDeterministic) {
  const std::string a = temp_file("fib_a.json");
  const std::string b = temp_file("fib_b.json");
  ASSERT_EQ(gct_run({"center", data_path("fib"), "--subcat", "all", "--seed", "11", "--json", a}).code, 0);
  ASSERT_EQ(gct_run({"center", data_path("fib"), "--subcat", "all", "--seed", "11", "--json", b}).code, 0);
  EXPECT_EQ(slurp(a), slurp(b));
  const auto j = nlohmann::json::parse(slurp(a));
  EXPECT_EQ(j["format"], "gct-center/1");
  EXPECT_EQ(j["seed"], 11);
  EXPECT_EQ(j["simples"].size(), 4u);
}

TEST(Cli, SeedFromEnvironment) {
  const std::string path = temp_file("fib_env.json");
  ::setenv("GCT_SEED", "42", 1);
  const CliRun r = gct_run({"tube", data_path("fib"), "--subcat", "all", "--json", path});
  const CliRun bad = (::setenv("GCT_SEED", "x1", 1), gct_run({"tube", data_path("fib"), "--subcat", "all"}));
  ::unsetenv("GCT_SEED");
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(contains(r.out, "seed 42")) << r.out;
  EXPECT_EQ(nlohmann::json::parse(slurp(path))["seed"], 42);
  EXPECT_EQ(bad.code, 2);
  const CliRun flag = gct_run({"tube", data_path("fib"), "--subcat", "all", "--seed", "5"});
  EXPECT_TRUE(contains(flag.out, "seed 5")) << flag.out;
}
