#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"

using nlohmann::json;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
};

// Runs the tool under a shell. stderr is folded into the captured output
// unless the caller asks for stdout alone (exact-match comparisons).
RunResult run(const std::string& args, const std::string& env = "",
              bool stdout_only = false) {
  std::string cmd = env.empty() ? std::string() : env + " ";
  cmd += std::string(FPT_TOOL_PATH) + " " + args;
  cmd += stdout_only ? " 2>/dev/null" : " 2>&1";
  RunResult res;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  while (std::size_t n = fread(buf, 1, sizeof buf, pipe)) res.out.append(buf, n);
  const int status = pclose(pipe);
  res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return res;
}

std::string temp_dir() {
  char tmpl[] = "/tmp/fpt-cli-test-XXXXXX";
  REQUIRE(mkdtemp(tmpl) != nullptr);
  return tmpl;
}

bool contains(const std::string& hay, const std::string& needle) {
  return hay.find(needle) != std::string::npos;
}

const std::string kE8 =
    "nu --prime 11 --vars X,Y,Z --gens 'X;Y;Z' --multiplier X^2+Y^3+Z^5";

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("level report with bounds and extrapolation") {
  const auto res = run(kE8 + " --no-cache");
  CHECK(res.exit_code == 0);
  CHECK(contains(res.out, "e=1 q=11 nu=1"));
  CHECK(contains(res.out, "e=2 q=121 nu=16"));
  CHECK(contains(res.out, "bounds [16/121, 20/121]"));
  CHECK(contains(res.out, "limit=3/22"));
}

TEST_CASE("json output carries the full schema") {
  const auto res = run(kE8 + " --no-cache --json");
  CHECK(res.exit_code == 0);
  const json doc = json::parse(res.out);
  CHECK(doc.at("version") == 1);
  CHECK(doc.at("prime") == 11);
  CHECK(doc.at("vars") == json::array({"X", "Y", "Z"}));
  CHECK(doc.at("pair").at("multiplier") == "X^2+Y^3+Z^5");
  CHECK(doc.at("levels").size() == 2);
  CHECK(doc.at("levels")[0].at("e") == 1);
  CHECK(doc.at("levels")[1].at("q") == 121);
  CHECK(doc.at("levels")[1].at("nu") == 16);
  CHECK(doc.at("bounds").at("lower") == "16/121");
  CHECK(doc.at("bounds").at("upper") == "20/121");
  CHECK(doc.at("conjecture").at("limit") == "3/22");
}

TEST_CASE("witness tuples appear on request") {
  const auto res = run(kE8 + " --no-cache --explain");
  CHECK(res.exit_code == 0);
  CHECK(contains(res.out, "witness"));
}

TEST_CASE("pairs that die at every level exit with the informational code") {
  const auto res = run("nu --prime 2 --vars X,Y --gens 'X;Y' --multiplier X^2 --no-cache");
  CHECK(res.exit_code == 3);
  CHECK(contains(res.out, "not F-pure"));
}

TEST_CASE("usage errors name the offending flag") {
  CHECK(run("nu --vars X,Y --gens X").exit_code == 2);
  CHECK(run("nu --prime 9 --vars X,Y --gens X").exit_code == 2);
  CHECK(run("frobnicate").exit_code == 2);
  const auto bad_poly = run("nu --prime 5 --vars X,Y --gens 'X^-1' --no-cache");
  CHECK(bad_poly.exit_code == 2);
  CHECK(contains(bad_poly.out, "--gens"));
  const auto bad_var = run("nu --prime 5 --vars X,Y --gens X+W --no-cache");
  CHECK(bad_var.exit_code == 2);
  CHECK(contains(bad_var.out, "W"));
}

TEST_CASE("monomial queries") {
  const std::string base = "monomial --vars X,Y --gens X^2,Y^3";
  CHECK(run(base + " --what fpt").out == "5/6\n");
  CHECK(run(base + " --what closure").out == "Y^3, X*Y^2, X^2\n");
  CHECK(run(base + " --what height").out == "2\n");
  CHECK(run(base + " --what mult").out == "6\n");
  const auto not_primary = run("monomial --vars X,Y --gens X^2 --what mult");
  CHECK(not_primary.exit_code == 2);
  CHECK(contains(not_primary.out, "'Y'"));
  const auto not_mono = run("monomial --vars X,Y --gens X+Y --what fpt");
  CHECK(not_mono.exit_code == 2);
}

TEST_CASE("cache round trip, reuse and verification") {
  const auto dir = temp_dir();
  const std::string env = "FPT_CACHE_DIR=" + dir;
  const auto cold = run(kE8, env);
  CHECK(cold.exit_code == 0);
  const auto warm = run(kE8, env);
  CHECK(warm.out == cold.out);

  // Cached and cache-free runs agree byte for byte.
  const auto off = run(kE8 + " --no-cache");
  CHECK(off.out == cold.out);

  std::ifstream file(dir + "/nu-cache.jsonl");
  REQUIRE(file.good());
  std::string line;
  std::size_t entries = 0;
  while (std::getline(file, line)) {
    const json rec = json::parse(line);
    CHECK(rec.contains("key"));
    CHECK(rec.at("p") == 11);
    CHECK(rec.contains("e"));
    CHECK(rec.contains("nu"));
    ++entries;
  }
  CHECK(entries == 2);

  const auto verified = run(kE8 + " --verify-cache", env);
  CHECK(verified.exit_code == 0);
  CHECK(verified.out == cold.out);
}

TEST_CASE("stale cache entries are detected and recomputed") {
  const auto dir = temp_dir();
  const std::string env = "FPT_CACHE_DIR=" + dir;
  const std::string small = "nu --prime 7 --vars X,Y --gens X^2+Y^3 --e 1";
  const auto cold = run(small, env);
  CHECK(cold.exit_code == 0);
  CHECK(contains(cold.out, "nu=5"));

  // Poison the stored value; the append-only log keeps the newest record.
  std::ifstream in(dir + "/nu-cache.jsonl");
  std::string line;
  REQUIRE(std::getline(in, line));
  json rec = json::parse(line);
  rec["nu"] = 4;
  std::ofstream(dir + "/nu-cache.jsonl", std::ios::app) << rec.dump() << "\n";

  const auto stale = run(small + " --verify-cache", env);
  CHECK(stale.exit_code == 1);
  CHECK(contains(stale.out, "nu=5"));  // recomputation wins
  CHECK(contains(stale.out, "cache"));
}

TEST_CASE("torn trailing cache lines are skipped") {
  const auto dir = temp_dir();
  const std::string env = "FPT_CACHE_DIR=" + dir;
  const std::string small = "nu --prime 7 --vars X,Y --gens X^2+Y^3 --e 1";
  const auto cold = run(small, env);
  std::ofstream(dir + "/nu-cache.jsonl", std::ios::app) << "{\"key\":\"tor";
  const auto warm = run(small, env);
  CHECK(warm.exit_code == 0);
  CHECK(warm.out == cold.out);
}

TEST_CASE("config files feed any subcommand and flags win over them") {
  const auto dir = temp_dir();
  const std::string conf = dir + "/run.conf";
  std::ofstream(conf) << "[nu]\nprime=7\nvars=\"X,Y\"\ngens=\"X^2+Y^3\"\ne=1\n"
                      << "no-cache=true\n";
  const auto from_conf = run("nu --config " + conf);
  CHECK(from_conf.exit_code == 0);
  CHECK(contains(from_conf.out, "e=1 q=7 nu=5"));
  const auto overridden = run("nu --config " + conf + " --prime 5");
  CHECK(overridden.exit_code == 0);
  CHECK(contains(overridden.out, "e=1 q=5 nu=3"));
}

TEST_CASE("suite transcripts replay and golden files round-trip") {
  const auto one = run("suite --name threshold-edge", "", /*stdout_only=*/true);
  const auto two = run("suite --name threshold-edge", "", /*stdout_only=*/true);
  CHECK(one.exit_code == 0);
  CHECK(one.out == two.out);
  CHECK(contains(one.out, "threshold-edge|"));

  const auto dir = temp_dir();
  const auto written = run("suite --name threshold-edge --golden write --golden-dir " + dir,
                           "", /*stdout_only=*/true);
  CHECK(written.exit_code == 0);
  std::ifstream file(dir + "/threshold-edge.txt");
  REQUIRE(file.good());
  std::ostringstream buf;
  buf << file.rdbuf();
  CHECK(buf.str() == one.out);

  CHECK(run("suite --name no-such-suite").exit_code == 2);
}

}  // TEST_SUITE
