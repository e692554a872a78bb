#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "fpt/harness.hpp"

using namespace fpt;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE_MESSAGE(in.good(), "missing golden file ", path,
                  " (regenerate with: fpt suite --name <suite> --golden write)");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

TEST_SUITE("golden") {

// Byte-identical replay of every suite transcript at the default seed.
TEST_CASE("suite transcripts match the committed goldens") {
  for (Suite suite : all_suites()) {
    SuiteSpec spec;
    spec.suite = suite;
    const auto report = run_suite(spec);
    CAPTURE(suite_name(suite));
    CHECK(report.all_passed());
    const auto want = read_file(std::string(FPT_GOLDEN_DIR) + "/" + suite_name(suite) + ".txt");
    CHECK(report.transcript() == want);
  }
}

}  // TEST_SUITE
