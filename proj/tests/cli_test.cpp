#include <gtest/gtest.h>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "wfomc/cli.hpp"

namespace {

const std::string kRoot = WFOMC_SOURCE_DIR;

struct Result {
  int code;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "wfomc");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = wfomc::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string model(const std::string& name) { return kRoot + "/models/" + name; }

std::vector<std::string> sorted_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);)
    if (!l.empty()) lines.push_back(l);
  std::sort(lines.begin(), lines.end());
  return lines;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST(Cli, CountSmokers) {
  Result r = run({"count", model("smokers.fol"), "--domain-size", "2"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "48\n");
}

TEST(Cli, CountJson) {
  Result r = run({"--json", "count", model("smokers.fol"), "--domain-size", "2"});
  EXPECT_EQ(r.out, "{\"count\":{\"den\":\"1\",\"num\":\"48\"}}\n");
}

TEST(Cli, ProbWorkshop) {
  Result r = run({"prob", model("workshop.plp"), "--query", "Series", "--domain-size", "2", "--mode", "exact"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "591/10000\n");
  Result f = run({"prob", model("workshop.plp"), "--query", "Series", "--domain-size", "2", "--mode", "float"});
  EXPECT_EQ(f.out, "0.0591\n");
}

TEST(Cli, EnginesAgreeOnShippedModels) {
  for (const char* m : {"smokers.fol", "boss.fol", "nested.fol", "parents.fol", "weighted.fol", "workshop.plp"}) {
    for (const char* n : {"1", "2"}) {
      Result b = run({"count", model(m), "--domain-size", n, "--engine", "brute"});
      Result d = run({"count", model(m), "--domain-size", n, "--engine", "dpll"});
      EXPECT_EQ(b.code, 0) << m << b.err;
      EXPECT_EQ(b.out, d.out) << m;
      Result s = run({"count", model(m), "--domain-size", n, "--skolemize"});
      EXPECT_EQ(s.out, b.out) << m;
    }
  }
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run({}).code, 1);
  EXPECT_EQ(run({"count", model("smokers.fol"), "--domain-size", "2", "--domain", "A,B"}).code, 1);
  EXPECT_EQ(run({"count", model("smokers.fol"), "--engine", "magic", "--domain-size", "1"}).code, 1);
  EXPECT_EQ(run({"count", model("smokers.fol")}).code, 2);
  EXPECT_EQ(run({"count", kRoot + "/nonexistent.fol", "--domain-size", "1"}).code, 2);
  Result big = run({"count", model("smokers.fol"), "--domain-size", "7", "--engine", "brute"});
  EXPECT_EQ(big.code, 3);
  EXPECT_FALSE(big.err.empty());
}

TEST(Cli, ParseErrorIsInputError) {
  std::string path = testing::TempDir() + "bad.fol";
  std::ofstream(path) << "forall x (P(x) &\n";
  Result r = run({"count", path, "--domain-size", "1"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("parse error"), std::string::npos);
  std::string loop = testing::TempDir() + "loop.plp";
  std::ofstream(loop) << "0.5 :: E.\nA :- B.\nB :- A, E.\n";
  EXPECT_EQ(run({"prob", loop, "--query", "A", "--domain-size", "1"}).code, 2);
}

TEST(Cli, EnvironmentCap) {
  setenv("WFOMC_MAX_ATOMS", "3", 1);
  Result r = run({"count", model("smokers.fol"), "--domain-size", "2", "--engine", "brute"});
  unsetenv("WFOMC_MAX_ATOMS");
  EXPECT_EQ(r.code, 3);
}

TEST(Cli, DimacsExport) {
  std::string path = testing::TempDir() + "smokers.cnf";
  Result r = run({"count", model("smokers.fol"), "--domain-size", "2", "--export-dimacs", path});
  EXPECT_EQ(r.code, 0);
  std::string cnf = slurp(path);
  EXPECT_EQ(cnf.rfind("p cnf ", 0), 0u);
  EXPECT_NE(cnf.find("c atom 6 Smokes(C2)"), std::string::npos);
}

TEST(Cli, Check) {
  Result r = run({"check", "--seeds", "20", "--sizes", "1,2"});
  EXPECT_EQ(r.code, 0) << r.out;
  Result one = run({"check", model("boss.fol"), "--sizes", "1,2,3"});
  EXPECT_EQ(one.out, "ok\n");
}

// Golden outputs of `skolemize` on the worked examples. Line order is not
// significant.
class Golden : public testing::TestWithParam<std::pair<std::vector<std::string>, std::string>> {};

TEST_P(Golden, Skolemize) {
  auto [args, golden] = GetParam();
  std::vector<std::string> full{"skolemize"};
  full.push_back(model(args[0]));
  full.insert(full.end(), args.begin() + 1, args.end());
  Result r = run(full);
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(sorted_lines(r.out), sorted_lines(slurp(kRoot + "/tests/golden/" + golden)));
}

INSTANTIATE_TEST_SUITE_P(
    WorkedExamples, Golden,
    testing::Values(std::pair{std::vector<std::string>{"boss.fol"}, std::string("boss.skolem")},
                    std::pair{std::vector<std::string>{"parents.fol", "--no-shortcut"}, std::string("parents.skolem")},
                    std::pair{std::vector<std::string>{"works.mln"}, std::string("works.skolem")},
                    std::pair{std::vector<std::string>{"workshop.plp"}, std::string("workshop.skolem")}));
