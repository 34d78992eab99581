#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli_app.hpp"
#include "test_support.hpp"

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "nugrass");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = nugrass::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

const std::vector<std::string> kG{"--k", "1", "--l", "2", "--m", "3", "--n", "3"};
const std::vector<std::string> kSmall{"--k", "1", "--l", "1", "--m", "2", "--n", "2"};

std::vector<std::string> with(std::vector<std::string> base, std::initializer_list<std::string> more) {
  base.insert(base.end(), more);
  return base;
}

TEST(Cli, LabelMatchesGolden) {
  const Outcome o = run_cli(with(kG, {"label", "--I", "2", "--R", "1,3"}));
  EXPECT_EQ(o.code, 0) << o.err;
  EXPECT_EQ(o.out, nugrass::testing::read_golden("label_I2_R13.txt"));
}

TEST(Cli, AtlasListsEveryChart) {
  const Outcome o = run_cli(with(kG, {"atlas"}));
  EXPECT_EQ(o.code, 0);
  EXPECT_NE(o.out.find("nG_{1|2}(3|3): 20 charts, 9 standard"), std::string::npos);
  const Outcome j = run_cli(with(kG, {"--json", "atlas"}));
  const auto parsed = nugrass::Json::parse(j.out);
  EXPECT_EQ(parsed["count"], 20);
  EXPECT_EQ(parsed["charts"].size(), 20u);
}

TEST(Cli, TransitionAndEmptyOverlap) {
  const Outcome t = run_cli(with(kSmall, {"transition", "--from", "1|1", "--to", "2|2"}));
  EXPECT_EQ(t.code, 0) << t.err;
  EXPECT_NE(t.out.find("e1 = (-1/(x1*x2))*e1"), std::string::npos) << t.out;
  const Outcome e = run_cli(with(kG, {"--json", "transition", "--from", "2|1,3", "--to", "2,3|1"}));
  EXPECT_EQ(e.code, 0);
  EXPECT_EQ(nugrass::Json::parse(e.out)["status"], "empty-overlap");
}

TEST(Cli, UsageErrorsExitWithTwo) {
  EXPECT_EQ(run_cli({"atlas"}).code, 2);
  EXPECT_EQ(run_cli(with(kG, {})).code, 2);
  EXPECT_EQ(run_cli(with(kG, {"verify", "everything"})).code, 2);
  EXPECT_EQ(run_cli(with(kG, {"label", "--I", "4", "--R", "1,2"})).code, 2);
  EXPECT_EQ(run_cli(with(kG, {"--triples", "some", "verify", "cocycle"})).code, 2);
  EXPECT_EQ(run_cli(with(kG, {"--nu", "/nonexistent/nu.json", "atlas"})).code, 2);
  EXPECT_EQ(run_cli({"--k", "3", "--l", "0", "--m", "2", "--n", "1", "atlas"}).code, 2);
  EXPECT_EQ(run_cli({"--help"}).code, 0);
}

TEST(Cli, VerifyExitCodeFollowsResults) {
  const Outcome ok = run_cli(with(kSmall, {"--triples", "standard-only", "verify", "cocycle"}));
  EXPECT_EQ(ok.code, 0) << ok.out;
  EXPECT_NE(ok.out.find("result: pass"), std::string::npos);
  const Outcome full = run_cli(with(kSmall, {"--json", "verify", "cocycle"}));
  const auto j = nugrass::Json::parse(full.out);
  EXPECT_EQ(full.code, j["status"] == "pass" ? 0 : 1);
}

TEST(Cli, NuFileAndOutputFile) {
  const std::string nu_path = ::testing::TempDir() + "nu_perm.json";
  const std::string out_path = ::testing::TempDir() + "atlas.json";
  {
    std::ofstream f(nu_path);
    f << R"({"permutation": [1, 0]})";
  }
  const Outcome o = run_cli(with(kSmall, {"--nu", nu_path, "--json", "--out", out_path, "atlas"}));
  EXPECT_EQ(o.code, 0) << o.err;
  EXPECT_TRUE(o.out.empty());
  std::ifstream in(out_path);
  const auto j = nugrass::Json::parse(in);
  EXPECT_NE(j["nu"].get<std::string>().find("pairing=[0 1; 1 0]"), std::string::npos);
  {
    std::ofstream f(nu_path);
    f << "{not json";
  }
  EXPECT_EQ(run_cli(with(kSmall, {"--nu", nu_path, "atlas"})).code, 2);
  std::remove(nu_path.c_str());
  std::remove(out_path.c_str());
}

}  // namespace
