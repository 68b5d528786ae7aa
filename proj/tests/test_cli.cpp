#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include "cli.hpp"
#include "qcycle/json_io.hpp"

namespace fs = std::filesystem;
using qcycle::json_io::json;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = qcycle::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("qcycle_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

}  // namespace

TEST_F(Cli, SccEmitsAllOnesTensor) {
  const Result r = run({"scc", "--n", "4", "--v0", "1", "--params", "1,1", "--emit", path("scc.json")});
  EXPECT_EQ(r.code, 0) << r.out << r.err;
  EXPECT_NE(r.out.find("scc: PASS"), std::string::npos);
  const json j = qcycle::json_io::read_file(path("scc.json"));
  EXPECT_EQ(j["p"][2][3][2], "4");
  EXPECT_EQ(j["series"]["f"]["coeffs"], json::array({"1", "1", "1", "1"}));
}

TEST_F(Cli, VerifyRoundTrip) {
  ASSERT_EQ(run({"scc", "--n", "4", "--v0", "2", "--params", "3/2", "--emit", path("s.json")}).code, 0);
  const Result r = run({"verify", "--tensor", path("s.json"), "--full", "--solution"});
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("solution_braid"), std::string::npos);
}

TEST_F(Cli, CorruptedTensorFailsVerification) {
  ASSERT_EQ(run({"scc", "--n", "4", "--v0", "1", "--params", "1,1", "--emit", path("s.json")}).code, 0);
  json j = qcycle::json_io::read_file(path("s.json"));
  j["p"][2][1][1] = "7";
  qcycle::json_io::write_file(path("bad.json"), j);
  const Result r = run({"verify", "--tensor", path("bad.json")});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("verify: FAIL"), std::string::npos);

  // A re-extended corruption is comultiplicative, so the braid list is printed.
  const Result fam = run({"family", "nonroot", "--n", "3", "--lambdas", "2,1", "--mu", "3", "--emit", path("f.json")});
  ASSERT_EQ(fam.code, 0) << fam.out;
  json k = qcycle::json_io::read_file(path("f.json"));
  k["d"][2][0][1] = "4";
  qcycle::json_io::write_file(path("bad2.json"), k);
  const Result r2 = run({"verify", "--tensor", path("bad2.json")});
  EXPECT_EQ(r2.code, 1);
  EXPECT_NE(r2.out.find("braid violations"), std::string::npos) << r2.out;
}

TEST_F(Cli, UsageErrors) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"nope"}).code, 2);
  EXPECT_EQ(run({"scc", "--v0", "1"}).code, 2);
  const Result bad = run({"scc", "--n", "3", "--v0", "1", "--params", "1/0"});
  EXPECT_EQ(bad.code, 2);
  EXPECT_NE(bad.err.find("error: ParseError"), std::string::npos) << bad.err;
  EXPECT_EQ(run({"scc", "--n", "3", "--v0", "1", "--params", "1,2"}).code, 2);
  EXPECT_EQ(run({"verify", "--tensor", path("missing.json")}).code, 2);
  EXPECT_EQ(run({"family", "nonroot", "--n", "3", "--lambdas", "-1,1", "--mu", "2"}).code, 2);
  EXPECT_EQ(run({"fixtures", "--n", "4"}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST_F(Cli, OpsCheck) {
  const Result r = run({"ops-check", "--n", "3", "--v0", "1", "--params", "2", "--pad", "1"});
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("truncation N = 4"), std::string::npos);
}

TEST_F(Cli, FixturesAndClassify) {
  const Result r = run({"fixtures", "--n", "3", "--emit", path("fx")});
  EXPECT_EQ(r.code, 0) << r.out;
  ASSERT_TRUE(fs::exists(path("fx/involutive_p12_1_p20_2.json")));
  const Result c = run({"classify", "--tensor", path("fx/involutive_p12_1_p20_2.json"), "--report-json", path("c.json")});
  EXPECT_EQ(c.code, 0) << c.out;
  EXPECT_NE(c.out.find("row: involutive_p10_root_of_unity"), std::string::npos);
  EXPECT_EQ(qcycle::json_io::read_file(path("c.json"))["row"], "involutive_p10_root_of_unity");
}

TEST_F(Cli, ClassifyRejectsBrokenStructure) {
  ASSERT_EQ(run({"scc", "--n", "3", "--v0", "1", "--params", "0", "--emit", path("s.json")}).code, 0);
  json j = qcycle::json_io::read_file(path("s.json"));
  j["p"][2][2][1] = "5";
  qcycle::json_io::write_file(path("bad.json"), j);
  EXPECT_EQ(run({"classify", "--tensor", path("bad.json")}).code, 1);
}

TEST_F(Cli, NonRootFamilyWithSolution) {
  const Result r = run({"family", "nonroot", "--n", "4", "--lambdas", "3,1,2", "--mu", "4", "--full", "--solution"});
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("solution_involutive_iff_p_eq_d"), std::string::npos);
}

TEST_F(Cli, ReportJsonAfterSubcommand) {
  const Result r = run({"scc", "--n", "3", "--v0", "2", "--report-json", path("r.json")});
  EXPECT_EQ(r.code, 0) << r.out << r.err;
  const json j = qcycle::json_io::read_file(path("r.json"));
  EXPECT_EQ(j["kind"], "report");
  EXPECT_EQ(j["ok"], true);
}
