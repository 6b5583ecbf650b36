#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "odd/cli.hpp"
#include "odd/io.hpp"
#include "odd/lab.hpp"

namespace odd {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "odd");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(int(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("odd_cli_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) + "_" +
                                        ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  std::string save(const std::string& name, const LatticeMatrix& a) const {
    save_matrix(path(name), a);
    return path(name);
  }
  fs::path dir_;
};

TEST_F(Cli, GenWritesEchoAndDiagonals) {
  const auto r = run({"gen", "--model", "det", "--r", "2", "--W", "64", "--out", path("a.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("diagonals=257"), std::string::npos);
  EXPECT_NE(r.out.find("r=2"), std::string::npos);
  const auto a = load_matrix(path("a.json"));
  EXPECT_EQ(a.stored_count(), 257u);
  EXPECT_EQ(a, generate(DecayModel{}, 1, 64));
}

TEST_F(Cli, GenIsReproducible) {
  for (const char* name : {"x.json", "y.json"})
    ASSERT_EQ(run({"gen", "--model", "phase", "--seed", "7", "--W", "8", "--out", path(name)}).code, 0);
  EXPECT_EQ(slurp(path("x.json")), slurp(path("y.json")));
}

TEST_F(Cli, GenFlatEnvelope) {
  ASSERT_EQ(run({"gen", "--model", "phase", "--W", "8", "--r", "0", "--out", path("f.json")}).code, 0);
  const auto a = load_matrix(path("f.json"));
  for (const auto& d : a.slots())
    for (const cplx v : d) EXPECT_NEAR(std::abs(v), 1.0, 1e-15);
}

TEST_F(Cli, GenToStdoutAndErrors) {
  const auto r = run({"gen", "--W", "2"});
  ASSERT_EQ(r.code, 0);
  std::istringstream in(r.out);
  EXPECT_EQ(read_matrix_json(in), generate(DecayModel{}, 1, 2));
  EXPECT_EQ(run({"gen", "--W", "0"}).code, 2);
  EXPECT_EQ(run({"gen", "--W", "4", "--model", "gauss"}).code, 2);
  EXPECT_EQ(run({"gen"}).code, 2);
}

TEST_F(Cli, NormExamples) {
  const auto id = save("id.json", LatticeMatrix::identity(Window(1, 8)));
  auto r = run({"norm", "--in", id, "--spec", "jaffard:r=2"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "jaffard:r=2\t1\n");

  const auto m4 = save("m4.json", LatticeMatrix::single_diagonal(Window(1, 4), LatticeIndex::d1(4), 1.0));
  r = run({"norm", "--in", m4, "--spec", "besov:base=jaffard:r=0,r=1,p=inf,method=solidlp"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "besov:base=jaffard:r=0,r=1,p=inf,method=solidlp\t4\n");

  const auto zero = save("zero.json", LatticeMatrix::zero(Window(1, 4)));
  r = run({"norm", "--in", zero, "--spec", "op"});
  EXPECT_EQ(r.out, "op\t0\n");
}

TEST_F(Cli, NormJsonAndMultipleSpecs) {
  const auto a = save("a.json", generate(DecayModel{}, 1, 8));
  const auto r = run({"norm", "--in", a, "--spec", "op", "--spec", "schur:p=1,r=0", "--spec",
                      "approx:base=jaffard:r=0,r=1,p=inf,form=dyadic", "--spec", "bessel:r=0.5", "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = json::parse(r.out);
  ASSERT_EQ(j["results"].size(), 4u);
  EXPECT_EQ(j["results"][1]["spec"], "schur:p=1,r=0");
}

TEST_F(Cli, NormErrors) {
  const auto a = save("a.json", generate(DecayModel{}, 1, 4));
  EXPECT_EQ(run({"norm", "--in", a, "--spec", "jaffard:q=2"}).code, 2);
  EXPECT_EQ(run({"norm", "--in", a, "--spec", "w[bessel:r=1]op"}).code, 2);
  EXPECT_EQ(run({"norm", "--in", path("missing.json"), "--spec", "op"}).code, 2);
  EXPECT_EQ(run({"norm", "--in", a, "--spec", "op", "--format", "xml"}).code, 2);
  std::ofstream(path("bad.json")) << "{\"dim\": 1";
  EXPECT_EQ(run({"norm", "--in", path("bad.json"), "--spec", "op"}).code, 2);
}

TEST_F(Cli, DenseCsvInput) {
  std::ofstream(path("a.csv")) << "row,col,re,im\n0,0,1,0\n1,0,2,0\n-1,0,0,-3\n";
  const auto r = run({"norm", "--in", path("a.csv"), "--spec", "jaffard:r=0"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "jaffard:r=0\t3\n");
}

TEST_F(Cli, BesovApproxBesselProfile) {
  const auto a = save("a.json", generate(DecayModel{DecayModel::Kind::RandomPhase, 2.5, 1.0, 3}, 1, 16));
  auto r = run({"besov", "--in", a, "--r", "1"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 3);
  EXPECT_EQ(run({"besov", "--in", a, "--r", "1", "--base", "op", "--method", "solidlp"}).code, 2);
  EXPECT_EQ(run({"besov", "--in", a, "--r", "1.5", "--k", "1"}).code, 2);

  r = run({"approx", "--in", a, "--r", "1", "--format", "csv"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.rfind("W,spec,N,E\n16,\"jaffard:r=0\",0,", 0), 0u);
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 1 + 34);

  r = run({"bessel", "--in", a, "--r", "0.5", "--method", "embedding", "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(json::parse(r.out)["quadrature_converged"].get<bool>());

  r = run({"bessel", "--in", a, "--r", "0.5", "--method", "table", "--eps-last", "2", "--out", path("mu.csv")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(slurp(path("mu.csv")).rfind("m,eps,re,im\n", 0), 0u);

  r = run({"profile", "--in", a});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NEAR(json::parse(r.out)["exponent"].get<double>(), 2.5, 0.3);
}

TEST_F(Cli, NonConvergenceExitsThree) {
  const auto a = save("a.json", LatticeMatrix::single_diagonal(Window(1, 3), LatticeIndex::d1(1), 1.0));
  const auto r = run({"bessel", "--in", a, "--r", "1.5", "--method", "hypersingular", "--eps-last", "3", "--eps-max", "3",
                      "--tol", "1e-12"});
  EXPECT_EQ(r.code, 3);
  EXPECT_NE(r.err.find("did not stabilize"), std::string::npos);
  EXPECT_EQ(run({"bessel", "--in", a, "--r", "2.5", "--method", "hypersingular"}).code, 2);
}

TEST_F(Cli, ProfileRefusesIdentity) {
  const auto id = save("id.json", LatticeMatrix::identity(Window(1, 32)));
  EXPECT_EQ(run({"profile", "--in", id}).code, 2);
}

TEST_F(Cli, VerifyLeibniz) {
  const auto r = run({"verify", "--suite", "leibniz", "--count", "4", "--W", "16"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = json::parse(r.out);
  EXPECT_TRUE(j["passed"].get<bool>());
  EXPECT_LT(j["suites"][0]["metrics"]["max_residual"].get<double>(), 1e-12);
  EXPECT_EQ(j["seed"], 1);
  EXPECT_EQ(j["config"]["W"], "16");
}

TEST_F(Cli, VerifyLpEquivalenceReportsIntervals) {
  const auto r = run({"verify", "--suite", "lp-equivalence", "--count", "3", "--W", "16", "--out", path("v.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = json::parse(slurp(path("v.json")));
  EXPECT_EQ(j["suites"][0]["metrics"]["ratio_intervals"].size(), 3u);
}

TEST_F(Cli, VerifyFailureAndConfigurationErrors) {
  // A bound below every achievable ratio forces a failure with a replayable case.
  const auto r = run({"verify", "--suite", "reiteration", "--count", "2", "--W", "8", "--bound", "1.01"});
  EXPECT_EQ(r.code, 1);
  const auto j = json::parse(r.out);
  EXPECT_FALSE(j["passed"].get<bool>());
  EXPECT_TRUE(j["suites"][0]["failure"].contains("a"));
  EXPECT_EQ(run({"verify", "--count", "0"}).code, 2);
  EXPECT_EQ(run({"verify", "--suite", "nonexistent"}).code, 2);
}

TEST_F(Cli, ReportJsonCsvAndPlots) {
  auto r = run({"report", "--r", "3", "--W", "64,128,256", "--out", path("r.json"), "--plot-dir", path("plots")});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = json::parse(slurp(path("r.json")));
  ASSERT_EQ(j["cells"].size(), 3u);
  for (const auto& c : j["cells"]) {
    EXPECT_TRUE(c["matrix"].contains("exponent"));
    EXPECT_GE(c["inverse"]["exponent"].get<double>(), 2.75);
  }
  EXPECT_EQ(j["config"]["r"], "3");
  EXPECT_TRUE(fs::exists(path("plots") + "/W256_inverse.csv"));

  r = run({"report", "--r", "3", "--W", "16,32", "--format", "csv"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.rfind("W,quantity,matrix,inverse,exponent_matrix,exponent_inverse,super_polynomial_inverse,residual\n", 0), 0u);
  EXPECT_EQ(run({"report", "--W", "8"}).code, 2);
  EXPECT_EQ(run({"report", "--W", "32,16"}).code, 2);
}

TEST_F(Cli, ConfigFileMergesUnderFlags) {
  std::ofstream(path("c.ini")) << "[gen]\nW=5\nr=3\n";
  auto r = run({"--config", path("c.ini"), "gen", "--out", path("a.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("W=5"), std::string::npos);
  r = run({"gen", "--config", path("c.ini"), "--W", "6", "--out", path("a.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("W=6"), std::string::npos);
  EXPECT_NE(r.out.find("r=3"), std::string::npos);
  std::ofstream(path("bad.ini")) << "[gen]\nwidth=5\n";
  EXPECT_EQ(run({"--config", path("bad.ini"), "gen", "--W", "4"}).code, 2);
}

TEST_F(Cli, UsageExitCodes) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
  EXPECT_EQ(run({"norm", "--help"}).code, 0);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"gen", "--W", "four"}).code, 2);
  EXPECT_EQ(run({"--threads", "2", "gen", "--W", "2"}).code, 0);
}

}  // namespace
}  // namespace odd
