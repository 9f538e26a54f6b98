#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "karcher_cone/cli.hpp"
#include "karcher_cone/io.hpp"
#include "oracles.hpp"

using namespace karcher_cone;
using json = nlohmann::json;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(std::vector<std::string> args) {
  args.insert(args.begin(), "karcher-cone");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string fixture(const std::string& name) {
  return std::string(KARCHER_CONE_FIXTURES) + "/" + name;
}

PDMatrix load(const std::string& name) {
  return io::pd_from_json(io::read_file(fixture(name)));
}

}  // namespace

TEST(CliMean, SingleAtom) {
  const Outcome r = run({"mean", fixture("single_atom.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  const json doc = json::parse(r.out);
  EXPECT_EQ(doc["iterations"], 0);
  EXPECT_EQ(io::pd_from_json(doc["mean"]).matrix(), load("matrix_a.json").matrix());
}

TEST(CliMean, CommutingDiagonal) {
  const Outcome r = run({"mean", fixture("commuting_diagonal.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  const PDMatrix mean = io::pd_from_json(json::parse(r.out)["mean"]);
  EXPECT_LE(oracle::thompson(mean.matrix(), 2.0 * Eigen::MatrixXcd::Identity(2, 2)),
            1e-12);
}

TEST(CliMean, TwoAtomGeometricMean) {
  const Outcome r = run({"mean", fixture("two_atom.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  const PDMatrix mean = io::pd_from_json(json::parse(r.out)["mean"]);
  const auto g = oracle::geometric_mean(load("matrix_a.json").matrix(),
                                        load("matrix_b.json").matrix());
  EXPECT_LE(oracle::thompson(mean.matrix(), g), 1e-8);
}

TEST(CliMean, WeightsFlagOverrides) {
  const Outcome r = run({"mean", fixture("commuting_diagonal.json"), "--weights", "1,0"});
  EXPECT_EQ(r.code, 1);
  const Outcome ok = run({"mean", fixture("commuting_diagonal.json"), "--weights", "0.75,0.25"});
  ASSERT_EQ(ok.code, 0) << ok.err;
  const PDMatrix mean = io::pd_from_json(json::parse(ok.out)["mean"]);
  Eigen::MatrixXcd expected = Eigen::MatrixXcd::Zero(2, 2);
  expected(0, 0) = std::pow(4.0, 0.25);
  expected(1, 1) = std::pow(4.0, 0.75);
  EXPECT_LE(oracle::thompson(mean.matrix(), expected), 1e-10);
  EXPECT_EQ(run({"mean", fixture("commuting_diagonal.json"), "--weights", "1"}).code, 1);
}

TEST(CliMean, NotConvergedExitsTwo) {
  const Outcome r = run({"mean", fixture("uniform3_a.json"), "--max-iter", "1"});
  EXPECT_EQ(r.code, 2);
  EXPECT_EQ(json::parse(r.out)["converged"], false);
  EXPECT_FALSE(r.err.empty());
}

TEST(CliMean, MalformedInputExitsOne) {
  EXPECT_EQ(run({"mean", fixture("no_such_file.json")}).code, 1);
  EXPECT_EQ(run({"mean"}).code, 1);
  EXPECT_EQ(run({}).code, 1);
  EXPECT_EQ(run({"mean", fixture("two_atom.json"), "--initial-step", "2"}).code, 1);
}

TEST(CliDistance, Thompson) {
  const Outcome same = run({"distance", fixture("matrix_a.json"), fixture("matrix_a.json")});
  ASSERT_EQ(same.code, 0) << same.err;
  EXPECT_EQ(same.out, "0\n");
  const Outcome scaled =
      run({"distance", fixture("matrix_a.json"), fixture("matrix_a_times_3.json")});
  ASSERT_EQ(scaled.code, 0);
  EXPECT_NEAR(std::stod(scaled.out), std::log(3.0), 1e-13);
}

TEST(CliDistance, MinmaxAndW1OnUniformTriples) {
  const Measure mu = io::measure_from_json(io::read_file(fixture("uniform3_a.json")));
  const Measure nu = io::measure_from_json(io::read_file(fixture("uniform3_b.json")));
  Eigen::MatrixXd cost(3, 3);
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      cost(i, j) = oracle::thompson(mu.atom(i).matrix(), nu.atom(j).matrix());
    }
  }
  const auto best = oracle::enumerate_permutations(cost);
  const Outcome mm = run({"distance", "--metric", "minmax", fixture("uniform3_a.json"),
                      fixture("uniform3_b.json")});
  ASSERT_EQ(mm.code, 0) << mm.err;
  EXPECT_NEAR(std::stod(mm.out), best.min_max, 1e-10);
  const Outcome w1 = run({"distance", "--metric", "w1", fixture("uniform3_a.json"),
                      fixture("uniform3_b.json")});
  ASSERT_EQ(w1.code, 0) << w1.err;
  EXPECT_NEAR(std::stod(w1.out), best.min_average, 1e-10);
}

TEST(CliDistance, InputMismatchExitsOne) {
  EXPECT_EQ(run({"distance", fixture("matrix_a.json"), fixture("two_atom.json")}).code, 1);
  EXPECT_EQ(run({"distance", "--metric", "w1", fixture("matrix_a.json"),
                 fixture("matrix_b.json")})
                .code,
            1);
  EXPECT_EQ(run({"distance", fixture("matrix_a.json"),
                 fixture("uniform3_a.json"), "--metric", "minmax"})
                .code,
            1);
  EXPECT_EQ(run({"distance", "--metric", "hilbert", fixture("matrix_a.json"),
                 fixture("matrix_a.json")})
                .code,
            1);
}

TEST(CliBarycenter, Kinds) {
  for (const char* kind : {"karcher", "arithmetic", "harmonic"}) {
    const Outcome r = run({"barycenter", fixture("commuting_diagonal.json"), "--kind", kind});
    ASSERT_EQ(r.code, 0) << r.err;
    const json doc = json::parse(r.out);
    EXPECT_EQ(doc["kind"], kind);
    const PDMatrix b = io::pd_from_json(doc["barycenter"]);
    const double diag = std::string(kind) == "karcher"      ? 2.0
                        : std::string(kind) == "arithmetic" ? 2.5
                                                            : 1.6;
    EXPECT_NEAR(b.matrix()(0, 0).real(), diag, 1e-12) << kind;
  }
}

TEST(CliApprox, Examples) {
  const Outcome one = run({"approx", fixture("single_atom.json"), "--eps", "0.1"});
  ASSERT_EQ(one.code, 0) << one.err;
  const json doc = json::parse(one.out);
  EXPECT_EQ(doc["atoms"].size(), 1u);
  EXPECT_EQ(doc["certified_w1_bound"], 0.2);

  const Outcome wide = run({"approx", fixture("cloud200.json"), "--eps", "100"});
  ASSERT_EQ(wide.code, 0);
  EXPECT_EQ(json::parse(wide.out)["atoms"].size(), 1u);

  EXPECT_EQ(run({"approx", fixture("cloud200.json"), "--eps", "0"}).code, 1);
  EXPECT_EQ(run({"approx", fixture("cloud200.json")}).code, 1);
}

TEST(CliApprox, CloudWithinCertifiedBound) {
  const Outcome r = run({"approx", fixture("cloud200.json"), "--eps", "0.1"});
  ASSERT_EQ(r.code, 0) << r.err;
  const std::string emitted = testing::TempDir() + "approx_cloud.json";
  {
    std::ofstream(emitted) << r.out;
  }
  const Outcome d = run({"distance", "--metric", "w1", fixture("cloud200.json"), emitted});
  ASSERT_EQ(d.code, 0) << d.err;
  EXPECT_LT(std::stod(d.out), 0.2);
}

TEST(CliVerify, SingleTrialSuite) {
  const Outcome r = run({"verify", "--suite", "p1", "--trials", "1", "--seed", "7"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json doc = json::parse(r.out);
  EXPECT_EQ(doc["seed"], 7);
  ASSERT_FALSE(doc["properties"].empty());
  EXPECT_EQ(doc["properties"][0]["pass"], true);
  EXPECT_NE(r.err.find("PASS p1"), std::string::npos);
  EXPECT_EQ(run({"verify", "--suite", "p1", "--trials", "1", "--seed", "7"}).out, r.out);
}

TEST(CliVerify, IdenticalMatrixFixture) {
  const Outcome r = run({"verify", "--suite", "metric", "--fixture",
                     fixture("identical_matrices.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  for (const auto& res : json::parse(r.out)["properties"]) {
    EXPECT_EQ(res["pass"], true) << res["property"];
    EXPECT_EQ(res["worst_slack"], 0.0) << res["property"];
  }
}

TEST(CliVerify, UnknownSuiteExitsOne) {
  const Outcome r = run({"verify", "--suite", "p10"});
  EXPECT_EQ(r.code, 1);
  EXPECT_TRUE(r.out.empty());
  EXPECT_NE(r.err.find("p10"), std::string::npos);
}

TEST(CliSeed, FlagThenEnvironmentThenDefault) {
  const std::uint64_t flag = 5;
  EXPECT_EQ(cli::resolve_seed(&flag), 5u);
  ::setenv("KARCHER_CONE_SEED", "123", 1);
  EXPECT_EQ(cli::resolve_seed(nullptr), 123u);
  EXPECT_EQ(cli::resolve_seed(&flag), 5u);
  ::setenv("KARCHER_CONE_SEED", "junk", 1);
  EXPECT_EQ(cli::resolve_seed(nullptr), 20160401u);
  ::unsetenv("KARCHER_CONE_SEED");
  EXPECT_EQ(cli::resolve_seed(nullptr), 20160401u);
}
