#include <gtest/gtest.h>

#include <sstream>

#include "json.hpp"

#include "cli.hpp"

namespace madelung::cli {
namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(std::move(args), out, err);
  return {code, out.str(), err.str()};
}

TEST(Cli, NaClDefaultCommand) {
  const Outcome o = invoke({"--family", "nacl", "--dim", "3", "--a", "1", "--method", "subtracted"});
  ASSERT_EQ(o.code, kExitOk) << o.err;
  const auto j = nlohmann::json::parse(o.out);
  EXPECT_NEAR(j["value"].get<double>(), -1.7475645946331821, 1e-12);
  EXPECT_EQ(j["schema"], 1);
}

TEST(Cli, PlanarDefaultsToClosedForm) {
  const Outcome o = invoke({"--family", "cscl", "--dim", "2"});
  ASSERT_EQ(o.code, kExitOk) << o.err;
  const auto j = nlohmann::json::parse(o.out);
  EXPECT_NEAR(j["value"].get<double>(), -0.617385745351564, 1e-13);
  EXPECT_EQ(j["method"], "closed-form-2d");
  EXPECT_EQ(j["exact_form"], "−log(Γ(1/4)²/(4√π))");
}

TEST(Cli, PlanarEpsilonLimitIsUsageError) {
  const Outcome o = invoke({"--family", "nacl", "--dim", "2", "--method", "epsilon-limit"});
  EXPECT_EQ(o.code, kExitUsage);
  EXPECT_NE(o.err.find("log(eps/A)"), std::string::npos) << o.err;
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(invoke({"--a", "1", "--length", "2"}).code, kExitUsage);
  EXPECT_EQ(invoke({"--a", "1", "--convention", "cell-side"}).code, kExitUsage);
  EXPECT_EQ(invoke({"--family", "kcl"}).code, kExitUsage);
  EXPECT_EQ(invoke({"--dim", "3", "--method", "closed-form-2d"}).code, kExitUsage);
  EXPECT_EQ(invoke({"--bogus"}).code, kExitUsage);
  EXPECT_EQ(invoke({"psi", "--dim", "2", "--point", "0,0"}).code, kExitUsage);
  EXPECT_EQ(invoke({"psi", "--dim", "3", "--point", "0.1,0.2"}).code, kExitUsage);
  EXPECT_EQ(invoke({"potential-grid", "--resolution", "2"}).code, kExitUsage);
  EXPECT_EQ(invoke({"--rel-tol", "2"}).code, kExitUsage);
}

TEST(Cli, NumericalFailureEmitsDiagnosticJson) {
  const Outcome o = invoke({"psi", "--dim", "3", "--point", "0.3,0.2,0.1", "--abs-tol", "1e-300", "--rel-tol", "1e-16"});
  ASSERT_EQ(o.code, kExitNumerical) << o.err;
  const auto j = nlohmann::json::parse(o.out);
  EXPECT_EQ(j["error"], "accuracy");
  EXPECT_TRUE(j.contains("best_estimate"));
}

TEST(Cli, ConventionFlag) {
  const Outcome o = invoke({"--family", "cscl", "--dim", "3", "--length", "1", "--convention", "cell-side"});
  ASSERT_EQ(o.code, kExitOk) << o.err;
  const auto j = nlohmann::json::parse(o.out);
  EXPECT_EQ(j["a"].get<double>(), 0.5);
  EXPECT_EQ(j["convention"], "cell-side");
}

TEST(Cli, PsiAndPartialSums) {
  const Outcome p = invoke({"psi", "--dim", "2", "--point", "1,1"});
  ASSERT_EQ(p.code, kExitOk) << p.err;
  EXPECT_NEAR(nlohmann::json::parse(p.out)["points"][0]["value"].get<double>(), 0.0551589000381629, 1e-13);
  const Outcome s = invoke({"partial-sums", "--ordering", "spheres", "--radius-max", "2"});
  ASSERT_EQ(s.code, kExitOk) << s.err;
  EXPECT_EQ(s.out.substr(0, 19), "radius,partial_sum\n");
}

TEST(Cli, PotentialGridFormats) {
  const Outcome c = invoke({"potential-grid", "--dim", "2", "--resolution", "4", "--format", "csv"});
  ASSERT_EQ(c.code, kExitOk) << c.err;
  EXPECT_EQ(c.out.substr(0, 13), "x1,x2,V,mask\n");
  const Outcome j = invoke({"potential-grid", "--dim", "2", "--resolution", "4"});
  ASSERT_EQ(j.code, kExitOk) << j.err;
  EXPECT_EQ(nlohmann::json::parse(j.out)["schema"], 1);
}

TEST(Cli, Deterministic) {
  const std::vector<std::string> args{"--family", "cscl", "--dim", "4", "--method", "ewald-oracle"};
  EXPECT_EQ(invoke(args).out, invoke(args).out);
  const std::vector<std::string> grid{"potential-grid", "--family", "cscl", "--dim", "3", "--resolution", "4"};
  EXPECT_EQ(invoke(grid).out, invoke(grid).out);
}

TEST(Cli, VerifySubset) {
  const Outcome o = invoke({"verify", "--filter", "special_functions"});
  ASSERT_EQ(o.code, kExitOk) << o.out;
  const auto j = nlohmann::json::parse(o.out);
  EXPECT_TRUE(j["passed"].get<bool>());
  EXPECT_EQ(j["checks"].size(), 5u);
}

}  // namespace
}  // namespace madelung::cli
