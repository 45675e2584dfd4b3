// Runs the command-line tool and checks exit codes, reports and JSON stability.

#include <gtest/gtest.h>
#include <json.hpp>

#include <array>
#include <cstdio>
#include <string>
#include <sys/wait.h>

namespace {

struct CliRun {
  int code = -1;
  std::string out;
};

CliRun run(const std::string& args) {
  const std::string cmd = std::string(PADICLINE_CLI) + " " + args + " 2>/dev/null";
  CliRun r;
  FILE* f = popen(cmd.c_str(), "r");
  if (!f) return r;
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), f)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(f);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

void expect_round_trip(const std::string& out) {
  auto j = nlohmann::ordered_json::parse(out);
  EXPECT_EQ(j.dump(2) + "\n", out);
}

}  // namespace

TEST(Cli, BoundaryPoleConvergesToClosedForm) {
  CliRun r = run("integrate --p 5 --func 'rat:1/(x-3)' --arc a=0,b=1 --path k --json");
  ASSERT_EQ(r.code, 0);
  expect_round_trip(r.out);
  auto j = nlohmann::json::parse(r.out);
  EXPECT_TRUE(j["converged"].get<bool>());
  EXPECT_GE(j["closed_form_agreement"].get<long>(), 12);
  EXPECT_GE(j["achieved_precision"].get<long>(), 12);
}

TEST(Cli, ArtinHasseLeadingDigits) {
  CliRun r = run("integrate --p 3 --func builtin:artin_hasse_loderiv --arc a=1,b=0 --path k --json");
  ASSERT_EQ(r.code, 0);
  auto d = nlohmann::json::parse(r.out)["value"]["digits"];
  // -1 = 2 + 2*3 + 2*3^2 + ... ; three digits asserted
  EXPECT_EQ(d[0], 2);
  EXPECT_EQ(d[1], 2);
  EXPECT_EQ(d[2], 2);
}

TEST(Cli, PolynomialIntegratesToZero) {
  CliRun r = run("integrate --p 5 --func rat:x^2 --arc a=0,b=1 --path k --json");
  ASSERT_EQ(r.code, 0);
  EXPECT_TRUE(nlohmann::json::parse(r.out)["value"]["valuation"].is_null());
}

TEST(Cli, NoConvergenceExitsTwo) {
  CliRun r = run("integrate --p 3 --func builtin:gap_series:2:1 --arc a=1,b=0 --path k --json");
  EXPECT_EQ(r.code, 2);
  expect_round_trip(r.out);
  EXPECT_FALSE(nlohmann::json::parse(r.out)["converged"].get<bool>());
}

TEST(Cli, InputErrorsExitOne) {
  EXPECT_EQ(run("integrate --p 5 --func 'rat:1/(x-' --arc a=0,b=1").code, 1);
  EXPECT_EQ(run("integrate --p 4 --func rat:x --arc a=0,b=1").code, 1);
  EXPECT_EQ(run("integrate --p 5 --func rat:x").code, 1);
  EXPECT_EQ(run("verify nosuch").code, 1);
  EXPECT_EQ(run("bogus").code, 1);
  EXPECT_EQ(run("--help").code, 0);
}

TEST(Cli, TeichmullerOfTwoIsI) {
  CliRun r = run("teichmuller --p 5 2");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out.rfind("2 + 1*5 + 2*5^2 + 1*5^3 + 3*5^4", 0), 0u);
  EXPECT_EQ(run("teichmuller --p 5 1").out, "1 (mod 5^40)\n");
  CliRun j = run("teichmuller --p 5 2 --json --precision 8");
  expect_round_trip(j.out);
}

TEST(Cli, RayLimitsVanishOnEvenD) {
  CliRun r = run("raylimits --p 5 --func builtin:bernoulli_psi:2 --dmax 8 --kmax 3 --json");
  ASSERT_EQ(r.code, 0);
  expect_round_trip(r.out);
  for (const auto& row : nlohmann::json::parse(r.out)["rays"])
    EXPECT_EQ(row["exact_zero"].get<bool>(), row["d"].get<long>() % 2 == 0);
}

TEST(Cli, VerifySuiteJson) {
  CliRun r = run("verify cauchy-example-p5 --json");
  ASSERT_EQ(r.code, 0);
  expect_round_trip(r.out);
  EXPECT_TRUE(nlohmann::json::parse(r.out)["passed"].get<bool>());
}

TEST(Cli, EnvironmentOverridesDefaults) {
  CliRun r = run("teichmuller --p 5 1");
  CliRun e = run("teichmuller --p 5 1 --json");
  EXPECT_EQ(nlohmann::json::parse(e.out)["value"]["precision"], 40);
  const std::string cmd = "PADICLINE_PRECISION=9 " + std::string(PADICLINE_CLI) + " teichmuller --p 5 1";
  FILE* f = popen(cmd.c_str(), "r");
  ASSERT_NE(f, nullptr);
  char buf[128] = {};
  const std::size_t n = fread(buf, 1, sizeof buf - 1, f);
  pclose(f);
  EXPECT_EQ(std::string(buf, n), "1 (mod 5^9)\n");
  EXPECT_EQ(r.out, "1 (mod 5^40)\n");
}
