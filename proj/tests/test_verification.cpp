#include <cmath>
#include <numbers>

#include <gtest/gtest.h>
#include <json.hpp>

#include "hbfde/errors.hpp"
#include "hbfde/special_functions.hpp"
#include "hbfde/verification.hpp"

using namespace hbfde;

namespace {

constexpr double kPi = std::numbers::pi;

}  // namespace

TEST(Report, JsonFields) {
  VerificationReport r;
  r.name = "x";
  r.sizes = {8, 16};
  r.max_errors = {0.4, 0.1};
  r.l2_errors = {0.2, 0.05};
  r.tolerance = 0.5;
  r.passed = true;
  compute_rate(r);
  ASSERT_TRUE(r.rate.has_value());
  EXPECT_DOUBLE_EQ(*r.rate, 2.0);
  const auto j = nlohmann::json::parse(r.to_json());
  EXPECT_EQ(j["check"], "x");
  EXPECT_EQ(j["sizes"][1], 16);
  EXPECT_EQ(j["pass"], true);
  EXPECT_DOUBLE_EQ(j["rate"].get<double>(), 2.0);
  EXPECT_EQ(r.to_json().find('\n'), std::string::npos);
}

TEST(Report, RateNeedsTwoPositiveErrors) {
  VerificationReport r;
  r.sizes = {8};
  r.max_errors = {0.1};
  compute_rate(r);
  EXPECT_FALSE(r.rate.has_value());
  r.sizes = {8, 16};
  r.max_errors = {0.1, 0.0};
  compute_rate(r);
  EXPECT_FALSE(r.rate.has_value());
  EXPECT_TRUE(nlohmann::json::parse(r.to_json())["rate"].is_null());
}

TEST(VolterraOracle, Examples) {
  const auto grid = power_grid(1.0, 256, 1.0);
  const auto z = volterra_oracle({FracParams(0.5, 0.0), 3.0, 0.0, ZeroForcing{}}, grid);
  for (double v : z.values()) EXPECT_EQ(v, 0.0);
  const auto c = volterra_oracle({FracParams(0.5, 0.0), 0.0, 0.7, ZeroForcing{}}, grid);
  for (double v : c.values()) EXPECT_EQ(v, 0.7);
  // theta = 0: u = E_alpha(-t^alpha) up to the trapezoid error.
  const auto g = power_grid(1.0, 1024, 1.0, 2.0);
  const auto u = volterra_oracle({FracParams(0.6, 0.0), 1.0, 1.0, ZeroForcing{}}, g);
  EXPECT_NEAR(u.values().back(), ml_one(0.6, -1.0), 1e-4);
}

TEST(L1Caputo, ExactOnLinear) {
  const auto grid = uniform_grid(0.0, 1.0, 50);
  const auto u = SampledFunction::sample(grid, [](double t) { return 2.0 * t + 1.0; });
  for (double a : {0.2, 0.5, 0.9}) {
    const auto d = l1_caputo(u, a);
    EXPECT_TRUE(std::isnan(d[0]));
    for (std::size_t i = 1; i < grid.size(); ++i) {
      EXPECT_NEAR(d[i], 2.0 * std::pow(grid[i], 1.0 - a) * rgamma(2.0 - a), 1e-12) << a << " " << i;
    }
  }
}

TEST(L1Solve, ConvergesToMittagLeffler) {
  const auto grid = power_grid(1.0, 2048, 1.0, 1.0 / 0.5);
  const std::vector<double> f(grid.size(), 0.0);
  const auto u = l1_solve(0.5, 2.0, 1.0, f, grid);
  EXPECT_NEAR(u.values().back(), ml_one(0.5, -2.0), 1e-4);
}

TEST(ResidualDirect, ZeroFieldZeroData) {
  DirectProblemSpec s{FracParams(0.5, 0.2), SampledFunction::sample(uniform_grid(0.0, 1.0, 32), [](double) { return 0.0; })};
  s.modes = 4;
  s.nx = 32;
  s.nt = 32;
  const auto sol = solve_direct(s);
  const auto r = residual_direct(sol.field, s);
  EXPECT_EQ(r.max_errors.at(0), 0.0);
  EXPECT_TRUE(r.passed);

  // Same zero field against the forcing sin(pi x): the residual is the forcing itself.
  s.forcing = SeparableForcing{SampledFunction::sample(uniform_grid(0.0, 1.0, 32), [](double x) { return std::sin(kPi * x); }),
                               SampledFunction({0.0, 1.0}, {1.0, 1.0})};
  const auto bad = residual_direct(sol.field, s);
  EXPECT_NEAR(bad.max_errors.at(0), 1.0, 1e-12);
  EXPECT_FALSE(bad.passed);
}

TEST(ResidualRefinement, SmoothForcing) {
  DirectProblemSpec s{FracParams(0.7, -0.3),
                      SampledFunction::sample(uniform_grid(0.0, 1.0, 64), [](double x) { return std::sin(kPi * x); })};
  s.modes = 4;
  s.nx = 64;
  s.grading = 2.0;
  const auto r = residual_refinement(s, {256, 512});
  EXPECT_TRUE(r.passed) << r.to_json();
  EXPECT_LT(r.max_errors[1], r.max_errors[0]);
}

TEST(Reduction, Examples) {
  EXPECT_TRUE(reduction_theta_zero(0.5, 1.0, power_grid(1.0, 64, 1.0)).passed);
  EXPECT_TRUE(reduction_theta_zero(0.9, 4.0, power_grid(2.0, 64, 1.0)).passed);
  const auto r = reduction_theta_zero(0.5, 0.0, power_grid(1.0, 16, 1.0));
  EXPECT_TRUE(r.passed);
  EXPECT_EQ(r.max_errors.at(0), 0.0);
}

TEST(Roundtrip, Examples) {
  const FracParams fp(0.5, 0.2);
  const std::vector<Resolution> res{{16, 128, 64}};
  const auto one = roundtrip_inverse(fp, SineSeries{{0.0, 1.0}}, 1.0, res);
  EXPECT_TRUE(one.passed) << one.to_json();
  EXPECT_LT(one.max_errors.at(0), 1e-10);
  const auto mix = roundtrip_inverse(fp, SineSeries{{1.0, 0.0, -0.5, 0.0, 0.25}}, 0.3, res);
  EXPECT_TRUE(mix.passed) << mix.to_json();
  const auto zero = roundtrip_inverse(fp, SineSeries{{0.0, 0.0}}, 1.0, res);
  EXPECT_TRUE(zero.passed);
  EXPECT_EQ(zero.max_errors.at(0), 0.0);
}

TEST(MLChecks, IdentitiesAndBound) {
  for (const char* which : {"exp", "expm1", "cos", "erfc"}) {
    const auto r = ml_identity(which);
    EXPECT_TRUE(r.passed) << r.to_json();
  }
  EXPECT_THROW(ml_identity("nope"), ContractError);
  const auto b = ml_bound(0.5, 1.0);
  EXPECT_TRUE(b.passed);
  EXPECT_LT(b.max_errors.at(0), 10.0);
}

TEST(CauchyResidual, ConvergesOnGradedGrid) {
  const auto r = cauchy_residual(FracParams(0.5, 0.3), 5.0, 1.0, {256, 512}, 2.0);
  EXPECT_TRUE(r.passed) << r.to_json();
  ASSERT_TRUE(r.rate.has_value());
  EXPECT_GE(*r.rate, 0.9);
}

TEST(Suites, Registry) {
  const auto names = suite_names();
  EXPECT_EQ(names.size(), 11u);
  EXPECT_EQ(names.front(), "identities");
  EXPECT_THROW(run_suite("nosuch"), ContractError);
  for (const char* cheap : {"identities", "bound", "zero-data", "reduction-theta-zero"}) {
    for (const auto& r : run_suite(cheap)) EXPECT_TRUE(r.passed) << r.to_json();
  }
}
