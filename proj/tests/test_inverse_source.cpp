#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "hbfde/errors.hpp"
#include "hbfde/inverse_source.hpp"
#include "hbfde/scalar_fde.hpp"
#include "hbfde/special_functions.hpp"

using namespace hbfde;

namespace {

constexpr double kPi = std::numbers::pi;

template <class F>
SampledFunction on_unit(F&& f, int n = 128) {
  return SampledFunction::sample(uniform_grid(0.0, 1.0, n), f);
}

InverseProblemSpec make(SampledFunction psi, SampledFunction phi, double alpha = 0.5, double theta = 0.3,
                        double T = 1.0) {
  InverseProblemSpec s{FracParams(alpha, theta), std::move(psi), std::move(phi), T};
  s.modes = 8;
  s.nx = 64;
  s.nt = 64;
  return s;
}

double e_at(double alpha, double rho, double k, double t) {
  return ml_one(alpha, -k * k * kPi * kPi * std::pow(t, rho * alpha) / std::pow(rho, alpha));
}

}  // namespace

TEST(SolveInverse, EqualDataGivesStationarySource) {
  const auto psi = on_unit([](double x) { return std::sin(kPi * x) - 0.3 * std::sin(4.0 * kPi * x); });
  const auto res = solve_inverse(make(psi, psi));
  for (int k = 1; k <= 8; ++k) {
    EXPECT_EQ(res.c[k - 1], 0.0);
    EXPECT_NEAR(res.source(k), k * k * kPi * kPi * res.psi(k), 1e-12) << k;
  }
  // u stays at psi for all t.
  for (std::size_t i = 0; i < res.u.t.size(); ++i) EXPECT_NEAR(res.u.at(i, 16), psi.at(0.25), 1e-13);
}

TEST(SolveInverse, SingleMode) {
  for (double th : {-0.5, 0.0, 0.4}) {
    const FracParams fp(0.7, th);
    const auto res = solve_inverse(make(on_unit([](double x) { return std::sin(kPi * x); }), on_unit([](double) { return 0.0; }),
                                        0.7, th, 2.0));
    const double E = e_at(0.7, fp.rho(), 1.0, 2.0);
    EXPECT_NEAR(res.c[0], 1.0 / (1.0 - E), 1e-13);
    EXPECT_NEAR(res.source(1), kPi * kPi * (1.0 - res.c[0]), 1e-11);
    EXPECT_NEAR(res.denominators[0], 1.0 - E, 1e-15);
    for (int k = 2; k <= 8; ++k) EXPECT_NEAR(res.source(k), 0.0, 1e-12);
  }
}

TEST(SolveInverse, DenominatorsInUnitInterval) {
  const auto res = solve_inverse(make(on_unit([](double x) { return x * (1.0 - x); }),
                                      on_unit([](double x) { return 0.2 * x * (1.0 - x); }), 0.3, -0.7, 0.05));
  for (double d : res.denominators) {
    EXPECT_GT(d, 0.0);
    EXPECT_LT(d, 1.0);
  }
  EXPECT_EQ(res.diagnostics.min_denominator, res.denominators[0]);
  EXPECT_EQ(res.diagnostics.min_denominator_mode, 1);
}

TEST(SolveInverse, EndpointsInterpolated) {
  const auto res = solve_inverse(make(on_unit([](double x) { return x * (1.0 - x); }),
                                      on_unit([](double x) { return std::sin(2.0 * kPi * x) * 0.1; })));
  EXPECT_LE(res.diagnostics.endpoint_residual, 1e-10);
  for (int k = 1; k <= 8; ++k) {
    EXPECT_NEAR(res.u.modes[k - 1].front(), res.psi(k), 1e-10);
    EXPECT_NEAR(res.u.modes[k - 1].back(), res.phi(k), 1e-10);
  }
}

// Each recovered mode solves the scalar problem with constant forcing f_k.
TEST(SolveInverse, ModesSolveScalarProblem) {
  const FracParams fp(0.6, 0.2);
  auto s = make(on_unit([](double x) { return x * (1.0 - x); }), on_unit([](double x) { return 0.5 * std::sin(kPi * x); }),
                0.6, 0.2, 1.5);
  s.modes = 4;
  const auto res = solve_inverse(s);
  for (int k = 1; k <= 4; ++k) {
    const auto u = solve_scalar_constant(fp, k * k * kPi * kPi, res.psi(k), res.source(k), res.u.t);
    for (std::size_t i = 0; i < res.u.t.size(); ++i) EXPECT_NEAR(u.values()[i], res.u.modes[k - 1][i], 1e-10) << k;
  }
}

// Direct solve with a time-independent source, then recover that source from (psi, u(T)).
TEST(SolveInverse, RoundTripThroughDirect) {
  const FracParams fp(0.45, -0.3);
  DirectProblemSpec d{fp, on_unit([](double x) { return std::sin(2.0 * kPi * x) + 0.2 * std::sin(5.0 * kPi * x); })};
  d.forcing = SeparableForcing{on_unit([](double x) { return std::sin(kPi * x) - 0.5 * std::sin(3.0 * kPi * x); }),
                               SampledFunction({0.0, 2.0}, {1.0, 1.0})};
  d.T = 2.0;
  d.modes = 8;
  d.nx = 128;
  d.nt = 64;
  const auto sol = solve_direct(d);
  std::vector<double> phi(sol.field.values.end() - static_cast<long>(sol.field.x.size()), sol.field.values.end());
  phi.front() = 0.0;
  phi.back() = 0.0;
  const auto res = solve_inverse(make(d.psi, SampledFunction(sol.field.x, phi), 0.45, -0.3, 2.0));
  for (int k = 1; k <= 8; ++k) {
    const double want = k == 1 ? 1.0 : k == 3 ? -0.5 : 0.0;
    EXPECT_NEAR(res.source(k), want, 1e-9) << k;
  }
  const auto f = reconstruct_source_field(res, {0.0, 0.25, 0.5});
  EXPECT_NEAR(f.values()[1], std::sin(kPi / 4.0) - 0.5 * std::sin(0.75 * kPi), 1e-9);
  EXPECT_NEAR(f.values()[2], 1.5, 1e-9);
}

TEST(SolveInverse, SmallDenominatorIsIllPosed) {
  const auto zero = on_unit([](double) { return 0.0; });
  try {
    solve_inverse(make(on_unit([](double x) { return std::sin(kPi * x); }), zero, 0.5, 0.0, 1e-30));
    FAIL() << "expected IllPosedError";
  } catch (const IllPosedError& e) {
    EXPECT_EQ(e.mode(), 1);
    EXPECT_LT(e.denominator(), 1e-8);
    EXPECT_NE(std::string(e.what()).find("mode 1"), std::string::npos);
  }
  EXPECT_THROW(solve_inverse(make(zero, zero, 0.1, 0.0, 1e-100)), IllPosedError);
}

TEST(SolveInverse, Validation) {
  const auto good = on_unit([](double x) { return std::sin(kPi * x); });
  const auto bad = on_unit([](double x) { return 1.0 - x; });
  EXPECT_THROW(solve_inverse(make(bad, good)), ValidationError);
  EXPECT_THROW(solve_inverse(make(good, bad)), ValidationError);
  auto s = make(good, good);
  s.T = -1.0;
  EXPECT_THROW(solve_inverse(s), ValidationError);
}

TEST(SolveInverse, ZeroData) {
  const auto zero = on_unit([](double) { return 0.0; });
  const auto res = solve_inverse(make(zero, zero));
  for (double f : res.source.coeffs) EXPECT_EQ(f, 0.0);
  for (double v : res.u.values) EXPECT_EQ(v, 0.0);
  EXPECT_TRUE(res.diagnostics.warnings.empty());
}

TEST(SolveInverse, RoughDataWarns) {
  // phi with a kink: f_k decays slowly, so S_K and S_{K/2} stay far apart.
  auto s = make(on_unit([](double) { return 0.0; }, 512), on_unit([](double x) { return std::min(x, 1.0 - x); }, 512));
  s.modes = 32;
  const auto res = solve_inverse(s);
  EXPECT_GT(res.diagnostics.cauchy_gap, 1e-3);
  EXPECT_FALSE(res.diagnostics.warnings.empty());
  // phi_k ~ k^-2, so f_k ~ k^2 phi_k does not decay.
  EXPECT_NEAR(res.diagnostics.growth_rate, 0.0, 0.1);
}
