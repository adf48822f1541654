#include <cmath>

#include <gtest/gtest.h>

#include "hbfde/errors.hpp"
#include "hbfde/fractional_operators.hpp"
#include "hbfde/special_functions.hpp"
#include "hbfde/verification.hpp"

using namespace hbfde;

namespace {

SampledFunction sampled(double beta, double (*f)(double), int n = 512, double T = 1.0) {
  return SampledFunction::sample(power_grid(T, n, beta), f);
}

double one(double) { return 1.0; }
double zero(double) { return 0.0; }
double ident(double t) { return t; }
double square(double t) { return t * t; }
double root(double t) { return std::sqrt(t); }

}  // namespace

TEST(FracParams, Validation) {
  EXPECT_NO_THROW(FracParams(0.5, -3.0));
  EXPECT_THROW(FracParams(0.0, 0.0), ContractError);
  EXPECT_THROW(FracParams(1.0, 0.0), ContractError);
  EXPECT_THROW(FracParams(0.5, 1.0), ContractError);
  EXPECT_DOUBLE_EQ(FracParams(0.5, 0.25).rho(), 0.75);
}

TEST(EKIntegral, Examples) {
  const EKParams p{1.0, 0.0, 0.5};
  EXPECT_NEAR(ek_integral(sampled(1.0, one), p, 0.37), 1.1283791670955126, 1e-13);
  EXPECT_NEAR(ek_integral(sampled(1.0, one), p, 1.0), 1.1283791670955126, 1e-13);
  EXPECT_NEAR(ek_integral(sampled(1.0, ident), p, 1.0), 0.7522527780636751, 1e-12);
  EXPECT_EQ(ek_integral(sampled(1.0, zero), EKParams{2.0, 0.7, 1.3}, 0.5), 0.0);
}

TEST(EKIntegral, Errors) {
  const auto f = sampled(1.0, one);
  EXPECT_THROW(ek_integral(f, EKParams{1.0, 0.0, 0.5}, 0.0), DomainError);
  EXPECT_THROW(ek_integral(f, EKParams{1.0, 0.0, 0.5}, 1.5), RangeError);
  EXPECT_THROW(ek_integral(f, EKParams{1.0, 0.0, -0.5}, 0.5), ContractError);
  EXPECT_THROW(ek_integrodiff(f, EKParams{1.0, 0.0, 0.5}, 0.5), ContractError);
  EXPECT_THROW(ek_integrodiff(f, EKParams{1.0, 0.0, -1.5}, 0.5), ContractError);
}

// I_beta^{gamma,delta} t^{beta p} = Gamma(gamma+p+1) / Gamma(gamma+delta+p+1) t^{beta p}
TEST(EKIntegral, PowerLawEigenrelation) {
  for (double beta : {0.5, 1.0, 1.7}) {
    for (double gam : {-0.3, 0.0, 1.2}) {
      for (double delta : {0.3, 0.8, 1.5}) {
        for (int p : {0, 1, 2}) {
          const auto f = SampledFunction::sample(power_grid(1.0, 512, beta),
                                                 [&](double t) { return std::pow(t, beta * p); });
          const double t = 0.8;
          if (gam < 0.0 && p == 0) {
            EXPECT_THROW(ek_integral(f, EKParams{beta, gam, delta}, t), DomainError);
            continue;
          }
          const double want =
              hbfde::gamma(gam + p + 1.0) / hbfde::gamma(gam + delta + p + 1.0) * std::pow(t, beta * p);
          EXPECT_NEAR(ek_integral(f, EKParams{beta, gam, delta}, t), want, 2e-5 * std::abs(want))
              << beta << " " << gam << " " << delta << " " << p;
        }
      }
    }
  }
}

TEST(EKIntegrodiff, Examples) {
  const EKParams p{1.0, 0.0, -0.5};
  EXPECT_NEAR(ek_integrodiff(sampled(1.0, one), p, 1.0), 0.5641895835477563, 1e-13);
  EXPECT_NEAR(3.0 * ek_integrodiff(sampled(1.0, one), p, 1.0),
              ek_integrodiff(SampledFunction::sample(power_grid(1.0, 512, 1.0), [](double) { return 3.0; }), p, 1.0),
              1e-13);
  EXPECT_EQ(ek_integrodiff(sampled(1.0, zero), p, 0.7), 0.0);
  EXPECT_NEAR(ek_integrodiff(sampled(1.0, ident), p, 1.0), 1.1283791670955126, 1e-12);
}

TEST(EKIntegrodiff, PowerLaw) {
  for (double delta : {-0.2, -0.5, -0.8}) {
    const auto f = sampled(1.0, square);
    const double want = hbfde::gamma(3.0) / hbfde::gamma(3.0 + delta) * 0.81;
    EXPECT_NEAR(ek_integrodiff(f, EKParams{1.0, 0.0, delta}, 0.9), want, 3e-4 * want) << delta;
    EXPECT_NEAR(ek_integrodiff(f, EKParams{1.0, 0.0, delta}, 0.9, [](double t) { return 2.0 * t; }), want,
                1e-5 * want)
        << delta;
  }
}

// (I^{gamma+delta,-delta}) o (I^{gamma,delta}) = identity
TEST(EKIntegrodiff, InverseOfIntegral) {
  for (double delta : {0.3, 0.6}) {
    const EKParams p{1.0, 0.2, delta};
    auto f = [](double t) { return 1.0 + t - 0.5 * t * t; };
    const auto grid = power_grid(1.0, 1024, 1.0);
    const auto F = SampledFunction::sample(grid, f);
    auto g = ek_integral_on_grid(F, p);
    g[0] = f(0.0) * hbfde::gamma(p.gamma + 1.0) / hbfde::gamma(p.gamma + delta + 1.0);
    const SampledFunction G(grid, g);
    for (double t : {0.25, 0.5, 1.0}) {
      EXPECT_NEAR(ek_integrodiff(G, EKParams{1.0, p.gamma + delta, -delta}, t), f(t), 5e-4) << delta << " " << t;
    }
  }
}

TEST(HyperBessel, Examples) {
  const FracParams fp(0.5, 0.0);
  EXPECT_NEAR(hyper_bessel(sampled(1.0, one), fp, 1.0), 0.5641895835477563, 1e-13);
  EXPECT_EQ(hyper_bessel(sampled(1.0, zero), fp, 0.5), 0.0);
  EXPECT_NEAR(hyper_bessel(sampled(1.0, ident), fp, 1.0), 1.1283791670955126, 1e-12);
}

TEST(RegCaputo, KillsConstants) {
  for (double th : {-0.5, 0.0, 0.6}) {
    const FracParams fp(0.4, th);
    const auto f = SampledFunction::sample(power_grid(1.0, 256, fp.rho()), [](double) { return 2.5; });
    const auto d = reg_caputo_hb_on_grid(f, fp);
    for (std::size_t i = 1; i < d.size(); ++i) EXPECT_EQ(d[i], 0.0);
  }
}

TEST(RegCaputo, SqrtExample) {
  const FracParams fp(0.5, 0.0);
  const auto f = sampled(1.0, root, 2048);
  EXPECT_NEAR(reg_caputo_hb(f, fp, 1.0), 0.8862269254527580, 2e-4);
  EXPECT_NEAR(reg_caputo_hb(f, fp, 1.0, [](double t) { return 0.5 / std::sqrt(t); }), 0.8862269254527580, 2e-4);
}

TEST(RegCaputo, CauchySolutionExample) {
  const FracParams fp(0.5, 0.5);
  const double rho = fp.rho();
  const auto u = SampledFunction::sample(power_grid(1.0, 1024, rho, 2.0), [&](double t) {
    return ml_one(0.5, -std::pow(t, rho * 0.5) / std::pow(rho, 0.5));
  });
  EXPECT_NEAR(reg_caputo_hb(u, fp, 1.0), -u.values().back(), 1e-2);
}

TEST(Operators, Linearity) {
  const FracParams fp(0.6, 0.3);
  const auto grid = power_grid(1.0, 300, fp.rho());
  const auto f = SampledFunction::sample(grid, [](double t) { return std::cos(t); });
  const auto g = SampledFunction::sample(grid, [](double t) { return t * t * t; });
  const auto h = SampledFunction::sample(grid, [](double t) { return 2.0 * std::cos(t) - 3.0 * t * t * t; });
  const EKParams p{0.7, 0.1, 0.4};
  const EKParams q{0.7, 0.1, -0.4};
  for (double t : {0.2, 0.65, 1.0}) {
    EXPECT_NEAR(ek_integral(h, p, t), 2.0 * ek_integral(f, p, t) - 3.0 * ek_integral(g, p, t), 1e-12);
    EXPECT_NEAR(ek_integrodiff(h, q, t), 2.0 * ek_integrodiff(f, q, t) - 3.0 * ek_integrodiff(g, q, t), 1e-12);
    EXPECT_NEAR(hyper_bessel(h, fp, t), 2.0 * hyper_bessel(f, fp, t) - 3.0 * hyper_bessel(g, fp, t), 1e-12);
    EXPECT_NEAR(reg_caputo_hb(h, fp, t), 2.0 * reg_caputo_hb(f, fp, t) - 3.0 * reg_caputo_hb(g, fp, t), 1e-12);
  }
}

TEST(Operators, GridVariantsMatchPointwise) {
  const FracParams fp(0.35, -0.4);
  const auto f = SampledFunction::sample(power_grid(1.0, 64, fp.rho()), [](double t) { return std::exp(-t); });
  const auto all = reg_caputo_hb_on_grid(f, fp);
  EXPECT_TRUE(std::isnan(all[0]));
  for (std::size_t i = 1; i < all.size(); i += 7) EXPECT_NEAR(all[i], reg_caputo_hb(f, fp, f.grid()[i]), 1e-13);
}

TEST(Operators, NegativeGammaNeedsVanishingStart) {
  const auto f = sampled(1.0, one);
  EXPECT_THROW(ek_integral(f, EKParams{1.0, -0.5, 0.5}, 0.5), DomainError);
  EXPECT_NO_THROW(ek_integral(sampled(1.0, ident), EKParams{1.0, -0.5, 0.5}, 0.5));
}

// theta = 0 reduces to the classical Caputo derivative; the L1 scheme is an independent oracle.
TEST(RegCaputo, ThetaZeroMatchesL1) {
  const auto grid = power_grid(1.0, 1024, 1.0);
  const auto f = SampledFunction::sample(grid, [](double t) { return std::sin(2.0 * t) + t * t; });
  for (double a : {0.3, 0.5, 0.8}) {
    const auto ours = reg_caputo_hb_on_grid(f, FracParams(a, 0.0));
    const auto l1 = l1_caputo(f, a);
    double err = 0.0;
    for (std::size_t i = 1; i < grid.size(); ++i) err = std::max(err, std::abs(ours[i] - l1[i]));
    EXPECT_LT(err, 1e-3) << a;
  }
}
