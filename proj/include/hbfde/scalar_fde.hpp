#pragma once

#include <span>
#include <utility>
#include <variant>
#include <vector>

#include "hbfde/fractional_operators.hpp"
#include "hbfde/grid.hpp"

namespace hbfde {

struct ZeroForcing {};

struct ConstantForcing {
  double f0 = 0.0;
};

using Forcing = std::variant<ZeroForcing, ConstantForcing, SampledFunction>;

/// ^C(t^theta d/dt)^alpha u = -lambda u + f(t),  u(0) = u0.
struct ScalarProblem {
  FracParams fp;
  double lambda = 0.0;
  double u0 = 0.0;
  Forcing forcing = ZeroForcing{};

  /// lambda* = -lambda / rho^alpha
  double lambda_star() const;
};

/// Integral-form solution
///   u = u0 E_alpha(lambda* s^alpha) + rho^{-alpha} int_0^S w^{alpha-1} E_{alpha,alpha}(lambda* w^alpha) f ds,
/// with s = t^rho, S = t^rho, w = S - s. The kernel is the sum of the two convolution kernels
/// of the usual two-integral form (E_{alpha,alpha}(z) = 1/Gamma(alpha) + z E_{alpha,2alpha}(z)),
/// integrated exactly against the forcing, which is interpolated linearly in s on tgrid.
/// tgrid must start at 0. u(0) = u0 exactly.
SampledFunction solve_scalar(const ScalarProblem& prob, std::vector<double> tgrid);

/// Closed form for constant forcing: u = (u0 - f0/lambda) E_alpha(lambda* t^{rho alpha}) + f0/lambda.
/// Throws ContractError for lambda = 0.
SampledFunction solve_scalar_constant(const FracParams& fp, double lambda, double u0, double f0,
                                      std::vector<double> tgrid);

/// Forcing part of solve_scalar alone (u0 = 0), with f given by its values on tgrid.
std::vector<double> forcing_response(const FracParams& fp, double lambda, std::span<const double> tgrid,
                                     std::span<const double> f);

/// Solution of y - lambda t^{beta delta} I_beta^{gamma,delta} y = f:
///   y = f + lambda t^{-beta gamma} int_0^t (t^beta - tau^beta)^{delta-1} E_{delta,delta}[lambda (t^beta - tau^beta)^delta]
///           tau^{beta gamma} f d(tau^beta).
/// delta must lie in (0, 2).
SampledFunction solve_second_kind(const SampledFunction& f, double lambda, const EKParams& p,
                                  std::vector<double> tgrid);

struct Composition {
  double lhs;
  double rhs;
};

/// Both sides of
///   int_0^x (x-u)^{b-1} E_{a,b}(lambda (x-u)^a) [I^mu f](u) du = int_0^x (x-t)^{b+mu-1} E_{a,b+mu}(lambda (x-t)^a) f dt
/// where I^mu is the Riemann-Liouville integral. The left side integrates I^mu f sampled on
/// f's grid (truncated at x); the right side integrates f directly. Both are O(h^2).
/// With extrapolate set, each side is also computed on every other node and combined as
/// (4 Q_h - Q_2h) / 3; this needs an even number of cells on [0, x].
Composition prabhakar_compose(const SampledFunction& f, double alpha, double beta_star, double mu, double lambda,
                              double x, bool extrapolate = false);

}  // namespace hbfde
