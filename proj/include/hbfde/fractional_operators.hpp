#pragma once

#include <functional>
#include <vector>

#include "hbfde/grid.hpp"

namespace hbfde {

/// Order alpha in (0, 1) and exponent theta < 1 of the hyper-Bessel operator
/// (t^theta d/dt)^alpha; rho = 1 - theta.
class FracParams {
 public:
  /// Throws ContractError when alpha is outside (0, 1) or theta >= 1.
  FracParams(double alpha, double theta);

  double alpha() const { return alpha_; }
  double theta() const { return theta_; }
  double rho() const { return 1.0 - theta_; }

 private:
  double alpha_;
  double theta_;
};

/// Erdelyi-Kober parameters beta > 0, gamma, delta != 0.
struct EKParams {
  double beta = 1.0;
  double gamma = 0.0;
  double delta = 1.0;
};

/// Analytic derivative f'(t), used instead of differencing the samples when supplied.
using Derivative = std::function<double(double)>;

// The operators below treat samples as piecewise linear in s = t^beta (t^rho for the
// hyper-Bessel operators) and integrate the singular kernel exactly against them.

/// Erdelyi-Kober integral for delta > 0:
///   t^{-beta(gamma+delta)} / Gamma(delta) int_0^t (t^beta - tau^beta)^{delta-1} tau^{beta gamma} f(tau) d(tau^beta).
/// Throws DomainError for t <= 0, RangeError beyond the grid, ContractError for delta <= 0.
double ek_integral(const SampledFunction& f, const EKParams& p, double t);

/// delta in (-1, 0), through one step of the integro-differential recursion
///   I^{gamma,delta} f = (gamma+delta+1) I^{gamma,delta+1} f + (1/beta) I^{gamma,delta+1}(t f').
double ek_integrodiff(const SampledFunction& f, const EKParams& p, double t, const Derivative& df = {});

/// (t^theta d/dt)^alpha f = rho^alpha t^{-rho alpha} I_rho^{0,-alpha} f.
double hyper_bessel(const SampledFunction& f, const FracParams& fp, double t, const Derivative& df = {});

/// Regularized Caputo-like counterpart: the hyper-Bessel operator applied to f - f(0).
double reg_caputo_hb(const SampledFunction& f, const FracParams& fp, double t, const Derivative& df = {});

// Grid-wide evaluation at every node of f's grid. Entry 0 (t = 0) is NaN: the
// t^{-rho alpha} weight makes the operators undefined there.
std::vector<double> ek_integral_on_grid(const SampledFunction& f, const EKParams& p);
std::vector<double> ek_integrodiff_on_grid(const SampledFunction& f, const EKParams& p, const Derivative& df = {});
std::vector<double> hyper_bessel_on_grid(const SampledFunction& f, const FracParams& fp, const Derivative& df = {});
std::vector<double> reg_caputo_hb_on_grid(const SampledFunction& f, const FracParams& fp, const Derivative& df = {});

}  // namespace hbfde
