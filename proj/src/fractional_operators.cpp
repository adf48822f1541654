#include "hbfde/fractional_operators.hpp"

#include <cmath>
#include <limits>
#include <memory>

#include "hbfde/errors.hpp"
#include "hbfde/product_integration.hpp"
#include "hbfde/special_functions.hpp"

namespace hbfde {

FracParams::FracParams(double alpha, double theta) : alpha_(alpha), theta_(theta) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw ContractError("alpha must lie in (0, 1)");
  if (!(theta < 1.0)) throw ContractError("theta must be < 1");
}

namespace {

void check_point(const SampledFunction& f, double t) {
  if (!(t > 0.0)) throw DomainError("operator evaluated at t <= 0");
  if (t > f.back_time()) throw RangeError("operator evaluated beyond the sample grid");
}

void check_beta(const EKParams& p) {
  if (!(p.beta > 0.0)) throw ContractError("Erdelyi-Kober beta must be positive");
}

// Weight s^gamma folded into the samples. With gamma < 0 the product is only
// representable when f vanishes at the origin.
double weighted(double s, double gamma, double value) {
  if (gamma == 0.0) return value;
  if (s == 0.0) {
    if (gamma > 0.0 || value == 0.0) return 0.0;
    throw DomainError("Erdelyi-Kober weight s^gamma with gamma < 0 needs f(0) = 0");
  }
  return std::pow(s, gamma) * value;
}

// Samples of f restricted to [0, t] in the variable s = tau^beta; t is appended as
// the final node when it falls between grid points.
struct Restricted {
  std::vector<double> tau;
  std::vector<double> s;
  std::vector<double> f;
};

Restricted restrict_to(const SampledFunction& f, double beta, double t) {
  Restricted r;
  const auto grid = f.grid();
  const auto values = f.values();
  for (std::size_t j = 0; j < grid.size() && grid[j] < t; ++j) {
    r.tau.push_back(grid[j]);
    r.f.push_back(values[j]);
  }
  r.tau.push_back(t);
  r.f.push_back(f.at(t));
  r.s.reserve(r.tau.size());
  for (double tau : r.tau) r.s.push_back(std::pow(tau, beta));
  return r;
}

Restricted whole(const SampledFunction& f, double beta) {
  Restricted r;
  r.tau.assign(f.grid().begin(), f.grid().end());
  r.f.assign(f.values().begin(), f.values().end());
  for (double tau : r.tau) r.s.push_back(std::pow(tau, beta));
  return r;
}

std::vector<double> weighted_values(const Restricted& r, double gamma) {
  std::vector<double> g(r.s.size());
  for (std::size_t j = 0; j < g.size(); ++j) g[j] = weighted(r.s[j], gamma, r.f[j]);
  return g;
}

// One-sided values of s^gamma * s * f_s on each cell, f_s being the slope of the
// interpolant (piecewise linear in s).
void slope_cells(const Restricted& r, double gamma, std::vector<double>& left, std::vector<double>& right) {
  const std::size_t cells = r.s.size() - 1;
  left.resize(cells);
  right.resize(cells);
  for (std::size_t j = 0; j < cells; ++j) {
    const double slope = (r.f[j + 1] - r.f[j]) / (r.s[j + 1] - r.s[j]);
    left[j] = r.s[j] == 0.0 ? 0.0 : std::pow(r.s[j], gamma + 1.0) * slope;
    right[j] = std::pow(r.s[j + 1], gamma + 1.0) * slope;
  }
}

// Nodal values of s^gamma * tau f'(tau) / beta from an analytic derivative.
std::vector<double> analytic_term(const Restricted& r, const EKParams& p, const Derivative& df) {
  std::vector<double> h(r.s.size(), 0.0);
  for (std::size_t j = 0; j < h.size(); ++j) {
    if (r.tau[j] == 0.0) continue;
    h[j] = weighted(r.s[j], p.gamma, r.tau[j] * df(r.tau[j]) / p.beta);
  }
  return h;
}

void check_integrodiff(const EKParams& p) {
  check_beta(p);
  if (p.delta >= 0.0) throw ContractError("integro-differential form needs delta < 0");
  if (p.delta <= -1.0) throw ContractError("delta <= -1 is not supported");
}

SampledFunction shifted(const SampledFunction& f) {
  std::vector<double> v(f.values().begin(), f.values().end());
  const double f0 = f.front();
  for (double& x : v) x -= f0;
  return SampledFunction(std::vector<double>(f.grid().begin(), f.grid().end()), std::move(v));
}

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

}  // namespace

double ek_integral(const SampledFunction& f, const EKParams& p, double t) {
  check_beta(p);
  if (!(p.delta > 0.0)) throw ContractError("Erdelyi-Kober integral needs delta > 0");
  check_point(f, t);
  const Restricted r = restrict_to(f, p.beta, t);
  const auto g = weighted_values(r, p.gamma);
  const std::span<const double> gs(g);
  const double integral =
      integrate_cellwise(PowerKernel(p.delta), r.s, gs.first(g.size() - 1), gs.subspan(1));
  const double S = r.s.back();
  return std::pow(S, -(p.gamma + p.delta)) * rgamma(p.delta) * integral;
}

double ek_integrodiff(const SampledFunction& f, const EKParams& p, double t, const Derivative& df) {
  check_integrodiff(p);
  check_point(f, t);
  const Restricted r = restrict_to(f, p.beta, t);
  const PowerKernel k(p.delta + 1.0);
  const auto g = weighted_values(r, p.gamma);
  const std::span<const double> gs(g);
  const std::size_t cells = g.size() - 1;
  double total = (p.gamma + p.delta + 1.0) * integrate_cellwise(k, r.s, gs.first(cells), gs.subspan(1));
  if (df) {
    const auto h = analytic_term(r, p, df);
    const std::span<const double> hs(h);
    total += integrate_cellwise(k, r.s, hs.first(cells), hs.subspan(1));
  } else {
    std::vector<double> left, right;
    slope_cells(r, p.gamma, left, right);
    total += integrate_cellwise(k, r.s, left, right);
  }
  const double S = r.s.back();
  return std::pow(S, -(p.gamma + p.delta + 1.0)) * rgamma(p.delta + 1.0) * total;
}

double hyper_bessel(const SampledFunction& f, const FracParams& fp, double t, const Derivative& df) {
  const double rho = fp.rho();
  const double a = fp.alpha();
  return std::pow(rho, a) * std::pow(t, -rho * a) * ek_integrodiff(f, {rho, 0.0, -a}, t, df);
}

double reg_caputo_hb(const SampledFunction& f, const FracParams& fp, double t, const Derivative& df) {
  return hyper_bessel(shifted(f), fp, t, df);
}

std::vector<double> ek_integral_on_grid(const SampledFunction& f, const EKParams& p) {
  check_beta(p);
  if (!(p.delta > 0.0)) throw ContractError("Erdelyi-Kober integral needs delta > 0");
  const Restricted r = whole(f, p.beta);
  const auto g = weighted_values(r, p.gamma);
  const ProductRule rule(std::make_shared<PowerKernel>(p.delta), r.s);
  auto out = rule.integrate_all(g);
  out[0] = kNaN;
  const double scale = rgamma(p.delta);
  for (std::size_t n = 1; n < out.size(); ++n) out[n] *= scale * std::pow(r.s[n], -(p.gamma + p.delta));
  return out;
}

std::vector<double> ek_integrodiff_on_grid(const SampledFunction& f, const EKParams& p, const Derivative& df) {
  check_integrodiff(p);
  const Restricted r = whole(f, p.beta);
  const ProductRule rule(std::make_shared<PowerKernel>(p.delta + 1.0), r.s);
  const auto g = weighted_values(r, p.gamma);
  std::vector<double> h, left, right;
  if (df) {
    h = analytic_term(r, p, df);
  } else {
    slope_cells(r, p.gamma, left, right);
  }
  const double c = p.gamma + p.delta + 1.0;
  const double scale = rgamma(p.delta + 1.0);
  std::vector<double> out(r.s.size(), kNaN);
  for (std::size_t n = 1; n < out.size(); ++n) {
    double total = c * rule.integrate(n, g);
    total += df ? rule.integrate(n, h) : rule.integrate_cellwise(n, left, right);
    out[n] = scale * std::pow(r.s[n], -c) * total;
  }
  return out;
}

std::vector<double> hyper_bessel_on_grid(const SampledFunction& f, const FracParams& fp, const Derivative& df) {
  const double rho = fp.rho();
  const double a = fp.alpha();
  auto out = ek_integrodiff_on_grid(f, {rho, 0.0, -a}, df);
  const auto grid = f.grid();
  for (std::size_t n = 1; n < out.size(); ++n) out[n] *= std::pow(rho, a) * std::pow(grid[n], -rho * a);
  return out;
}

std::vector<double> reg_caputo_hb_on_grid(const SampledFunction& f, const FracParams& fp, const Derivative& df) {
  return hyper_bessel_on_grid(shifted(f), fp, df);
}

}  // namespace hbfde
