#include "hbfde/scalar_fde.hpp"

#include <cmath>
#include <memory>

#include "hbfde/errors.hpp"
#include "hbfde/product_integration.hpp"
#include "hbfde/special_functions.hpp"

namespace hbfde {

double ScalarProblem::lambda_star() const { return -lambda / std::pow(fp.rho(), fp.alpha()); }

namespace {

void check_tgrid(const std::vector<double>& tgrid) {
  if (tgrid.empty()) throw ContractError("empty time grid");
  if (tgrid.front() != 0.0) throw ContractError("time grid must start at 0");
  for (std::size_t i = 1; i < tgrid.size(); ++i) {
    if (!(tgrid[i] > tgrid[i - 1])) throw ContractError("time grid must be strictly increasing");
  }
}

std::vector<double> powers(std::span<const double> t, double p) {
  std::vector<double> s(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) s[i] = std::pow(t[i], p);
  return s;
}

std::vector<double> homogeneous(const FracParams& fp, double lambda_star, double u0, std::span<const double> tgrid) {
  std::vector<double> u(tgrid.size(), u0);
  if (u0 == 0.0) return u;
  for (std::size_t i = 1; i < tgrid.size(); ++i) {
    u[i] = u0 * ml_one(fp.alpha(), lambda_star * std::pow(tgrid[i], fp.rho() * fp.alpha()));
  }
  return u;
}

}  // namespace

std::vector<double> forcing_response(const FracParams& fp, double lambda, std::span<const double> tgrid,
                                     std::span<const double> f) {
  if (tgrid.size() != f.size()) throw ContractError("forcing samples do not match the time grid");
  std::vector<double> out(tgrid.size(), 0.0);
  bool zero = true;
  for (double v : f) zero = zero && v == 0.0;
  if (zero || tgrid.size() < 2) return out;
  const double a = fp.alpha();
  const double scale = std::pow(fp.rho(), -a);
  const ProductRule rule(std::make_shared<MittagLefflerKernel>(a, a, -lambda * scale, scale),
                         powers(tgrid, fp.rho()));
  return rule.integrate_all(f);
}

SampledFunction solve_scalar(const ScalarProblem& prob, std::vector<double> tgrid) {
  check_tgrid(tgrid);
  auto u = homogeneous(prob.fp, prob.lambda_star(), prob.u0, tgrid);
  std::vector<double> f;
  if (const auto* c = std::get_if<ConstantForcing>(&prob.forcing)) {
    f.assign(tgrid.size(), c->f0);
  } else if (const auto* s = std::get_if<SampledFunction>(&prob.forcing)) {
    if (tgrid.back() > s->back_time()) throw RangeError("forcing samples do not cover the time grid");
    f.reserve(tgrid.size());
    for (double t : tgrid) f.push_back(s->at(t));
  }
  if (!f.empty()) {
    const auto r = forcing_response(prob.fp, prob.lambda, tgrid, f);
    for (std::size_t i = 1; i < u.size(); ++i) u[i] += r[i];
  }
  u[0] = prob.u0;
  return SampledFunction(std::move(tgrid), std::move(u));
}

SampledFunction solve_scalar_constant(const FracParams& fp, double lambda, double u0, double f0,
                                      std::vector<double> tgrid) {
  if (lambda == 0.0) throw ContractError("constant-forcing closed form needs lambda != 0; use solve_scalar");
  check_tgrid(tgrid);
  const double eq = f0 / lambda;
  const double lambda_star = -lambda / std::pow(fp.rho(), fp.alpha());
  auto u = homogeneous(fp, lambda_star, u0 - eq, tgrid);
  for (double& v : u) v += eq;
  u[0] = u0;
  return SampledFunction(std::move(tgrid), std::move(u));
}

SampledFunction solve_second_kind(const SampledFunction& f, double lambda, const EKParams& p,
                                  std::vector<double> tgrid) {
  if (!(p.delta > 0.0)) throw ContractError("second-kind equation needs delta > 0");
  if (!(p.beta > 0.0)) throw ContractError("Erdelyi-Kober beta must be positive");
  check_tgrid(tgrid);
  if (tgrid.back() > f.back_time()) throw RangeError("samples of f do not cover the time grid");
  std::vector<double> y(tgrid.size());
  for (std::size_t i = 0; i < tgrid.size(); ++i) y[i] = f.at(tgrid[i]);
  if (lambda == 0.0 || tgrid.size() < 2) return SampledFunction(std::move(tgrid), std::move(y));

  const auto s = powers(tgrid, p.beta);
  std::vector<double> g(y.size());
  for (std::size_t j = 0; j < g.size(); ++j) {
    if (p.gamma == 0.0) {
      g[j] = y[j];
    } else if (s[j] == 0.0) {
      if (p.gamma < 0.0 && y[j] != 0.0) throw DomainError("weight s^gamma with gamma < 0 needs f(0) = 0");
      g[j] = 0.0;
    } else {
      g[j] = std::pow(s[j], p.gamma) * y[j];
    }
  }
  const ProductRule rule(std::make_shared<MittagLefflerKernel>(p.delta, p.delta, lambda), s);
  const auto conv = rule.integrate_all(g);
  for (std::size_t i = 1; i < y.size(); ++i) y[i] += lambda * std::pow(s[i], -p.gamma) * conv[i];
  return SampledFunction(std::move(tgrid), std::move(y));
}

namespace {

Composition compose_on(const std::vector<double>& nodes, const std::vector<double>& values, double alpha,
                       double beta_star, double mu, double lambda) {
  const std::size_t n = nodes.size() - 1;
  const ProductRule inner(std::make_shared<PowerKernel>(mu, rgamma(mu)), nodes);
  const auto g = inner.integrate_all(values);
  const ProductRule outer(std::make_shared<MittagLefflerKernel>(alpha, beta_star, lambda), nodes);
  const ProductRule single(std::make_shared<MittagLefflerKernel>(alpha, beta_star + mu, lambda), nodes);
  return {outer.integrate(n, g), single.integrate(n, values)};
}

}  // namespace

Composition prabhakar_compose(const SampledFunction& f, double alpha, double beta_star, double mu, double lambda,
                              double x, bool extrapolate) {
  if (!(beta_star > 0.0)) throw ContractError("beta* must be positive");
  if (!(mu > 0.0)) throw ContractError("mu must be positive");
  MLParams{alpha, beta_star}.validate();
  if (!(x > 0.0)) throw DomainError("composition evaluated at x <= 0");
  if (x > f.back_time()) throw RangeError("composition evaluated beyond the sample grid");

  std::vector<double> nodes, values;
  const auto grid = f.grid();
  for (std::size_t j = 0; j < grid.size() && grid[j] < x; ++j) {
    nodes.push_back(grid[j]);
    values.push_back(f.values()[j]);
  }
  nodes.push_back(x);
  values.push_back(f.at(x));

  const Composition fine = compose_on(nodes, values, alpha, beta_star, mu, lambda);
  if (!extrapolate) return fine;
  if ((nodes.size() - 1) % 2 != 0) throw ContractError("extrapolation needs an even number of cells up to x");
  std::vector<double> cn, cv;
  for (std::size_t j = 0; j < nodes.size(); j += 2) {
    cn.push_back(nodes[j]);
    cv.push_back(values[j]);
  }
  const Composition coarse = compose_on(cn, cv, alpha, beta_star, mu, lambda);
  return {(4.0 * fine.lhs - coarse.lhs) / 3.0, (4.0 * fine.rhs - coarse.rhs) / 3.0};
}

}  // namespace hbfde
