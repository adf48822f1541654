#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "hbfde/errors.hpp"
#include "hbfde/special_functions.hpp"
#include "hbfde/verification.hpp"

namespace hbfde {

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<double> log_space(double lo, double hi, int n) {
  std::vector<double> v(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double f = n == 1 ? 0.0 : static_cast<double>(i) / (n - 1);
    v[static_cast<std::size_t>(i)] = lo * std::pow(hi / lo, f);
  }
  return v;
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(4);
  os << v;
  return os.str();
}

void push(VerificationReport& r, int size, const std::vector<double>& e) {
  double mx = 0.0, sq = 0.0;
  for (double v : e) {
    mx = std::max(mx, std::abs(v));
    sq += v * v;
  }
  r.sizes.push_back(size);
  r.max_errors.push_back(mx);
  r.l2_errors.push_back(e.empty() ? 0.0 : std::sqrt(sq / static_cast<double>(e.size())));
}

bool all_within(const VerificationReport& r) {
  return std::all_of(r.max_errors.begin(), r.max_errors.end(), [&](double v) { return v <= r.tolerance; });
}

}  // namespace

VerificationReport ml_identity(const std::string& which, int points, double tolerance) {
  VerificationReport r;
  r.name = "ml_identity_" + which;
  r.tolerance = tolerance;
  std::vector<double> e;
  const auto mags = log_space(1e-3, 10.0, points);
  auto rel = [](double got, double want) { return std::abs(got - want) / std::abs(want); };
  if (which == "exp") {
    for (double x : mags) {
      e.push_back(rel(ml_two(1.0, 1.0, x), std::exp(x)));
      e.push_back(rel(ml_two(1.0, 1.0, -x), std::exp(-x)));
    }
  } else if (which == "expm1") {
    for (double x : mags) {
      e.push_back(rel(ml_two(1.0, 2.0, x), std::expm1(x) / x));
      e.push_back(rel(ml_two(1.0, 2.0, -x), std::expm1(-x) / -x));
    }
  } else if (which == "cos") {
    for (double x : mags) e.push_back(rel(ml_two(2.0, 1.0, -x * x), std::cos(x)));
  } else if (which == "erfc") {
    for (double x : mags) e.push_back(rel(ml_two(0.5, 1.0, -x), std::exp(x * x) * std::erfc(x)));
  } else {
    throw ContractError("unknown Mittag-Leffler identity: " + which);
  }
  push(r, static_cast<int>(e.size()), e);
  r.passed = all_within(r);
  return r;
}

VerificationReport ml_bound(double alpha, double beta, int points, double zmax) {
  VerificationReport r;
  r.name = "ml_bound";
  double sup = std::abs(ml_two(alpha, beta, 0.0));
  double arg = 0.0;
  for (double x : log_space(1e-6, zmax, points)) {
    const double v = (1.0 + x) * std::abs(ml_two(alpha, beta, -x));
    if (!(v <= sup)) {
      sup = v;
      arg = -x;
    }
  }
  r.sizes.push_back(points);
  r.max_errors.push_back(sup);
  r.l2_errors.push_back(sup);
  r.tolerance = std::numeric_limits<double>::infinity();
  r.passed = std::isfinite(sup);
  r.detail = "alpha=" + fmt(alpha) + " beta=" + fmt(beta) + " sup at z=" + fmt(arg);
  return r;
}

VerificationReport volterra_agreement(const FracParams& fp, double lambda, double u0,
                                      const std::function<double(double)>& f, double T, const std::vector<int>& sizes,
                                      double grading, double tolerance) {
  VerificationReport r;
  r.name = "volterra_agreement";
  r.tolerance = tolerance;
  for (int n : sizes) {
    auto grid = power_grid(T, n, fp.rho(), grading);
    auto samples = SampledFunction::sample(grid, f);
    const ScalarProblem prob{fp, lambda, u0, samples};
    const auto u = solve_scalar(prob, grid);
    const auto v = volterra_oracle(prob, grid);
    std::vector<double> e(grid.size());
    for (std::size_t i = 0; i < e.size(); ++i) e[i] = u.values()[i] - v.values()[i];
    push(r, n, e);
  }
  compute_rate(r);
  r.passed = all_within(r);
  r.detail = "alpha=" + fmt(fp.alpha()) + " theta=" + fmt(fp.theta()) + " lambda=" + fmt(lambda);
  return r;
}

VerificationReport cauchy_residual(const FracParams& fp, double lambda, double T, const std::vector<int>& sizes,
                                   double grading, double window, double tolerance) {
  VerificationReport r;
  r.name = "cauchy_residual";
  r.tolerance = tolerance;
  const double a = fp.alpha();
  const double rho = fp.rho();
  double early = 0.0;
  for (int n : sizes) {
    auto grid = power_grid(T, n, rho, grading);
    const auto u = SampledFunction::sample(
        grid, [&](double t) { return ml_one(a, -lambda * std::pow(t, rho * a) / std::pow(rho, a)); });
    const auto d = reg_caputo_hb_on_grid(u, fp);
    const double s_end = std::pow(T, rho);
    std::vector<double> e;
    early = 0.0;
    for (std::size_t i = 1; i < grid.size(); ++i) {
      const double err = d[i] + lambda * u.values()[i];
      if (std::pow(grid[i], rho) >= window * s_end) {
        e.push_back(err);
      } else {
        early = std::max(early, std::abs(err));
      }
    }
    push(r, n, e);
  }
  compute_rate(r);
  r.passed = all_within(r);
  r.detail = "alpha=" + fmt(a) + " theta=" + fmt(fp.theta()) + " lambda=" + fmt(lambda) +
             "; max before window " + fmt(early);
  return r;
}

VerificationReport residual_refinement(DirectProblemSpec spec, const std::vector<int>& nts, double window,
                                       double tolerance) {
  VerificationReport r;
  r.name = "residual_direct";
  r.tolerance = tolerance;
  for (int nt : nts) {
    spec.nt = nt;
    const auto sol = solve_direct(spec);
    const auto one = residual_direct(sol.field, spec, window, tolerance);
    r.sizes.push_back(nt);
    r.max_errors.push_back(one.max_errors.back());
    r.l2_errors.push_back(one.l2_errors.back());
    r.detail = one.detail;
  }
  compute_rate(r);
  r.passed = all_within(r);
  return r;
}

ThetaZeroChecks theta_zero_direct(double alpha, const SineSeries& psi, double T, int nt, double grading,
                                  double identity_tol, double l1_tol) {
  const FracParams fp(alpha, 0.0);
  const int K = std::max(psi.modes(), 1);
  auto x = uniform_grid(0.0, 1.0, 512);
  DirectProblemSpec spec{fp, sine_synthesize(psi, x), ZeroForcing{}, T, K, 512, nt, grading};
  const auto sol = solve_direct(spec);
  const auto psi_k = sine_analyze(spec.psi, K);
  double scale = 0.0;
  for (double c : psi_k.coeffs) scale = std::max(scale, std::abs(c));
  if (scale == 0.0) scale = 1.0;

  ThetaZeroChecks out;
  out.identity.name = "theta_zero_direct_identity";
  out.identity.tolerance = identity_tol;
  out.l1.name = "theta_zero_direct_l1";
  out.l1.tolerance = l1_tol;
  const auto& t = sol.field.t;
  std::vector<double> e_id, e_l1;
  const std::vector<double> zero(t.size(), 0.0);
  for (int k = 1; k <= K; ++k) {
    const auto& u = sol.field.modes[k - 1];
    const double lambda = k * k * kPi * kPi;
    const bool live = std::abs(psi_k(k)) > 1e-12 * scale;
    const auto l1 = live ? l1_solve(alpha, lambda, psi_k(k), zero, t) : SampledFunction(t, zero);
    for (std::size_t i = 0; i < t.size(); ++i) {
      e_id.push_back((u[i] - psi_k(k) * ml_one(alpha, -lambda * std::pow(t[i], alpha))) / scale);
      e_l1.push_back((u[i] - l1.values()[i]) / scale);
    }
  }
  push(out.identity, nt, e_id);
  push(out.l1, nt, e_l1);
  out.identity.passed = all_within(out.identity);
  out.l1.passed = all_within(out.l1);
  out.identity.detail = out.l1.detail = "alpha=" + fmt(alpha) + " grading=" + fmt(grading);
  return out;
}

}  // namespace hbfde
