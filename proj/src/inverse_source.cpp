#include "hbfde/inverse_source.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "hbfde/errors.hpp"
#include "hbfde/special_functions.hpp"

namespace hbfde {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kBoundaryTol = 1e-12;

void check_boundary(const SampledFunction& g, const char* name) {
  if (g.size() == 0) throw ValidationError(std::string(name) + " is missing");
  if (std::abs(g.back_time() - 1.0) > 1e-14) throw ValidationError(std::string(name) + " must be sampled on [0, 1]");
  const auto v = g.values();
  if (std::abs(v.front()) > kBoundaryTol || std::abs(v.back()) > kBoundaryTol) {
    throw ValidationError(std::string(name) + " violates " + name + "(0) = " + name + "(1) = 0");
  }
}

// Sum of |c_k| for K < k < cells, as in the direct solver's diagnostics.
double tail(const SampledFunction& g, int K) {
  const int top = static_cast<int>(g.size()) - 2;
  if (top <= K) return 0.0;
  const auto all = sine_analyze(g, top);
  double sum = 0.0;
  for (int k = K + 1; k <= top; ++k) sum += std::abs(all(k));
  return sum;
}

}  // namespace

void validate(const InverseProblemSpec& spec) {
  if (!(spec.T > 0.0)) throw ValidationError("final time T must be positive");
  if (spec.nt < 1 || spec.nx < 1) throw ValidationError("grid resolutions must be positive");
  if (spec.modes < 0) throw ValidationError("mode count must be positive");
  if (!(spec.margin >= 0.0)) throw ValidationError("denominator margin must be non-negative");
  check_boundary(spec.psi, "psi");
  check_boundary(spec.phi, "phi");
}

InverseResult solve_inverse(const InverseProblemSpec& spec) {
  validate(spec);
  const int K = spec.modes > 0 ? spec.modes : default_modes();
  const double a = spec.fp.alpha();
  const double rho = spec.fp.rho();
  const double rho_a = std::pow(rho, a);
  const ml::Fixed D(a, a + 1.0);
  // 1 - E_alpha(-x) = x E_{alpha,alpha+1}(-x), free of cancellation for small x.
  auto one_minus_e = [&](double x) { return x == 0.0 ? 0.0 : x * D(-x); };

  InverseResult res;
  res.psi = sine_analyze(spec.psi, K);
  res.phi = sine_analyze(spec.phi, K);
  res.c.assign(static_cast<std::size_t>(K), 0.0);
  res.denominators.assign(static_cast<std::size_t>(K), 0.0);
  res.source.coeffs.assign(static_cast<std::size_t>(K), 0.0);
  auto& diag = res.diagnostics;
  diag.min_denominator = 1.0;

  const double tpow = std::pow(spec.T, rho * a) / rho_a;
  for (int k = 1; k <= K; ++k) {
    const double lambda = k * k * kPi * kPi;
    const double den = one_minus_e(lambda * tpow);
    res.denominators[k - 1] = den;
    if (den < diag.min_denominator) {
      diag.min_denominator = den;
      diag.min_denominator_mode = k;
    }
    if (!(den >= spec.margin)) {
      std::ostringstream os;
      os << "mode " << k << ": denominator 1 - E_alpha(-k^2 pi^2 T^(rho alpha) / rho^alpha) = " << den
         << " is below the margin " << spec.margin;
      throw IllPosedError(k, den, os.str());
    }
    const double ck = (res.psi(k) - res.phi(k)) / den;
    res.c[k - 1] = ck;
    res.source.coeffs[k - 1] = lambda * (res.psi(k) - ck);
  }

  SolutionField& u = res.u;
  u.t = power_grid(spec.T, spec.nt, rho, spec.grading);
  u.x = uniform_grid(0.0, 1.0, spec.nx);
  u.modes.assign(static_cast<std::size_t>(K), std::vector<double>(u.t.size(), 0.0));
  for (int k = 1; k <= K; ++k) {
    const double lambda = k * k * kPi * kPi;
    auto& trace = u.modes[k - 1];
    const double ck = res.c[k - 1];
    for (std::size_t i = 0; i < u.t.size(); ++i) {
      trace[i] = res.psi(k) - ck * one_minus_e(lambda * std::pow(u.t[i], rho * a) / rho_a);
    }
    trace.back() = res.psi(k) - ck * res.denominators[k - 1];
    const double r0 = std::abs(trace.front() - res.psi(k));
    const double r1 = std::abs(trace.back() - res.phi(k));
    diag.endpoint_residual = std::max({diag.endpoint_residual, r0, r1});
  }
  const std::size_t nx = u.x.size();
  u.values.assign(u.t.size() * nx, 0.0);
  for (int k = 1; k <= K; ++k) {
    std::vector<double> row(nx);
    for (std::size_t j = 0; j < nx; ++j) row[j] = sinpi(k * u.x[j]);
    const auto& trace = u.modes[k - 1];
    for (std::size_t i = 0; i < u.t.size(); ++i) {
      if (trace[i] == 0.0) continue;
      for (std::size_t j = 0; j < nx; ++j) u.values[i * nx + j] += trace[i] * row[j];
    }
  }

  // Growth of |f_k| in k: slope of a least-squares line through (log k, log|f_k|).
  double fmax = 0.0;
  for (double f : res.source.coeffs) fmax = std::max(fmax, std::abs(f));
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (int k = 1; k <= K; ++k) {
    const double f = std::abs(res.source(k));
    if (f <= 1e-12 * fmax || f == 0.0) continue;
    const double lx = std::log(k), ly = std::log(f);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++n;
  }
  if (n >= 2 && n * sxx - sx * sx > 0.0) diag.growth_rate = (n * sxy - sx * sy) / (n * sxx - sx * sx);

  // Cauchy check on the source partial sums S_{K/2} and S_K.
  const int half = K / 2;
  for (std::size_t j = 0; j < nx; ++j) {
    double gap = 0.0;
    for (int k = half + 1; k <= K; ++k) gap += res.source(k) * sinpi(k * u.x[j]);
    diag.cauchy_gap = std::max(diag.cauchy_gap, std::abs(gap));
  }
  if (diag.cauchy_gap > 1e-3) {
    std::ostringstream os;
    os << "source partial sums S_" << half << " and S_" << K << " differ by " << diag.cauchy_gap
       << "; the series may not have converged";
    diag.warnings.push_back(os.str());
  }
  diag.psi_tail = tail(spec.psi, K);
  diag.phi_tail = tail(spec.phi, K);
  return res;
}

SampledFunction reconstruct_source_field(const InverseResult& res, std::vector<double> xgrid) {
  return sine_synthesize(res.source, std::move(xgrid));
}

}  // namespace hbfde
