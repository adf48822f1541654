#include "hbfde/verification.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "hbfde/errors.hpp"
#include "hbfde/product_integration.hpp"
#include "hbfde/special_functions.hpp"

namespace hbfde {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::vector<double> forcing_values(const Forcing& forcing, std::span<const double> tgrid) {
  std::vector<double> f(tgrid.size(), 0.0);
  if (const auto* c = std::get_if<ConstantForcing>(&forcing)) {
    std::fill(f.begin(), f.end(), c->f0);
  } else if (const auto* s = std::get_if<SampledFunction>(&forcing)) {
    for (std::size_t i = 0; i < tgrid.size(); ++i) f[i] = s->at(tgrid[i]);
  }
  return f;
}

struct Norms {
  double max = 0.0;
  double l2 = 0.0;
};

Norms norms(std::span<const double> e) {
  Norms n;
  double sq = 0.0;
  for (double v : e) {
    n.max = std::max(n.max, std::abs(v));
    sq += v * v;
  }
  if (!e.empty()) n.l2 = std::sqrt(sq / static_cast<double>(e.size()));
  return n;
}

void add_level(VerificationReport& r, int size, const Norms& n) {
  r.sizes.push_back(size);
  r.max_errors.push_back(n.max);
  r.l2_errors.push_back(n.l2);
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(3);
  os << v;
  return os.str();
}

}  // namespace

std::string VerificationReport::to_json() const {
  nlohmann::ordered_json j;
  j["check"] = name;
  j["sizes"] = sizes;
  j["max_error"] = max_errors;
  j["l2_error"] = l2_errors;
  j["rate"] = rate ? nlohmann::ordered_json(*rate) : nlohmann::ordered_json(nullptr);
  j["tolerance"] = tolerance;
  j["pass"] = passed;
  j["detail"] = detail;
  return j.dump();
}

void compute_rate(VerificationReport& r) {
  const std::size_t n = r.max_errors.size();
  if (n < 2) return;
  const double e0 = r.max_errors[n - 2];
  const double e1 = r.max_errors[n - 1];
  const double ratio = static_cast<double>(r.sizes[n - 1]) / static_cast<double>(r.sizes[n - 2]);
  if (e0 > 0.0 && e1 > 0.0 && ratio > 1.0) r.rate = std::log(e0 / e1) / std::log(ratio);
}

SampledFunction volterra_oracle(const ScalarProblem& prob, std::vector<double> tgrid) {
  if (tgrid.empty() || tgrid.front() != 0.0) throw ContractError("time grid must start at 0");
  const double a = prob.fp.alpha();
  const double rho = prob.fp.rho();
  const double coupling = prob.lambda_star() * rgamma(a);
  const double source = std::pow(rho, -a) * rgamma(a);
  const auto f = forcing_values(prob.forcing, tgrid);
  std::vector<double> s(tgrid.size());
  for (std::size_t i = 0; i < s.size(); ++i) s[i] = std::pow(tgrid[i], rho);
  const ProductRule rule(std::make_shared<PowerKernel>(a), s);

  std::vector<double> u(tgrid.size(), prob.u0);
  for (std::size_t n = 1; n < u.size(); ++n) {
    const auto w = rule.weights(n);
    double rhs = prob.u0;
    for (std::size_t j = 0; j <= n; ++j) rhs += source * w[j] * f[j];
    for (std::size_t j = 0; j < n; ++j) rhs += coupling * w[j] * u[j];
    const double diag = 1.0 - coupling * w[n];
    if (!(std::abs(diag) > 0.0) || !std::isfinite(diag)) throw InternalError("volterra_oracle: singular step");
    u[n] = rhs / diag;
  }
  return SampledFunction(std::move(tgrid), std::move(u));
}

std::vector<double> l1_caputo(const SampledFunction& u, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw ContractError("L1 scheme needs alpha in (0, 1)");
  const auto t = u.grid();
  const auto v = u.values();
  const double scale = rgamma(2.0 - alpha);
  std::vector<double> d(t.size(), kNaN);
  for (std::size_t n = 1; n < t.size(); ++n) {
    double sum = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double b = std::pow(t[n] - t[j], 1.0 - alpha) - std::pow(t[n] - t[j + 1], 1.0 - alpha);
      sum += (v[j + 1] - v[j]) / (t[j + 1] - t[j]) * b;
    }
    d[n] = scale * sum;
  }
  return d;
}

SampledFunction l1_solve(double alpha, double lambda, double u0, std::span<const double> f, std::vector<double> tgrid) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw ContractError("L1 scheme needs alpha in (0, 1)");
  if (f.size() != tgrid.size()) throw ContractError("forcing samples do not match the time grid");
  if (tgrid.empty() || tgrid.front() != 0.0) throw ContractError("time grid must start at 0");
  const double scale = rgamma(2.0 - alpha);
  std::vector<double> u(tgrid.size(), u0);
  for (std::size_t n = 1; n < u.size(); ++n) {
    double history = 0.0;
    for (std::size_t j = 0; j + 1 < n; ++j) {
      const double b = std::pow(tgrid[n] - tgrid[j], 1.0 - alpha) - std::pow(tgrid[n] - tgrid[j + 1], 1.0 - alpha);
      history += scale * b / (tgrid[j + 1] - tgrid[j]) * (u[j + 1] - u[j]);
    }
    const double h = tgrid[n] - tgrid[n - 1];
    const double c = scale * std::pow(h, 1.0 - alpha) / h;
    u[n] = (f[n] + c * u[n - 1] - history) / (c + lambda);
  }
  return SampledFunction(std::move(tgrid), std::move(u));
}

VerificationReport residual_direct(const SolutionField& field, const DirectProblemSpec& spec, double window,
                                   double tolerance) {
  VerificationReport r;
  r.name = "residual_direct";
  r.tolerance = tolerance;
  const int K = static_cast<int>(field.modes.size());
  const std::size_t nt = field.t.size();
  const std::size_t nx = field.x.size();
  const auto fk = forcing_modes(spec.forcing, std::max(K, 1), field.t);

  std::vector<std::vector<double>> res(static_cast<std::size_t>(K), std::vector<double>(nt, 0.0));
  for (int k = 1; k <= K; ++k) {
    const auto& u = field.modes[k - 1];
    const double lambda = k * k * kPi * kPi;
    std::vector<double> d(nt, 0.0);
    const bool live = std::any_of(u.begin(), u.end(), [](double v) { return v != 0.0; });
    if (live) d = reg_caputo_hb_on_grid(SampledFunction(field.t, u), spec.fp);
    for (std::size_t i = 1; i < nt; ++i) res[k - 1][i] = d[i] + lambda * u[i] - fk[k - 1][i];
  }

  const double rho = spec.fp.rho();
  const double s_end = std::pow(field.t.back(), rho);
  std::vector<double> inside;
  double early = 0.0;
  for (std::size_t i = 1; i < nt; ++i) {
    const bool in_window = std::pow(field.t[i], rho) >= window * s_end;
    for (std::size_t j = 0; j < nx; ++j) {
      double v = 0.0;
      for (int k = 1; k <= K; ++k) {
        if (res[k - 1][i] != 0.0) v += res[k - 1][i] * sinpi(k * field.x[j]);
      }
      if (in_window) {
        inside.push_back(v);
      } else {
        early = std::max(early, std::abs(v));
      }
    }
  }
  add_level(r, static_cast<int>(nt) - 1, norms(inside));
  r.passed = r.max_errors.back() <= tolerance;
  r.detail = "window t^rho >= " + fmt(window) + " T^rho; max before window " + fmt(early);
  return r;
}

VerificationReport reduction_theta_zero(double alpha, double lambda, std::vector<double> tgrid, double tolerance) {
  VerificationReport r;
  r.name = "reduction_theta_zero";
  r.tolerance = tolerance;
  const FracParams fp(alpha, 0.0);
  const auto grid = tgrid;
  const auto u = solve_scalar({fp, lambda, 1.0, ZeroForcing{}}, std::move(tgrid));
  std::vector<double> e(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    e[i] = u.values()[i] - ml_one(alpha, -lambda * std::pow(grid[i], alpha));
  }
  add_level(r, static_cast<int>(grid.size()) - 1, norms(e));
  r.passed = r.max_errors.back() <= tolerance;
  r.detail = "alpha=" + fmt(alpha) + " lambda=" + fmt(lambda);
  return r;
}

VerificationReport roundtrip_inverse(const FracParams& fp, const SineSeries& source, double T,
                                     const std::vector<Resolution>& resolutions, double tolerance) {
  VerificationReport r;
  r.name = "roundtrip_inverse";
  r.tolerance = tolerance;
  double scale = 0.0;
  for (double c : source.coeffs) scale = std::max(scale, std::abs(c));
  std::ostringstream detail;
  detail << "alpha=" << fmt(fp.alpha()) << " theta=" << fmt(fp.theta()) << " T=" << fmt(T);
  for (const auto& res : resolutions) {
    if (source.modes() > res.modes) throw ContractError("source has more modes than the solver keeps");
    const auto x = uniform_grid(0.0, 1.0, res.nx);
    const auto zero = SampledFunction::sample(x, [](double) { return 0.0; });
    auto g = sine_synthesize(source, x);
    auto h = SampledFunction::sample(power_grid(T, 1, fp.rho()), [](double) { return 1.0; });
    DirectProblemSpec ds{fp, zero, SeparableForcing{std::move(g), std::move(h)}, T, res.modes, res.nx, res.nt};
    const auto direct = solve_direct(ds);
    std::vector<double> phi(x.size());
    const std::size_t last = direct.field.t.size() - 1;
    for (std::size_t j = 0; j < x.size(); ++j) phi[j] = direct.field.at(last, j);
    InverseProblemSpec is{fp, zero, SampledFunction(x, std::move(phi)), T, res.modes, res.nx, res.nt};
    const auto inv = solve_inverse(is);
    std::vector<double> e(static_cast<std::size_t>(res.modes));
    for (int k = 1; k <= res.modes; ++k) {
      const double want = k <= source.modes() ? source(k) : 0.0;
      e[k - 1] = (inv.source(k) - want) / (scale > 0.0 ? scale : 1.0);
    }
    add_level(r, res.nt, norms(e));
  }
  compute_rate(r);
  r.passed = std::all_of(r.max_errors.begin(), r.max_errors.end(), [&](double v) { return v <= tolerance; });
  r.detail = detail.str();
  return r;
}

}  // namespace hbfde
