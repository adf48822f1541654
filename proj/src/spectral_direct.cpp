#include "hbfde/spectral_direct.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <numbers>
#include <optional>
#include <sstream>

#include "hbfde/errors.hpp"
#include "hbfde/special_functions.hpp"

namespace hbfde {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kBoundaryTol = 1e-12;

void check_unit_interval(std::span<const double> grid, const char* what) {
  if (std::abs(grid.back() - 1.0) > 1e-14) {
    throw ContractError(std::string(what) + " must be sampled on [0, 1]");
  }
}

// Sine analysis against a fixed grid, reusable across many sample vectors.
class SineAnalyzer {
 public:
  SineAnalyzer(std::span<const double> grid, int K) : grid_(grid.begin(), grid.end()), K_(K) {
    if (K < 1) throw ContractError("sine analysis needs K >= 1");
    uniform_ = is_uniform(grid_);
    if (uniform_) {
      const std::size_t n = grid_.size();
      table_.resize(static_cast<std::size_t>(K) * n);
      for (int k = 1; k <= K; ++k) {
        for (std::size_t i = 0; i < n; ++i) table_[(k - 1) * n + i] = sinpi(k * grid_[i]);
      }
    }
  }

  SineSeries apply(std::span<const double> g) const {
    SineSeries out;
    out.coeffs.assign(static_cast<std::size_t>(K_), 0.0);
    const std::size_t n = grid_.size();
    if (n < 2) return out;
    if (uniform_) {
      const double h = 1.0 / static_cast<double>(n - 1);
      for (int k = 1; k <= K_; ++k) {
        const double* row = &table_[(k - 1) * n];
        double sum = 0.0;
        // Endpoint terms vanish: sin(0) = sin(k pi) = 0.
        for (std::size_t i = 1; i + 1 < n; ++i) sum += g[i] * row[i];
        out.coeffs[k - 1] = 2.0 * h * sum;
      }
      return out;
    }
    for (int k = 1; k <= K_; ++k) {
      const double w = k * kPi;
      double sum = 0.0;
      for (std::size_t i = 0; i + 1 < n; ++i) {
        const double a = grid_[i];
        const double b = grid_[i + 1];
        const double m = (g[i + 1] - g[i]) / (b - a);
        sum += -(g[i + 1] * cospi(k * b) - g[i] * cospi(k * a)) / w + m * (sinpi(k * b) - sinpi(k * a)) / (w * w);
      }
      out.coeffs[k - 1] = 2.0 * sum;
    }
    return out;
  }

 private:
  std::vector<double> grid_;
  int K_;
  bool uniform_ = false;
  std::vector<double> table_;
};

// Sum of |c_k| over the modes K < k < number of cells.
class TailMeter {
 public:
  TailMeter(std::span<const double> grid, int K) : K_(K), top_(static_cast<int>(grid.size()) - 1) {
    if (top_ > K + 1) analyzer_.emplace(grid, top_ - 1);
  }
  double operator()(std::span<const double> values) const {
    if (!analyzer_) return 0.0;
    const auto all = analyzer_->apply(values);
    double tail = 0.0;
    for (int k = K_ + 1; k < top_; ++k) tail += std::abs(all(k));
    return tail;
  }

 private:
  int K_;
  int top_;
  std::optional<SineAnalyzer> analyzer_;
};

int effective_modes(int requested) { return requested > 0 ? requested : default_modes(); }

}  // namespace

SineSeries sine_analyze(const SampledFunction& g, int K) {
  if (K < 1) throw ContractError("sine analysis needs K >= 1");
  check_unit_interval(g.grid(), "function");
  return SineAnalyzer(g.grid(), K).apply(g.values());
}

SampledFunction sine_synthesize(const SineSeries& s, std::vector<double> xgrid) {
  std::vector<double> v(xgrid.size(), 0.0);
  for (std::size_t j = 0; j < xgrid.size(); ++j) {
    double sum = 0.0;
    for (int k = 1; k <= s.modes(); ++k) {
      const double c = s(k);
      if (c != 0.0) sum += c * sinpi(k * xgrid[j]);
    }
    v[j] = sum;
  }
  return SampledFunction(std::move(xgrid), std::move(v));
}

SampledFunction mode_forcing_term(const SampledFunction& fk, int k, const FracParams& fp, std::vector<double> tgrid) {
  if (k < 1) throw ContractError("mode index must be >= 1");
  if (tgrid.empty() || tgrid.front() != 0.0) throw ContractError("time grid must start at 0");
  if (tgrid.back() > fk.back_time()) throw RangeError("forcing samples do not cover the time grid");
  std::vector<double> f(tgrid.size());
  for (std::size_t i = 0; i < tgrid.size(); ++i) f[i] = fk.at(tgrid[i]);
  auto F = forcing_response(fp, k * k * kPi * kPi, tgrid, f);
  F[0] = 0.0;
  return SampledFunction(std::move(tgrid), std::move(F));
}

int default_modes() {
  if (const char* env = std::getenv("HB_DEFAULT_MODES")) {
    int k = 0;
    const auto [ptr, ec] = std::from_chars(env, env + std::strlen(env), k);
    if (ec == std::errc() && *ptr == '\0' && k > 0) return k;
  }
  return 64;
}

std::vector<double> time_grid(const DirectProblemSpec& spec) {
  return power_grid(spec.T, spec.nt, spec.fp.rho(), spec.grading);
}

std::vector<double> space_grid(const DirectProblemSpec& spec) { return uniform_grid(0.0, 1.0, spec.nx); }

void validate(const DirectProblemSpec& spec) {
  if (!(spec.T > 0.0)) throw ValidationError("horizon T must be positive");
  if (spec.nt < 1 || spec.nx < 1) throw ValidationError("grid resolutions must be positive");
  if (spec.modes < 0) throw ValidationError("mode count must be positive");
  if (spec.psi.size() == 0) throw ValidationError("initial data psi is missing");
  if (std::abs(spec.psi.back_time() - 1.0) > 1e-14) throw ValidationError("initial data psi must be sampled on [0, 1]");
  const auto pv = spec.psi.values();
  if (std::abs(pv.front()) > kBoundaryTol || std::abs(pv.back()) > kBoundaryTol) {
    throw ValidationError("initial data violates psi(0) = psi(1) = 0");
  }
  if (const auto* s = std::get_if<SeparableForcing>(&spec.forcing)) {
    if (std::abs(s->g.back_time() - 1.0) > 1e-14) throw ValidationError("forcing g(x) must be sampled on [0, 1]");
    double hmax = 0.0;
    for (double v : s->h.values()) hmax = std::max(hmax, std::abs(v));
    const auto gv = s->g.values();
    if (hmax * std::max(std::abs(gv.front()), std::abs(gv.back())) > kBoundaryTol) {
      throw ValidationError("forcing violates f(0, t) = f(1, t) = 0");
    }
    if (s->h.back_time() < spec.T) throw ValidationError("forcing h(t) does not cover [0, T]");
  } else if (const auto* t = std::get_if<TensorForcing>(&spec.forcing)) {
    const std::size_t nx = t->x.size();
    if (nx < 2 || t->t.empty() || t->values.size() != nx * t->t.size()) {
      throw ValidationError("tensor forcing has inconsistent dimensions");
    }
    if (t->x.front() != 0.0 || std::abs(t->x.back() - 1.0) > 1e-14) {
      throw ValidationError("tensor forcing must be sampled on [0, 1] in x");
    }
    if (t->t.front() != 0.0 || t->t.back() < spec.T) throw ValidationError("tensor forcing does not cover [0, T]");
    for (std::size_t i = 0; i < t->t.size(); ++i) {
      if (std::abs(t->values[i * nx]) > kBoundaryTol || std::abs(t->values[i * nx + nx - 1]) > kBoundaryTol) {
        std::ostringstream os;
        os << "forcing violates f(0, t) = f(1, t) = 0 at t = " << t->t[i];
        throw ValidationError(os.str());
      }
    }
  }
}

std::vector<std::vector<double>> forcing_modes(const SpaceTimeForcing& forcing, int K,
                                               const std::vector<double>& tgrid) {
  std::vector<std::vector<double>> out(static_cast<std::size_t>(K), std::vector<double>(tgrid.size(), 0.0));
  if (const auto* s = std::get_if<SeparableForcing>(&forcing)) {
    const auto gk = sine_analyze(s->g, K);
    std::vector<double> h(tgrid.size());
    for (std::size_t i = 0; i < tgrid.size(); ++i) h[i] = s->h.at(tgrid[i]);
    for (int k = 1; k <= K; ++k) {
      if (gk(k) == 0.0) continue;
      for (std::size_t i = 0; i < tgrid.size(); ++i) out[k - 1][i] = gk(k) * h[i];
    }
  } else if (const auto* t = std::get_if<TensorForcing>(&forcing)) {
    const std::size_t nx = t->x.size();
    const SineAnalyzer analyzer(t->x, K);
    std::vector<std::vector<double>> slices(static_cast<std::size_t>(K), std::vector<double>(t->t.size()));
    for (std::size_t i = 0; i < t->t.size(); ++i) {
      const auto c = analyzer.apply(std::span<const double>(t->values).subspan(i * nx, nx));
      for (int k = 1; k <= K; ++k) slices[k - 1][i] = c(k);
    }
    for (int k = 1; k <= K; ++k) {
      const SampledFunction trace(t->t, std::move(slices[k - 1]));
      for (std::size_t i = 0; i < tgrid.size(); ++i) out[k - 1][i] = trace.at(tgrid[i]);
    }
  }
  return out;
}

DirectSolution solve_direct(const DirectProblemSpec& spec) {
  validate(spec);
  const int K = effective_modes(spec.modes);
  const auto tgrid = time_grid(spec);
  const auto xgrid = space_grid(spec);
  const double a = spec.fp.alpha();
  const double rho = spec.fp.rho();

  DirectSolution out;
  out.diagnostics.modes = K;
  out.diagnostics.psi_tail = TailMeter(spec.psi.grid(), K)(spec.psi.values());
  if (const auto* s = std::get_if<SeparableForcing>(&spec.forcing)) {
    double hmax = 0.0;
    for (double v : s->h.values()) hmax = std::max(hmax, std::abs(v));
    out.diagnostics.forcing_tail = hmax * TailMeter(s->g.grid(), K)(s->g.values());
  } else if (const auto* t = std::get_if<TensorForcing>(&spec.forcing)) {
    const std::size_t nx = t->x.size();
    const TailMeter meter(t->x, K);
    for (std::size_t i = 0; i < t->t.size(); ++i) {
      const double tail = meter(std::span<const double>(t->values).subspan(i * nx, nx));
      out.diagnostics.forcing_tail = std::max(out.diagnostics.forcing_tail, tail);
    }
  }

  const auto psi_k = sine_analyze(spec.psi, K);
  const auto f_k = forcing_modes(spec.forcing, K, tgrid);

  SolutionField& field = out.field;
  field.x = xgrid;
  field.t = tgrid;
  field.modes.assign(static_cast<std::size_t>(K), std::vector<double>(tgrid.size(), 0.0));
  const ml::Fixed E(a, 1.0);
  const double rho_a = std::pow(rho, a);
  for (int k = 1; k <= K; ++k) {
    auto& u = field.modes[k - 1];
    const auto& fk = f_k[k - 1];
    const bool forced = std::any_of(fk.begin(), fk.end(), [](double v) { return v != 0.0; });
    if (psi_k(k) == 0.0 && !forced) continue;
    ++out.diagnostics.active_modes;
    const double lambda = k * k * kPi * kPi;
    if (psi_k(k) != 0.0) {
      u[0] = psi_k(k);
      for (std::size_t i = 1; i < tgrid.size(); ++i) {
        u[i] = psi_k(k) * E(-lambda * std::pow(tgrid[i], rho * a) / rho_a);
      }
    }
    if (forced) {
      const auto F = forcing_response(spec.fp, lambda, tgrid, fk);
      for (std::size_t i = 1; i < tgrid.size(); ++i) u[i] += F[i];
    }
  }

  const std::size_t nx = xgrid.size();
  std::vector<double> table(static_cast<std::size_t>(K) * nx);
  for (int k = 1; k <= K; ++k) {
    for (std::size_t j = 0; j < nx; ++j) table[(k - 1) * nx + j] = sinpi(k * xgrid[j]);
  }
  field.values.assign(tgrid.size() * nx, 0.0);
  for (int k = 1; k <= K; ++k) {
    const auto& u = field.modes[k - 1];
    const double* row = &table[(k - 1) * nx];
    for (std::size_t i = 0; i < tgrid.size(); ++i) {
      if (u[i] == 0.0) continue;
      double* out_row = &field.values[i * nx];
      for (std::size_t j = 0; j < nx; ++j) out_row[j] += u[i] * row[j];
    }
  }
  return out;
}

}  // namespace hbfde
