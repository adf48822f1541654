#pragma once

#include <string>
#include <variant>
#include <vector>

#include "hbfde/fractional_operators.hpp"
#include "hbfde/grid.hpp"
#include "hbfde/scalar_fde.hpp"

namespace hbfde {

/// Coefficients of sum_k c_k sin(k pi x), k = 1..K; coeffs[k - 1] holds c_k.
struct SineSeries {
  std::vector<double> coeffs;

  int modes() const { return static_cast<int>(coeffs.size()); }
  double operator()(int k) const { return coeffs.at(static_cast<std::size_t>(k - 1)); }
};

/// c_k = 2 int_0^1 g(x) sin(k pi x) dx. On a uniform grid this is the trapezoid rule (a
/// discrete sine transform), exact for sine polynomials of degree below the number of
/// cells. Other grids integrate the piecewise-linear interpolant exactly.
/// g must live on [0, 1]; throws ContractError for K < 1.
SineSeries sine_analyze(const SampledFunction& g, int K);

/// Pointwise sum of the series on xgrid (which must start at 0).
SampledFunction sine_synthesize(const SineSeries& s, std::vector<double> xgrid);

/// F_k(t): the forcing part of the mode-k scalar problem (lambda = k^2 pi^2, u0 = 0), with
/// f_k interpolated onto tgrid. F_k(0) = 0.
SampledFunction mode_forcing_term(const SampledFunction& fk, int k, const FracParams& fp, std::vector<double> tgrid);

/// f(x, t) = g(x) h(t).
struct SeparableForcing {
  SampledFunction g;
  SampledFunction h;
};

/// Samples of f on a tensor grid, row-major in time: values[i * x.size() + j] = f(x_j, t_i).
struct TensorForcing {
  std::vector<double> x;
  std::vector<double> t;
  std::vector<double> values;
};

using SpaceTimeForcing = std::variant<ZeroForcing, SeparableForcing, TensorForcing>;

/// K used when a spec leaves modes at 0: HB_DEFAULT_MODES if set to a positive integer, else 64.
int default_modes();

struct DirectProblemSpec {
  FracParams fp;
  SampledFunction psi;
  SpaceTimeForcing forcing = ZeroForcing{};
  double T = 1.0;
  int modes = 0;           // 0 selects default_modes()
  int nx = 512;            // cells of the output x grid
  int nt = 512;            // cells of the time grid
  double grading = 1.0;    // time nodes t_i with t_i^rho = T^rho (i / nt)^grading
};

/// u(x, t) on xgrid x tgrid, row-major in time: values[i * x.size() + j] = u(x_j, t_i).
/// modes[k - 1][i] = u_k(t_i).
struct SolutionField {
  std::vector<double> x;
  std::vector<double> t;
  std::vector<double> values;
  std::vector<std::vector<double>> modes;

  double at(std::size_t i, std::size_t j) const { return values[i * x.size() + j]; }
};

struct DirectDiagnostics {
  int modes = 0;
  double psi_tail = 0.0;      // sum_{k > K} |psi_k| over the modes the samples resolve
  double forcing_tail = 0.0;  // same for the forcing, maximized over time
  int active_modes = 0;       // modes with nonzero data
};

struct DirectSolution {
  SolutionField field;
  DirectDiagnostics diagnostics;
};

/// Time grid and x grid used by solve_direct for this spec.
std::vector<double> time_grid(const DirectProblemSpec& spec);
std::vector<double> space_grid(const DirectProblemSpec& spec);

/// Throws ValidationError naming the violated compatibility condition:
/// psi(0) = psi(1) = 0 and f(0, t) = f(1, t) = 0, within 1e-12. The conditions
/// f_xx(0, t) = f_xx(1, t) = 0 cannot be checked from samples and stay with the caller.
void validate(const DirectProblemSpec& spec);

/// u_k(t) = psi_k E_alpha(-k^2 pi^2 t^{rho alpha} / rho^alpha) + F_k(t), synthesized over sin(k pi x).
DirectSolution solve_direct(const DirectProblemSpec& spec);

/// Sine-mode traces f_k(t_i) of the forcing on tgrid, k = 1..K (all zero for ZeroForcing).
std::vector<std::vector<double>> forcing_modes(const SpaceTimeForcing& forcing, int K, const std::vector<double>& tgrid);

}  // namespace hbfde
