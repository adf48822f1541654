#pragma once

#include <string>
#include <vector>

#include "hbfde/spectral_direct.hpp"

namespace hbfde {

/// Recover {u(x, t), f(x)} from u(x, 0) = psi and u(x, T) = phi.
struct InverseProblemSpec {
  FracParams fp;
  SampledFunction psi;
  SampledFunction phi;
  double T = 1.0;
  int modes = 0;         // 0 selects default_modes()
  int nx = 512;
  int nt = 512;
  double grading = 1.0;
  double margin = 1e-8;  // smallest admissible 1 - E_alpha(-k^2 pi^2 T^{rho alpha} / rho^alpha)
};

struct InverseDiagnostics {
  double min_denominator = 0.0;
  int min_denominator_mode = 0;
  double growth_rate = 0.0;    // least-squares slope of log|f_k| against log k
  double cauchy_gap = 0.0;     // max_x |S_K f - S_{K/2} f| of the source partial sums
  double endpoint_residual = 0.0;  // max_k max(|u_k(0) - psi_k|, |u_k(T) - phi_k|)
  double psi_tail = 0.0;
  double phi_tail = 0.0;
  std::vector<std::string> warnings;
};

struct InverseResult {
  SolutionField u;
  SineSeries psi;
  SineSeries phi;
  SineSeries source;            // f_k = k^2 pi^2 (psi_k - C_k)
  std::vector<double> c;        // C_k = (psi_k - phi_k) / (1 - E_alpha(...T...))
  std::vector<double> denominators;
  InverseDiagnostics diagnostics;
};

/// Throws ValidationError for boundary-incompatible data or T <= 0.
void validate(const InverseProblemSpec& spec);

/// u_k(t) = C_k E_alpha(-k^2 pi^2 t^{rho alpha} / rho^alpha) + f_k / (k^2 pi^2), evaluated as
/// psi_k - C_k D_k(t) with D_k(t) = 1 - E_alpha(...) = x E_{alpha,alpha+1}(-x), x = k^2 pi^2 t^{rho alpha} / rho^alpha.
/// Throws IllPosedError naming the first mode whose denominator D_k(T) is below spec.margin.
InverseResult solve_inverse(const InverseProblemSpec& spec);

/// f(x) = sum_k f_k sin(k pi x) on xgrid.
SampledFunction reconstruct_source_field(const InverseResult& res, std::vector<double> xgrid);

}  // namespace hbfde
