#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "hbfde/inverse_source.hpp"
#include "hbfde/scalar_fde.hpp"
#include "hbfde/spectral_direct.hpp"

namespace hbfde {

/// Outcome of one check. Errors are listed per resolution; rate is the observed order
/// log2(e_{n-1} / e_n) between the last two resolutions when at least two ran.
struct VerificationReport {
  std::string name;
  std::vector<int> sizes;
  std::vector<double> max_errors;
  std::vector<double> l2_errors;
  std::optional<double> rate;
  double tolerance = 0.0;
  bool passed = false;
  std::string detail;

  /// One JSON object, no trailing newline.
  std::string to_json() const;
};

/// Fills rate from the last two resolutions (no-op with fewer than two).
void compute_rate(VerificationReport& r);

/// Step-by-step collocation of
///   u(t) - (lambda*/Gamma(alpha)) int_0^t (t^rho - tau^rho)^{alpha-1} u d(tau^rho)
///        = u0 + (1/(rho^alpha Gamma(alpha))) int_0^t (t^rho - tau^rho)^{alpha-1} f d(tau^rho),
/// product trapezoid in s = tau^rho, implicit in u(t_n).
SampledFunction volterra_oracle(const ScalarProblem& prob, std::vector<double> tgrid);

/// Classical L1 approximation of the Caputo derivative of order alpha in (0, 1) at every
/// node of u's grid (entry 0 is NaN).
std::vector<double> l1_caputo(const SampledFunction& u, double alpha);

/// L1 time stepping for D^alpha u = -lambda u + f (Caputo, theta = 0); f sampled on tgrid.
SampledFunction l1_solve(double alpha, double lambda, double u0, std::span<const double> f, std::vector<double> tgrid);

/// Residual of the governing equation for a field from solve_direct: the regularized
/// operator is applied along each mode trace, -u_xx exactly through k^2 pi^2, and the
/// forcing is re-analysed from the spec. The maximum is taken over x nodes and over time
/// nodes with t^rho >= window * T^rho; the first cells hold an interpolation error of the
/// t^{rho alpha} onset that does not decay under refinement and is reported separately.
VerificationReport residual_direct(const SolutionField& field, const DirectProblemSpec& spec, double window = 0.1,
                                   double tolerance = 1e-2);

/// solve_scalar with theta = 0, f = 0, u0 = 1 against E_alpha(-lambda t^alpha).
VerificationReport reduction_theta_zero(double alpha, double lambda, std::vector<double> tgrid,
                                        double tolerance = 1e-10);

struct Resolution {
  int modes = 64;
  int nx = 512;
  int nt = 512;
};

/// Direct solve with f(x) = source, psi = 0; phi = u(., T); inverse solve; per-mode errors
/// |f_k - source_k| / max_k |source_k| (absolute for an all-zero source).
VerificationReport roundtrip_inverse(const FracParams& fp, const SineSeries& source, double T,
                                     const std::vector<Resolution>& resolutions, double tolerance = 1e-4);

/// Max relative error of one Mittag-Leffler identity at `points` log-spaced magnitudes in
/// [1e-3, 10]: "exp" E_1(z) = e^z and "expm1" E_{1,2}(z) = (e^z - 1)/z on both signs of z,
/// "cos" E_2(-z^2) = cos z, "erfc" E_{1/2}(-x) = e^{x^2} erfc(x).
VerificationReport ml_identity(const std::string& which, int points = 100, double tolerance = 1e-10);

/// sup of (1 + |z|) |E_{alpha,beta}(z)| over log-spaced z in [-zmax, 0]; passes when finite.
/// The supremum goes in max_errors.
VerificationReport ml_bound(double alpha, double beta, int points = 400, double zmax = 1e6);

/// solve_scalar against volterra_oracle on power_grid(T, N, rho, grading) for each N in sizes,
/// both fed the samples of f on that grid.
VerificationReport volterra_agreement(const FracParams& fp, double lambda, double u0,
                                      const std::function<double(double)>& f, double T, const std::vector<int>& sizes,
                                      double grading, double tolerance = 1e-4);

/// reg_caputo_hb of samples of E_alpha(-lambda t^{rho alpha} / rho^alpha) against -lambda u, on
/// power_grid(T, N, rho, grading), over nodes with t^rho >= window T^rho.
VerificationReport cauchy_residual(const FracParams& fp, double lambda, double T, const std::vector<int>& sizes,
                                   double grading, double window = 0.1, double tolerance = 1e-2);

/// solve_direct followed by residual_direct for each time resolution in nts.
VerificationReport residual_refinement(DirectProblemSpec spec, const std::vector<int>& nts, double window = 0.1,
                                       double tolerance = 1e-2);

struct ThetaZeroChecks {
  VerificationReport identity;  // traces against psi_k E_alpha(-k^2 pi^2 t^alpha)
  VerificationReport l1;        // traces against L1 stepping of each mode
};

/// Direct solver with theta = 0 and f = 0 for psi = sum_k psi_k sin(k pi x), time grid
/// power_grid(T, nt, 1, grading). Errors are relative to max_k |psi_k|.
ThetaZeroChecks theta_zero_direct(double alpha, const SineSeries& psi, double T, int nt, double grading,
                                  double identity_tol = 1e-10, double l1_tol = 1e-4);

/// Named suites for the CLI and the acceptance run: identities, bound, composition, volterra,
/// cauchy-residual, theta-zero-direct, roundtrip, stationary-inverse, zero-data,
/// reduction-theta-zero, residual.
std::vector<std::string> suite_names();

/// Runs a suite; throws ContractError for an unknown name. "all" runs every suite.
std::vector<VerificationReport> run_suite(const std::string& name);

}  // namespace hbfde
