#pragma once

#include <memory>
#include <optional>

namespace hbfde {

/// Gamma function on the real line. Throws DomainError at the poles 0, -1, -2, ...
double gamma(double x);

/// Reciprocal Gamma function, 1/Gamma(x). Entire: returns exactly 0 at the poles of Gamma.
double rgamma(double x);

/// sin(pi x) and cos(pi x) with exact argument reduction.
double sinpi(double x);
double cospi(double x);

/// Parameters of the two-parameter Mittag-Leffler function E_{alpha,beta*}.
struct MLParams {
  double alpha = 1.0;      // in (0, 2]; alpha = 2 covers the cos / sinc identities
  double beta_star = 1.0;  // > 0

  /// Throws ContractError when alpha is outside (0, 2] or beta_star <= 0.
  void validate() const;
};

/// E_{alpha,beta*}(z) = sum_k z^k / Gamma(alpha k + beta*) for real z.
double ml_two(const MLParams& p, double z);
double ml_two(double alpha, double beta_star, double z);

/// E_alpha(z) = E_{alpha,1}(z).
double ml_one(double alpha, double z);

/// Magnitude at which the negative-axis asymptotic expansion is first attempted.
inline constexpr double kMLAsymptoticSwitch = 12.0;

namespace ml {

enum class Regime {
  closed_form,
  series,
  contour_integral,
  asymptotic,
  high_precision_series,
  parameter_shift,
};

const char* to_string(Regime r);

struct Evaluation {
  double value;
  Regime regime;
};

/// Dispatching evaluator; ml_two() returns its value.
Evaluation evaluate(double alpha, double beta, double z);

/// Taylor series in double precision with compensated summation. Returns nullopt when
/// the ratio sum|terms| / |sum| exceeds max_condition (cancellation would spoil the result).
std::optional<double> series(double alpha, double beta, double z, double max_condition = 400.0);

/// Large-|z| expansion: exponential contributions (when present on the ray of z)
/// plus -sum_k z^{-k} / Gamma(beta - alpha k). Returns nullopt when the algebraic tail
/// has not dropped below double precision before the expansion starts to diverge.
std::optional<double> asymptotic(double alpha, double beta, double z);

/// Hankel-contour representation collapsed onto the negative real axis.
/// Valid for alpha < 1, z < 0, beta < 1 + alpha.
double contour_integral(double alpha, double beta, double z);

/// Taylor series evaluated in MPFR arithmetic. bits = 0 chooses a working precision
/// large enough to absorb the cancellation for negative z.
double high_precision_series(double alpha, double beta, double z, long bits = 0);

struct Band;

/// E_{alpha,beta} with the parameters fixed, for repeated evaluation. On the stretch of the
/// negative axis where evaluate() falls back to the contour integral, values come from
/// piecewise Chebyshev interpolants built on first use and shared by all instances with
/// the same parameters. Elsewhere it defers to evaluate().
class Fixed {
 public:
  Fixed(double alpha, double beta);
  double operator()(double z) const;

 private:
  double alpha_;
  double beta_;
  std::shared_ptr<const Band> band_;
};

}  // namespace ml

}  // namespace hbfde
