#include "hbfde/special_functions.hpp"

#include <mpfr.h>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>
#include <sstream>
#include <vector>

#include "hbfde/errors.hpp"

namespace hbfde {

namespace {

constexpr double kPi = std::numbers::pi;

bool is_nonpositive_integer(double x) { return x <= 0.0 && x == std::floor(x); }

// Neumaier's variant of Kahan summation.
class CompensatedSum {
 public:
  void add(double v) {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v)) {
      comp_ += (sum_ - t) + v;
    } else {
      comp_ += (v - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

// log|1/Gamma(x)| and its sign, for x not a pole.
struct LogRecipGamma {
  double log_magnitude;
  double sign;
};

LogRecipGamma log_rgamma(double x) {
  if (x > 0.0) return {-std::lgamma(x), 1.0};
  // Reflection: 1/Gamma(x) = sin(pi x) Gamma(1 - x) / pi.
  const double s = sinpi(x);
  return {std::log(std::abs(s)) + std::lgamma(1.0 - x) - std::log(kPi), s < 0.0 ? -1.0 : 1.0};
}

// Envelope |Gamma(1 - x)| / pi of 1/Gamma(x) for x < 0, without the oscillating sine.
double log_rgamma_envelope(double x) {
  if (x > 0.0) return -std::lgamma(x);
  return std::lgamma(1.0 - x) - std::log(kPi);
}

class Mpfr {
 public:
  explicit Mpfr(mpfr_prec_t bits) { mpfr_init2(v_, bits); }
  ~Mpfr() { mpfr_clear(v_); }
  Mpfr(const Mpfr&) = delete;
  Mpfr& operator=(const Mpfr&) = delete;
  mpfr_ptr get() { return v_; }

 private:
  mpfr_t v_;
};

}  // namespace

double sinpi(double x) {
  // x - 2 round(x / 2) is exact in binary floating point.
  const double r = x - 2.0 * std::round(0.5 * x);
  if (r == 0.0 || r == 1.0 || r == -1.0) return 0.0;
  if (r == 0.5) return 1.0;
  if (r == -0.5) return -1.0;
  return std::sin(kPi * r);
}

double cospi(double x) {
  const double r = x - 2.0 * std::round(0.5 * x);
  if (r == 0.5 || r == -0.5) return 0.0;
  if (r == 0.0) return 1.0;
  if (r == 1.0 || r == -1.0) return -1.0;
  return std::cos(kPi * r);
}

double gamma(double x) {
  if (std::isnan(x)) throw DomainError("gamma: NaN argument");
  if (is_nonpositive_integer(x)) {
    std::ostringstream os;
    os << "gamma: pole at x = " << x;
    throw DomainError(os.str());
  }
  return std::tgamma(x);
}

double rgamma(double x) {
  if (std::isnan(x)) throw DomainError("rgamma: NaN argument");
  if (is_nonpositive_integer(x)) return 0.0;
  if (x >= 0.5) return 1.0 / std::tgamma(x);
  return sinpi(x) * std::tgamma(1.0 - x) / kPi;
}

void MLParams::validate() const {
  if (!(alpha > 0.0 && alpha <= 2.0)) {
    std::ostringstream os;
    os << "Mittag-Leffler alpha must lie in (0, 2], got " << alpha;
    throw ContractError(os.str());
  }
  if (!(beta_star > 0.0)) {
    std::ostringstream os;
    os << "Mittag-Leffler beta* must be positive, got " << beta_star;
    throw ContractError(os.str());
  }
}

double ml_two(const MLParams& p, double z) {
  p.validate();
  return ml::evaluate(p.alpha, p.beta_star, z).value;
}

double ml_two(double alpha, double beta_star, double z) { return ml_two(MLParams{alpha, beta_star}, z); }

double ml_one(double alpha, double z) { return ml_two(MLParams{alpha, 1.0}, z); }

namespace ml {

const char* to_string(Regime r) {
  switch (r) {
    case Regime::closed_form:
      return "closed_form";
    case Regime::series:
      return "series";
    case Regime::contour_integral:
      return "contour_integral";
    case Regime::asymptotic:
      return "asymptotic";
    case Regime::high_precision_series:
      return "high_precision_series";
    case Regime::parameter_shift:
      return "parameter_shift";
  }
  return "unknown";
}

std::optional<double> series(double alpha, double beta, double z, double max_condition) {
  if (z == 0.0) return rgamma(beta);
  constexpr int kMaxTerms = 400000;
  const double log_abs_z = std::log(std::abs(z));
  const bool alternating = z < 0.0;
  CompensatedSum sum;
  double sum_abs = 0.0;
  int small_run = 0;
  for (int k = 0; k < kMaxTerms; ++k) {
    const double arg = alpha * k + beta;
    const double magnitude = k == 0 ? std::abs(rgamma(beta)) : std::exp(k * log_abs_z - std::lgamma(arg));
    if (!std::isfinite(magnitude)) return std::nullopt;
    const double term = (alternating && (k % 2 == 1)) ? -magnitude : magnitude;
    sum.add(term);
    sum_abs += magnitude;
    if (alternating && sum_abs > max_condition * 1e3) return std::nullopt;
    if (magnitude <= 1e-16 * std::abs(sum.value())) {
      if (++small_run >= 3) break;
    } else {
      small_run = 0;
    }
  }
  const double value = sum.value();
  if (alternating && sum_abs > max_condition * std::abs(value)) return std::nullopt;
  return value;
}

namespace {

// -sum_{k>=1} z^{-k} / Gamma(beta - alpha k); nullopt if the tail never gets small.
std::optional<double> algebraic_tail(double alpha, double beta, double z) {
  constexpr int kMaxTerms = 400;
  const double log_abs_z = std::log(std::abs(z));
  CompensatedSum sum;
  double prev_envelope = std::numeric_limits<double>::infinity();
  double last_envelope = std::numeric_limits<double>::infinity();
  for (int k = 1; k <= kMaxTerms; ++k) {
    const double x = beta - alpha * k;
    const double envelope = std::exp(log_rgamma_envelope(x) - k * log_abs_z);
    if (k > 1 && envelope > prev_envelope) break;
    prev_envelope = envelope;
    last_envelope = envelope;
    if (!is_nonpositive_integer(x)) {
      const LogRecipGamma rg = log_rgamma(x);
      const double magnitude = std::exp(rg.log_magnitude - k * log_abs_z);
      double sign = rg.sign;
      if (z < 0.0 && (k % 2 == 1)) sign = -sign;
      sum.add(-sign * magnitude);
    }
    if (envelope <= 1e-17 * std::abs(sum.value())) break;
  }
  const double value = sum.value();
  if (last_envelope > 1e-15 * std::max(std::abs(value), std::numeric_limits<double>::min())) {
    return std::nullopt;
  }
  return value;
}

}  // namespace

std::optional<double> asymptotic(double alpha, double beta, double z) {
  if (z == 0.0) return std::nullopt;
  const double r = std::pow(std::abs(z), 1.0 / alpha);
  double exponential = 0.0;
  if (z > 0.0) {
    // Dominant saddle contribution on the positive axis.
    exponential = std::pow(z, (1.0 - beta) / alpha) * std::exp(r) / alpha;
    if (!std::isfinite(exponential)) return exponential;
  } else if (alpha > 1.0) {
    // Two conjugate contributions at arg = +-pi/alpha.
    const double phase = kPi * (1.0 - beta) / alpha + r * std::sin(kPi / alpha);
    exponential = (2.0 / alpha) * std::pow(r, 1.0 - beta) * std::exp(r * std::cos(kPi / alpha)) * std::cos(phase);
  }
  const auto tail = algebraic_tail(alpha, beta, z);
  if (!tail) return std::nullopt;
  return exponential + *tail;
}

double contour_integral(double alpha, double beta, double z) {
  if (!(alpha > 0.0 && alpha < 1.0) || !(z < 0.0) || !(beta < 1.0 + alpha)) {
    throw ContractError("contour_integral: requires alpha in (0,1), z < 0 and beta < 1 + alpha");
  }
  const double x = -z;
  const double sin_b = sinpi(beta);
  const double sin_ba = sinpi(beta - alpha);
  const double cos_a = cospi(alpha);
  const double sin_a = sinpi(alpha);
  // With r = u^p, p = 1/(1 + alpha - beta), the factor r^(alpha - beta) dr becomes p du
  // and the integrand is bounded at the origin.
  const double p = 1.0 / (1.0 + alpha - beta);
  auto integrand = [=](double u) {
    if (!(u > 0.0)) return 0.0;
    const double r = std::pow(u, p);
    if (r > 750.0) return 0.0;
    const double ra = std::pow(r, alpha);
    const double shifted = ra + x * cos_a;
    const double den = shifted * shifted + (x * sin_a) * (x * sin_a);
    const double num = ra * sin_b + x * sin_ba;
    return p * std::exp(-r) * num / den;
  };

  static thread_local boost::math::quadrature::tanh_sinh<double> finite_rule;
  static thread_local boost::math::quadrature::exp_sinh<double> half_line_rule;
  constexpr double kTol = 1e-12;

  // The denominator is smallest at r^alpha = -x cos(pi alpha); split there when the
  // peak sits in the region where exp(-r) is not negligible.
  const double peak = std::pow(x * std::max(-cos_a, 0.0), 1.0 / alpha);
  const double split = peak > 0.0 ? peak : std::pow(x, 1.0 / alpha);
  double value = 0.0;
  if (split > 0.0 && split < 40.0) {
    const double u_split = std::pow(split, 1.0 / p);
    value = finite_rule.integrate(integrand, 0.0, u_split, kTol);
    value += half_line_rule.integrate([&](double v) { return integrand(u_split + v); }, kTol);
  } else {
    value = half_line_rule.integrate(integrand, kTol);
  }
  return value / kPi;
}

double high_precision_series(double alpha, double beta, double z, long bits) {
  if (z == 0.0) return rgamma(beta);
  const double abs_z = std::abs(z);
  if (bits <= 0) {
    const double growth = std::pow(abs_z, 1.0 / alpha);
    bits = 96 + static_cast<long>(std::ceil(2.0 * std::numbers::log2e * growth));
  }
  const auto prec = static_cast<mpfr_prec_t>(bits);
  Mpfr sum(prec), term(prec), power(prec), arg(prec), g(prec), zz(prec), last(prec), bound(prec);
  mpfr_set_d(zz.get(), z, MPFR_RNDN);
  mpfr_set_ui(sum.get(), 0, MPFR_RNDN);
  mpfr_set_ui(power.get(), 1, MPFR_RNDN);
  mpfr_set_inf(last.get(), 1);

  constexpr long kMaxTerms = 2000000;
  for (long k = 0; k < kMaxTerms; ++k) {
    mpfr_set_d(arg.get(), alpha, MPFR_RNDN);
    mpfr_mul_si(arg.get(), arg.get(), k, MPFR_RNDN);
    mpfr_add_d(arg.get(), arg.get(), beta, MPFR_RNDN);
    mpfr_gamma(g.get(), arg.get(), MPFR_RNDN);
    mpfr_div(term.get(), power.get(), g.get(), MPFR_RNDN);
    mpfr_add(sum.get(), sum.get(), term.get(), MPFR_RNDN);

    mpfr_abs(term.get(), term.get(), MPFR_RNDN);
    const bool decreasing = mpfr_cmp(term.get(), last.get()) < 0;
    mpfr_swap(last.get(), term.get());
    // Stop once past the peak and the latest term is below 2^-80 of the running sum.
    mpfr_abs(bound.get(), sum.get(), MPFR_RNDN);
    mpfr_mul_2si(bound.get(), bound.get(), -80, MPFR_RNDN);
    if (k > 0 && decreasing && mpfr_cmp(last.get(), bound.get()) <= 0) break;
    mpfr_mul(power.get(), power.get(), zz.get(), MPFR_RNDN);
  }
  return mpfr_get_d(sum.get(), MPFR_RNDN);
}

Evaluation evaluate(double alpha, double beta, double z) {
  if (!std::isfinite(z)) throw DomainError("Mittag-Leffler: non-finite argument");
  if (!(alpha > 0.0 && alpha <= 2.0) || !(beta > 0.0)) {
    MLParams{alpha, beta}.validate();
  }
  if (z == 0.0) return {rgamma(beta), Regime::closed_form};

  const double abs_z = std::abs(z);
  const double growth = std::pow(abs_z, 1.0 / alpha);

  if (z > 0.0) {
    // Positive terms: no cancellation, only overflow to worry about.
    if (growth > 700.0) {
      if (auto v = asymptotic(alpha, beta, z)) return {*v, Regime::asymptotic};
      return {std::numeric_limits<double>::infinity(), Regime::asymptotic};
    }
    return {*series(alpha, beta, z, std::numeric_limits<double>::infinity()), Regime::series};
  }

  if (alpha < 1.0) {
    if (abs_z >= kMLAsymptoticSwitch) {
      if (auto v = asymptotic(alpha, beta, z)) return {*v, Regime::asymptotic};
    }
    if (abs_z <= 2.0) {
      if (auto v = series(alpha, beta, z)) return {*v, Regime::series};
    }
    if (beta > 1.0) {
      // E_{a,b}(z) = (E_{a,b-a}(z) - 1/Gamma(b-a)) / z lowers beta into (0, 1].
      const double lower = evaluate(alpha, beta - alpha, z).value;
      return {(lower - rgamma(beta - alpha)) / z, Regime::parameter_shift};
    }
    return {contour_integral(alpha, beta, z), Regime::contour_integral};
  }

  // 1 <= alpha <= 2 on the negative axis.
  if (alpha == 2.0 && (beta == 1.0 || beta == 2.0) && abs_z > 2.0) {
    const double r = std::sqrt(abs_z);
    return {beta == 1.0 ? std::cos(r) : std::sin(r) / r, Regime::closed_form};
  }
  if (abs_z <= 2.0) {
    if (auto v = series(alpha, beta, z)) return {*v, Regime::series};
  }
  if (growth <= 60.0) return {high_precision_series(alpha, beta, z), Regime::high_precision_series};
  if (alpha == 1.0 && beta == 1.0) return {std::exp(z), Regime::closed_form};
  if (auto v = asymptotic(alpha, beta, z)) return {*v, Regime::asymptotic};
  throw InternalError("Mittag-Leffler: no evaluation regime converged");
}

// Unit-width panels on [-hi, -lo], covering the series and contour ranges, each with Chebyshev points of the second kind in x = -z.
struct Band {
  double lo = 0.0;
  double hi = 0.0;
  std::vector<std::vector<double>> values;
};

namespace {

double cheb_node(std::size_t j, std::size_t n) { return -std::cos(kPi * static_cast<double>(j) / (n - 1)); }

// Barycentric interpolation on n second-kind Chebyshev points of [-1, 1].
double barycentric(const std::vector<double>& v, double u) {
  const std::size_t n = v.size();
  double num = 0.0;
  double den = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double d = u - cheb_node(j, n);
    if (d == 0.0) return v[j];
    double w = (j % 2 == 0) ? 1.0 : -1.0;
    if (j == 0 || j == n - 1) w *= 0.5;
    num += w * v[j] / d;
    den += w / d;
  }
  return num / den;
}

std::vector<double> panel_values(double alpha, double beta, double x0, std::size_t n) {
  std::vector<double> v(n);
  for (std::size_t j = 0; j < n; ++j) v[j] = evaluate(alpha, beta, -(x0 + 0.5 * (1.0 + cheb_node(j, n)))).value;
  return v;
}

std::shared_ptr<const Band> build_band(double alpha, double beta) {
  auto band = std::make_shared<Band>();
  band->lo = 0.0;
  double hi = kMLAsymptoticSwitch;
  while (!asymptotic(alpha, beta, -hi)) hi += 1.0;
  band->hi = hi;
  for (double x0 = band->lo; x0 < hi; x0 += 1.0) {
    std::size_t n = 12;
    std::vector<double> v;
    for (;; n *= 2) {
      v = panel_values(alpha, beta, x0, n);
      double err = 0.0;
      for (double u : {-0.77, -0.31, 0.13, 0.58, 0.91}) {
        const double exact = evaluate(alpha, beta, -(x0 + 0.5 * (1.0 + u))).value;
        err = std::max(err, std::abs(barycentric(v, u) - exact) / std::abs(exact));
      }
      if (err <= 1e-13 || n >= 96) break;
    }
    band->values.push_back(std::move(v));
  }
  return band;
}

}  // namespace

Fixed::Fixed(double alpha, double beta) : alpha_(alpha), beta_(beta) {
  MLParams{alpha, beta}.validate();
  if (alpha >= 1.0) return;
  static std::mutex mutex;
  static std::map<std::pair<double, double>, std::shared_ptr<const Band>> cache;
  const std::lock_guard<std::mutex> lock(mutex);
  auto& entry = cache[{alpha, beta}];
  if (!entry) entry = build_band(alpha, beta);
  band_ = entry;
}

double Fixed::operator()(double z) const {
  if (band_ && std::isfinite(z)) {
    const double x = -z;
    if (x >= band_->lo && x < band_->hi) {
      const auto i = static_cast<std::size_t>(x - band_->lo);
      const double x0 = band_->lo + static_cast<double>(i);
      return barycentric(band_->values[i], 2.0 * (x - x0) - 1.0);
    }
  }
  return evaluate(alpha_, beta_, z).value;
}

}  // namespace ml

}  // namespace hbfde
