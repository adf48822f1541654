#pragma once

#include <memory>
#include <span>
#include <vector>

#include "hbfde/special_functions.hpp"

namespace hbfde {

/// Convolution kernel k(w), w >= 0, known through its first and second antiderivatives
/// that vanish at w = 0. Product integration against a piecewise-linear function then
/// needs only these two functions, so weak singularities at w = 0 are integrated exactly.
class Kernel {
 public:
  virtual ~Kernel() = default;
  /// int_0^w k
  virtual double first(double w) const = 0;
  /// int_0^w int_0^v k
  virtual double second(double w) const = 0;
};

/// k(w) = scale * w^(order - 1), order > 0.
class PowerKernel final : public Kernel {
 public:
  explicit PowerKernel(double order, double scale = 1.0);
  double first(double w) const override;
  double second(double w) const override;

 private:
  double order_;
  double scale_;
};

/// k(w) = scale * w^(beta - 1) E_{alpha,beta}(c w^alpha).
class MittagLefflerKernel final : public Kernel {
 public:
  MittagLefflerKernel(double alpha, double beta, double c, double scale = 1.0);
  double first(double w) const override;
  double second(double w) const override;

 private:
  double alpha_;
  double beta_;
  double c_;
  double scale_;
  ml::Fixed e1_;  // E_{alpha,beta+1}
  ml::Fixed e2_;  // E_{alpha,beta+2}
};

/// int_{s_0}^{s_N} k(s_N - s) g(s) ds where g is linear on each cell [s_j, s_{j+1}] with
/// one-sided endpoint values left[j] = g(s_j+), right[j] = g(s_{j+1}-). Handles
/// piecewise-linear data that jumps at nodes.
double integrate_cellwise(const Kernel& k, std::span<const double> nodes, std::span<const double> left,
                          std::span<const double> right);

/// Product-integration weights over fixed nodes s_0 < ... < s_N. On a uniform grid the
/// antiderivatives are tabulated once at multiples of the spacing.
class ProductRule {
 public:
  ProductRule(std::shared_ptr<const Kernel> k, std::vector<double> nodes);

  /// w[j], j = 0..n, with int_{s_0}^{s_n} k(s_n - s) g(s) ds = sum_j w[j] g(s_j) for
  /// continuous piecewise-linear g.
  std::vector<double> weights(std::size_t n) const;

  double integrate(std::size_t n, std::span<const double> values) const;

  /// Cellwise variant of integrate(): left[j], right[j] are one-sided values on cell j.
  double integrate_cellwise(std::size_t n, std::span<const double> left, std::span<const double> right) const;

  /// result[n] = integrate(n, values); result[0] = 0.
  std::vector<double> integrate_all(std::span<const double> values) const;

  std::span<const double> nodes() const { return nodes_; }

 private:
  double first_at(std::size_t n, std::size_t j) const;
  double second_at(std::size_t n, std::size_t j) const;

  std::shared_ptr<const Kernel> kernel_;
  std::vector<double> nodes_;
  bool uniform_ = false;
  std::vector<double> first_table_;
  std::vector<double> second_table_;
};

}  // namespace hbfde
