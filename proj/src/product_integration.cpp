#include "hbfde/product_integration.hpp"

#include <cmath>

#include "hbfde/errors.hpp"
#include "hbfde/grid.hpp"
#include "hbfde/special_functions.hpp"

namespace hbfde {

PowerKernel::PowerKernel(double order, double scale) : order_(order), scale_(scale) {
  if (!(order > 0.0)) throw ContractError("PowerKernel: order must be positive");
}

double PowerKernel::first(double w) const {
  if (w <= 0.0) return 0.0;
  return scale_ * std::pow(w, order_) / order_;
}

double PowerKernel::second(double w) const {
  if (w <= 0.0) return 0.0;
  return scale_ * std::pow(w, order_ + 1.0) / (order_ * (order_ + 1.0));
}

MittagLefflerKernel::MittagLefflerKernel(double alpha, double beta, double c, double scale)
    : alpha_(alpha), beta_(beta), c_(c), scale_(scale), e1_(alpha, beta + 1.0), e2_(alpha, beta + 2.0) {
  MLParams{alpha, beta}.validate();
}

double MittagLefflerKernel::first(double w) const {
  if (w <= 0.0) return 0.0;
  return scale_ * std::pow(w, beta_) * e1_(c_ * std::pow(w, alpha_));
}

double MittagLefflerKernel::second(double w) const {
  if (w <= 0.0) return 0.0;
  return scale_ * std::pow(w, beta_ + 1.0) * e2_(c_ * std::pow(w, alpha_));
}

// On a cell with w in [a, b] (b = S - s_j, a = S - s_{j+1}, h = b - a):
//   int k(w) (w - a)/h dw = G1(b) - (G2(b) - G2(a))/h   multiplies g(s_j)
//   int k(w) (b - w)/h dw = (G2(b) - G2(a))/h - G1(a)   multiplies g(s_{j+1})
double integrate_cellwise(const Kernel& k, std::span<const double> nodes, std::span<const double> left,
                          std::span<const double> right) {
  if (nodes.size() < 2) return 0.0;
  if (left.size() + 1 != nodes.size() || right.size() + 1 != nodes.size()) {
    throw ContractError("integrate_cellwise: need one left/right value per cell");
  }
  const double end = nodes.back();
  double total = 0.0;
  double g1_a = 0.0;
  double g2_a = 0.0;
  for (std::size_t j = nodes.size() - 1; j-- > 0;) {
    const double b = end - nodes[j];
    const double a = end - nodes[j + 1];
    const double h = b - a;
    const double g1_b = k.first(b);
    const double g2_b = k.second(b);
    const double mean = (g2_b - g2_a) / h;
    total += left[j] * (g1_b - mean) + right[j] * (mean - g1_a);
    g1_a = g1_b;
    g2_a = g2_b;
  }
  return total;
}

ProductRule::ProductRule(std::shared_ptr<const Kernel> k, std::vector<double> nodes)
    : kernel_(std::move(k)), nodes_(std::move(nodes)) {
  if (!kernel_) throw ContractError("ProductRule: null kernel");
  if (nodes_.empty()) throw ContractError("ProductRule: no nodes");
  uniform_ = is_uniform(nodes_) && nodes_.size() > 1;
  if (uniform_) {
    const double h = (nodes_.back() - nodes_.front()) / static_cast<double>(nodes_.size() - 1);
    first_table_.resize(nodes_.size());
    second_table_.resize(nodes_.size());
    for (std::size_t m = 0; m < nodes_.size(); ++m) {
      first_table_[m] = kernel_->first(static_cast<double>(m) * h);
      second_table_[m] = kernel_->second(static_cast<double>(m) * h);
    }
  }
}

double ProductRule::first_at(std::size_t n, std::size_t j) const {
  return uniform_ ? first_table_[n - j] : kernel_->first(nodes_[n] - nodes_[j]);
}

double ProductRule::second_at(std::size_t n, std::size_t j) const {
  return uniform_ ? second_table_[n - j] : kernel_->second(nodes_[n] - nodes_[j]);
}

std::vector<double> ProductRule::weights(std::size_t n) const {
  std::vector<double> w(n + 1, 0.0);
  double g1_a = 0.0;
  double g2_a = 0.0;
  for (std::size_t j = n; j-- > 0;) {
    const double h = nodes_[j + 1] - nodes_[j];
    const double g1_b = first_at(n, j);
    const double g2_b = second_at(n, j);
    const double mean = (g2_b - g2_a) / h;
    w[j] += g1_b - mean;
    w[j + 1] += mean - g1_a;
    g1_a = g1_b;
    g2_a = g2_b;
  }
  return w;
}

double ProductRule::integrate(std::size_t n, std::span<const double> values) const {
  const auto w = weights(n);
  double total = 0.0;
  for (std::size_t j = 0; j <= n; ++j) total += w[j] * values[j];
  return total;
}

double ProductRule::integrate_cellwise(std::size_t n, std::span<const double> left,
                                       std::span<const double> right) const {
  double total = 0.0;
  double g1_a = 0.0;
  double g2_a = 0.0;
  for (std::size_t j = n; j-- > 0;) {
    const double h = nodes_[j + 1] - nodes_[j];
    const double g1_b = first_at(n, j);
    const double g2_b = second_at(n, j);
    const double mean = (g2_b - g2_a) / h;
    total += left[j] * (g1_b - mean) + right[j] * (mean - g1_a);
    g1_a = g1_b;
    g2_a = g2_b;
  }
  return total;
}

std::vector<double> ProductRule::integrate_all(std::span<const double> values) const {
  if (values.size() != nodes_.size()) throw ContractError("ProductRule: values do not match nodes");
  std::vector<double> out(nodes_.size(), 0.0);
  for (std::size_t n = 1; n < nodes_.size(); ++n) out[n] = integrate(n, values);
  return out;
}

}  // namespace hbfde
