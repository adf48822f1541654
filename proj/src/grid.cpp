#include "hbfde/grid.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hbfde/errors.hpp"

namespace hbfde {

SampledFunction::SampledFunction(std::vector<double> grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  if (grid_.empty()) throw ContractError("SampledFunction: empty grid");
  if (grid_.size() != values_.size()) throw ContractError("SampledFunction: grid and values differ in length");
  if (grid_.front() != 0.0) throw ContractError("SampledFunction: grid must start at 0");
  for (std::size_t i = 1; i < grid_.size(); ++i) {
    if (!(grid_[i] > grid_[i - 1])) throw ContractError("SampledFunction: grid must be strictly increasing");
  }
  for (double v : values_) {
    if (!std::isfinite(v)) throw ContractError("SampledFunction: non-finite sample");
  }
}

double SampledFunction::at(double t) const {
  if (!(t >= 0.0 && t <= grid_.back())) {
    std::ostringstream os;
    os << "SampledFunction: t = " << t << " outside [0, " << grid_.back() << "]";
    throw RangeError(os.str());
  }
  if (grid_.size() == 1) return values_.front();
  const auto it = std::upper_bound(grid_.begin(), grid_.end(), t);
  if (it == grid_.end()) return values_.back();
  const auto j = static_cast<std::size_t>(it - grid_.begin());
  const double t0 = grid_[j - 1];
  const double t1 = grid_[j];
  const double w = (t - t0) / (t1 - t0);
  return (1.0 - w) * values_[j - 1] + w * values_[j];
}

std::vector<double> power_grid(double T, int intervals, double rho, double grading) {
  if (!(T > 0.0)) throw ContractError("power_grid: T must be positive");
  if (intervals < 1) throw ContractError("power_grid: need at least one interval");
  if (!(rho > 0.0)) throw ContractError("power_grid: rho must be positive");
  if (!(grading >= 1.0)) throw ContractError("power_grid: grading exponent must be >= 1");
  std::vector<double> t(static_cast<std::size_t>(intervals) + 1);
  const double s_end = std::pow(T, rho);
  for (int j = 0; j <= intervals; ++j) {
    const double frac = static_cast<double>(j) / intervals;
    const double s = s_end * std::pow(frac, grading);
    t[static_cast<std::size_t>(j)] = std::pow(s, 1.0 / rho);
  }
  t.back() = T;
  return t;
}

std::vector<double> uniform_grid(double a, double b, int intervals) {
  if (intervals < 1) throw ContractError("uniform_grid: need at least one interval");
  if (!(b > a)) throw ContractError("uniform_grid: empty interval");
  std::vector<double> x(static_cast<std::size_t>(intervals) + 1);
  for (int i = 0; i <= intervals; ++i) {
    x[static_cast<std::size_t>(i)] = a + (b - a) * static_cast<double>(i) / intervals;
  }
  x.back() = b;
  return x;
}

bool is_uniform(std::span<const double> nodes) {
  if (nodes.size() < 3) return true;
  const double h = (nodes.back() - nodes.front()) / static_cast<double>(nodes.size() - 1);
  for (std::size_t i = 1; i < nodes.size(); ++i) {
    if (std::abs((nodes[i] - nodes[i - 1]) - h) > 1e-10 * h) return false;
  }
  return true;
}

}  // namespace hbfde
