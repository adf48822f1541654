#pragma once

#include <span>
#include <vector>

namespace hbfde {

/// Samples of a scalar function on a strictly increasing grid starting at 0.
/// Point evaluation interpolates linearly in the grid variable.
class SampledFunction {
 public:
  SampledFunction() = default;
  /// Throws ContractError unless grid is strictly increasing from 0, sizes match
  /// and every value is finite.
  SampledFunction(std::vector<double> grid, std::vector<double> values);

  template <class F>
  static SampledFunction sample(std::vector<double> grid, F&& f) {
    std::vector<double> values;
    values.reserve(grid.size());
    for (double t : grid) values.push_back(f(t));
    return SampledFunction(std::move(grid), std::move(values));
  }

  std::span<const double> grid() const { return grid_; }
  std::span<const double> values() const { return values_; }
  std::size_t size() const { return grid_.size(); }
  double front() const { return values_.front(); }
  double back_time() const { return grid_.back(); }

  /// Linear interpolation; throws RangeError outside [0, back_time()].
  double at(double t) const;

 private:
  std::vector<double> grid_;
  std::vector<double> values_;
};

/// Grid on [0, T] whose image under t -> t^rho is s_j = T^rho (j/N)^grading.
/// grading = 1 gives the default grid uniform in s. The last node is T exactly.
std::vector<double> power_grid(double T, int intervals, double rho, double grading = 1.0);

/// Uniform grid with `intervals` cells on [a, b].
std::vector<double> uniform_grid(double a, double b, int intervals);

/// True when consecutive spacings agree to a relative 1e-10.
bool is_uniform(std::span<const double> nodes);

}  // namespace hbfde
