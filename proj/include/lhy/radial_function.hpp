#pragma once

#include <functional>
#include <vector>

namespace lhy::potentials {

// Tabulated radial function on a strictly increasing grid with piecewise
// cubic Hermite interpolation.  The default grid clusters nodes at both ends
// of [0, rmax]; the iterated Born kernels have their structure there.
class RadialFunction {
 public:
  RadialFunction(std::vector<double> grid, std::vector<double> values);

  static std::vector<double> clustered_grid(double rmax, int n);
  static RadialFunction sample(const std::function<double(double)>& f, double rmax, int n);

  double operator()(double r) const;
  const std::vector<double>& grid() const { return grid_; }
  const std::vector<double>& values() const { return values_; }
  double rmax() const { return grid_.back(); }

  // int_0^r f(s) s^2 ds and int_r^rmax f(s) s ds at every grid node,
  // integrating the interpolant exactly per interval.
  std::vector<double> cumulative_r2() const;
  std::vector<double> tail_r1() const;

  // int f(s) s^p ds over the whole grid, p in {0, 1, 2}.
  double integral_weighted(int p) const;

  double max_abs() const;

 private:
  void build_slopes();
  std::vector<double> grid_, values_, slopes_;
};

}  // namespace lhy::potentials
