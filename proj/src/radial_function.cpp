#include "lhy/radial_function.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lhy::potentials {

namespace {
constexpr double pi = 3.14159265358979323846;
// 3-point Gauss-Legendre on [-1, 1]; exact through degree 5, enough for a
// cubic interpolant times s^2.
constexpr double gl_x[3] = {-0.7745966692414834, 0.0, 0.7745966692414834};
constexpr double gl_w[3] = {5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0};
}  // namespace

RadialFunction::RadialFunction(std::vector<double> grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  if (grid_.size() != values_.size() || grid_.size() < 4)
    throw std::invalid_argument("RadialFunction: need matching grids of size >= 4");
  for (std::size_t i = 1; i < grid_.size(); ++i)
    if (!(grid_[i] > grid_[i - 1]))
      throw std::invalid_argument("RadialFunction: grid must be strictly increasing");
  for (double v : values_)
    if (!std::isfinite(v)) throw std::invalid_argument("RadialFunction: non-finite value");
  build_slopes();
}

std::vector<double> RadialFunction::clustered_grid(double rmax, int n) {
  std::vector<double> g(n + 1);
  for (int i = 0; i <= n; ++i) g[i] = rmax * 0.5 * (1.0 - std::cos(pi * i / n));
  g[0] = 0.0;
  g[n] = rmax;
  return g;
}

RadialFunction RadialFunction::sample(const std::function<double(double)>& f, double rmax,
                                      int n) {
  auto g = clustered_grid(rmax, n);
  std::vector<double> v(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) v[i] = f(g[i]);
  return RadialFunction(std::move(g), std::move(v));
}

void RadialFunction::build_slopes() {
  const std::size_t n = grid_.size();
  slopes_.assign(n, 0.0);
  auto d = [&](std::size_t i) {
    return (values_[i + 1] - values_[i]) / (grid_[i + 1] - grid_[i]);
  };
  for (std::size_t i = 1; i + 1 < n; ++i) {
    double h0 = grid_[i] - grid_[i - 1], h1 = grid_[i + 1] - grid_[i];
    slopes_[i] = (h1 * d(i - 1) + h0 * d(i)) / (h0 + h1);
  }
  {
    double h0 = grid_[1] - grid_[0], h1 = grid_[2] - grid_[1];
    slopes_[0] = ((2.0 * h0 + h1) * d(0) - h0 * d(1)) / (h0 + h1);
    double hm = grid_[n - 1] - grid_[n - 2], hm1 = grid_[n - 2] - grid_[n - 3];
    slopes_[n - 1] = ((2.0 * hm + hm1) * d(n - 2) - hm * d(n - 3)) / (hm + hm1);
  }
}

double RadialFunction::operator()(double r) const {
  if (r <= grid_.front()) return values_.front();
  if (r >= grid_.back()) return values_.back();
  auto it = std::upper_bound(grid_.begin(), grid_.end(), r);
  std::size_t i = static_cast<std::size_t>(it - grid_.begin()) - 1;
  double h = grid_[i + 1] - grid_[i];
  double t = (r - grid_[i]) / h;
  double t2 = t * t, t3 = t2 * t;
  double h00 = 2 * t3 - 3 * t2 + 1, h10 = t3 - 2 * t2 + t;
  double h01 = -2 * t3 + 3 * t2, h11 = t3 - t2;
  return h00 * values_[i] + h * h10 * slopes_[i] + h01 * values_[i + 1] +
         h * h11 * slopes_[i + 1];
}

std::vector<double> RadialFunction::cumulative_r2() const {
  std::vector<double> out(grid_.size(), 0.0);
  for (std::size_t i = 0; i + 1 < grid_.size(); ++i) {
    double a = grid_[i], b = grid_[i + 1], mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double piece = 0.0;
    for (int q = 0; q < 3; ++q) {
      double s = mid + half * gl_x[q];
      piece += gl_w[q] * (*this)(s)*s * s;
    }
    out[i + 1] = out[i] + piece * half;
  }
  return out;
}

std::vector<double> RadialFunction::tail_r1() const {
  std::vector<double> out(grid_.size(), 0.0);
  for (std::size_t i = grid_.size() - 1; i-- > 0;) {
    double a = grid_[i], b = grid_[i + 1], mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double piece = 0.0;
    for (int q = 0; q < 3; ++q) {
      double s = mid + half * gl_x[q];
      piece += gl_w[q] * (*this)(s)*s;
    }
    out[i] = out[i + 1] + piece * half;
  }
  return out;
}

double RadialFunction::integral_weighted(int p) const {
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < grid_.size(); ++i) {
    double a = grid_[i], b = grid_[i + 1], mid = 0.5 * (a + b), half = 0.5 * (b - a);
    for (int q = 0; q < 3; ++q) {
      double s = mid + half * gl_x[q];
      double w = 1.0;
      for (int j = 0; j < p; ++j) w *= s;
      total += gl_w[q] * (*this)(s)*w * half;
    }
  }
  return total;
}

double RadialFunction::max_abs() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace lhy::potentials
