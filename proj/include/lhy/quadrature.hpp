#pragma once

#include <functional>
#include <vector>

namespace lhy::quad {

struct Result {
  double value = 0.0;
  double error = 0.0;  // estimated absolute error
  bool converged = true;
};

// Adaptive Gauss-Kronrod on [a, b].
Result integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol = 1e-10, int max_depth = 15);

// Same, but the interval is pre-split at the given interior breakpoints.
Result integrate_split(const std::function<double(double)>& f, double a, double b,
                       const std::vector<double>& breaks, double abs_tol = 1e-10);

// Gauss-Legendre nodes/weights on [-1, 1].
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w);

// Non-adaptive composite Gauss-Legendre(24); for smooth integrands whose
// values span many orders of magnitude, where relative-error chasing in the
// adaptive scheme is wasted effort.
double fixed_composite(const std::function<double(double)>& f, double a, double b,
                       int panels = 6);

// Oscillatory radial Fourier integral 4*pi * int_0^rmax r sin(kr)/k f(r) dr,
// split at the zeros of sin(kr).  k = 0 falls back to 4*pi * int r^2 f.
Result fourier_radial(const std::function<double(double)>& f, double rmax, double k,
                      double abs_tol = 1e-10);

}  // namespace lhy::quad
