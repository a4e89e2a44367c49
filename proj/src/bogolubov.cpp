#include "lhy/bogolubov.hpp"

#include <cmath>

#include "lhy/quadrature.hpp"

namespace lhy::bogolubov {

namespace {
constexpr double pi = 3.14159265358979323846;

double positive_part_sq(double u) { return u > 0.0 ? u * u : 0.0; }
}  // namespace

double tau_B(double k, const TauParams& p) {
  k = std::abs(k);
  const double sl = p.s * p.ell, dsl = p.d * p.s * p.ell;
  if (p.kind == localization::BoxKind::Big) {
    return (1.0 - p.eps0) * ((1.0 - p.epsT) * positive_part_sq(k - 0.5 / sl) +
                             p.epsT * positive_part_sq(k - 0.5 / dsl));
  }
  return (1.0 - p.eps0) * positive_part_sq(k - 1.0 / dsl);
}

QuadraticCoefficients coefficients(double k, double n, double volume, double rho,
                                   double W_hat, std::complex<double> chiB_hat, double sigma,
                                   const TauParams& params, double range_R) {
  if (n < 1.0) throw std::invalid_argument("coefficients: n must be >= 1");
  params.validate();
  QuadraticCoefficients c;
  double tau = tau_B(k, params);
  c.A = tau / n + W_hat / volume;
  c.B = W_hat / volume;
  c.kappa = sigma * (n - rho * volume) * W_hat * std::pow(volume, -1.5) * chiB_hat;
  c.low_momentum = std::abs(k) < 1.0 / range_R;
  c.valid = (-c.A < c.B) && (c.B <= c.A);
  return c;
}

double bogolubov_lower_bound(const QuadraticCoefficients& c, double c_plus, double c_minus) {
  // kappa = 0 admits the closed boundary |B| = A (replace b by i b).
  bool open_ok = (-c.A < c.B) && (c.B <= c.A);
  bool closed_ok = std::norm(c.kappa) == 0.0 && std::abs(c.B) <= c.A;
  if (!open_ok && !closed_ok)
    throw std::invalid_argument("bogolubov_lower_bound: requires -A < B <= A");
  if (c_plus < 0.0 || c_minus < 0.0)
    throw std::invalid_argument("bogolubov_lower_bound: commutator bounds must be >= 0");
  double disc = std::max(0.0, c.A * c.A - c.B * c.B);
  double gap_term = -0.5 * (c.A - std::sqrt(disc)) * (c_plus + c_minus);
  double kappa2 = std::norm(c.kappa);
  double linear_term = kappa2 > 0.0 ? -2.0 * kappa2 / (c.A + c.B) : 0.0;
  return gap_term + linear_term;
}

double measure_validity_constant(double volume, double rho, double a, double range_R,
                                 const std::function<double(double)>& W_hat,
                                 const TauParams& params, int k_grid) {
  params.validate();
  // Scan densities upward until -A < |B| <= A first fails at some |k| >= 1/R.
  double lo = 0.0, hi = 1.0 / (a * range_R * range_R);
  auto admissible = [&](double n_over_V) {
    double n = n_over_V * volume;
    if (n < 1.0) n = 1.0;
    for (int i = 0; i <= k_grid; ++i) {
      double k = (1.0 + 9.0 * i / k_grid) / range_R;  // |k| in [1/R, 10/R]
      double w = W_hat(k);
      double A = tau_B(k, params) / n + w / volume;
      double B = w / volume;
      // the usable form of the pair bound needs A + B >= 2|B|
      if (!(A + B >= 2.0 * std::abs(B))) return false;
    }
    return true;
  };
  // grow hi until failure (or give up at a large multiple)
  double scale = hi;
  while (admissible(hi) && hi < 1e6 * scale) hi *= 2.0;
  if (hi >= 1e6 * scale) return hi * a * range_R * range_R;  // never failed; report the cap
  lo = hi / 2.0;
  for (int it = 0; it < 60; ++it) {
    double mid = 0.5 * (lo + hi);
    (admissible(mid) ? lo : hi) = mid;
  }
  (void)rho;
  return lo * a * range_R * range_R;  // the measured c in n|B|^-1 <= c/(a R^2)
}

double h0_gap_parenthesis(double k, double n, double volume, double W_hat,
                          const TauParams& params) {
  double t = tau_B(k, params) / n;
  double w = W_hat / volume;
  double rad = t * t + 2.0 * t * w;
  if (rad < 0.0) throw std::invalid_argument("h0_gap_parenthesis: negative discriminant");
  return t + w - std::sqrt(rad);
}

double h0_gap_integrand(double k, double n, double n0, double volume, double W_hat,
                        double chi_sq_integral, const TauParams& params) {
  return -h0_gap_parenthesis(k, n, volume, W_hat, params) * n0 * chi_sq_integral;
}

LhyIntegral lhy_dimensionless_integral(double tol) {
  if (tol <= 0.0) throw std::invalid_argument("lhy_dimensionless_integral: tol must be > 0");
  LhyIntegral out;
  // Cancellation-free integrand: with x = 2/k^2 and
  // eps = x/(sqrt(1+x)+1) + x/2, the integrand k^2 f(k) equals eps/(2(2+eps)).
  auto f = [](double k) {
    if (k <= 0.0) return 0.5;  // limit of k^2 f(k) as k -> 0
    double x = 2.0 / (k * k);
    double eps = x / (std::sqrt(1.0 + x) + 1.0) + 0.5 * x;
    return eps / (2.0 * (2.0 + eps));
  };
  const double kcut = 60.0;
  out.k_cut = kcut;
  quad::Result main = quad::integrate(f, 0.0, kcut, tol * 0.01);
  if (!main.converged) throw std::runtime_error("lhy integral: quadrature did not converge");
  // k^2 f(k) = 1/(2 k^2) - 5/(8 k^4) + 7/(8 k^6) + O(k^-8); integrate the tail.
  out.tail = 0.5 / kcut - 5.0 / (24.0 * kcut * kcut * kcut) +
             7.0 / (40.0 * std::pow(kcut, 5));
  out.value = 4.0 * pi * (main.value + out.tail);
  return out;
}

double lhy_coefficient_value() { return 128.0 / (15.0 * std::sqrt(pi)); }

double lhy_energy(double rho, double a) {
  if (rho <= 0.0 || a <= 0.0) throw std::invalid_argument("lhy_energy: rho, a must be > 0");
  double x = rho * a * a * a;
  return 4.0 * pi * rho * rho * a * (1.0 + lhy_coefficient_value() * std::sqrt(x));
}

double e0_lower(double rho, double a, double a2) {
  if (rho <= 0.0 || a <= 0.0) throw std::invalid_argument("e0_lower: rho, a must be > 0");
  double x = rho * a * a * a;
  return 4.0 * pi * rho * rho * (a2 + lhy_coefficient_value() * a * std::sqrt(x));
}

SigmaOneCorrection sigma_one_correction(double sigma, double n, double rho, double volume,
                                        double U_B, double a, double range_R, double ell,
                                        int M) {
  SigmaOneCorrection out;
  double dev = n - rho * volume;
  out.main_term = sigma * sigma * dev * dev * U_B;
  out.remainder = sigma * sigma * dev * dev * a / volume * std::pow(range_R / ell, 2 * M);
  return out;
}

SqrtBoundReport sqrt_bound_check(double xmax, int grid) {
  SqrtBoundReport rep;
  for (int i = 1; i <= grid; ++i) {
    double x = xmax * i / grid;
    double s = std::sqrt(1.0 + x);
    double upper = 1.0 + 0.5 * x;
    double taylor = 1.0 + 0.5 * x - x * x / 8.0;
    if (s > upper * (1.0 + 1e-15)) rep.upper_holds = false;
    if (s < taylor * (1.0 - 1e-15)) rep.taylor_lower_holds = false;
    rep.measured_C = std::max(rep.measured_C, (upper - s) / (x * x));
  }
  return rep;
}

}  // namespace lhy::bogolubov
