#pragma once

#include <complex>
#include <functional>
#include <stdexcept>

#include "lhy/localization.hpp"

namespace lhy::bogolubov {

// Parameters entering the localized kinetic multiplier tau_B.
struct TauParams {
  localization::BoxKind kind = localization::BoxKind::Big;
  double eps0 = 0.0;   // 0 <= eps0 <= 1/2
  double epsT = 0.0;   // 0 < epsT < 1 (big box only)
  double s = 0.1;
  double d = 0.1;
  double ell = 1.0;

  void validate() const {
    if (!(eps0 >= 0.0 && eps0 <= 0.5)) throw std::invalid_argument("TauParams: eps0 in [0, 1/2]");
    if (kind == localization::BoxKind::Big && !(epsT > 0.0 && epsT < 1.0))
      throw std::invalid_argument("TauParams: epsT in (0, 1)");
    if (!(s > 0.0 && s < 1.0) || !(d > 0.0 && d < 1.0))
      throw std::invalid_argument("TauParams: s, d in (0, 1)");
    if (!(ell > 0.0)) throw std::invalid_argument("TauParams: ell > 0");
  }
};

// Big box:   (1-eps0)[(1-epsT)(|k| - 1/(2 s ell))_+^2 + epsT (|k| - 1/(2 d s ell))_+^2]
// Small box: (1-eps0)(|k| - 1/(d s ell))_+^2
double tau_B(double k, const TauParams& params);

struct QuadraticCoefficients {
  double A = 0.0;
  double B = 0.0;
  std::complex<double> kappa{0.0, 0.0};
  bool valid = false;  // -A < B <= A
  bool low_momentum = false;  // |k| < 1/R, where What > 0 is guaranteed
};

// A = tau_B(k^2)/n + What(k)/|B|,  B = What(k)/|B|,
// kappa = sigma (n - rho |B|) What(k) |B|^{-3/2} chiB_hat(k).
QuadraticCoefficients coefficients(double k, double n, double volume, double rho,
                                   double W_hat, std::complex<double> chiB_hat, double sigma,
                                   const TauParams& params, double range_R);

// -(1/2)(A - sqrt(A^2 - B^2))(c+ + c-) - 2|kappa|^2/(A + B); requires -A < B <= A.
double bogolubov_lower_bound(const QuadraticCoefficients& c, double c_plus, double c_minus);

// Largest n/|B| (times a R^2) for which the pair bound stays usable on a scan
// of |k| >= 1/R; only existence of such a constant is guaranteed a priori.
double measure_validity_constant(double volume, double rho, double a, double range_R,
                                 const std::function<double(double)>& W_hat,
                                 const TauParams& params, int k_grid = 128);

// Integrand of the h_0 gap estimate:
//   -(tau/n + What/|B| - sqrt((tau/n)^2 + 2 tau What/(n|B|))) n0 int chi_B^2.
double h0_gap_integrand(double k, double n, double n0, double volume, double W_hat,
                        double chi_sq_integral, const TauParams& params);
// The parenthesis alone (must be >= 0 for valid inputs).
double h0_gap_parenthesis(double k, double n, double volume, double W_hat,
                          const TauParams& params);

// 4 pi int_0^inf (-k^2 - 1 + k^2 sqrt(1 + 2/k^2) + 1/(2 k^2)) k^2 dk
// = 32 pi sqrt(2) / 15, with the k^-2 tail of the integrand summed analytically.
struct LhyIntegral {
  double value = 0.0;
  double tail = 0.0;   // analytic tail beyond the quadrature cutoff
  double k_cut = 0.0;
};
LhyIntegral lhy_dimensionless_integral(double tol = 1e-9);

double lhy_energy(double rho, double a);                    // 4 pi rho^2 a (1 + c sqrt(rho a^3))
double e0_lower(double rho, double a, double a2);           // 4 pi rho^2 (a2 + c a sqrt(rho a^3))
double lhy_coefficient_value();                             // 128 / (15 sqrt(pi))

// sigma = 1 correction pair: the cancellation term sigma^2 (n - rho|B|)^2 U_B
// and the (R/ell)^{2M} spectral remainder scale (unspecified constant set to 1).
struct SigmaOneCorrection {
  double main_term = 0.0;
  double remainder = 0.0;
};
SigmaOneCorrection sigma_one_correction(double sigma, double n, double rho, double volume,
                                        double U_B, double a, double range_R, double ell,
                                        int M);

// Measured constants for the sqrt bounds 1 + x/2 - C x^2 <= sqrt(1+x) <= 1 + x/2.
struct SqrtBoundReport {
  double measured_C = 0.0;  // max (1 + x/2 - sqrt(1+x)) / x^2 on the grid
  bool upper_holds = true;  // sqrt(1+x) <= 1 + x/2
  bool taylor_lower_holds = true;  // sqrt(1+x) >= 1 + x/2 - x^2/8 for x >= 0
};
SqrtBoundReport sqrt_bound_check(double xmax = 10.0, int grid = 2000);

}  // namespace lhy::bogolubov
