#pragma once

#include <array>
#include <functional>
#include <vector>

#include "lhy/localization.hpp"

namespace lhy::multiplier {

using localization::LocalizationProfile;

// Per-axis transform pair for the localization weight: either the cos-power
// profile chi or the box indicator theta (the reduction chi = theta).
struct AxisTransforms {
  std::function<double(double)> hat;     // FT of the axis factor
  std::function<double(double)> sq_hat;  // FT of its square
  double norm = 1.0;                     // prefactor so chi_hat = norm * prod hat
};

AxisTransforms cos_profile_transforms(const LocalizationProfile& profile);
AxisTransforms indicator_transforms();

// Closed form for K == 1:
//   F(p) = int chi^2 - 2 theta_hat(p) (chi^2)^hat(p) + (int chi^2) theta_hat(p)^2,
// which reduces to 1 - theta_hat(p)^2 when chi = theta.
double multiplier_constant_kernel(const AxisTransforms& t, const std::array<double, 3>& p);

// F(p) on a periodic grid via the manifestly nonnegative form
//   F(p) = (2 pi)^-3 int K(q) (chi_hat(p - q) - theta_hat(p) chi_hat(q))^2 dq,
// expanded into two circular convolutions evaluated with FFTs.  The discrete
// sum keeps the perfect square, so grid values are >= 0 by construction and
// F(0) vanishes identically; truncation shows up in the aliasing diagnostic.
class MultiplierField {
 public:
  // n points per axis on [-Q, Q); reported values live on |p|_inf <= Q/2.
  MultiplierField(const AxisTransforms& t, const std::function<double(double)>& kernel,
                  int n, double Q);

  double Q() const { return Q_; }
  int n() const { return n_; }
  double spacing() const { return 2.0 * Q_ / n_; }
  double value_at_index(int i, int j, int k) const;  // wrap-around indices
  std::array<double, 3> p_at_index(int i, int j, int k) const;

  double value_origin() const { return value_at_index(0, 0, 0); }

  struct Scan {
    double min_value = 0.0;
    std::array<double, 3> min_location{};
    double max_value = 0.0;
  };
  // Scans the inner cube |p|_inf <= pmax (default Q/2) on an m^3 subsample.
  Scan scan_inner(int m = 64, double pmax = 0.0) const;

  double aliasing_tail() const { return aliasing_tail_; }  // chihat^2 mass beyond Q/2

 private:
  int n_;
  double Q_;
  double aliasing_tail_ = 0.0;
  std::vector<double> conv_K_chi2_;   // (K * chihat^2)(p) h^3
  std::vector<double> conv_chi_Kchi_; // (chihat * K chihat)(p) h^3
  double k_chi2_sum_ = 0.0;           // int K chihat^2 (discrete)
  std::size_t idx(int i, int j, int k) const;
};

// Direct quadrature of the square form at a single p; an independent route
// used to cross-check the FFT grid.
double multiplier_direct(const AxisTransforms& t, const std::function<double(double)>& kernel,
                         const std::array<double, 3>& p, double Q, int panels = 20,
                         int order = 8);

inline std::function<double(double)> gap_kernel(double s_inv) {
  return [s_inv](double q) {
    double u = q - s_inv;
    return u > 0.0 ? u * u : 0.0;
  };
}

struct FsCheckResult {
  bool quadratic_regime_ok = true;         // F(p) <= (|p| - 1/(2s))^2 for |p| >= (5/6)/s
  std::array<double, 3> first_violation{};
  double measured_C = 0.0;                 // smallest C with F(p) <= C s^{M-2} p^2 inside
  double max_F_over_bound = 0.0;           // quadratic regime: max F / (|p|-1/(2s))^2
};

// Checks the two-regime envelope F_s against the grid values (ell = 1).
FsCheckResult f_s_bound_check(const LocalizationProfile& profile, double s, int n = 128,
                              double Q = 0.0);

}  // namespace lhy::multiplier
