#pragma once

#include <array>
#include <memory>
#include <vector>

#include "lhy/potentials.hpp"
#include "lhy/radial_function.hpp"

namespace lhy::localization {

using potentials::RadialPotential;

double theta_hat_1d(double t);                       // 2 sin(t/2)/t, theta_hat(0) = 1
double theta_hat_3d(const std::array<double, 3>& p); // prod_i theta_hat_1d(p_i)

// zeta(y) = cos(pi y) on |y| <= 1/2, chi(x) = C_M (zeta(x1) zeta(x2) zeta(x3))^{M+1},
// C_M fixed by int chi^2 = 1.  Per-axis transforms are closed forms (binomial
// expansion of cos powers), the 1D self-convolution is tabulated once.
class LocalizationProfile {
 public:
  explicit LocalizationProfile(int M);

  int M() const { return M_; }
  double C_M() const { return c_m_; }
  double axis_moment() const { return moment_; }  // int zeta^{2M+2} over one axis

  double zeta(double y) const;
  double chi(const std::array<double, 3>& x) const;
  double chi_axis(double y) const;   // C_M^{1/3} zeta(y)^{M+1}
  double chi_sq_axis(double y) const;

  // Per-axis Fourier transforms: g(t) = FT[zeta^{M+1}], h(t) = FT[zeta^{2M+2}].
  double axis_hat(double t) const;
  double axis_sq_hat(double t) const;
  double chi_hat(const std::array<double, 3>& p) const;     // C_M prod g(p_i)
  double chi_sq_hat(const std::array<double, 3>& p) const;  // C_M^2 prod h(p_i)

  // (zeta^{M+1} * zeta^{M+1})(z), tabulated; (chi*chi)(x) = C_M^2 prod conv(x_i).
  double axis_conv(double z) const;
  double chi_conv(const std::array<double, 3>& x) const;

  // int_{|q| > cut} |q|^n chihat(q)^2 dq by octant tensor quadrature.
  double spectral_tail(double cut, int n, int grid = 400, double qmax = 0.0) const;

 private:
  int M_;
  double moment_;
  double c_m_;
  std::vector<double> binom_g_, binom_h_;  // binomial weights for the transforms
  std::unique_ptr<potentials::RadialFunction> conv_table_;
};

struct PartitionResiduals {
  double partition = 0.0;    // | int chi_u^2(x) du - 1 |
  double convolution = 0.0;  // | (chi*chi)(x-y) - int chi(x-u) chi(y-u) du |
};

PartitionResiduals partition_identity_residual(const LocalizationProfile& profile,
                                               const std::array<double, 3>& x,
                                               const std::array<double, 3>& y);

// | int chi^2_{B(u,u')}(x) du' - chi^2_{B(u)}(x) |
double small_box_marginal_residual(const LocalizationProfile& profile,
                                   const std::array<double, 3>& x,
                                   const std::array<double, 3>& u, double ell, double d);

enum class BoxKind { Big, Small };

// B(u) = ell Gamma_u, or B(u,u') = B(u) cap (d ell) Gamma_{u'}.  Side lengths
// come from the per-axis interval intersection; the box may be a thin sliver.
class BoxGeometry {
 public:
  static BoxGeometry big(const std::array<double, 3>& u, double ell);
  static BoxGeometry small(const std::array<double, 3>& u, const std::array<double, 3>& up,
                           double ell, double d);

  BoxKind kind() const { return kind_; }
  double ell() const { return ell_; }
  double d() const { return d_; }
  const std::array<double, 3>& u() const { return u_; }
  const std::array<double, 3>& u_prime() const { return up_; }
  std::array<double, 3> side_lengths_sorted() const;  // lambda_1 <= lambda_2 <= lambda_3
  double side(int axis) const { return hi_[axis] - lo_[axis]; }
  double lo(int axis) const { return lo_[axis]; }
  double hi(int axis) const { return hi_[axis]; }
  double volume() const;
  bool empty() const;

 private:
  BoxKind kind_ = BoxKind::Big;
  double ell_ = 1.0, d_ = 1.0;
  std::array<double, 3> u_{}, up_{};
  std::array<double, 3> lo_{}, hi_{};
};

// chi_B and the localized potential machinery for one box.
class LocalizedPotential {
 public:
  LocalizedPotential(const RadialPotential& v_R, const BoxGeometry& box,
                     const LocalizationProfile& profile);

  double chi_B_axis(int axis, double x) const;
  double chi_B(const std::array<double, 3>& x) const;
  double chi_B_sq_integral() const;       // int chi_B^2
  double max_chi_B_sq() const;

  // W(x) = v_R(|x|) / (chi*chi)(x/ell) [ / (chi*chi)(x/(d ell)) on small boxes ].
  // Throws if a denominator vanishes inside supp v_R (range too large for the box).
  double W(const std::array<double, 3>& x) const;
  double denominator(const std::array<double, 3>& x) const;

  // U_B = (1/2)|B|^-2 iint w_B(x,y) dx dy, reduced to a radial x angular
  // quadrature against the per-axis chi_B autocorrelations.
  double self_energy(double rel_tol = 1e-10) const;

  // max_x int w_B(x, y) dy, scanned over a lattice of x with local refinement.
  double max_row_integral(int scan = 7) const;

  const BoxGeometry& box() const { return box_; }
  const RadialPotential& potential() const { return v_; }

 private:
  double corr(int axis, double z) const;  // int chi_{B,i}(y+z) chi_{B,i}(y) dy
  double angular_average(double r, const std::array<double, 3>* shift, int order) const;
  int pick_angular_order(const std::array<double, 3>* shift, double rel_tol) const;
  double row_integral(const std::array<double, 3>& x, int order) const;

  const RadialPotential v_;
  BoxGeometry box_;
  const LocalizationProfile& profile_;
  std::array<std::unique_ptr<potentials::RadialFunction>, 3> corr_table_;
  std::array<double, 3> axis_max_;  // per-axis max of chi_{B,i}
  double chi_sq_int_;
};

struct SelfEnergyReport {
  double U_B = 0.0;
  double volume = 0.0;
  double chi_sq_integral = 0.0;
  double max_chi_B_sq = 0.0;
  double scattering_length = 0.0;
  // Measured constants of the three self-energy bounds, each expected O(1).
  double c_row = 0.0;     // max_x int w_B dy / (|B| U_B)
  double c_lower = 0.0;   // U_B / [ a/(|B| R^3) max chi_B^2 prod min(lambda_j, R) ]
  double c_upper = 0.0;   // U_B / [ a/R^3 max chi_B^2 ]
  double c_volume = 0.0;  // U_B / [ a/|B| max chi_B^2 ]
};

SelfEnergyReport self_energy(const RadialPotential& v_R, const BoxGeometry& box,
                             const LocalizationProfile& profile, bool with_row_scan = true);

struct SandwichReport {
  bool lower_holds = true;      // v_R <= W pointwise on the sample
  double measured_C = 0.0;      // max (W/v_R - 1) / (R/ell)^2  (big box)
  double max_ratio = 1.0;       // max W / v_R
};

// Pointwise check of v_R <= W_b <= (1 + C (R/ell)^2) v_R on a radial x
// direction sample; reports the measured constant.
SandwichReport sandwich_check(const LocalizedPotential& lp, int radial_samples = 48);

}  // namespace lhy::localization
