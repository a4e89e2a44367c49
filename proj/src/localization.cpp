#include "lhy/localization.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "lhy/quadrature.hpp"
#include "lhy/scattering.hpp"

namespace lhy::localization {

namespace {
constexpr double pi = 3.14159265358979323846;

double snc(double x) {
  if (std::abs(x) < 1e-5) {
    double x2 = x * x;
    return 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
  }
  return std::sin(x) / x;
}

double golden_max(const std::function<double(double)>& f, double a, double b) {
  const double gr = 0.6180339887498949;
  double c = b - gr * (b - a), d = a + gr * (b - a);
  double fc = f(c), fd = f(d);
  for (int it = 0; it < 200 && (b - a) > 1e-13 * (std::abs(a) + std::abs(b) + 1.0); ++it) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - gr * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + gr * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}
}  // namespace

double theta_hat_1d(double t) { return snc(0.5 * t); }

double theta_hat_3d(const std::array<double, 3>& p) {
  return theta_hat_1d(p[0]) * theta_hat_1d(p[1]) * theta_hat_1d(p[2]);
}

LocalizationProfile::LocalizationProfile(int M) : M_(M) {
  if (M < 0) throw std::invalid_argument("LocalizationProfile: M must be >= 0");
  // Wallis: int_{-1/2}^{1/2} cos^{2n}(pi y) dy with n = M + 1.
  double J = 1.0;
  for (int n = 1; n <= M + 1; ++n) J *= (2.0 * n - 1.0) / (2.0 * n);
  moment_ = J;
  c_m_ = std::pow(moment_, -1.5);

  auto weights = [](int m) {
    std::vector<double> w(m + 1);
    double binom = 1.0;
    for (int j = 0; j <= m; ++j) {
      w[j] = binom * std::pow(0.5, m);
      binom *= double(m - j) / double(j + 1);
    }
    return w;
  };
  binom_g_ = weights(M + 1);
  binom_h_ = weights(2 * M + 2);

  auto q_axis = [this](double z) {
    z = std::abs(z);
    if (z >= 1.0) return 0.0;
    double lo = std::max(-0.5, z - 0.5), hi = 0.5;
    auto f = [this, z](double y) {
      return std::pow(zeta(y), M_ + 1) * std::pow(zeta(y - z), M_ + 1);
    };
    return quad::fixed_composite(f, lo, hi, 6);
  };
  auto grid = potentials::RadialFunction::clustered_grid(1.0, 1400);
  std::vector<double> vals(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) vals[i] = q_axis(grid[i]);
  conv_table_ = std::make_unique<potentials::RadialFunction>(std::move(grid), std::move(vals));
}

double LocalizationProfile::zeta(double y) const {
  return std::abs(y) <= 0.5 ? std::cos(pi * y) : 0.0;
}

double LocalizationProfile::chi_axis(double y) const {
  return std::pow(c_m_, 1.0 / 3.0) * std::pow(zeta(y), M_ + 1);
}

double LocalizationProfile::chi_sq_axis(double y) const {
  double c = chi_axis(y);
  return c * c;
}

double LocalizationProfile::chi(const std::array<double, 3>& x) const {
  return c_m_ * std::pow(zeta(x[0]) * zeta(x[1]) * zeta(x[2]), M_ + 1);
}

namespace {
double cos_power_hat(const std::vector<double>& w, double t) {
  // FT of cos^m(pi y) restricted to |y| <= 1/2: sum_j w_j sinc((pi(m-2j)-t)/2).
  const int m = static_cast<int>(w.size()) - 1;
  double total = 0.0;
  for (int j = 0; j <= m; ++j) total += w[j] * snc(0.5 * (pi * (m - 2 * j) - t));
  return total;
}
}  // namespace

double LocalizationProfile::axis_hat(double t) const { return cos_power_hat(binom_g_, t); }
double LocalizationProfile::axis_sq_hat(double t) const { return cos_power_hat(binom_h_, t); }

double LocalizationProfile::chi_hat(const std::array<double, 3>& p) const {
  return c_m_ * axis_hat(p[0]) * axis_hat(p[1]) * axis_hat(p[2]);
}

double LocalizationProfile::chi_sq_hat(const std::array<double, 3>& p) const {
  return c_m_ * c_m_ * axis_sq_hat(p[0]) * axis_sq_hat(p[1]) * axis_sq_hat(p[2]);
}

double LocalizationProfile::axis_conv(double z) const {
  z = std::abs(z);
  if (z >= 1.0) return 0.0;
  return (*conv_table_)(z);
}

double LocalizationProfile::chi_conv(const std::array<double, 3>& x) const {
  return c_m_ * c_m_ * axis_conv(x[0]) * axis_conv(x[1]) * axis_conv(x[2]);
}

double LocalizationProfile::spectral_tail(double cut, int n, int grid, double qmax) const {
  if (qmax <= 0.0) qmax = std::max(4.0 * cut, cut + 60.0);
  const double h = qmax / grid;
  std::vector<double> g2(grid);
  for (int i = 0; i < grid; ++i) {
    double q = (i + 0.5) * h;
    double g = axis_hat(q);
    g2[i] = g * g;
  }
  const double cut2 = cut * cut;
  double total = 0.0;
  for (int i = 0; i < grid; ++i) {
    double qi = (i + 0.5) * h, qi2 = qi * qi;
    for (int j = 0; j < grid; ++j) {
      double qj = (j + 0.5) * h, qij2 = qi2 + qj * qj;
      double gij = g2[i] * g2[j];
      double row = 0.0;
      for (int k = 0; k < grid; ++k) {
        double qk = (k + 0.5) * h;
        double q2 = qij2 + qk * qk;
        if (q2 <= cut2) continue;
        row += g2[k] * std::pow(q2, 0.5 * n);
      }
      total += gij * row;
    }
  }
  return 8.0 * total * h * h * h * c_m_ * c_m_;
}

PartitionResiduals partition_identity_residual(const LocalizationProfile& profile,
                                               const std::array<double, 3>& x,
                                               const std::array<double, 3>& y) {
  PartitionResiduals out;
  const int m2 = 2 * profile.M() + 2;
  double prod = 1.0;
  for (int i = 0; i < 3; ++i) {
    auto f = [&](double u) { return std::pow(profile.zeta(x[i] - u), m2); };
    prod *= quad::fixed_composite(f, x[i] - 0.5, x[i] + 0.5, 8);
  }
  out.partition = std::abs(profile.C_M() * profile.C_M() * prod - 1.0);

  std::array<double, 3> diff{x[0] - y[0], x[1] - y[1], x[2] - y[2]};
  double lhs = profile.chi_conv(diff);
  double rhs = 1.0;
  const int m1 = profile.M() + 1;
  for (int i = 0; i < 3; ++i) {
    double lo = std::max(x[i], y[i]) - 0.5, hi = std::min(x[i], y[i]) + 0.5;
    double piece = 0.0;
    if (hi > lo) {
      auto f = [&](double u) {
        return std::pow(profile.zeta(x[i] - u), m1) * std::pow(profile.zeta(y[i] - u), m1);
      };
      piece = quad::fixed_composite(f, lo, hi, 8);
    }
    rhs *= piece;
  }
  rhs *= profile.C_M() * profile.C_M();
  out.convolution = std::abs(lhs - rhs);
  return out;
}

double small_box_marginal_residual(const LocalizationProfile& profile,
                                   const std::array<double, 3>& x,
                                   const std::array<double, 3>& u, double ell, double d) {
  const int m2 = 2 * profile.M() + 2;
  double chi_u_sq = 1.0;
  for (int i = 0; i < 3; ++i) {
    double z = profile.zeta(x[i] / ell - u[i]);
    chi_u_sq *= std::pow(z, m2);
  }
  chi_u_sq *= profile.C_M() * profile.C_M();

  double marg = 1.0;
  for (int i = 0; i < 3; ++i) {
    double c = x[i] / (d * ell);
    auto f = [&](double up) { return std::pow(profile.zeta(c - up), m2); };
    marg *= quad::fixed_composite(f, c - 0.5, c + 0.5, 8);
  }
  marg *= profile.C_M() * profile.C_M();
  return std::abs(chi_u_sq * marg - chi_u_sq);
}

BoxGeometry BoxGeometry::big(const std::array<double, 3>& u, double ell) {
  if (ell <= 0.0) throw std::invalid_argument("BoxGeometry: ell must be > 0");
  BoxGeometry b;
  b.kind_ = BoxKind::Big;
  b.ell_ = ell;
  b.u_ = u;
  for (int i = 0; i < 3; ++i) {
    b.lo_[i] = ell * (u[i] - 0.5);
    b.hi_[i] = ell * (u[i] + 0.5);
  }
  return b;
}

BoxGeometry BoxGeometry::small(const std::array<double, 3>& u, const std::array<double, 3>& up,
                               double ell, double d) {
  if (ell <= 0.0 || d <= 0.0 || d > 1.0)
    throw std::invalid_argument("BoxGeometry: need ell > 0 and 0 < d <= 1");
  BoxGeometry b;
  b.kind_ = BoxKind::Small;
  b.ell_ = ell;
  b.d_ = d;
  b.u_ = u;
  b.up_ = up;
  for (int i = 0; i < 3; ++i) {
    b.lo_[i] = std::max(ell * (u[i] - 0.5), d * ell * (up[i] - 0.5));
    b.hi_[i] = std::min(ell * (u[i] + 0.5), d * ell * (up[i] + 0.5));
  }
  return b;
}

std::array<double, 3> BoxGeometry::side_lengths_sorted() const {
  std::array<double, 3> s{hi_[0] - lo_[0], hi_[1] - lo_[1], hi_[2] - lo_[2]};
  for (auto& v : s) v = std::max(v, 0.0);
  std::sort(s.begin(), s.end());
  return s;
}

double BoxGeometry::volume() const {
  double v = 1.0;
  for (int i = 0; i < 3; ++i) v *= std::max(hi_[i] - lo_[i], 0.0);
  return v;
}

bool BoxGeometry::empty() const { return volume() <= 0.0; }

LocalizedPotential::LocalizedPotential(const RadialPotential& v_R, const BoxGeometry& box,
                                       const LocalizationProfile& profile)
    : v_(v_R), box_(box), profile_(profile) {
  if (box_.empty()) throw std::invalid_argument("LocalizedPotential: empty box");
  for (int i = 0; i < 3; ++i) {
    double lo = box_.lo(i), hi = box_.hi(i);
    auto f = [this, i](double y) { return chi_B_axis(i, y); };
    double xm = golden_max(f, lo, hi);
    axis_max_[i] = f(xm);

    double lambda = hi - lo;
    auto corr_exact = [&](double z) {
      double a = std::max(lo, lo - z), b = std::min(hi, hi - z);
      if (b <= a) return 0.0;
      auto g = [&](double y) { return chi_B_axis(i, y + z) * chi_B_axis(i, y); };
      return quad::fixed_composite(g, a, b, 6);
    };
    auto grid = potentials::RadialFunction::clustered_grid(lambda, 1200);
    std::vector<double> vals(grid.size());
    for (std::size_t j = 0; j < grid.size(); ++j) vals[j] = corr_exact(grid[j]);
    corr_table_[i] =
        std::make_unique<potentials::RadialFunction>(std::move(grid), std::move(vals));
  }
  chi_sq_int_ = corr(0, 0.0) * corr(1, 0.0) * corr(2, 0.0);
}

double LocalizedPotential::chi_B_axis(int axis, double x) const {
  const int m = profile_.M() + 1;
  double z1 = profile_.zeta(x / box_.ell() - box_.u()[axis]);
  if (box_.kind() == BoxKind::Big)
    return std::pow(profile_.C_M(), 1.0 / 3.0) * std::pow(z1, m);
  double z2 = profile_.zeta(x / (box_.d() * box_.ell()) - box_.u_prime()[axis]);
  return std::pow(profile_.C_M(), 2.0 / 3.0) * std::pow(z1 * z2, m);
}

double LocalizedPotential::chi_B(const std::array<double, 3>& x) const {
  return chi_B_axis(0, x[0]) * chi_B_axis(1, x[1]) * chi_B_axis(2, x[2]);
}

double LocalizedPotential::chi_B_sq_integral() const { return chi_sq_int_; }

double LocalizedPotential::max_chi_B_sq() const {
  double m = axis_max_[0] * axis_max_[1] * axis_max_[2];
  return m * m;
}

double LocalizedPotential::corr(int axis, double z) const {
  z = std::abs(z);
  if (z >= box_.side(axis)) return 0.0;
  return (*corr_table_[axis])(z);
}

double LocalizedPotential::denominator(const std::array<double, 3>& x) const {
  const double ell = box_.ell();
  double den = profile_.chi_conv({x[0] / ell, x[1] / ell, x[2] / ell});
  if (box_.kind() == BoxKind::Small) {
    const double dl = box_.d() * ell;
    den *= profile_.chi_conv({x[0] / dl, x[1] / dl, x[2] / dl});
  }
  return den;
}

double LocalizedPotential::W(const std::array<double, 3>& x) const {
  double r = std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
  double num = v_(r);
  if (num == 0.0) return 0.0;
  double den = denominator(x);
  if (den <= 1e-300)
    throw std::runtime_error(
        "localized potential: (chi*chi) vanishes inside supp v_R (range exceeds the cutoff scale)");
  return num / den;
}

double LocalizedPotential::angular_average(double r, const std::array<double, 3>* shift,
                                            int order) const {
  std::vector<double> cx, cw;
  quad::gauss_legendre(order, cx, cw);
  int nphi = 2 * order;
  double sum = 0.0;
  for (int i = 0; i < order; ++i) {
    double c = cx[i], s = std::sqrt(std::max(0.0, 1.0 - c * c));
    double slice = 0.0;
    for (int j = 0; j < nphi; ++j) {
      double phi = 2.0 * pi * (j + 0.5) / nphi;
      std::array<double, 3> z{r * s * std::cos(phi), r * s * std::sin(phi), r * c};
      double val;
      if (shift) {
        std::array<double, 3> xz{(*shift)[0] - z[0], (*shift)[1] - z[1], (*shift)[2] - z[2]};
        val = chi_B(xz) / denominator(z);
      } else {
        val = corr(0, z[0]) * corr(1, z[1]) * corr(2, z[2]) / denominator(z);
      }
      slice += val;
    }
    sum += cw[i] * slice * (2.0 * pi / nphi);
  }
  return sum;
}

int LocalizedPotential::pick_angular_order(const std::array<double, 3>* shift,
                                           double rel_tol) const {
  // One order for the whole radial sweep keeps the radial integrand smooth.
  double r_probe = 0.5 * v_.range();
  double prev = angular_average(r_probe, shift, 8);
  for (int order = 16; order <= 64; order *= 2) {
    double cur = angular_average(r_probe, shift, order);
    if (std::abs(cur - prev) <= rel_tol * (std::abs(cur) + 1e-300)) return order;
    prev = cur;
  }
  return 64;
}

double LocalizedPotential::self_energy(double rel_tol) const {
  int order = pick_angular_order(nullptr, rel_tol);
  auto integrand = [&](double r) { return r * r * v_(r) * angular_average(r, nullptr, order); };
  double I = quad::fixed_composite(integrand, 0.0, v_.range(), 30);
  double vol = box_.volume();
  return 0.5 * I / (vol * vol);
}

double LocalizedPotential::row_integral(const std::array<double, 3>& x, int order) const {
  auto integrand = [&](double r) { return r * r * v_(r) * angular_average(r, &x, order); };
  double J = quad::fixed_composite(integrand, 0.0, v_.range(), 12);
  return chi_B(x) * J;
}

double LocalizedPotential::max_row_integral(int scan) const {
  std::array<double, 3> center{};
  for (int i = 0; i < 3; ++i) {
    auto f = [this, i](double y) { return chi_B_axis(i, y); };
    center[i] = golden_max(f, box_.lo(i), box_.hi(i));
  }
  const int order = pick_angular_order(&center, 1e-8);
  std::array<double, 3> best = center;
  double best_val = row_integral(best, order);
  for (int ix = 0; ix < scan; ++ix)
    for (int iy = 0; iy < scan; ++iy)
      for (int iz = 0; iz < scan; ++iz) {
        std::array<double, 3> x;
        std::array<int, 3> idx{ix, iy, iz};
        for (int i = 0; i < 3; ++i)
          x[i] = box_.lo(i) + (idx[i] + 0.5) * box_.side(i) / scan;
        double val = row_integral(x, order);
        if (val > best_val) {
          best_val = val;
          best = x;
        }
      }
  // one round of per-axis golden refinement around the best lattice point
  for (int i = 0; i < 3; ++i) {
    double half = box_.side(i) / scan;
    auto f = [&](double y) {
      std::array<double, 3> x = best;
      x[i] = y;
      return row_integral(x, order);
    };
    double lo = std::max(box_.lo(i), best[i] - half), hi = std::min(box_.hi(i), best[i] + half);
    double y = golden_max(f, lo, hi);
    best[i] = y;
    best_val = std::max(best_val, f(y));
  }
  return best_val;
}

SelfEnergyReport self_energy(const RadialPotential& v_R, const BoxGeometry& box,
                             const LocalizationProfile& profile, bool with_row_scan) {
  LocalizedPotential lp(v_R, box, profile);
  SelfEnergyReport rep;
  rep.U_B = lp.self_energy();
  rep.volume = box.volume();
  rep.chi_sq_integral = lp.chi_B_sq_integral();
  rep.max_chi_B_sq = lp.max_chi_B_sq();
  rep.scattering_length = scattering::scattering_length_ode(v_R, 1e-9).a;

  const double a = rep.scattering_length, R = v_R.range();
  auto lam = box.side_lengths_sorted();
  double prod_min = 1.0;
  for (double l : lam) prod_min *= std::min(l, R);
  double lower_ref = a / (rep.volume * R * R * R) * rep.max_chi_B_sq * prod_min;
  double upper_ref = a / (R * R * R) * rep.max_chi_B_sq;
  double volume_ref = a / rep.volume * rep.max_chi_B_sq;
  rep.c_lower = lower_ref > 0.0 ? rep.U_B / lower_ref : 0.0;
  rep.c_upper = upper_ref > 0.0 ? rep.U_B / upper_ref : 0.0;
  rep.c_volume = volume_ref > 0.0 ? rep.U_B / volume_ref : 0.0;
  if (with_row_scan) {
    double row = lp.max_row_integral();
    rep.c_row = rep.U_B > 0.0 ? row / (rep.volume * rep.U_B) : 0.0;
  }
  return rep;
}

SandwichReport sandwich_check(const LocalizedPotential& lp, int radial_samples) {
  SandwichReport rep;
  static const std::array<std::array<double, 3>, 7> dirs{
      {{1, 0, 0},
       {0, 1, 0},
       {0, 0, 1},
       {0.5773502691896258, 0.5773502691896258, 0.5773502691896258},
       {0.7071067811865475, 0.7071067811865475, 0},
       {0.7071067811865475, 0, 0.7071067811865475},
       {0.2672612419124244, 0.5345224838248488, 0.8017837257372732}}};
  const RadialPotential& v = lp.potential();
  const double R = v.range();
  const BoxGeometry& box = lp.box();
  const double scale_len = box.kind() == BoxKind::Big ? box.ell() : box.d() * box.ell();
  const double eps2 = (R / scale_len) * (R / scale_len);
  for (int i = 0; i <= radial_samples; ++i) {
    // stay strictly inside the support so v > 0 for the continuous families
    double r = R * (0.001 + 0.989 * i / radial_samples);
    double vr = v(r);
    if (vr <= 0.0) continue;
    for (const auto& dir : dirs) {
      std::array<double, 3> x{r * dir[0], r * dir[1], r * dir[2]};
      double ratio = lp.W(x) / vr;
      rep.max_ratio = std::max(rep.max_ratio, ratio);
      if (ratio < 1.0 - 1e-12) rep.lower_holds = false;
      rep.measured_C = std::max(rep.measured_C, (ratio - 1.0) / eps2);
    }
  }
  return rep;
}

}  // namespace lhy::localization
