#include "lhy/multiplier.hpp"

#include "lhy/quadrature.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <mutex>
#include <stdexcept>

namespace lhy::multiplier {

namespace {
constexpr double pi = 3.14159265358979323846;
constexpr double two_pi_cubed = 248.05021344239853;  // (2 pi)^3

double snc(double x) {
  if (std::abs(x) < 1e-5) {
    double x2 = x * x;
    return 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
  }
  return std::sin(x) / x;
}

double theta_hat3(const std::array<double, 3>& p) {
  return snc(0.5 * p[0]) * snc(0.5 * p[1]) * snc(0.5 * p[2]);
}

// Circular convolution of two real arrays on an n^3 grid via r2c/c2r FFTs.
std::vector<double> circular_convolve(const std::vector<double>& a,
                                      const std::vector<double>& b, int n) {
  // FFTW planning mutates global state; executions are thread-safe.
  static std::mutex planner_mutex;
  const std::size_t real_n = static_cast<std::size_t>(n) * n * n;
  const std::size_t spec_n = static_cast<std::size_t>(n) * n * (n / 2 + 1);
  std::vector<std::complex<double>> fa(spec_n), fb(spec_n);
  std::vector<double> work(real_n), out(real_n);

  fftw_plan plan_a, plan_b, plan_inv;
  {
    std::lock_guard<std::mutex> lock(planner_mutex);
    plan_a = fftw_plan_dft_r2c_3d(n, n, n, work.data(),
                                  reinterpret_cast<fftw_complex*>(fa.data()), FFTW_ESTIMATE);
    plan_b = fftw_plan_dft_r2c_3d(n, n, n, work.data(),
                                  reinterpret_cast<fftw_complex*>(fb.data()), FFTW_ESTIMATE);
    plan_inv = fftw_plan_dft_c2r_3d(n, n, n, reinterpret_cast<fftw_complex*>(fa.data()),
                                    out.data(), FFTW_ESTIMATE);
  }
  std::copy(a.begin(), a.end(), work.begin());
  fftw_execute(plan_a);
  std::copy(b.begin(), b.end(), work.begin());
  fftw_execute(plan_b);
  for (std::size_t i = 0; i < spec_n; ++i) fa[i] *= fb[i];
  fftw_execute(plan_inv);
  {
    std::lock_guard<std::mutex> lock(planner_mutex);
    fftw_destroy_plan(plan_a);
    fftw_destroy_plan(plan_b);
    fftw_destroy_plan(plan_inv);
  }
  const double scale = 1.0 / real_n;
  for (double& v : out) v *= scale;
  return out;
}
}  // namespace

AxisTransforms cos_profile_transforms(const LocalizationProfile& profile) {
  AxisTransforms t;
  t.hat = [&profile](double q) { return profile.axis_hat(q); };
  t.sq_hat = [&profile](double q) { return profile.axis_sq_hat(q); };
  t.norm = profile.C_M();
  return t;
}

AxisTransforms indicator_transforms() {
  AxisTransforms t;
  t.hat = [](double q) { return snc(0.5 * q); };
  t.sq_hat = [](double q) { return snc(0.5 * q); };  // theta^2 = theta
  t.norm = 1.0;
  return t;
}

double multiplier_constant_kernel(const AxisTransforms& t, const std::array<double, 3>& p) {
  // int chi^2 = 1 by normalization for both transform families.
  double th = theta_hat3(p);
  double chi2hat = t.norm * t.norm * t.sq_hat(p[0]) * t.sq_hat(p[1]) * t.sq_hat(p[2]);
  return 1.0 - 2.0 * th * chi2hat + th * th;
}

std::size_t MultiplierField::idx(int i, int j, int k) const {
  auto wrap = [this](int v) { return ((v % n_) + n_) % n_; };
  return (static_cast<std::size_t>(wrap(i)) * n_ + wrap(j)) * n_ + wrap(k);
}

std::array<double, 3> MultiplierField::p_at_index(int i, int j, int k) const {
  const double h = spacing();
  auto coord = [this, h](int v) {
    int w = ((v % n_) + n_) % n_;
    if (w >= n_ / 2) w -= n_;
    return w * h;
  };
  return {coord(i), coord(j), coord(k)};
}

MultiplierField::MultiplierField(const AxisTransforms& t,
                                 const std::function<double(double)>& kernel, int n, double Q)
    : n_(n), Q_(Q) {
  if (n < 16 || n % 2 != 0) throw std::invalid_argument("MultiplierField: n must be even, >= 16");
  if (Q <= 0.0) throw std::invalid_argument("MultiplierField: Q must be > 0");
  const double h = spacing();
  const std::size_t total = static_cast<std::size_t>(n) * n * n;

  // per-axis samples in wrap-around order
  std::vector<double> axis_q(n), axis_hat(n);
  for (int i = 0; i < n; ++i) {
    int w = i >= n / 2 ? i - n : i;
    axis_q[i] = w * h;
    axis_hat[i] = t.hat(axis_q[i]);
  }

  std::vector<double> Ka(total), chi2(total), chi(total), Kchi(total);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        std::size_t id = (static_cast<std::size_t>(i) * n + j) * n + k;
        double q = std::sqrt(axis_q[i] * axis_q[i] + axis_q[j] * axis_q[j] +
                             axis_q[k] * axis_q[k]);
        double ch = t.norm * axis_hat[i] * axis_hat[j] * axis_hat[k];
        double K = kernel(q);
        Ka[id] = K;
        chi[id] = ch;
        chi2[id] = ch * ch;
        Kchi[id] = K * ch;
      }

  // aliasing diagnostic: chihat^2 mass outside |q|_inf <= Q/2, separable
  {
    double inner = 0.0, totalm = 0.0;
    for (int i = 0; i < n; ++i) {
      double g2 = axis_hat[i] * axis_hat[i] * h;
      totalm += g2;
      if (std::abs(axis_q[i]) <= 0.5 * Q) inner += g2;
    }
    double tot3 = totalm * totalm * totalm;
    aliasing_tail_ = tot3 > 0.0 ? (tot3 - inner * inner * inner) / tot3 : 0.0;
  }

  double s = 0.0;
  for (std::size_t i = 0; i < total; ++i) s += Ka[i] * chi2[i];
  k_chi2_sum_ = s * h * h * h;

  conv_K_chi2_ = circular_convolve(Ka, chi2, n);
  conv_chi_Kchi_ = circular_convolve(chi, Kchi, n);
  const double h3 = h * h * h;
  for (auto& v : conv_K_chi2_) v *= h3;
  for (auto& v : conv_chi_Kchi_) v *= h3;
}

double MultiplierField::value_at_index(int i, int j, int k) const {
  std::size_t id = idx(i, j, k);
  auto p = p_at_index(i, j, k);
  double th = theta_hat3(p);
  double F = conv_K_chi2_[id] - 2.0 * th * conv_chi_Kchi_[id] + k_chi2_sum_ * th * th;
  return F / two_pi_cubed;
}

MultiplierField::Scan MultiplierField::scan_inner(int m, double pmax) const {
  if (pmax <= 0.0) pmax = 0.5 * Q_;
  const double h = spacing();
  int imax = static_cast<int>(pmax / h);
  int stride = std::max(1, (2 * imax + 1) / m);
  Scan sc;
  bool first = true;
  for (int i = -imax; i <= imax; i += stride)
    for (int j = -imax; j <= imax; j += stride)
      for (int k = -imax; k <= imax; k += stride) {
        double v = value_at_index(i, j, k);
        if (first || v < sc.min_value) {
          sc.min_value = v;
          sc.min_location = p_at_index(i, j, k);
        }
        if (first || v > sc.max_value) sc.max_value = v;
        first = false;
      }
  return sc;
}

double multiplier_direct(const AxisTransforms& t, const std::function<double(double)>& kernel,
                         const std::array<double, 3>& p, double Q, int panels, int order) {
  // Gauss-Legendre tensor panels for
  // (2 pi)^-3 int K(q) (chihat(p-q) - theta_hat(p) chihat(q))^2 dq.
  std::vector<double> gx, gw;
  quad::gauss_legendre(order, gx, gw);
  std::vector<double> nodes, weights;
  const double hp = 2.0 * Q / panels;
  for (int s = 0; s < panels; ++s) {
    double a = -Q + s * hp, mid = a + 0.5 * hp;
    for (int i = 0; i < order; ++i) {
      nodes.push_back(mid + 0.5 * hp * gx[i]);
      weights.push_back(0.5 * hp * gw[i]);
    }
  }
  const int N = static_cast<int>(nodes.size());
  std::vector<double> hat_q(N), hat_pq0(N), hat_pq1(N), hat_pq2(N);
  for (int i = 0; i < N; ++i) {
    hat_q[i] = t.hat(nodes[i]);
    hat_pq0[i] = t.hat(p[0] - nodes[i]);
    hat_pq1[i] = t.hat(p[1] - nodes[i]);
    hat_pq2[i] = t.hat(p[2] - nodes[i]);
  }
  double th = theta_hat3(p);
  double total = 0.0;
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) {
      double wij = weights[i] * weights[j];
      double qij = nodes[i] * nodes[i] + nodes[j] * nodes[j];
      double row = 0.0;
      for (int k = 0; k < N; ++k) {
        double q = std::sqrt(qij + nodes[k] * nodes[k]);
        double K = kernel(q);
        if (K == 0.0) continue;
        double chi_pq = t.norm * hat_pq0[i] * hat_pq1[j] * hat_pq2[k];
        double chi_q = t.norm * hat_q[i] * hat_q[j] * hat_q[k];
        double diff = chi_pq - th * chi_q;
        row += weights[k] * K * diff * diff;
      }
      total += wij * row;
    }
  return total / two_pi_cubed;
}

FsCheckResult f_s_bound_check(const LocalizationProfile& profile, double s, int n, double Q) {
  if (s <= 0.0) throw std::invalid_argument("f_s_bound_check: s must be > 0");
  const double s_inv = 1.0 / s;
  if (Q <= 0.0) Q = 4.0 * s_inv;
  AxisTransforms t = cos_profile_transforms(profile);
  MultiplierField field(t, gap_kernel(s_inv), n, Q);

  FsCheckResult out;
  const double h = field.spacing();
  const int imax = static_cast<int>((0.5 * Q) / h);
  const double sM2 = std::pow(s, profile.M() - 2);
  for (int i = -imax; i <= imax; ++i)
    for (int j = -imax; j <= imax; ++j)
      for (int k = -imax; k <= imax; ++k) {
        auto p = field.p_at_index(i, j, k);
        double pn = std::sqrt(p[0] * p[0] + p[1] * p[1] + p[2] * p[2]);
        if (pn > 0.5 * Q) continue;
        double F = field.value_at_index(i, j, k);
        if (pn >= (5.0 / 6.0) * s_inv) {
          double bound = (pn - 0.5 * s_inv) * (pn - 0.5 * s_inv);
          double ratio = F / bound;
          out.max_F_over_bound = std::max(out.max_F_over_bound, ratio);
          if (F > bound * (1.0 + 1e-9) && out.quadratic_regime_ok) {
            out.quadratic_regime_ok = false;
            out.first_violation = p;
          }
        } else if (pn > 0.0) {
          out.measured_C = std::max(out.measured_C, F / (sM2 * pn * pn));
        }
      }
  return out;
}

}  // namespace lhy::multiplier
