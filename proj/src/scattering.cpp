#include "lhy/scattering.hpp"

#include <boost/numeric/odeint.hpp>
#include <cmath>
#include <stdexcept>

namespace lhy::scattering {

namespace {
constexpr double pi = 3.14159265358979323846;

using State = std::array<double, 2>;  // (u, u')

// Integrates u'' = (1/2) w u from r0 to r1 with adaptive RK, rescaling the
// pair (u, u') when it grows; a = r - u/u' is invariant under rescaling, so
// hard-sphere-like amplitudes do not overflow.  The effective potential w is
// passed per segment so that no step straddles the jump at the range.
void integrate_segment(const std::function<double(double)>& w, double r0, double r1,
                       State& s, double tol) {
  namespace ode = boost::numeric::odeint;
  auto rhs = [&w](const State& y, State& dy, double r) {
    dy[0] = y[1];
    dy[1] = 0.5 * w(r) * y[0];
  };
  auto stepper = ode::make_controlled<ode::runge_kutta_cash_karp54<State>>(tol, tol);
  double r = r0;
  double dr = (r1 - r0) / 64.0;
  int rejects = 0;
  const double span = r1 - r0;
  while (r1 - r > 1e-14 * span) {
    double step = std::min(dr, r1 - r);
    auto res = stepper.try_step(rhs, s, r, step);
    if (res == ode::fail) {
      dr = step;  // the stepper reduced it
      if (++rejects > 10000 || step < 1e-14 * span)
        throw std::runtime_error("scattering ODE: step-size underflow");
      continue;
    }
    rejects = 0;
    dr = step;  // suggested next step
    double m = std::max(std::abs(s[0]), std::abs(s[1]));
    if (m > 1e100) {
      s[0] /= m;
      s[1] /= m;
    }
  }
}

double a_from_state(double r, const State& s) {
  if (s[1] == 0.0) throw std::runtime_error("scattering ODE: u' vanished at match point");
  return r - s[0] / s[1];
}
}  // namespace

ScatteringResult scattering_length_ode(const RadialPotential& v, double tol) {
  if (tol <= 0.0) throw std::invalid_argument("scattering_length_ode: tol must be > 0");
  ScatteringResult out;
  const double R0 = v.range();
  out.r_match = 1.5 * R0;

  // u(0) = 0, u'(0) = 1.  Interior and exterior are integrated with the
  // branch-restricted potential, so no evaluation lands on the wrong side of
  // the range discontinuity.
  State s{0.0, 1.0};
  auto inside = [&v, R0](double r) { return v(std::min(r, R0)); };
  auto outside = [&v, R0](double r) { return r > R0 ? v(r) : 0.0; };

  // Checkpoints across [R0, 2 R0]; u is exactly linear there, so the spread
  // of a over the checkpoints is an integration-error diagnostic.
  std::vector<double> checkpoints;
  for (int j = 0; j <= 8; ++j) checkpoints.push_back(R0 + j * R0 / 8.0);

  double amin = 0.0, amax = 0.0, amatch = 0.0;
  double prev = 0.0;
  bool first = true;
  for (double rc : checkpoints) {
    integrate_segment(first ? std::function<double(double)>(inside)
                            : std::function<double(double)>(outside),
                      prev, rc, s, tol * 1e-2);
    prev = rc;
    double a = a_from_state(rc, s);
    if (first) {
      amin = amax = a;
      first = false;
    } else {
      amin = std::min(amin, a);
      amax = std::max(amax, a);
    }
    if (std::abs(rc - out.r_match) < 1e-12 * R0) amatch = a;
  }
  // r_match = 1.5 R0 is the 5th checkpoint (j = 4).
  out.a = amatch;
  out.ode_residual = amax - amin;
  if (!(out.ode_residual < tol))
    throw std::runtime_error("scattering ODE: residual exceeds tolerance");
  return out;
}

double newton_potential(const RadialFunction& g, double r) {
  auto c2 = g.cumulative_r2();
  auto t1 = g.tail_r1();
  const auto& grid = g.grid();
  // interpolate the cumulative integrals linearly between nodes with a local
  // correction; nodes are dense, tests bound the residual.
  if (r <= 0.0) return 4.0 * pi * t1.front();
  if (r >= grid.back()) return 4.0 * pi * c2.back() / r;
  auto it = std::upper_bound(grid.begin(), grid.end(), r);
  std::size_t i = static_cast<std::size_t>(it - grid.begin()) - 1;
  double h = grid[i + 1] - grid[i], t = (r - grid[i]) / h;
  double c2r = c2[i] + t * (c2[i + 1] - c2[i]);
  double t1r = t1[i] + t * (t1[i + 1] - t1[i]);
  return 4.0 * pi * (c2r / r + t1r);
}

RadialFunction newton_kernel_apply(const RadialPotential& v, const RadialFunction& g) {
  auto c2 = g.cumulative_r2();
  auto t1 = g.tail_r1();
  const auto& grid = g.grid();
  std::vector<double> out(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    double r = grid[i];
    double newton = (r > 0.0) ? 4.0 * pi * (c2[i] / r + t1[i]) : 4.0 * pi * t1[i];
    out[i] = v(r) * newton;
  }
  return RadialFunction(grid, std::move(out));
}

ScatteringResult born_terms(const RadialPotential& v, int K, int grid_n) {
  if (K < 1) throw std::invalid_argument("born_terms: K must be >= 1");
  ScatteringResult out;
  out.born_terms.reserve(K);

  // a_1 from quadrature of v itself.
  out.born_terms.push_back(v.integral() / (8.0 * pi));

  // Iterated kernels live on [0, R0] because the v(x) prefactor truncates.
  RadialFunction g = RadialFunction::sample([&](double r) { return v(r); }, v.range(), grid_n);
  double inv8pi = 1.0 / (8.0 * pi);
  double growth_streak = 0;
  double prev_norm = g.integral_weighted(2) * 4.0 * pi;  // ||g||_1 seed
  for (int k = 2; k <= K; ++k) {
    g = newton_kernel_apply(v, g);
    double integral = 4.0 * pi * g.integral_weighted(2);
    double sign = (k % 2 == 0) ? -1.0 : 1.0;  // -(-8 pi)^-k
    double scale = std::pow(inv8pi, k);
    out.born_terms.push_back(sign * scale * integral);
    double norm = std::abs(integral) * scale;
    if (norm > prev_norm) {
      if (++growth_streak >= 3) out.born_diverged = true;
    } else {
      growth_streak = 0;
    }
    prev_norm = norm;
  }
  for (double t : out.born_terms) out.born_sum += t;
  for (std::size_t k = 0; k + 1 < out.born_terms.size(); ++k) {
    double d = std::abs(out.born_terms[k]);
    out.born_ratios.push_back(d > 0.0 ? std::abs(out.born_terms[k + 1]) / d : 0.0);
  }
  return out;
}

A2Fourier a2_fourier(const RadialPotential& v, double abs_tol) {
  A2Fourier out;
  const double R = v.range();
  // Integrand vhat(k)^2 decays like k^-4 (worst case, discontinuous family);
  // integrate over oscillation periods then extrapolate the envelope tail.
  const double kcut = 120.0 / R;
  auto f = [&](double k) {
    double w = v.fourier(k, abs_tol * 1e-2).value;
    return w * w;
  };
  std::vector<double> breaks;
  for (double z = pi / R; z < kcut; z += pi / R) breaks.push_back(z);
  double main = quad::integrate_split(f, 0.0, kcut, breaks, abs_tol).value;
  // Average of vhat^2 k^4 over the last few periods estimates the envelope.
  double env = 0.0;
  int samples = 0;
  for (double k = kcut * 0.9; k <= kcut; k += kcut * 0.004) {
    double w = v.fourier(k, 1e-10).value;
    env += w * w * k * k * k * k;
    ++samples;
  }
  env /= samples;
  out.tail = env / (3.0 * kcut * kcut * kcut);
  out.k_cut = kcut;
  double J = main + out.tail;
  out.a2 = -J / (32.0 * pi * pi * pi);
  return out;
}

ConvergenceStudy born_convergence_study(const RadialPotential& v1,
                                        const std::vector<double>& R_list, int K,
                                        double tol) {
  ConvergenceStudy study;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (double R : R_list) {
    ConvergenceRow row;
    row.R = R;
    RadialPotential vR = v1.scaled_to_range(R);
    row.a_ode = scattering_length_ode(vR, tol).a;
    ScatteringResult born = born_terms(vR, K);
    row.born_sum = born.born_sum;
    row.diverged = born.born_diverged;
    row.a1_plus_a2 = born.born_terms[0] + (born.born_terms.size() > 1 ? born.born_terms[1] : 0.0);
    row.gap = std::abs(row.a_ode - row.a1_plus_a2);
    study.rows.push_back(row);
    if (!row.diverged && row.gap > 0.0) {
      double x = std::log(R), y = std::log(row.gap);
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
      ++n;
    }
  }
  if (n >= 2) {
    study.fitted_exponent = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    study.fitted_constant = std::exp((sy - study.fitted_exponent * sx) / n);
  }
  return study;
}

}  // namespace lhy::scattering
