#pragma once

#include <vector>

#include "lhy/potentials.hpp"
#include "lhy/radial_function.hpp"

namespace lhy::scattering {

using potentials::RadialFunction;
using potentials::RadialPotential;

struct ScatteringResult {
  double a = 0.0;                  // ODE value
  std::vector<double> born_terms;  // a_1 ... a_K
  double born_sum = 0.0;
  double ode_residual = 0.0;       // variation of a over [R0, 2 R0]
  double r_match = 0.0;
  std::vector<double> born_ratios;  // |a_{k+1}/a_k| diagnostic
  bool born_diverged = false;
};

// Zero-energy radial problem u'' = (1/2) v u, u(0) = 0, u'(0) = 1; outside
// the range u is linear and a = r - u/u'.  tol controls the integrator and
// bounds the admissible variation of a over [R0, 2 R0].
ScatteringResult scattering_length_ode(const RadialPotential& v, double tol = 1e-10);

// L_v(g)(x) = v(x) int |x-y|^-1 g(y) dy via the radial Newton formula
// int g(y)/|x-y| dy = 4 pi [ (1/r) int_0^r g s^2 ds + int_r^inf g s ds ].
RadialFunction newton_kernel_apply(const RadialPotential& v, const RadialFunction& g);

// Newton potential alone (no v prefactor), used by tests and by the second
// Born identity check.
double newton_potential(const RadialFunction& g, double r);

// a_1 = (8 pi)^-1 int v;  a_k = -(-8 pi)^-k int (L_v)^{k-1}(v) for k >= 2.
ScatteringResult born_terms(const RadialPotential& v, int K, int grid_n = 800);

// Fourier-side second Born term
//   a_2 = -(4 pi)^-1 (2 pi)^-3 int (1/4) vhat(k)^2 |k|^-2 dk,
// reduced to -(32 pi^3)^-1 int_0^inf vhat(k)^2 dk with a fitted k^-4 tail.
struct A2Fourier {
  double a2 = 0.0;
  double tail = 0.0;     // contribution added beyond the quadrature cutoff
  double k_cut = 0.0;
};
A2Fourier a2_fourier(const RadialPotential& v, double abs_tol = 1e-9);

struct ConvergenceRow {
  double R = 0.0;
  double a_ode = 0.0;
  double born_sum = 0.0;
  double a1_plus_a2 = 0.0;
  double gap = 0.0;  // |a_ode - a1 - a2|
  bool diverged = false;
};

struct ConvergenceStudy {
  std::vector<ConvergenceRow> rows;
  double fitted_exponent = 0.0;  // log-log slope of gap vs R
  double fitted_constant = 0.0;  // gap ~ constant * R^exponent
};

ConvergenceStudy born_convergence_study(const RadialPotential& v1,
                                        const std::vector<double>& R_list, int K,
                                        double tol = 1e-10);

}  // namespace lhy::scattering
