#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <chrono>
#include <cmath>

#include "lhy/bogolubov.hpp"
#include "lhy/rng.hpp"

using namespace lhy;
using bogolubov::QuadraticCoefficients;
using bogolubov::TauParams;

namespace {
constexpr double pi = 3.14159265358979323846;

TauParams small_box_params() {
  TauParams p;
  p.kind = localization::BoxKind::Small;
  p.eps0 = 0.01;
  p.s = 0.2;
  p.d = 0.3;
  p.ell = 50.0;
  return p;
}

TauParams big_box_params() {
  TauParams p;
  p.kind = localization::BoxKind::Big;
  p.eps0 = 0.01;
  p.epsT = 0.05;
  p.s = 0.2;
  p.d = 0.3;
  p.ell = 50.0;
  return p;
}
}  // namespace

TEST_CASE("kinetic multiplier roots and values") {
  auto sp = small_box_params();
  double dsl = sp.d * sp.s * sp.ell;
  CHECK(bogolubov::tau_B(1.0 / dsl, sp) == doctest::Approx(0.0));
  CHECK(bogolubov::tau_B(0.5 / dsl, sp) == doctest::Approx(0.0));

  auto bp = big_box_params();
  bp.epsT = 1e-300;  // epsT -> 0 limit of the big-box formula
  double sl = bp.s * bp.ell;
  double expect = (1.0 - bp.eps0) * std::pow(2.0 / sl - 0.5 / sl, 2.0);
  CHECK(bogolubov::tau_B(2.0 / sl, bp) == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("kinetic multiplier dominates half the free energy at large momentum") {
  for (auto p : {small_box_params(), big_box_params()}) {
    double dsl = p.d * p.s * p.ell;
    const double delta = 0.1;
    for (int i = 0; i <= 50; ++i) {
      double k = (1.0 / delta) * (1.0 / dsl) * (1.0 + 0.2 * i);
      CHECK(bogolubov::tau_B(k, p) >= 0.5 * k * k);
    }
  }
}

TEST_CASE("pairing coefficients and their validity window") {
  auto p = small_box_params();
  double volume = 1e3, rho = 0.01, R = 1.0;
  SUBCASE("sigma = 0 kills the linear term") {
    auto c = bogolubov::coefficients(0.1, 10.0, volume, rho, 0.5, {0.3, 0.1}, 0.0, p, R);
    CHECK(std::abs(c.kappa) == 0.0);
  }
  SUBCASE("positive transform below 1/R gives a valid pair") {
    auto c = bogolubov::coefficients(0.5, 10.0, volume, rho, 0.5, {0.3, 0.1}, 1.0, p, R);
    CHECK(c.low_momentum);
    CHECK(c.B > 0.0);
    CHECK(c.A >= c.B);
    CHECK(c.valid);
  }
  SUBCASE("dense sectors at high momentum lose validity") {
    // tau/n negligible, transform negative: A < |B|
    auto c = bogolubov::coefficients(2.0 / R, 1e12, volume, rho, -0.5, {0.0, 0.0}, 0.0, p, R);
    CHECK_FALSE(c.low_momentum);
    CHECK_FALSE(c.valid);
  }
}

TEST_CASE("parameter invariants are enforced") {
  auto p = small_box_params();
  p.eps0 = 0.7;
  CHECK_THROWS_AS(bogolubov::coefficients(0.1, 10.0, 1e3, 0.01, 0.5, {0, 0}, 0.0, p, 1.0),
                  std::invalid_argument);
  p = big_box_params();
  p.epsT = 1.2;
  CHECK_THROWS_AS(bogolubov::coefficients(0.1, 10.0, 1e3, 0.01, 0.5, {0, 0}, 0.0, p, 1.0),
                  std::invalid_argument);
}

TEST_CASE("measured validity constant is positive and finite") {
  auto p = small_box_params();
  auto what = [](double k) { return 0.5 * std::exp(-k * k); };
  double c = bogolubov::measure_validity_constant(1e3, 0.01, 0.3, 1.0, what, p);
  CHECK(c > 0.0);
  CHECK(std::isfinite(c));
}

TEST_CASE("closed-form lower bound values") {
  QuadraticCoefficients c;
  c.A = 2.0;
  c.B = 1.0;
  c.kappa = 0.0;
  CHECK(bogolubov::bogolubov_lower_bound(c, 1.0, 1.0) ==
        doctest::Approx(-(2.0 - std::sqrt(3.0))).epsilon(1e-12));
  c.A = 1.0;
  c.B = 1.0;
  c.kappa = 1.0;
  CHECK(bogolubov::bogolubov_lower_bound(c, 1.0, 1.0) == doctest::Approx(-2.0).epsilon(1e-12));
  c.B = 0.0;
  c.kappa = 0.0;
  CHECK(bogolubov::bogolubov_lower_bound(c, 1.0, 1.0) == doctest::Approx(0.0));
}

TEST_CASE("lower bound is continuous as B approaches A") {
  QuadraticCoefficients c;
  c.A = 1.0;
  c.kappa = 0.0;
  for (double eps : {1e-2, 1e-6, 1e-10, 0.0}) {
    c.B = 1.0 - eps;
    double v = bogolubov::bogolubov_lower_bound(c, 1.0, 1.0);
    CHECK(std::isfinite(v));
    // square-root continuity envelope toward the limit -A
    CHECK(std::abs(v + 1.0) <= 2.0 * std::sqrt(2.0 * eps) + 1e-12);
  }
  c.B = 1.0;
  CHECK(bogolubov::bogolubov_lower_bound(c, 1.0, 1.0) == doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("lower bound decreases in the linear coupling and the commutators") {
  QuadraticCoefficients c;
  c.A = 2.0;
  c.B = 1.0;
  double prev = 1.0;
  for (double k : {0.0, 0.5, 1.0, 2.0}) {
    c.kappa = {k, 0.0};
    double v = bogolubov::bogolubov_lower_bound(c, 1.0, 1.0);
    CHECK(v <= prev + 1e-15);
    prev = v;
  }
  c.kappa = 0.0;
  CHECK(bogolubov::bogolubov_lower_bound(c, 2.0, 2.0) <=
        bogolubov::bogolubov_lower_bound(c, 1.0, 1.0));
}

TEST_CASE("flipping the pairing sign leaves the bound unchanged when kappa = 0") {
  QuadraticCoefficients cp, cm;
  cp.A = cm.A = 1.7;
  cp.B = 1.7;
  cm.B = -1.7;  // closed boundary admitted at kappa = 0
  CHECK(bogolubov::bogolubov_lower_bound(cp, 1.0, 1.0) ==
        doctest::Approx(bogolubov::bogolubov_lower_bound(cm, 1.0, 1.0)).epsilon(1e-12));
  cp.B = 0.9;
  cm.B = -0.9;
  CHECK(bogolubov::bogolubov_lower_bound(cp, 1.0, 1.0) ==
        doctest::Approx(bogolubov::bogolubov_lower_bound(cm, 1.0, 1.0)).epsilon(1e-12));
}

TEST_CASE("lower bound validates its preconditions") {
  QuadraticCoefficients c;
  c.A = 1.0;
  c.B = 1.5;
  CHECK_THROWS_AS(bogolubov::bogolubov_lower_bound(c, 1.0, 1.0), std::invalid_argument);
  c.B = 0.5;
  CHECK_THROWS_AS(bogolubov::bogolubov_lower_bound(c, -1.0, 1.0), std::invalid_argument);
}

TEST_CASE("gap integrand in the flat-kinetic regime") {
  auto p = small_box_params();
  double dsl = p.d * p.s * p.ell;
  double k = 0.5 / dsl;  // tau_B = 0 here
  double volume = 1e3, what = 0.4, n = 50, n0 = 45, chi2 = 900.0;
  double expect = -what / volume * n0 * chi2;
  CHECK(bogolubov::h0_gap_integrand(k, n, n0, volume, what, chi2, p) ==
        doctest::Approx(expect).epsilon(1e-12));
  CHECK(bogolubov::h0_gap_integrand(2.0, n, n0, volume, 0.0, chi2, p) == doctest::Approx(0.0));
}

TEST_CASE("gap parenthesis stays nonnegative at random valid momenta") {
  auto p = big_box_params();
  rng::Splittable gen(31337);
  for (int t = 0; t < 100; ++t) {
    double k = gen.uniform(0.0, 2.0);
    double what = gen.uniform(0.0, 1.0);  // valid regime: positive transform
    double n = 1.0 + gen.uniform(0.0, 100.0);
    CHECK(bogolubov::h0_gap_parenthesis(k, n, 1e3, what, p) >= -1e-15);
  }
}

TEST_CASE("gap loss shrinks as the kinetic multiplier grows") {
  auto p = big_box_params();
  double volume = 1e3, what = 0.4, n = 50;
  // larger |k| means larger tau_B and a smaller parenthesis at fixed transform
  double k1 = 0.2 / (p.s * p.ell * p.d), k2 = 4.0 * k1;
  double loss1 = bogolubov::h0_gap_parenthesis(k1, n, volume, what, p);
  double loss2 = bogolubov::h0_gap_parenthesis(k2, n, volume, what, p);
  CHECK(bogolubov::tau_B(k2, p) > bogolubov::tau_B(k1, p));
  CHECK(loss2 <= loss1 + 1e-18);
}

TEST_CASE("dimensionless integral matches the closed form") {
  auto I = bogolubov::lhy_dimensionless_integral(1e-9);
  CHECK(std::abs(I.value - 32.0 * pi * std::sqrt(2.0) / 15.0) < 1e-6);
  CHECK(I.tail > 0.0);
  CHECK(I.tail < 0.01);
}

TEST_CASE("energy expansion coefficient and consistency identity") {
  double coeff = bogolubov::lhy_coefficient_value();
  CHECK(coeff == doctest::Approx(128.0 / (15.0 * std::sqrt(pi))).epsilon(1e-15));
  auto I = bogolubov::lhy_dimensionless_integral(1e-10);
  double lhs = 0.5 * std::pow(2.0 * pi, -3.0) * std::pow(8.0 * pi, 2.5) * I.value;
  double rhs = 512.0 / 15.0 * std::sqrt(pi);
  CHECK(std::abs(lhs / rhs - 1.0) < 1e-9);
}

TEST_CASE("energy reduces to the leading term at vanishing diluteness") {
  double e = bogolubov::lhy_energy(1e-30, 1.0);
  CHECK(e == doctest::Approx(4.0 * pi * 1e-60).epsilon(1e-10));
  double e0 = bogolubov::e0_lower(1e-30, 1.0, -0.05);
  CHECK(e0 == doctest::Approx(4.0 * pi * 1e-60 * (-0.05) / 1.0).epsilon(1e-8));
}

TEST_CASE("square-root bounds on the expansion interval") {
  auto rep = bogolubov::sqrt_bound_check(10.0);
  CHECK(rep.upper_holds);
  CHECK(rep.taylor_lower_holds);
  CHECK(rep.measured_C == doctest::Approx(0.125).epsilon(1e-3));
}

TEST_CASE("sigma correction pair scales with the spectral remainder power") {
  auto c1 = bogolubov::sigma_one_correction(1.0, 110.0, 0.1, 1e3, 2e-4, 0.3, 1.0, 100.0, 20);
  CHECK(c1.main_term == doctest::Approx((110.0 - 100.0) * (110.0 - 100.0) * 2e-4));
  auto c2 = bogolubov::sigma_one_correction(1.0, 110.0, 0.1, 1e3, 2e-4, 0.3, 1.0, 200.0, 20);
  CHECK(c1.remainder / c2.remainder == doctest::Approx(std::pow(2.0, 40.0)).epsilon(1e-9));
}
