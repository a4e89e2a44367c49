#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "lhy/rng.hpp"
#include "lhy/scattering.hpp"

using namespace lhy;
using potentials::Family;
using potentials::RadialFunction;
using potentials::RadialPotential;

namespace {
constexpr double pi = 3.14159265358979323846;
const RadialPotential kBall(Family::UniformBall, 2.0, 1.0);
const RadialPotential kTent(Family::Tent, 1.0, 1.0);

// Closed form for the uniform ball: a = R0 (1 - tanh(kappa R0)/(kappa R0)).
double ball_scattering_length(double V0, double R0) {
  double kappa = std::sqrt(V0 / 2.0);
  return R0 * (1.0 - std::tanh(kappa * R0) / (kappa * R0));
}
}  // namespace

TEST_CASE("ball scattering length matches the tanh closed form") {
  auto res = scattering::scattering_length_ode(kBall, 1e-10);
  CHECK(std::abs(res.a - (1.0 - std::tanh(1.0))) < 1e-8);
  CHECK(res.ode_residual < 1e-10);
  CHECK(res.r_match == doctest::Approx(1.5));
}

TEST_CASE("free equation has zero scattering length") {
  RadialPotential zero(Family::UniformBall, 0.0, 1.0);
  CHECK(scattering::scattering_length_ode(zero, 1e-10).a == doctest::Approx(0.0));
}

TEST_CASE("hard-sphere proxy approaches the range") {
  RadialPotential hard(Family::UniformBall, 1e6, 1.0);
  auto res = scattering::scattering_length_ode(hard, 1e-8);
  CHECK(std::abs(res.a - 1.0) < 1e-2);
  CHECK(res.a == doctest::Approx(ball_scattering_length(1e6, 1.0)).epsilon(1e-8));
}

TEST_CASE("scattering length self-converges under tighter tolerance") {
  double a1 = scattering::scattering_length_ode(kBall, 1e-8).a;
  double a2 = scattering::scattering_length_ode(kBall, 1e-8 / 32.0).a;
  CHECK(std::abs(a1 - a2) < 1e-9);
}

TEST_CASE("scattering length never exceeds the first Born term") {
  for (auto fam : {Family::UniformBall, Family::Tent, Family::Parabolic, Family::CosBump}) {
    RadialPotential v(fam, 2.5, 1.0);
    double a = scattering::scattering_length_ode(v, 1e-9).a;
    double a1 = v.integral() / (8.0 * pi);
    CHECK(a <= a1 * (1.0 + 1e-10));
  }
}

TEST_CASE("Newton potential of the unit ball") {
  auto g = RadialFunction::sample([](double) { return 1.0; }, 1.0, 600);
  CHECK(scattering::newton_potential(g, 0.0) == doctest::Approx(2.0 * pi).epsilon(1e-8));
  CHECK(scattering::newton_potential(g, 0.5) ==
        doctest::Approx(2.0 * pi * (1.0 - 0.25 / 3.0)).epsilon(1e-8));
}

TEST_CASE("kernel applied to zero input is zero") {
  auto g0 = RadialFunction::sample([](double) { return 0.0; }, 1.0, 100);
  auto out = scattering::newton_kernel_apply(kBall, g0);
  CHECK(out.max_abs() == 0.0);
}

TEST_CASE("kernel prefactor truncates to the potential support") {
  auto g = RadialFunction::sample([](double) { return 1.0; }, 1.0, 300);
  auto out = scattering::newton_kernel_apply(kBall, g);
  CHECK(out(0.0) == doctest::Approx(kBall(0.0) * 2.0 * pi).epsilon(1e-8));
}

TEST_CASE("radial Newton formula agrees with a Monte Carlo volume integral") {
  // int_{|y|<=1} 1/|x-y| dy at |x| = 0.5, fixed seed
  auto g = RadialFunction::sample([](double) { return 1.0; }, 1.0, 600);
  double radial = scattering::newton_potential(g, 0.5);
  rng::Splittable gen(987654321);
  const int N = 4'000'000;
  double sum = 0.0;
  int inside = 0;
  for (int i = 0; i < N; ++i) {
    double x = gen.uniform(-1, 1), y = gen.uniform(-1, 1), z = gen.uniform(-1, 1);
    if (x * x + y * y + z * z > 1.0) continue;
    ++inside;
    double dx = x - 0.5;
    sum += 1.0 / std::sqrt(dx * dx + y * y + z * z);
  }
  double mc = sum / inside * (4.0 / 3.0 * pi);
  CHECK(std::abs(mc - radial) / radial < 1e-3);
}

TEST_CASE("first two Born terms of the ball have closed forms") {
  auto res = scattering::born_terms(kBall, 4);
  CHECK(res.born_terms[0] == doctest::Approx(1.0 / 3.0).epsilon(1e-10));
  // ball self-energy iint |x-y|^-1 over unit balls = 32 pi^2 / 15
  CHECK(res.born_terms[1] == doctest::Approx(-2.0 / 15.0).epsilon(1e-9));
  CHECK(res.born_ratios.size() == 3);
  CHECK_FALSE(res.born_diverged);
}

TEST_CASE("Born terms scale like R^{1-k}") {
  auto base = scattering::born_terms(kBall, 3);
  for (double R : {2.0, 5.0}) {
    auto scaled = scattering::born_terms(kBall.scaled_to_range(R), 3);
    for (int k = 0; k < 3; ++k) {
      double expect = base.born_terms[k] * std::pow(R, -double(k));
      CHECK(std::abs(scaled.born_terms[k] - expect) < 1e-6 * std::abs(expect));
    }
  }
}

TEST_CASE("Fourier-side second Born term matches real space") {
  auto f = scattering::a2_fourier(kBall);
  CHECK(std::abs(f.a2 - (-2.0 / 15.0)) < 1e-5);
  for (auto fam : {Family::Tent, Family::Parabolic, Family::CosBump}) {
    RadialPotential v(fam, 2.0, 1.0);
    double real_space = scattering::born_terms(v, 2).born_terms[1];
    double fourier = scattering::a2_fourier(v).a2;
    CHECK(std::abs(fourier - real_space) < 1e-5 * std::abs(real_space));
  }
}

TEST_CASE("zero potential has vanishing second Born term") {
  RadialPotential zero(Family::UniformBall, 0.0, 1.0);
  CHECK(scattering::a2_fourier(zero).a2 == doctest::Approx(0.0));
}

TEST_CASE("momentum-space identity for the second Born integral") {
  // int vhat^2/k^2 dk = 2 pi^2 iint v(x) v(y)/|x-y| dx dy for the tent
  double lhs = -scattering::a2_fourier(kTent, 1e-10).a2 * 4.0 * pi * 8.0 * pi * pi * pi * 4.0;
  auto g = RadialFunction::sample([&](double r) { return kTent(r); }, 1.0, 800);
  auto applied = scattering::newton_kernel_apply(kTent, g);
  double self_energy = 4.0 * pi * applied.integral_weighted(2);  // iint v v / |x-y|
  double rhs = 2.0 * pi * pi * self_energy;
  CHECK(std::abs(lhs - rhs) < 1e-6 * rhs);
}

TEST_CASE("gap to the two-term Born approximation scales like R^-2") {
  std::vector<double> Rs{4, 5.657, 8, 11.314, 16, 22.627, 32, 45.255, 64};
  auto study = scattering::born_convergence_study(kBall, Rs, 6);
  CHECK(study.fitted_exponent > -2.3);
  CHECK(study.fitted_exponent < -1.7);
  for (const auto& row : study.rows) CHECK_FALSE(row.diverged);
}

TEST_CASE("gap at unit range matches the closed forms") {
  double a = scattering::scattering_length_ode(kBall, 1e-10).a;
  CHECK(std::abs(a - 0.2) == doctest::Approx(0.0384058440).epsilon(1e-7));
}

TEST_CASE("eight Born terms reproduce the ODE value at R = 8") {
  auto vR = kBall.scaled_to_range(8.0);
  auto born = scattering::born_terms(vR, 8);
  double a = scattering::scattering_length_ode(vR, 1e-10).a;
  CHECK(std::abs(born.born_sum - a) < 1e-4 * a);
}

TEST_CASE("kernel iteration growth is flagged as divergence at small range") {
  auto diverging = scattering::born_terms(kBall.scaled_to_range(0.2), 8);
  CHECK(diverging.born_diverged);
  CHECK(diverging.born_ratios.back() > 1.0);
  // the ODE value is still fine there
  CHECK(scattering::scattering_length_ode(kBall.scaled_to_range(0.2), 1e-9).a > 0.0);
}

TEST_CASE("born term count is validated") {
  CHECK_THROWS_AS(scattering::born_terms(kBall, 0), std::invalid_argument);
  CHECK_THROWS_AS(scattering::scattering_length_ode(kBall, -1.0), std::invalid_argument);
}
