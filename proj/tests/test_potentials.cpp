#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "lhy/potentials.hpp"
#include "lhy/radial_function.hpp"
#include "lhy/rng.hpp"

using namespace lhy;
using potentials::Family;
using potentials::RadialPotential;

namespace {
constexpr double pi = 3.14159265358979323846;
}

TEST_CASE("uniform ball scaling substitutes directly") {
  RadialPotential ball(Family::UniformBall, 2.0, 1.0);
  auto v2 = ball.scaled_to_range(2.0);
  CHECK(v2(1.0) == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(v2.range() == doctest::Approx(2.0));
}

TEST_CASE("tent scaling by R = 1 is the identity") {
  RadialPotential tent(Family::Tent, 1.0, 1.0);
  auto same = tent.scaled_to_range(1.0);
  for (double r : {0.0, 0.3, 0.7, 0.99}) CHECK(same(r) == doctest::Approx(tent(r)).epsilon(1e-15));
}

TEST_CASE("volume integral is preserved by range scaling") {
  for (auto fam : {Family::UniformBall, Family::Tent, Family::Parabolic, Family::CosBump}) {
    RadialPotential v1(fam, 1.7, 1.0);
    double base = v1.integral();
    for (double R : {0.5, 2.0, 10.0}) {
      CHECK(std::abs(v1.scaled_to_range(R).integral() - base) < 1e-10);
    }
  }
}

TEST_CASE("radial transform at k = 0 matches the volume integral") {
  RadialPotential ball(Family::UniformBall, 2.0, 1.0);
  RadialPotential tent(Family::Tent, 1.0, 1.0);
  CHECK(ball.fourier(0.0).value == doctest::Approx(8.0 * pi / 3.0).epsilon(1e-9));
  CHECK(tent.fourier(0.0).value == doctest::Approx(pi / 3.0).epsilon(1e-9));
  for (auto fam : {Family::UniformBall, Family::Tent, Family::Parabolic, Family::CosBump}) {
    RadialPotential v(fam, 1.3, 1.0);
    CHECK(std::abs(v.fourier(0.0).value - v.integral()) < 1e-9);
  }
}

TEST_CASE("quadrature transform matches the closed forms") {
  rng::Splittable gen(42);
  for (auto fam : {Family::UniformBall, Family::Tent, Family::Parabolic, Family::CosBump}) {
    RadialPotential v(fam, 2.0, 1.0);
    for (int i = 0; i < 10; ++i) {
      double k = gen.uniform(0.0, 25.0);
      CHECK(std::abs(v.fourier(k, 1e-12).value - v.fourier_analytic(k)) < 1e-9);
    }
  }
}

TEST_CASE("transform scaling covariance vhat_R(k) = vhat_1(Rk)") {
  rng::Splittable gen(7);
  for (auto fam : {Family::UniformBall, Family::Tent, Family::Parabolic, Family::CosBump}) {
    RadialPotential v1(fam, 1.0, 1.0);
    for (double R : {0.3, 1.0, 5.0}) {
      auto vR = v1.scaled_to_range(R);
      for (int i = 0; i < 20; ++i) {
        double k = gen.uniform(0.0, 10.0);
        CHECK(std::abs(vR.fourier(k, 1e-11).value - v1.fourier(R * k, 1e-11).value) < 1e-9);
      }
    }
  }
}

TEST_CASE("transform is bounded by its value at zero") {
  rng::Splittable gen(11);
  for (auto fam : {Family::UniformBall, Family::Tent, Family::Parabolic, Family::CosBump}) {
    RadialPotential v(fam, 1.0, 1.0);
    double v0 = v.fourier(0.0).value;
    for (int i = 0; i < 40; ++i) {
      double k = gen.uniform(0.0, 40.0);
      CHECK(std::abs(v.fourier(k, 1e-10).value) <= v0 * (1.0 + 1e-12));
    }
  }
}

TEST_CASE("positivity window holds below 1/R for the ball") {
  RadialPotential ball(Family::UniformBall, 2.0, 1.0);
  auto rep = potentials::positivity_window_check(ball);
  CHECK(rep.all_positive);
  CHECK(potentials::positivity_window_check(ball, 8).min_value > 0.0);
}

TEST_CASE("tent transform first changes sign beyond the window") {
  RadialPotential tent(Family::Tent, 1.0, 1.0);
  auto rep = potentials::positivity_window_check(tent);
  CHECK(rep.all_positive);
  REQUIRE(rep.sign_change_found);
  // first zero of the tent transform is at k R = 2 pi
  CHECK(rep.sign_change_location == doctest::Approx(2.0 * pi).epsilon(1e-6));
  CHECK(rep.sign_change_location > 1.0 / tent.range());
  CHECK(rep.value_after_change < 0.0);
}

TEST_CASE("construction rejects bad parameters") {
  CHECK_THROWS_AS(RadialPotential(Family::Tent, 1.0, -1.0), std::invalid_argument);
  CHECK_THROWS_AS(RadialPotential(Family::Tent, -1.0, 1.0), std::invalid_argument);
  RadialPotential tent(Family::Tent, 1.0, 1.0);
  CHECK_THROWS_AS(tent.scaled_to_range(0.0), std::invalid_argument);
  RadialPotential wide(Family::Tent, 1.0, 2.0);
  CHECK_THROWS_AS(wide.scaled_to_range(3.0), std::invalid_argument);
  CHECK_THROWS_AS(potentials::parse_potential("nope:1,1"), std::invalid_argument);
}

TEST_CASE("families are continuous with positive center value") {
  for (auto fam : {Family::Tent, Family::Parabolic, Family::CosBump}) {
    RadialPotential v(fam, 1.0, 1.0);
    CHECK(v(0.0) > 0.0);
    CHECK(v(1.0) == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(v(0.999999) < 1e-4);
    CHECK(v(1.5) == 0.0);
  }
}

TEST_CASE("tabulated radial function validates its grid") {
  using potentials::RadialFunction;
  CHECK_THROWS_AS(RadialFunction({0, 1, 1, 2}, {0, 0, 0, 0}), std::invalid_argument);
  CHECK_THROWS_AS(RadialFunction({0, 1, 2}, {0, 0, 0}), std::invalid_argument);
  auto q = RadialFunction::sample([](double r) { return 3.0 * r * r - r; }, 1.0, 200);
  // parabolic slope estimates make the interpolant exact on quadratics
  for (double r : {0.21, 0.4, 0.55, 0.83})
    CHECK(q(r) == doctest::Approx(3.0 * r * r - r).epsilon(1e-12));
  auto f = RadialFunction::sample([](double r) { return r * r * r; }, 1.0, 200);
  for (double r : {0.21, 0.4, 0.55, 0.83}) CHECK(f(r) == doctest::Approx(r * r * r).epsilon(1e-6));
  CHECK(f.integral_weighted(0) == doctest::Approx(0.25).epsilon(1e-8));
}
