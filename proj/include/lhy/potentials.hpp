#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "lhy/quadrature.hpp"

namespace lhy::potentials {

enum class Family { UniformBall, Tent, Parabolic, CosBump };

std::string family_name(Family f);
Family family_from_name(const std::string& name);

// Non-negative, spherically symmetric potential of finite range.  The
// uniform ball is discontinuous at the range; it is kept as a
// solver-validation family (closed-form scattering length) even though the
// admissibility assumption asks for continuity.  Regime checks reject it.
class RadialPotential {
 public:
  RadialPotential(Family family, double amplitude, double range);

  double operator()(double r) const;
  Family family() const { return family_; }
  double amplitude() const { return amplitude_; }
  double range() const { return range_; }
  bool continuous() const { return family_ != Family::UniformBall; }

  // v_R(r) = R^-3 v1(r/R); requires range() <= 1 on the unscaled potential.
  RadialPotential scaled_to_range(double R) const;

  // Volume integral int v = 4 pi int_0^R r^2 v(r) dr.
  double integral(double abs_tol = 1e-12) const;

  // Radial Fourier transform vhat(k) = 4 pi int_0^R r sin(kr)/k v(r) dr,
  // with the k = 0 limit handled by the volume integral.
  quad::Result fourier(double k, double abs_tol = 1e-10) const;

  // Closed-form vhat(k), used as an independent oracle in tests.
  double fourier_analytic(double k) const;

  std::string describe() const;

 private:
  Family family_;
  double amplitude_;
  double range_;
};

RadialPotential scale_to_range(const RadialPotential& v1, double R);

// Parses "family:amplitude,range", e.g. "uniform-ball:2,1".
RadialPotential parse_potential(const std::string& spec);

struct PositivityReport {
  bool all_positive = true;   // on the scanned window (0, 1/R]
  double min_value = 0.0;     // smallest transform value on the window
  double min_location = 0.0;
  bool sign_change_found = false;  // first zero of the transform, anywhere
  double sign_change_location = 0.0;
  double value_after_change = 0.0;
};

// Checks What(k) = int cos(kx) W(x) dx > 0 for |k| < 1/range on a grid; for a
// radial W the cosine transform coincides with the radial Fourier transform.
// The evaluator form lets localized potentials reuse the scan.
PositivityReport positivity_window_check(const std::function<double(double)>& what,
                                         double range, int grid_points = 64,
                                         double scan_factor = 8.0);
PositivityReport positivity_window_check(const RadialPotential& v, int grid_points = 64);

}  // namespace lhy::potentials
