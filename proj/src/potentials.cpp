#include "lhy/potentials.hpp"

#include <cmath>
#include <sstream>

namespace lhy::potentials {

namespace {
constexpr double pi = 3.14159265358979323846;

// int_0^R r sin(qr) dr, odd in q, with a series branch near q = 0.
double moment1(double q, double R) {
  double x = q * R;
  if (std::abs(x) < 1e-4) {
    // (sin x - x cos x)/q^2 = q R^3/3 - q^3 R^5/30 + q^5 R^7/840
    return q * R * R * R * (1.0 / 3.0 - x * x / 30.0 + x * x * x * x / 840.0);
  }
  return (std::sin(x) - x * std::cos(x)) / (q * q);
}
}  // namespace

std::string family_name(Family f) {
  switch (f) {
    case Family::UniformBall: return "uniform-ball";
    case Family::Tent: return "tent";
    case Family::Parabolic: return "parabolic";
    case Family::CosBump: return "cos-bump";
  }
  return "?";
}

Family family_from_name(const std::string& name) {
  if (name == "uniform-ball" || name == "ball") return Family::UniformBall;
  if (name == "tent") return Family::Tent;
  if (name == "parabolic") return Family::Parabolic;
  if (name == "cos-bump" || name == "cosbump") return Family::CosBump;
  throw std::invalid_argument("unknown potential family: " + name);
}

RadialPotential::RadialPotential(Family family, double amplitude, double range)
    : family_(family), amplitude_(amplitude), range_(range) {
  if (amplitude < 0.0) throw std::invalid_argument("potential amplitude must be >= 0");
  if (range <= 0.0) throw std::invalid_argument("potential range must be > 0");
}

double RadialPotential::operator()(double r) const {
  if (r < 0.0) r = -r;
  if (r > range_) return 0.0;
  double t = r / range_;
  switch (family_) {
    case Family::UniformBall: return amplitude_;
    case Family::Tent: return amplitude_ * (1.0 - t);
    case Family::Parabolic: return amplitude_ * (1.0 - t * t);
    case Family::CosBump: return amplitude_ * 0.5 * (1.0 + std::cos(pi * t));
  }
  return 0.0;
}

RadialPotential RadialPotential::scaled_to_range(double R) const {
  if (R <= 0.0) throw std::invalid_argument("scale_to_range: R must be > 0");
  if (range_ > 1.0 + 1e-12)
    throw std::invalid_argument("scale_to_range: unscaled potential must have range <= 1");
  return RadialPotential(family_, amplitude_ / (R * R * R), range_ * R);
}

RadialPotential scale_to_range(const RadialPotential& v1, double R) {
  return v1.scaled_to_range(R);
}

double RadialPotential::integral(double abs_tol) const {
  auto f = [this](double r) { return (*this)(r); };
  return quad::fourier_radial(f, range_, 0.0, abs_tol).value;
}

quad::Result RadialPotential::fourier(double k, double abs_tol) const {
  auto f = [this](double r) { return (*this)(r); };
  return quad::fourier_radial(f, range_, k, abs_tol);
}

double RadialPotential::fourier_analytic(double k) const {
  const double R = range_, c = amplitude_;
  if (k <= 1e-300) {
    switch (family_) {
      case Family::UniformBall: return c * 4.0 * pi * R * R * R / 3.0;
      case Family::Tent: return c * pi * R * R * R / 3.0;
      case Family::Parabolic: return c * 8.0 * pi * R * R * R / 15.0;
      case Family::CosBump:
        // (2 pi c / k) [S(k) + (S(k+b)+S(k-b))/2] at k -> 0
        return 2.0 * pi * c * (R * R * R / 3.0 + moment1(pi / R, R));
    }
  }
  const double x = k * R;
  switch (family_) {
    case Family::UniformBall:
      return 4.0 * pi * c * (std::sin(x) - x * std::cos(x)) / (k * k * k);
    case Family::Tent: {
      if (x < 1e-3) {
        double x2 = x * x;
        return 4.0 * pi * c * R * R * R * (1.0 / 12.0 - x2 / 180.0 + x2 * x2 / 6720.0);
      }
      return 4.0 * pi * c * (2.0 - 2.0 * std::cos(x) - x * std::sin(x)) / (k * k * k * k * R);
    }
    case Family::Parabolic: {
      if (x < 1e-3) {
        double x2 = x * x;
        return 8.0 * pi * c * R * R * R * (1.0 / 15.0 - x2 / 210.0);
      }
      return 4.0 * pi * c *
             ((6.0 / (x * x) - 2.0) * std::sin(x) - (6.0 / x) * std::cos(x)) / (k * k * k);
    }
    case Family::CosBump: {
      const double b = pi / R;
      return (2.0 * pi * c / k) *
             (moment1(k, R) + 0.5 * (moment1(k + b, R) + moment1(k - b, R)));
    }
  }
  return 0.0;
}

std::string RadialPotential::describe() const {
  std::ostringstream os;
  os << family_name(family_) << ":" << amplitude_ << "," << range_;
  return os.str();
}

RadialPotential parse_potential(const std::string& spec) {
  auto colon = spec.find(':');
  if (colon == std::string::npos)
    throw std::invalid_argument("potential spec must be family:amplitude,range");
  Family fam = family_from_name(spec.substr(0, colon));
  std::string rest = spec.substr(colon + 1);
  auto comma = rest.find(',');
  double amp = std::stod(comma == std::string::npos ? rest : rest.substr(0, comma));
  double range = comma == std::string::npos ? 1.0 : std::stod(rest.substr(comma + 1));
  return RadialPotential(fam, amp, range);
}

PositivityReport positivity_window_check(const std::function<double(double)>& what,
                                         double range, int grid_points, double scan_factor) {
  PositivityReport rep;
  const double kmax = 1.0 / range;
  rep.min_value = what(0.0);
  rep.min_location = 0.0;
  for (int i = 1; i <= grid_points; ++i) {
    double k = kmax * i / grid_points;
    double w = what(k);
    if (w < rep.min_value) {
      rep.min_value = w;
      rep.min_location = k;
    }
    if (w <= 0.0) rep.all_positive = false;
  }
  // Continue past the window to locate the first sign change, if any.
  double kprev = 0.0, wprev = what(0.0);
  const int scan = static_cast<int>(grid_points * scan_factor);
  for (int i = 1; i <= scan; ++i) {
    double k = kmax * scan_factor * i / scan;
    double w = what(k);
    if (wprev > 0.0 && w <= 0.0) {
      double lo = kprev, hi = k;
      for (int it = 0; it < 80; ++it) {
        double mid = 0.5 * (lo + hi);
        (what(mid) > 0.0 ? lo : hi) = mid;
      }
      rep.sign_change_found = true;
      rep.sign_change_location = 0.5 * (lo + hi);
      rep.value_after_change = what(rep.sign_change_location * 1.01);
      break;
    }
    kprev = k;
    wprev = w;
  }
  return rep;
}

PositivityReport positivity_window_check(const RadialPotential& v, int grid_points) {
  auto what = [&](double k) { return v.fourier(k, 1e-11).value; };
  return positivity_window_check(what, v.range(), grid_points);
}

}  // namespace lhy::potentials
