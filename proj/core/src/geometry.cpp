#include "circnav/geometry.hpp"

#include <cmath>

#include "circnav/errors.hpp"

namespace circnav {

double wrap_angle(double a) {
  if (!std::isfinite(a)) {
    throw DomainError("wrap_angle: non-finite angle");
  }
  double w = std::fmod(a, kTwoPi);
  if (w < 0.0) {
    w += kTwoPi;
  }
  // fmod of a tiny negative value plus 2pi can round up to 2pi itself.
  if (w >= kTwoPi) {
    w = 0.0;
  }
  return w;
}

double reference_angle(const CartesianState& s) { return std::atan2(s.y, s.x); }

PolarState cart_to_polar(const CartesianState& s) {
  if (!std::isfinite(s.x) || !std::isfinite(s.y) || !std::isfinite(s.psi)) {
    throw DomainError("cart_to_polar: non-finite state");
  }
  const double r = std::hypot(s.x, s.y);
  if (r == 0.0) {
    throw DomainError("cart_to_polar: UAV located at the target (zero range)");
  }
  return {r, wrap_angle(kPi - reference_angle(s) + s.psi)};
}

CartesianState polar_to_cart(const PolarState& p, double phi) {
  if (!(p.r > 0.0) || !std::isfinite(p.r)) {
    throw DomainError("polar_to_cart: range must be positive and finite");
  }
  return {p.r * std::cos(phi), p.r * std::sin(phi), wrap_angle(p.theta - kPi + phi)};
}

double range_rate(double theta, double speed) {
  if (!std::isfinite(theta) || !std::isfinite(speed)) {
    throw DomainError("range_rate: non-finite input");
  }
  return -speed * std::cos(theta);
}

}  // namespace circnav
