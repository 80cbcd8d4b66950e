#pragma once

#include <numbers>

namespace circnav {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// UAV position and heading in the target-centered world frame. The target
/// sits at the origin; psi is measured from the +x axis and kept in [0, 2pi).
struct CartesianState {
  double x = 0.0;
  double y = 0.0;
  double psi = 0.0;
};

/// Reduced state: range to the target and bearing angle (heading relative to
/// the target-to-UAV direction), theta in [0, 2pi).
struct PolarState {
  double r = 0.0;
  double theta = 0.0;
};

/// Wraps an angle to [0, 2pi). Throws DomainError on non-finite input.
double wrap_angle(double a);

/// Reference angle phi = atan2(y, x) of the UAV position, in (-pi, pi].
double reference_angle(const CartesianState& s);

/// r = |(x, y)|, theta = wrap(pi - phi + psi). Throws DomainError at the
/// target itself.
PolarState cart_to_polar(const CartesianState& s);

/// Cartesian state at reference angle phi with the given range and bearing:
/// (r cos phi, r sin phi, wrap(theta - pi + phi)).
CartesianState polar_to_cart(const PolarState& p, double phi = 0.0);

/// Range rate implied by the bearing: -V cos(theta).
double range_rate(double theta, double speed);

}  // namespace circnav
