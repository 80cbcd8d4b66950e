#pragma once

#include <span>

#include "circnav/dynamics.hpp"

namespace circnav {

struct Circle {
  double center_x = 0.0;
  double center_y = 0.0;
  double radius = 0.0;
};

/// Algebraic (Kasa) least-squares circle: minimizes
/// sum (x^2 + y^2 + D x + E y + F)^2 over (D, E, F). Needs at least three
/// non-collinear points; throws DomainError otherwise.
Circle fit_circle(std::span<const double> xs, std::span<const double> ys);

/// Accumulated |delta phi| (radians swept around the target) over samples
/// with t >= t_burn.
double swept_angle(const Trajectory& traj, double t_burn);

/// Circle fitted to the (x, y) samples with t >= t_burn. Throws DomainError
/// when that segment sweeps less than one full revolution around the target.
Circle fit_orbit_circle(const Trajectory& traj, double t_burn);

}  // namespace circnav
