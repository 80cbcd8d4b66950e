#pragma once

namespace circnav {

/// Gain k, desired (and realized) orbit radius r_d, airspeed V, and the
/// singular radius r_s = sqrt(r_d^2 - 1/k^2) the outer law aims at.
/// Construct through make_params so that r_s is consistent with (k, r_d).
struct ControllerParams {
  double k = 0.0;
  double r_d = 0.0;
  double speed = 0.0;
  double r_s = 0.0;

  /// Intrinsic turn-rate bound |u| <= 2kV.
  double saturation() const { return 2.0 * k * speed; }
};

/// Throws InfeasibleGainError when k < 1/r_d, DomainError for nonpositive or
/// non-finite r_d, V, or k.
ControllerParams make_params(double k, double r_d, double speed);

/// How the law behaves strictly inside the singular circle.
enum class InnerPolicy {
  kCombined,    ///< u = u_o + u_i (smooth, saturated)
  kZeroInside,  ///< baseline: u = 0 whenever r < r_s
};

/// Heading-rate command from a range and a (possibly noisy) range-rate
/// measurement:
///   u = -k rdot - kV sqrt(1 - (r_s/r)^2) [r > r_s] + kV sqrt(1 - (r/r_s)^2) [r < r_s]
/// The measurement is used as-is, including values outside [-V, V].
double control_measured(const ControllerParams& p, double r, double range_rate_meas,
                        InnerPolicy policy = InnerPolicy::kCombined);

/// Same law expressed through the bearing angle:
///   u = kV cos(theta) - (kV/r) sqrt(r^2 - r_s^2) [r > r_s] + (kV/r_s) sqrt(r_s^2 - r^2) [r < r_s]
double control_bearing(const ControllerParams& p, double r, double theta,
                       InnerPolicy policy = InnerPolicy::kCombined);

}  // namespace circnav
