#include "circnav/control.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "circnav/errors.hpp"

namespace circnav {
namespace {

// cos(asin(z)) for z in [0, 1]; z is clamped against rounding near r = r_s.
double cos_asin(double z) {
  z = std::clamp(z, 0.0, 1.0);
  return std::sqrt(1.0 - z * z);
}

void check_range(double r, const char* who) {
  if (!std::isfinite(r) || r <= 0.0) {
    throw DomainError(std::string(who) + ": range must be positive and finite");
  }
}

}  // namespace

ControllerParams make_params(double k, double r_d, double speed) {
  if (!std::isfinite(r_d) || r_d <= 0.0) {
    throw DomainError("make_params: desired radius r_d must be positive");
  }
  if (!std::isfinite(speed) || speed <= 0.0) {
    throw DomainError("make_params: speed V must be positive");
  }
  if (!std::isfinite(k) || k <= 0.0) {
    throw DomainError("make_params: gain k must be positive");
  }
  if (k * r_d < 1.0) {
    throw InfeasibleGainError("make_params: infeasible gain k = " + std::to_string(k) +
                              "; the constraint k >= 1/r_d = " + std::to_string(1.0 / r_d) +
                              " is violated");
  }
  const double inv_k = 1.0 / k;
  const double rs_sq = (r_d - inv_k) * (r_d + inv_k);
  return {k, r_d, speed, std::sqrt(std::max(rs_sq, 0.0))};
}

double control_measured(const ControllerParams& p, double r, double range_rate_meas,
                        InnerPolicy policy) {
  check_range(r, "control_measured");
  const double kv = p.k * p.speed;
  if (r > p.r_s) {
    return -p.k * range_rate_meas - kv * cos_asin(p.r_s / r);
  }
  if (r < p.r_s) {
    if (policy == InnerPolicy::kZeroInside) {
      return 0.0;
    }
    return -p.k * range_rate_meas + kv * cos_asin(r / p.r_s);
  }
  return -p.k * range_rate_meas;
}

double control_bearing(const ControllerParams& p, double r, double theta, InnerPolicy policy) {
  check_range(r, "control_bearing");
  const double kv = p.k * p.speed;
  const double heading_term = kv * std::cos(theta);
  if (r > p.r_s) {
    return heading_term - (kv / r) * std::sqrt((r - p.r_s) * (r + p.r_s));
  }
  if (r < p.r_s) {
    if (policy == InnerPolicy::kZeroInside) {
      return 0.0;
    }
    return heading_term + (kv / p.r_s) * std::sqrt((p.r_s - r) * (p.r_s + r));
  }
  return heading_term;
}

}  // namespace circnav
