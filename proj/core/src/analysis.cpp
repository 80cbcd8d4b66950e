#include "circnav/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include "circnav/errors.hpp"

namespace circnav {
namespace {

constexpr double kRootTol = 1e-14;
constexpr double kCubicTol = 1e-12;

double sgn(double v) { return (v > 0.0) - (v < 0.0); }

void check_range(double r, const char* who) {
  if (!std::isfinite(r) || r <= 0.0) {
    throw DomainError(std::string(who) + ": range must be positive and finite");
  }
}

bool inner_region_nonempty(const ControllerParams& p) { return inner_radii(p).has_value(); }

}  // namespace

double bisect(const std::function<double(double)>& f, double lo, double hi, double tol,
              int max_iter) {
  double f_lo = f(lo);
  const double f_hi = f(hi);
  if (f_lo == 0.0) return lo;
  if (f_hi == 0.0) return hi;
  if ((f_lo > 0.0) == (f_hi > 0.0)) {
    throw NoSolutionError("bisect: no sign change on the bracket");
  }
  for (int i = 0; i < max_iter && hi - lo > tol; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double f_mid = f(mid);
    if (f_mid == 0.0) return mid;
    if ((f_mid > 0.0) == (f_lo > 0.0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

std::optional<InnerRadii> inner_radii(const ControllerParams& p) {
  const double rs2 = p.r_s * p.r_s;
  if (rs2 <= 0.0) return std::nullopt;
  const double c = rs2 / (p.k * p.k);  // product of the two roots in r^2
  double disc = rs2 * rs2 - 4.0 * c;
  // k = sqrt(5)/r_d gives a zero discriminant only up to rounding.
  if (disc < 0.0 && disc > -1e-12 * rs2 * rs2) disc = 0.0;
  if (disc < 0.0) return std::nullopt;
  const double plus_sq = 0.5 * (rs2 + std::sqrt(disc));
  const double minus_sq = c / plus_sq;  // avoids cancellation in the minus branch
  return InnerRadii{std::sqrt(minus_sq), std::sqrt(plus_sq)};
}

double inner_radius_residual(const ControllerParams& p, double r) {
  const double k2 = p.k * p.k;
  const double r2 = r * r;
  const double rs2 = p.r_s * p.r_s;
  return k2 * r2 * r2 - k2 * rs2 * r2 + rs2;
}

double lyapunov(const ControllerParams& p, double r, double theta) {
  check_range(r, "lyapunov");
  const double v = p.speed;
  return (p.k / v) * std::abs(r - p.r_s) + (theta / v) * sgn(r - p.r_s) + kTwoPi / v;
}

double generator_lyapunov(const ControllerParams& p, double r, double theta) {
  check_range(r, "generator_lyapunov");
  if (r == p.r_s) {
    throw UndefinedPointError("generator_lyapunov: Lyapunov function is not differentiable at r = r_s");
  }
  if (r > p.r_s) {
    return std::sin(theta) / r - (p.k / r) * std::sqrt((r - p.r_s) * (r + p.r_s));
  }
  return -std::sin(theta) / r - (p.k / p.r_s) * std::sqrt((p.r_s - r) * (p.r_s + r));
}

double inner_margin(const ControllerParams& p, double r) {
  return 1.0 / r - (p.k / p.r_s) * std::sqrt(std::max((p.r_s - r) * (p.r_s + r), 0.0));
}

double outer_margin(const ControllerParams& p, double r) {
  return (1.0 - p.k * std::sqrt(std::max((r - p.r_s) * (r + p.r_s), 0.0))) / r;
}

double r_a_epsilon(const ControllerParams& p, double eps) {
  if (!(eps > 0.0) || !std::isfinite(eps)) {
    throw DomainError("r_a_epsilon: eps must be positive");
  }
  if (eps >= p.k) {
    throw NoSolutionError("r_a_epsilon: no outer boundary exists for eps >= k");
  }
  const double k2 = p.k * p.k;
  const double e2 = eps * eps;
  return (eps + std::sqrt(k2 * p.r_d * p.r_d * (k2 - e2) + e2)) / (k2 - e2);
}

double inner_margin_minimizer(const ControllerParams& p) {
  if (!(p.r_s > 0.0)) {
    throw NotApplicableError("inner_margin_minimizer: r_s = 0, the inner region is empty");
  }
  const double s2 = p.r_s * p.r_s;
  const double a = s2 / (p.k * p.k);
  const double b = s2 * s2 / (p.k * p.k);
  const auto cubic = [a, b](double y) { return y * y * y + a * y - b; };
  return std::sqrt(bisect(cubic, 0.0, s2, kCubicTol));
}

double inner_margin_minimizer_sq_closed_form(const ControllerParams& p) {
  const double s = p.r_s;
  const double k = p.k;
  const double sk = s * k;
  const double sk2 = sk * sk;
  const double a = 9.0 * sk2 * sk2 + std::sqrt(81.0 * std::pow(sk, 8) + 12.0 * std::pow(sk, 6));
  return std::cbrt(a / (18.0 * std::pow(k, 6))) - std::cbrt((2.0 / 3.0) * std::pow(s, 6) / a);
}

double epsilon_max(const ControllerParams& p) {
  if (!inner_region_nonempty(p)) {
    throw NotApplicableError(
        "epsilon_max: k < sqrt(5)/r_d, the inner equilibria do not exist");
  }
  const double r_star = inner_margin_minimizer(p);
  return std::min(std::abs(inner_margin(p, r_star)), 1.0 / p.r_d);
}

std::optional<InnerRadii> inner_radii_epsilon(const ControllerParams& p, double eps) {
  if (!(eps > 0.0)) return std::nullopt;
  const auto radii = inner_radii(p);
  if (!radii) return std::nullopt;
  const double r_star = inner_margin_minimizer(p);
  const auto shifted = [&p, eps](double r) { return inner_margin(p, r) + eps; };
  if (shifted(r_star) >= 0.0) return std::nullopt;
  // g + eps = eps > 0 at both equilibria, negative at the minimizer.
  return InnerRadii{bisect(shifted, radii->minus, r_star, kRootTol),
                    bisect(shifted, r_star, radii->plus, kRootTol)};
}

double inner_quartic_residual(const ControllerParams& p, double eps, double r) {
  const double c = p.r_s * p.r_s / (p.k * p.k);
  const double r2 = r * r;
  return r2 * r2 + c * (eps * eps - p.k * p.k) * r2 + 2.0 * eps * c * r + c;
}

bool RecurrentSet::contains(double r, double theta) const {
  if (r > 0.0 && r < r_i_minus_eps && theta > kPi && theta < kTwoPi) {
    return true;
  }
  if (r > r_i_plus_eps && r < r_a_eps) {
    if (variant == SetVariant::kFullAnnulus) return true;
    return theta > 0.0 && theta < kPi;
  }
  return false;
}

RecurrentSet recurrent_set(const ControllerParams& p, double eps, SetVariant variant) {
  double eps_max = 0.0;
  try {
    eps_max = epsilon_max(p);
  } catch (const NotApplicableError& e) {
    throw NoSolutionError(std::string("recurrent_set: ") + e.what());
  }
  if (!(eps > 0.0) || eps >= eps_max || eps >= p.k) {
    std::ostringstream msg;
    msg.precision(10);
    msg << "recurrent_set: eps = " << eps << " is infeasible; it must satisfy 0 < eps < eps_max = "
        << eps_max;
    throw NoSolutionError(msg.str());
  }
  const auto inner = inner_radii_epsilon(p, eps);
  if (!inner) {
    throw NoSolutionError("recurrent_set: inner eps-boundaries do not exist");
  }
  return {eps, inner->minus, inner->plus, r_a_epsilon(p, eps), variant};
}

RecurrenceBound recurrence_bound(const ControllerParams& p, const RecurrentSet& set, double r0,
                                 double theta0) {
  check_range(r0, "recurrence_bound");
  if (set.contains(r0, theta0)) {
    return {0.0, true};
  }
  const double v = p.k * std::abs(r0 - p.r_s) + theta0 + kTwoPi;
  return {v / (p.speed * set.epsilon), false};
}

RecurrenceBound recurrence_bound(const ControllerParams& p, double eps, double r0, double theta0) {
  return recurrence_bound(p, recurrent_set(p, eps), r0, theta0);
}

GridCheckResult check_generator_on_grid(const ControllerParams& p, const RecurrentSet& set,
                                        const GridSpec& grid) {
  GridCheckResult out;
  out.max_generator = -std::numeric_limits<double>::infinity();
  const double limit = -set.epsilon + grid.tolerance;
  const auto theta_count = static_cast<std::size_t>(std::ceil(kTwoPi / grid.theta_step));
  for (std::size_t j = 1; j <= grid.r_count; ++j) {
    const double r = grid.r_step * static_cast<double>(j);
    if (std::abs(r - p.r_s) < grid.singular_exclusion) {
      out.skipped_singular += theta_count;
      continue;
    }
    for (std::size_t m = 0; m < theta_count; ++m) {
      const double theta = grid.theta_step * static_cast<double>(m);
      if (theta >= kTwoPi) break;
      if (set.contains(r, theta)) {
        ++out.skipped_inside;
        continue;
      }
      const double lv = generator_lyapunov(p, r, theta);
      ++out.evaluated;
      out.max_generator = std::max(out.max_generator, lv);
      if (lv > limit) {
        ++out.violation_count;
        if (lv > 0.0) ++out.positive_count;
        if (out.violations.size() < grid.max_recorded) {
          out.violations.push_back({r, theta, lv});
        }
      }
    }
  }
  return out;
}

}  // namespace circnav
