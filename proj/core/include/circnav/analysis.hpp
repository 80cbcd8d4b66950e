#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "circnav/control.hpp"
#include "circnav/geometry.hpp"

namespace circnav {

/// Circular equilibria of the inner branch, 0 < minus <= plus < r_s. They
/// exist only when k >= sqrt(5)/r_d.
struct InnerRadii {
  double minus = 0.0;
  double plus = 0.0;
};

/// Roots of r^2 = [r_s^2 +- sqrt(r_s^4 - 4 r_s^2/k^2)] / 2, or nullopt when the
/// discriminant is negative or r_s = 0.
std::optional<InnerRadii> inner_radii(const ControllerParams& p);

/// Left side of k^2 r^4 - k^2 r_s^2 r^2 + r_s^2 = 0.
double inner_radius_residual(const ControllerParams& p, double r);

/// V(r, theta) = (k/V)|r - r_s| + (theta/V) sgn(r - r_s) + 2pi/V, sgn(0) = 0.
double lyapunov(const ControllerParams& p, double r, double theta);

/// Generator of the closed-loop diffusion applied to the Lyapunov function.
/// The diffusion term drops out because V is linear in theta. Throws
/// UndefinedPointError at r = r_s where V has a kink.
double generator_lyapunov(const ControllerParams& p, double r, double theta);

/// g(r) = 1/r - (k/r_s) sqrt(r_s^2 - r^2), the worst-case (sin theta = -1)
/// generator value inside the singular circle.
double inner_margin(const ControllerParams& p, double r);

/// Outer boundary r_{a,eps}: the radius beyond which the generator is at most
/// -eps for every theta. Requires 0 < eps < k; throws NoSolutionError otherwise.
double r_a_epsilon(const ControllerParams& p, double eps);

/// Worst-case generator value (1/r)(1 - k sqrt(r^2 - r_s^2)) for r >= r_s.
double outer_margin(const ControllerParams& p, double r);

/// The two roots of g(r) = -eps bracketing the minimizer of g, found by
/// bisection. nullopt when eps >= |min g| or the inner region is empty.
std::optional<InnerRadii> inner_radii_epsilon(const ControllerParams& p, double eps);

/// Left side of the (sign-corrected) quartic
///   r^4 + (r_s^2/k^2)(eps^2 - k^2) r^2 + 2 eps (r_s^2/k^2) r + r_s^2/k^2 = 0
/// satisfied by both inner eps-boundaries.
double inner_quartic_residual(const ControllerParams& p, double eps, double r);

/// Minimizer r_* of g on (0, r_s): r_*^2 is the positive root of
/// y^3 + (s^2/k^2) y - s^4/k^2 = 0, s = r_s.
double inner_margin_minimizer(const ControllerParams& p);

/// Closed-form radical expression for r_*^2; used to cross-check the bisection.
double inner_margin_minimizer_sq_closed_form(const ControllerParams& p);

/// Largest admissible eps: min(|g(r_*)|, 1/r_d). Throws NotApplicableError if
/// k < sqrt(5)/r_d (no inner equilibria).
double epsilon_max(const ControllerParams& p);

enum class SetVariant {
  kFullAnnulus,  ///< outer piece spans every theta
  kStrictTheta,  ///< outer piece restricted to theta in (0, pi)
};

/// The recurrent set
///   {(0, r_{i-,eps}) x (pi, 2pi)}  U  {(r_{i+,eps}, r_{a,eps}) x Theta}
/// with Theta = (0, pi) for kStrictTheta and [0, 2pi) for kFullAnnulus.
struct RecurrentSet {
  double epsilon = 0.0;
  double r_i_minus_eps = 0.0;
  double r_i_plus_eps = 0.0;
  double r_a_eps = 0.0;
  SetVariant variant = SetVariant::kFullAnnulus;

  bool contains(double r, double theta) const;
  bool contains(const PolarState& s) const { return contains(s.r, s.theta); }
};

/// Throws NoSolutionError (with eps_max in the message) when eps is not in
/// (0, epsilon_max(p)).
RecurrentSet recurrent_set(const ControllerParams& p, double eps,
                           SetVariant variant = SetVariant::kFullAnnulus);

struct RecurrenceBound {
  double seconds = 0.0;
  /// Initial point already lies in the set; seconds is 0.
  bool inside = false;
};

/// Expected recurrence-time bound (k|r0 - r_s| + theta0 + 2pi) / (V eps).
RecurrenceBound recurrence_bound(const ControllerParams& p, const RecurrentSet& set, double r0,
                                 double theta0);
RecurrenceBound recurrence_bound(const ControllerParams& p, double eps, double r0, double theta0);

/// One grid point where the generator exceeds -eps + tolerance.
struct GridViolation {
  double r = 0.0;
  double theta = 0.0;
  double generator = 0.0;
};

struct GridCheckResult {
  std::size_t evaluated = 0;        ///< points outside the set that were checked
  std::size_t skipped_inside = 0;   ///< points inside the set
  std::size_t skipped_singular = 0; ///< points with |r - r_s| below the exclusion width
  double max_generator = 0.0;       ///< max generator value over evaluated points
  std::size_t violation_count = 0;  ///< points with generator > -eps + tolerance
  std::size_t positive_count = 0;   ///< violations with generator > 0
  std::vector<GridViolation> violations;  ///< first GridSpec::max_recorded violations

  bool ok() const { return violation_count == 0; }
};

struct GridSpec {
  double r_step = 0.01;
  std::size_t r_count = 1500;  ///< r_j = r_step * j, j = 1..r_count
  double theta_step = 0.005;   ///< theta_m = theta_step * m over [0, 2pi)
  double singular_exclusion = 1e-6;
  double tolerance = 1e-9;
  std::size_t max_recorded = 1000;  ///< violations kept in the list (all are counted)
};

/// Evaluates the generator on the grid and reports every point outside the set
/// where it exceeds -eps + tolerance.
GridCheckResult check_generator_on_grid(const ControllerParams& p, const RecurrentSet& set,
                                        const GridSpec& grid = {});

/// Bisection for a sign change of f on [lo, hi]. Stops when the bracket is
/// narrower than tol or after max_iter halvings. Throws NoSolutionError when
/// f(lo) and f(hi) have the same sign.
double bisect(const std::function<double(double)>& f, double lo, double hi, double tol = 1e-14,
              int max_iter = 200);

}  // namespace circnav
