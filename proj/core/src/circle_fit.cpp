#include "circnav/circle_fit.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <vector>

#include "circnav/errors.hpp"

namespace circnav {

Circle fit_circle(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) throw DomainError("fit_circle: coordinate arrays differ in length");
  const auto n = static_cast<Eigen::Index>(xs.size());
  if (n < 3) throw DomainError("fit_circle: at least three points are required");

  const Eigen::Map<const Eigen::VectorXd> x(xs.data(), n);
  const Eigen::Map<const Eigen::VectorXd> y(ys.data(), n);
  // Centering keeps the normal equations well conditioned far from the origin.
  const double mx = x.mean();
  const double my = y.mean();
  const Eigen::VectorXd xc = x.array() - mx;
  const Eigen::VectorXd yc = y.array() - my;

  Eigen::MatrixXd a(n, 3);
  a.col(0) = xc;
  a.col(1) = yc;
  a.col(2).setOnes();
  const Eigen::VectorXd b = -(xc.array().square() + yc.array().square()).matrix();

  const Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(a);
  if (qr.rank() < 3) throw DomainError("fit_circle: points are collinear or repeated");
  const Eigen::Vector3d sol = qr.solve(b);

  const double cx = -0.5 * sol(0);
  const double cy = -0.5 * sol(1);
  const double r2 = cx * cx + cy * cy - sol(2);
  if (!(r2 > 0.0)) throw DomainError("fit_circle: degenerate fit");
  return {cx + mx, cy + my, std::sqrt(r2)};
}

double swept_angle(const Trajectory& traj, double t_burn) {
  double total = 0.0;
  bool have_prev = false;
  double prev = 0.0;
  for (const auto& s : traj.samples) {
    if (s.t < t_burn) continue;
    const double phi = std::atan2(s.cart.y, s.cart.x);
    if (have_prev) total += std::abs(std::remainder(phi - prev, kTwoPi));
    prev = phi;
    have_prev = true;
  }
  return total;
}

Circle fit_orbit_circle(const Trajectory& traj, double t_burn) {
  if (swept_angle(traj, t_burn) < kTwoPi) {
    throw DomainError("fit_orbit_circle: post burn-in segment covers less than one revolution");
  }
  std::vector<double> xs;
  std::vector<double> ys;
  xs.reserve(traj.size());
  ys.reserve(traj.size());
  for (const auto& s : traj.samples) {
    if (s.t < t_burn) continue;
    xs.push_back(s.cart.x);
    ys.push_back(s.cart.y);
  }
  return fit_circle(xs, ys);
}

}  // namespace circnav
