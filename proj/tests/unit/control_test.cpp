#include "circnav/control.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "circnav/analysis.hpp"
#include "circnav/errors.hpp"
#include "circnav/geometry.hpp"

namespace circnav {
namespace {

TEST(MakeParams, SingularRadius) {
  EXPECT_NEAR(make_params(1.0, 10, 1).r_s, 9.95, 0.005);
  // sqrt(75); a published 8.67 does not round from this.
  EXPECT_NEAR(make_params(0.2, 10, 1).r_s, 8.660254037844386, 1e-12);
  EXPECT_EQ(make_params(0.1, 10, 1).r_s, 0.0);
}

TEST(MakeParams, Errors) {
  EXPECT_THROW(make_params(0.05, 10, 1), InfeasibleGainError);
  EXPECT_THROW(make_params(1, 0, 1), DomainError);
  EXPECT_THROW(make_params(1, 10, -1), DomainError);
  EXPECT_THROW(make_params(1, 10, 0), DomainError);
}

TEST(MakeParams, InfeasibleGainMessageNamesConstraint) {
  try {
    make_params(0.05, 10, 1);
    FAIL();
  } catch (const InfeasibleGainError& e) {
    EXPECT_NE(std::string(e.what()).find("k >= 1/r_d"), std::string::npos);
  }
}

TEST(ControlMeasured, Examples) {
  const auto p = make_params(1, 10, 1);
  EXPECT_NEAR(control_measured(p, 10, 0), -0.1, 1e-15);
  EXPECT_DOUBLE_EQ(control_measured(p, p.r_s, 0.3), -0.3);
  // sqrt(r_s^2 - 25)/r_s with r_s^2 = 99
  EXPECT_NEAR(control_measured(p, 5, 0), 0.864566219253764, 1e-12);
  EXPECT_NEAR(control_bearing(p, 5, kPi / 2), 0.864566219253764, 1e-12);
  EXPECT_THROW(control_measured(p, 0, 0), DomainError);
  EXPECT_THROW(control_measured(p, -1, 0), DomainError);
}

TEST(ControlMeasured, NoisyMeasurementOutsideSpeedRangeIsUsedVerbatim) {
  const auto p = make_params(1, 10, 1);
  EXPECT_NEAR(control_measured(p, 10, 3.0) - control_measured(p, 10, 0.0), -3.0, 1e-14);
}

TEST(ControlBearing, Examples) {
  const auto p = make_params(1, 10, 1);
  EXPECT_NEAR(control_bearing(p, 10, kPi / 2), -0.1, 1e-15);
  EXPECT_NEAR(control_bearing(p, 12, 0), 0.44098300562505255, 1e-12);
  EXPECT_NEAR(control_measured(p, 12, range_rate(0, 1)), 0.44098300562505255, 1e-12);
  const auto q = make_params(0.2, 10, 1);
  EXPECT_DOUBLE_EQ(control_bearing(q, q.r_s, kPi), -0.2);
  EXPECT_THROW(control_bearing(p, 0, 0), DomainError);
}

TEST(ControlBearing, ZeroInsidePolicy) {
  const auto p = make_params(1, 10, 1);
  EXPECT_EQ(control_bearing(p, 5, 1.0, InnerPolicy::kZeroInside), 0.0);
  EXPECT_EQ(control_measured(p, 5, 0.4, InnerPolicy::kZeroInside), 0.0);
  EXPECT_EQ(control_bearing(p, 12, 1.0, InnerPolicy::kZeroInside), control_bearing(p, 12, 1.0));
}

TEST(ControlBearing, SaturationBound) {
  std::mt19937_64 gen(5);
  std::uniform_real_distribution<double> k_dist(0.1, 3.0);
  std::uniform_real_distribution<double> ang(0, kTwoPi);
  std::uniform_real_distribution<double> log_r(-6, 3);
  for (int batch = 0; batch < 10; ++batch) {
    const auto p = make_params(k_dist(gen), 10, 1 + batch * 0.3);
    for (int i = 0; i < 100000; ++i) {
      const double r = std::pow(10.0, log_r(gen));
      ASSERT_LE(std::abs(control_bearing(p, r, ang(gen))), p.saturation() + 1e-12);
    }
  }
}

TEST(ControlBearing, ContinuousAcrossSingularRadius) {
  for (double k : {0.2, 0.5, 1.0, 2.0}) {
    const auto p = make_params(k, 10, 1);
    for (double delta : {1e-3, 1e-6, 1e-9}) {
      const double bound = 4 * p.k * p.speed * std::sqrt(2 * delta / p.r_s);
      for (double theta = 0; theta < kTwoPi; theta += 0.01) {
        const double jump = std::abs(control_bearing(p, p.r_s + delta, theta) -
                                     control_bearing(p, p.r_s - delta, theta));
        ASSERT_LE(jump, bound) << "k=" << k << " delta=" << delta << " theta=" << theta;
      }
    }
  }
}

TEST(ControlForms, MeasuredMatchesBearing) {
  std::mt19937_64 gen(9);
  std::uniform_real_distribution<double> k_dist(0.1, 3.0);
  std::uniform_real_distribution<double> ang(0, kTwoPi);
  std::uniform_real_distribution<double> r_dist(0.01, 30);
  for (int i = 0; i < 100000; ++i) {
    const auto p = make_params(k_dist(gen), 10, 1.5);
    const double r = r_dist(gen);
    const double theta = ang(gen);
    ASSERT_NEAR(control_measured(p, r, -p.speed * std::cos(theta)), control_bearing(p, r, theta),
                1e-12);
  }
}

TEST(ControlBearing, OuterEquilibriumIsExact) {
  for (double k : {0.1, 0.3, 1.0, 2.5}) {
    const auto p = make_params(k, 10, 1);
    const double theta_dot = p.speed / p.r_d + control_measured(p, p.r_d, 0.0);
    EXPECT_NEAR(theta_dot, 0.0, 1e-14) << "k=" << k;
  }
}

TEST(ControlBearing, InnerEquilibriumIdentity) {
  for (double k : {std::sqrt(5.0) / 10, 0.3, 0.5, 1.0, 2.0, 5.0}) {
    const auto p = make_params(k, 10, 1);
    const auto radii = inner_radii(p);
    ASSERT_TRUE(radii.has_value()) << "k=" << k;
    for (double r : {radii->minus, radii->plus}) {
      EXPECT_NEAR(p.speed / r, control_bearing(p, r, kPi / 2), 1e-9) << "k=" << k << " r=" << r;
    }
  }
}

}  // namespace
}  // namespace circnav
