#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "softarm/errors.hpp"
#include "softarm/statics_multi.hpp"
#include "softarm/statics_single.hpp"

namespace softarm {
namespace {

const SectionParams kP = reference_section();
const SolverSettings kS{};

SectionParams with_cables(int n) {
  SectionParams p = kP;
  p.cable_count = n;
  return p;
}

std::vector<double> lengths_of(const MultiCableSolution& sol) {
  std::vector<double> l;
  for (const CableState& c : sol.cables) l.push_back(c.length);
  return l;
}

MultiCableState state_of(const MultiCableSolution& sol) {
  MultiCableState x;
  x.curvature = sol.config.curvature();
  x.orientation = sol.config.orientation();
  for (const CableState& c : sol.cables) {
    x.incident.push_back(c.incident_angle);
    x.cable_curvature.push_back(c.curvature);
    x.tension.push_back(c.tension);
    x.length.push_back(c.length);
  }
  return x;
}

TEST(Geometry, OffsetsFollowAzimuth) {
  const CableGeometry g0 = cable_geometry(0, 3, 0.0, 1.25);
  EXPECT_NEAR(g0.beta, 0.0, 1e-15);
  EXPECT_NEAR(g0.neutral_offset, 1.25, 1e-15);
  const CableGeometry g1 = cable_geometry(1, 3, 0.0, 1.25);
  EXPECT_NEAR(g1.neutral_offset, 1.25 * std::cos(kTwoPi / 3), 1e-15);
  const CableGeometry g2 = cable_geometry(2, 4, deg_to_rad(30), 2.0);
  EXPECT_NEAR(g2.neutral_offset, 2.0 * std::cos(kPi - deg_to_rad(30)), 1e-14);
}

TEST(Geometry, OffsetsSumToZero) {
  for (int n = 3; n <= 6; ++n) {
    double sum = 0.0;
    for (int i = 0; i < n; ++i) sum += cable_geometry(i, n, 0.7, 1.25).neutral_offset;
    EXPECT_NEAR(sum, 0.0, 1e-14) << n;
  }
}

TEST(Slack, MostOpposedCable) {
  EXPECT_EQ(select_slack_cable(3, 0.0), 1);  // cables 1 and 2 tie, lowest index wins
  EXPECT_EQ(select_slack_cable(3, deg_to_rad(60)), 2);
  EXPECT_EQ(select_slack_cable(3, deg_to_rad(180)), 0);
  EXPECT_EQ(slack_cables(3, 0.3), std::vector<int>{select_slack_cable(3, 0.3)});
}

TEST(Slack, LeavesTwoActiveCables) {
  for (int n = 4; n <= 6; ++n) {
    const std::vector<int> s = slack_cables(n, 0.4);
    EXPECT_EQ(static_cast<int>(s.size()), n - 2);
    for (size_t k = 1; k < s.size(); ++k) {
      EXPECT_LE(std::cos(cable_geometry(s[k - 1], n, 0.4, 1.0).beta),
                std::cos(cable_geometry(s[k], n, 0.4, 1.0).beta) + 1e-12);
    }
  }
}

TEST(Inverse, ResidualAndLateralBalanceAtSolution) {
  const MultiCableSolution sol =
      solve_inverse_multi(BendingConfig::from_angle(deg_to_rad(120), deg_to_rad(40), kP.length), kP,
                          kS);
  const MultiCableState x = state_of(sol);
  EXPECT_LT(residual_multi(x, kP).cwiseAbs().maxCoeff(), 1e-8);
  double lateral = 0.0;
  for (double m : lateral_moments(x, kP)) lateral += m;
  EXPECT_NEAR(lateral, 0.0, 1e-8);
  int slack = 0;
  for (const CableState& c : sol.cables) {
    slack += c.slack;
    if (c.slack) {
      EXPECT_EQ(c.tension, 0.0);
    } else {
      EXPECT_GE(c.tension, -kS.tension_tol);
    }
  }
  EXPECT_EQ(slack, 1);
}

TEST(Roundtrip, ThreeCableGrid) {
  for (int deg = 10; deg <= 180; deg += 10) {
    for (int gdeg = 0; gdeg < 360; gdeg += 15) {
      const BendingConfig cfg =
          BendingConfig::from_angle(deg_to_rad(deg), deg_to_rad(gdeg), kP.length);
      const std::vector<double> l = lengths_of(solve_inverse_multi(cfg, kP, kS));
      const MultiCableSolution back = solve_forward_multi(l, kP, kS);
      EXPECT_NEAR(back.config.curvature(), cfg.curvature(), 1e-6) << deg << " " << gdeg;
      EXPECT_NEAR(wrap_to_pi(back.config.orientation() - cfg.orientation()), 0.0, 1e-6)
          << deg << " " << gdeg;
    }
  }
}

TEST(Roundtrip, MoreCables) {
  for (int n = 4; n <= 6; ++n) {
    const SectionParams p = with_cables(n);
    for (int deg : {30, 90, 180}) {
      for (int gdeg = 0; gdeg < 360; gdeg += 20) {
        const BendingConfig cfg =
            BendingConfig::from_angle(deg_to_rad(deg), deg_to_rad(gdeg), p.length);
        const std::vector<double> l = lengths_of(solve_inverse_multi(cfg, p, kS));
        const MultiCableSolution back = solve_forward_multi(l, p, kS);
        EXPECT_NEAR(back.config.curvature(), cfg.curvature(), 1e-6) << n << " " << deg;
        EXPECT_NEAR(wrap_to_pi(back.config.orientation() - cfg.orientation()), 0.0, 1e-6)
            << n << " " << deg << " " << gdeg;
      }
    }
  }
}

TEST(Symmetry, MirrorOrientationEqualizesPair) {
  const MultiCableSolution sol = solve_inverse_multi(
      BendingConfig::from_angle(deg_to_rad(90), deg_to_rad(60), kP.length), kP, kS);
  EXPECT_NEAR(sol.cables[0].length, sol.cables[1].length, 1e-9);
  EXPECT_TRUE(sol.cables[2].slack);
}

TEST(Symmetry, RotationByCableSpacingPermutes) {
  const double spacing = kTwoPi / 3;
  for (int deg : {40, 130}) {
    for (double g : {0.1, 0.9, 2.0}) {
      const auto a = lengths_of(solve_inverse_multi(
          BendingConfig::from_angle(deg_to_rad(deg), g, kP.length), kP, kS));
      const auto b = lengths_of(solve_inverse_multi(
          BendingConfig::from_angle(deg_to_rad(deg), g + spacing, kP.length), kP, kS));
      for (int i = 0; i < 3; ++i) EXPECT_NEAR(b[i], a[(i + 2) % 3], 1e-9) << deg << " " << g;
    }
  }
}

TEST(Symmetry, FullTurnInvariant) {
  const auto a = lengths_of(
      solve_inverse_multi(BendingConfig::from_angle(1.5, 0.4, kP.length), kP, kS));
  const auto b = lengths_of(
      solve_inverse_multi(BendingConfig::from_angle(1.5, 0.4 + kTwoPi, kP.length), kP, kS));
  for (int i = 0; i < 3; ++i) EXPECT_NEAR(a[i], b[i], 1e-12);
}

TEST(Consistency, AlignedCableMatchesSingleCableModel) {
  for (int deg : {20, 100, 180}) {
    const double k = deg_to_rad(deg) / kP.length;
    const SingleCableState single = solve_inverse_single(k, kP, kS);
    const MultiCableSolution multi = solve_inverse_multi(BendingConfig(k, 0.0), kP, kS);
    // lateral balance leaves the other free cable unloaded
    EXPECT_NEAR(multi.cables[0].length, single.length, 1e-6) << deg;
  }
}

TEST(Straight, EqualFullLengths) {
  const std::vector<double> l(3, kP.length);
  const MultiCableSolution sol = solve_forward_multi(l, kP, kS);
  EXPECT_TRUE(sol.config.straight());
  const MultiCableSolution inv = solve_inverse_multi(BendingConfig(0.0, 0.0), kP, kS);
  for (const CableState& c : inv.cables) EXPECT_EQ(c.length, kP.length);
}

TEST(Straight, CommonContractionIsInfeasible) {
  const std::vector<double> l(3, kP.length - 0.5);
  EXPECT_THROW(solve_forward_multi(l, kP, kS), Infeasible);
}

TEST(Domain, BadRequests) {
  EXPECT_THROW(solve_forward_multi(std::vector<double>{9.0, 9.0}, kP, kS), DomainError);
  EXPECT_THROW(solve_forward_multi(std::vector<double>{9.0, -1.0, 9.0}, kP, kS), DomainError);
  EXPECT_THROW(solve_inverse_multi(BendingConfig(kP.max_curvature() * 1.1, 0.0), kP, kS),
               DomainError);
}

TEST(Baseline, RoundtripExact) {
  const BendingConfig cfg(0.12, 1.1);
  const BaselineFit fit = baseline_forward(baseline_inverse(cfg, kP), kP);
  EXPECT_NEAR(fit.config.curvature(), 0.12, 1e-12);
  EXPECT_NEAR(fit.config.orientation(), 1.1, 1e-12);
  EXPECT_LT(fit.residual_norm, 1e-12);
}

}  // namespace
}  // namespace softarm
