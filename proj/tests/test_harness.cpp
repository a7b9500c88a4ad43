#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>
#include <json.hpp>

#include "oracle_values.hpp"
#include "softarm/compare.hpp"
#include "softarm/config.hpp"
#include "softarm/errors.hpp"
#include "softarm/table.hpp"
#include "softarm/tracking.hpp"
#include "softarm/trajectory.hpp"

namespace softarm {
namespace {

const SectionParams kP = reference_section();

// Circle traced by the tip of one section held at a fixed bending angle.
TrajectorySpec single_section_circle(double duration) {
  const double phi = deg_to_rad(60);
  const double k = phi / kP.length;
  TrajectorySpec t;
  t.kind = TrajectoryKind::Circle;
  t.radius = (1 - std::cos(phi)) / k + kP.endcap * std::sin(phi);
  t.center = {0.0, 0.0, kP.endcap + std::sin(phi) / k + kP.endcap * std::cos(phi)};
  t.duration = duration;
  return t;
}

TEST(Trajectory, CircleSamples) {
  TrajectorySpec t;
  t.kind = TrajectoryKind::Circle;
  t.center = {1.0, 2.0, 15.0};
  t.radius = 2.0;
  t.duration = 4.0;
  t.dt = 0.1;
  const auto s = gen_trajectory(t);
  ASSERT_EQ(s.size(), 41u);
  EXPECT_NEAR(s.back().t, 4.0, 1e-12);
  for (const TrajectorySample& x : s) {
    EXPECT_NEAR((x.position - t.center).norm(), 2.0, 1e-12);
    EXPECT_NEAR(x.position.z(), 15.0, 1e-12);
    EXPECT_NEAR(x.velocity.norm(), 2.0 * kTwoPi / 4.0, 1e-12);
    EXPECT_NEAR(x.velocity.dot(x.position - t.center), 0.0, 1e-12);
  }
  EXPECT_LT((s.front().position - s.back().position).norm(), 1e-12);
  // velocity is the derivative of position; central difference error is |v| (w h)^2 / 6
  const double w = kTwoPi / 4.0;
  const Eigen::Vector3d fd = (s[11].position - s[9].position) / 0.2;
  EXPECT_LT((fd - s[10].velocity).norm(), 1.01 * 2.0 * w * std::pow(w * 0.1, 2) / 6);
}

TEST(Trajectory, LineAndPoint) {
  TrajectorySpec t;
  t.kind = TrajectoryKind::Line;
  t.center = {-3.0, 2.0, 17.0};
  t.end = {3.0, -2.0, 15.0};
  t.duration = 2.0;
  const auto s = gen_trajectory(t);
  EXPECT_LT((s.front().position - t.center).norm(), 1e-14);
  EXPECT_LT((s.back().position - t.end).norm(), 1e-12);
  EXPECT_LT((s[5].velocity - (t.end - t.center) / 2.0).norm(), 1e-14);

  t.kind = TrajectoryKind::Point;
  for (const TrajectorySample& x : gen_trajectory(t)) {
    EXPECT_EQ(x.position, t.center);
    EXPECT_EQ(x.velocity, Eigen::Vector3d::Zero());
  }
}

TEST(Trajectory, Validation) {
  TrajectorySpec t;
  t.dt = 0.0;
  EXPECT_THROW(validate_trajectory(t), ConfigError);
  t = TrajectorySpec{};
  t.kind = TrajectoryKind::Circle;
  EXPECT_THROW(validate_trajectory(t), ConfigError);
  EXPECT_EQ(parse_trajectory_kind("line"), TrajectoryKind::Line);
  EXPECT_THROW(parse_trajectory_kind("spiral"), ConfigError);
}

TEST(Tracking, MatchedModelsTrackClosely) {
  const TrackingReport r = simulate_tracking(single_section_circle(4.0), CableModel::Proposed,
                                             CableModel::Proposed, {kP}, IKSettings{},
                                             SolverSettings{});
  EXPECT_LT(r.mean_error, 1e-3);
  double sum = 0.0;
  double worst = 0.0;
  for (const TrackingStep& s : r.steps) {
    EXPECT_NEAR(s.error, (s.desired - s.achieved).norm(), 1e-15);
    sum += s.error;
    worst = std::max(worst, s.error);
  }
  EXPECT_NEAR(r.mean_error, sum / static_cast<double>(r.steps.size()), 1e-15);
  EXPECT_EQ(r.max_error, worst);
}

TEST(Tracking, ProposedControllerBeatsBaselineController) {
  const auto spec = single_section_circle(4.0);
  const TrackingReport proposed = simulate_tracking(spec, CableModel::Proposed,
                                                    CableModel::Proposed, {kP}, IKSettings{},
                                                    SolverSettings{});
  const TrackingReport baseline = simulate_tracking(spec, CableModel::Proposed,
                                                    CableModel::Baseline, {kP}, IKSettings{},
                                                    SolverSettings{});
  EXPECT_LT(proposed.mean_error, baseline.mean_error);
  EXPECT_GT(baseline.mean_error, 0.05);
}

TEST(Tracking, BaselinePlantWithBaselineController) {
  const TrackingReport r = simulate_tracking(single_section_circle(2.0), CableModel::Baseline,
                                             CableModel::Baseline, {kP}, IKSettings{},
                                             SolverSettings{});
  EXPECT_LT(r.mean_error, 1e-3);
}

TEST(Tracking, UnreachableStart) {
  TrajectorySpec t;
  t.center = {0.0, 0.0, 50.0};
  EXPECT_THROW(simulate_tracking(t, CableModel::Proposed, CableModel::Proposed, {kP},
                                 IKSettings{}, SolverSettings{}),
               NoConvergence);
}

TEST(Compare, SingleSweepAgainstOracle) {
  std::vector<double> angles;
  for (const auto& ref : testing::kSingleCableReference) angles.push_back(deg_to_rad(ref.phi_deg));
  const std::vector<double> gammas{0.0};
  const auto rows = compare_models(kP, angles, gammas, SolverSettings{});
  ASSERT_EQ(rows.size(), angles.size() * 4);
  for (size_t k = 0; k < angles.size(); ++k) {
    const auto& ref = testing::kSingleCableReference[k];
    EXPECT_EQ(rows[k].kind, "single");
    EXPECT_EQ(rows[k].status, "ok");
    EXPECT_NEAR(kP.length - rows[k].length_proposed, ref.delta_l_model, 1e-9);
    EXPECT_NEAR(kP.length - rows[k].length_baseline, ref.delta_l_baseline, 1e-12);
  }
  // the two models part ways at large bending
  const auto& last = rows[angles.size() - 1];
  EXPECT_GT(last.length_baseline - last.length_proposed, 0.1);
}

TEST(Compare, GridOrderAndTable) {
  const std::vector<double> angles{deg_to_rad(30), deg_to_rad(90)};
  const std::vector<double> gammas{0.0, deg_to_rad(45)};
  const auto rows = compare_models(kP, angles, gammas, SolverSettings{});
  ASSERT_EQ(rows.size(), 2u + 2 * 2 * 3);
  EXPECT_EQ(rows[2].kind, "multi");
  EXPECT_EQ(rows[2].cable, 1);
  EXPECT_EQ(rows[4].cable, 3);
  EXPECT_DOUBLE_EQ(rows[5].orientation, deg_to_rad(45));
  EXPECT_DOUBLE_EQ(rows[8].bend_angle, deg_to_rad(90));
  const Table t = compare_table(rows);
  EXPECT_EQ(t.columns.size(), 9u);
  EXPECT_EQ(t.rows.size(), rows.size());
}

TEST(TableOutput, CsvQuotingAndNumbers) {
  Table t;
  t.columns = {"a", "b", "c"};
  t.add({0.1, 3LL, std::string("x,y")});
  t.add({NAN, -1LL, std::string("say \"hi\"")});
  EXPECT_THROW(t.add({1.0}), std::invalid_argument);
  std::ostringstream os;
  write_csv(os, t);
  EXPECT_EQ(os.str(),
            "a,b,c\n0.10000000000000001,3,\"x,y\"\nnan,-1,\"say \"\"hi\"\"\"\n");
}

TEST(TableOutput, JsonRoundtrip) {
  Table t;
  t.columns = {"v", "n"};
  t.add({0.1, 2LL});
  t.add({INFINITY, 3LL});
  t.summary.emplace_back("mean", 1.5);
  std::ostringstream os;
  write_json(os, t);
  const auto doc = nlohmann::json::parse(os.str());
  EXPECT_EQ(doc["columns"][1], "n");
  EXPECT_EQ(doc["rows"][0]["v"].get<double>(), 0.1);
  EXPECT_TRUE(doc["rows"][1]["v"].is_null());
  EXPECT_EQ(doc["summary"]["mean"].get<double>(), 1.5);
  EXPECT_EQ(parse_output_format("json"), OutputFormat::Json);
  EXPECT_THROW(parse_output_format("xml"), ConfigError);
}

TEST(Config, FullDocument) {
  const RunConfig c = parse_config(R"({
    "arm": {"m": 2, "section": {"L": 9.3, "d": 1.25, "K_b": 20.02, "K_c": 3.1, "n": 3, "h": 1.0}},
    "solver": {"residual_tol": 1e-10, "delta_kappa": 1e-7},
    "ik": {"k": 0.05, "K": [2, 2, 2]},
    "trajectory": {"kind": "circle", "center": [0, 0, 20], "radius": 2, "duration": 60}
  })");
  ASSERT_EQ(c.sections.size(), 2u);
  EXPECT_DOUBLE_EQ(c.sections[1].cutin_stiffness, 3.1);
  EXPECT_DOUBLE_EQ(c.solver.residual_tol, 1e-10);
  EXPECT_EQ(c.solver.max_iter, SolverSettings{}.max_iter);
  EXPECT_DOUBLE_EQ(c.ik.delta_kappa, 1e-7);
  EXPECT_DOUBLE_EQ(c.ik.gain.x(), 2.0);
  ASSERT_TRUE(c.trajectory.has_value());
  EXPECT_EQ(c.trajectory->kind, TrajectoryKind::Circle);
  EXPECT_EQ(c.straight().q.size(), 4);
}

TEST(Config, SectionList) {
  const RunConfig c = parse_config(R"({"arm": {"sections": [
    {"L": 9.3, "d": 1.25, "K_b": 20.02, "K_c": 3.1, "n": 3, "h": 1.0},
    {"L": 8.0, "d": 1.0, "K_b": 15.0, "K_c": 4.0, "n": 4, "h": 0.5}]}})");
  ASSERT_EQ(c.sections.size(), 2u);
  EXPECT_EQ(c.sections[1].cable_count, 4);
  EXPECT_FALSE(c.trajectory.has_value());
}

TEST(Config, Rejections) {
  EXPECT_THROW(parse_config("{"), ConfigError);
  EXPECT_THROW(parse_config(R"({"solver": {}})"), ConfigError);
  EXPECT_THROW(parse_config(R"({"arm": {"m": 1, "section": {"L": 9.3}}})"), ConfigError);
  EXPECT_THROW(parse_config(R"({"arm": {"m": 1, "section": {"L": 9.3, "d": 1.25, "K_b": 20,
    "K_c": 3, "n": 3, "h": 1, "mass": 2}}})"),
               ConfigError);
  EXPECT_THROW(parse_config(R"({"arm": {"m": 1, "section": {"L": 9.3, "d": 1.25, "K_b": 20,
    "K_c": 3, "n": 2, "h": 1}}})"),
               InvalidParams);
  EXPECT_THROW(parse_config(R"({"arm": {"m": 1, "section": {"L": 9.3, "d": 1.25, "K_b": 20,
    "K_c": 3, "n": 3, "h": 1}}, "ik": {"K": [1, 1]}})"),
               ConfigError);
}

}  // namespace
}  // namespace softarm
