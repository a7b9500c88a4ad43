#pragma once

#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "softarm/kinematics.hpp"

namespace softarm {

enum class TrajectoryKind { Circle, Line, Point };

const char* to_string(TrajectoryKind kind);
TrajectoryKind parse_trajectory_kind(std::string_view name);

struct TrajectorySpec {
  TrajectoryKind kind = TrajectoryKind::Point;
  Eigen::Vector3d center = Eigen::Vector3d::Zero();  // circle center, line start, or the point
  double radius = 0.0;                               // circle only (cm)
  Eigen::Vector3d end = Eigen::Vector3d::Zero();     // line only
  Eigen::Vector3d normal = Eigen::Vector3d::UnitZ(); // circle plane normal
  double duration = 1.0;                             // s; one full turn for circles
  double dt = 0.02;                                  // s
};

/// Throws ConfigError for a non-positive duration, dt or circle radius, or a
/// zero normal.
const TrajectorySpec& validate_trajectory(const TrajectorySpec& spec);

/// Samples at t_k = k dt for k = 0..round(duration/dt), with exact
/// derivatives. Circles start at center + radius * u, where u is
/// normal.unitOrthogonal(), and run counterclockwise about the normal.
std::vector<TrajectorySample> gen_trajectory(const TrajectorySpec& spec);

}  // namespace softarm
