#include "softarm/trajectory.hpp"

#include <cmath>
#include <string>

#include <Eigen/Geometry>

#include "softarm/errors.hpp"

namespace softarm {

const char* to_string(TrajectoryKind kind) {
  switch (kind) {
    case TrajectoryKind::Circle: return "circle";
    case TrajectoryKind::Line: return "line";
    case TrajectoryKind::Point: return "point";
  }
  return "unknown";
}

TrajectoryKind parse_trajectory_kind(std::string_view name) {
  if (name == "circle") return TrajectoryKind::Circle;
  if (name == "line") return TrajectoryKind::Line;
  if (name == "point") return TrajectoryKind::Point;
  throw ConfigError("unknown trajectory kind '" + std::string(name) + "'");
}

const TrajectorySpec& validate_trajectory(const TrajectorySpec& spec) {
  if (!(spec.duration > 0.0)) throw ConfigError("trajectory duration must be > 0");
  if (!(spec.dt > 0.0)) throw ConfigError("trajectory dt must be > 0");
  if (spec.kind == TrajectoryKind::Circle) {
    if (!(spec.radius > 0.0)) throw ConfigError("circle radius must be > 0");
    if (!(spec.normal.norm() > 0.0)) throw ConfigError("circle normal must be nonzero");
  }
  return spec;
}

std::vector<TrajectorySample> gen_trajectory(const TrajectorySpec& spec) {
  validate_trajectory(spec);
  const auto count = static_cast<long>(std::llround(spec.duration / spec.dt));
  std::vector<TrajectorySample> out;
  out.reserve(count + 1);

  const Eigen::Vector3d n = spec.normal.normalized();
  const Eigen::Vector3d u = n.unitOrthogonal();
  const Eigen::Vector3d v = n.cross(u);
  const double omega = kTwoPi / spec.duration;

  for (long k = 0; k <= count; ++k) {
    TrajectorySample x;
    x.t = static_cast<double>(k) * spec.dt;
    switch (spec.kind) {
      case TrajectoryKind::Circle: {
        const double c = std::cos(omega * x.t);
        const double s = std::sin(omega * x.t);
        x.position = spec.center + spec.radius * (c * u + s * v);
        x.velocity = spec.radius * omega * (-s * u + c * v);
        break;
      }
      case TrajectoryKind::Line: {
        const Eigen::Vector3d rate = (spec.end - spec.center) / spec.duration;
        x.position = spec.center + rate * x.t;
        x.velocity = rate;
        break;
      }
      case TrajectoryKind::Point:
        x.position = spec.center;
        break;
    }
    out.push_back(x);
  }
  return out;
}

}  // namespace softarm
