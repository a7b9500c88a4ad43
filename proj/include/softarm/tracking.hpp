#pragma once

#include <span>
#include <vector>

#include <Eigen/Core>

#include "softarm/kinematics.hpp"
#include "softarm/model.hpp"
#include "softarm/trajectory.hpp"

namespace softarm {

struct TrackingStep {
  double t = 0.0;
  Eigen::Vector3d desired = Eigen::Vector3d::Zero();
  Eigen::Vector3d achieved = Eigen::Vector3d::Zero();
  double error = 0.0;         // |desired - achieved| (cm)
  Eigen::VectorXd q;          // IK reference configuration
  Eigen::VectorXd plant_q;    // configuration the plant settles in
  Eigen::MatrixXd lengths;    // controller cable commands, sections x cables
};

struct TrackingReport {
  std::vector<TrackingStep> steps;
  double mean_error = 0.0;
  double max_error = 0.0;
};

/// Open-loop cable control of a simulated arm. IK first settles on the start
/// of the trajectory, then per sample: closed-loop IK reference, controller
/// model lengths, plant model forward statics per section, forward
/// kinematics of the plant configuration.
/// Throws NoConvergence if the start point cannot be reached; statics and IK
/// errors are rethrown with the step index.
TrackingReport simulate_tracking(const TrajectorySpec& spec, CableModel plant,
                                 CableModel controller, const std::vector<SectionParams>& arm,
                                 const IKSettings& ik, const SolverSettings& s);

/// Runs IK from `start` to a fixed point, settling to 1e-3 * target_tol with
/// ten times the step budget. Throws NoConvergence when the final error is
/// still above target_tol.
IKResult settle_ik(const Eigen::Vector3d& target, const ArmConfig& start, const IKSettings& ik);

/// Plant configuration of one section driven by `lengths`.
BendingConfig plant_response(std::span<const double> lengths, CableModel plant,
                             const SectionParams& p, const SolverSettings& s);

}  // namespace softarm
