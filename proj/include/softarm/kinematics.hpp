#pragma once

#include <span>
#include <vector>

#include <Eigen/Core>

#include "softarm/model.hpp"

namespace softarm {

/// Homogeneous 4x4 transform (rotation block plus translation in cm).
using Transform = Eigen::Matrix4d;

/// True when the rotation block is orthonormal with det +1 and the bottom
/// row is (0, 0, 0, 1), all within `tol`.
bool is_rigid_transform(const Transform& t, double tol = 1e-12);

/// Base-to-end transform of one section: endcap, constant-curvature arc in
/// the plane at azimuth `orientation`, endcap. Below `delta_kappa` the arc
/// offset uses its series in the bending angle.
Transform section_transform(double bend_angle, double orientation, double curvature,
                            const SectionParams& p, double delta_kappa = 1e-6);

/// Stacked configuration q = [gamma_1, kappa_1, ..., gamma_m, kappa_m].
struct ArmConfig {
  Eigen::VectorXd q;
  std::vector<SectionParams> sections;

  int section_count() const { return static_cast<int>(sections.size()); }
  double orientation(int i) const { return q[2 * i]; }
  double curvature(int i) const { return q[2 * i + 1]; }
  BendingConfig bending(int i) const { return {curvature(i), orientation(i)}; }
};

/// Straight arm of `m` identical sections.
ArmConfig straight_arm(int m, const SectionParams& p);

/// Throws InvalidParams on a size mismatch or invalid section, DomainError on
/// negative curvature.
void validate_arm(const ArmConfig& arm);

struct ForwardKinematics {
  Eigen::Vector3d tip = Eigen::Vector3d::Zero();
  Transform chain = Transform::Identity();
};

ForwardKinematics forward_kinematics(const ArmConfig& arm, double delta_kappa = 1e-6);

/// 3 x 2m linear velocity Jacobian of the tip by central differences. Sections
/// with kappa < delta_kappa are differentiated at kappa + delta_kappa.
Eigen::MatrixXd jacobian(const ArmConfig& arm, double delta_kappa = 1e-6);

/// J^T (J J^T + k^2 I)^-1.
Eigen::MatrixXd damped_pseudoinverse(const Eigen::MatrixXd& j, double damping);

struct IKSettings {
  double damping = 1e-2;                             // k
  Eigen::Vector3d gain = Eigen::Vector3d::Ones();    // diagonal of K (1/s)
  double dt = 0.02;                                  // s
  int max_steps = 2000;
  double target_tol = 1e-3;                          // cm
  double delta_kappa = 1e-6;                         // 1/cm
  double divergence_bound = 1e3;                     // cm
  Eigen::VectorXd null_velocity;                     // q_dot_0; empty means zero
};

/// Throws InvalidParams for non-positive k, gains, dt, step budget or tolerance.
const IKSettings& validate_ik_settings(const IKSettings& st);

struct TrajectorySample {
  double t = 0.0;
  Eigen::Vector3d position = Eigen::Vector3d::Zero();
  Eigen::Vector3d velocity = Eigen::Vector3d::Zero();
};

/// Flips negative curvatures to the opposite orientation, clamps curvature
/// to [0, pi/L] and wraps orientations into [0, 2*pi).
void normalize_config(ArmConfig& arm);

/// One closed-loop update q += J^+ (x_dot_d + K E) dt (+ null-space term),
/// followed by normalize_config.
void ik_step(ArmConfig& arm, const Eigen::Vector3d& velocity, const Eigen::Vector3d& error,
             const IKSettings& st);

struct IKStep {
  double t = 0.0;
  Eigen::VectorXd q;   // configuration used at t
  double error = 0.0;  // |x_d(t) - fk(q)| (cm)
};

/// Closed-loop tracking over the samples, one update per sample.
/// Throws Diverged after 10 consecutive steps with error above the bound.
std::vector<IKStep> ik_track(std::span<const TrajectorySample> samples, const ArmConfig& start,
                             const IKSettings& st);

struct IKResult {
  ArmConfig arm;
  int steps = 0;
  double error = 0.0;
  bool converged = false;
};

/// Drives the tip to a fixed target (x_dot_d = 0) until the error is below
/// `tol` or `st.max_steps` updates have been made.
IKResult ik_converge(const Eigen::Vector3d& target, const ArmConfig& start, const IKSettings& st,
                     double tol);
inline IKResult ik_converge(const Eigen::Vector3d& target, const ArmConfig& start,
                            const IKSettings& st) {
  return ik_converge(target, start, st, st.target_tol);
}

/// m x n cable lengths of every section for each configuration. Errors are
/// rethrown with the step and section index.
std::vector<Eigen::MatrixXd> configs_to_cable_lengths(std::span<const ArmConfig> configs,
                                                      CableModel model, const SolverSettings& s);

}  // namespace softarm
