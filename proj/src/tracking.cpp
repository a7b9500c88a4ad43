#include "softarm/tracking.hpp"

#include <algorithm>
#include <string>

#include "softarm/errors.hpp"
#include "softarm/statics_multi.hpp"

namespace softarm {

BendingConfig plant_response(std::span<const double> lengths, CableModel plant,
                             const SectionParams& p, const SolverSettings& s) {
  if (plant == CableModel::Baseline) return baseline_forward(lengths, p).config;
  return solve_forward_multi(lengths, p, s).config;
}

IKResult settle_ik(const Eigen::Vector3d& target, const ArmConfig& start, const IKSettings& ik) {
  // Settle well below target_tol so the start-up transient does not show up
  // in a subsequent tracking error.
  IKSettings settle = ik;
  settle.max_steps = 10 * ik.max_steps;
  IKResult out = ik_converge(target, start, settle, 1e-3 * ik.target_tol);
  if (out.error > ik.target_tol) {
    throw NoConvergence("target not reached (error " + std::to_string(out.error) + " cm after " +
                            std::to_string(out.steps) + " steps)",
                        out.arm.q, out.error);
  }
  return out;
}

TrackingReport simulate_tracking(const TrajectorySpec& spec, CableModel plant,
                                 CableModel controller, const std::vector<SectionParams>& arm,
                                 const IKSettings& ik, const SolverSettings& s) {
  validate_ik_settings(ik);
  validate_settings(s);
  const std::vector<TrajectorySample> samples = gen_trajectory(spec);

  ArmConfig start;
  start.sections = arm;
  start.q = Eigen::VectorXd::Zero(2 * static_cast<Eigen::Index>(arm.size()));

  IKResult init;
  try {
    init = settle_ik(samples.front().position, start, ik);
  } catch (const Error& e) {
    e.rethrow_with_context("trajectory start");
  }

  const std::vector<IKStep> reference = ik_track(samples, init.arm, ik);

  TrackingReport report;
  report.steps.reserve(reference.size());
  ArmConfig cfg = init.arm;
  ArmConfig achieved = init.arm;
  for (std::size_t k = 0; k < reference.size(); ++k) {
    TrackingStep step;
    step.t = reference[k].t;
    step.desired = samples[k].position;
    step.q = reference[k].q;
    cfg.q = step.q;
    try {
      step.lengths = configs_to_cable_lengths(std::span<const ArmConfig>(&cfg, 1), controller, s)
                         .front();
      for (int i = 0; i < cfg.section_count(); ++i) {
        const SectionParams& p = cfg.sections[i];
        std::vector<double> l(p.cable_count);
        for (int c = 0; c < p.cable_count; ++c) l[c] = step.lengths(i, c);
        const BendingConfig b = plant_response(l, plant, p, s);
        achieved.q[2 * i] = b.orientation();
        achieved.q[2 * i + 1] = b.curvature();
      }
    } catch (const Error& e) {
      e.rethrow_with_context("t = " + std::to_string(step.t) + " s (step " + std::to_string(k) +
                             ")");
    }
    step.plant_q = achieved.q;
    step.achieved = forward_kinematics(achieved, ik.delta_kappa).tip;
    step.error = (step.desired - step.achieved).norm();
    report.mean_error += step.error;
    report.max_error = std::max(report.max_error, step.error);
    report.steps.push_back(std::move(step));
  }
  if (!report.steps.empty()) report.mean_error /= static_cast<double>(report.steps.size());
  return report;
}

}  // namespace softarm
