#include "softarm/kinematics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Dense>

#include "softarm/errors.hpp"
#include "softarm/statics_multi.hpp"

namespace softarm {

bool is_rigid_transform(const Transform& t, double tol) {
  const Eigen::Matrix3d r = t.topLeftCorner<3, 3>();
  const bool orthonormal = (r.transpose() * r - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff() <= tol;
  const bool proper = std::abs(r.determinant() - 1.0) <= tol;
  const bool bottom = (t.row(3) - Eigen::RowVector4d(0, 0, 0, 1)).cwiseAbs().maxCoeff() <= tol;
  return orthonormal && proper && bottom;
}

Transform section_transform(double bend_angle, double orientation, double curvature,
                            const SectionParams& p, double delta_kappa) {
  const double phi = bend_angle;
  const double half_sin = std::sin(0.5 * phi);
  const double versin = 2.0 * half_sin * half_sin;
  double px;
  double pz;
  if (std::abs(curvature) < delta_kappa) {
    px = 0.5 * p.length * phi;
    pz = p.length * (1.0 - phi * phi / 6.0);
  } else {
    px = versin / curvature;
    pz = std::sin(phi) / curvature;
  }

  // Rz(g) Ry(phi) Rz(-g) as a rotation by phi about (-sin g, cos g, 0).
  const double cg = std::cos(orientation);
  const double sg = std::sin(orientation);
  const double sp = std::sin(phi);
  Eigen::Matrix3d r;
  r << 1.0 - versin * cg * cg, -versin * sg * cg, sp * cg,
       -versin * sg * cg, 1.0 - versin * sg * sg, sp * sg,
       -sp * cg, -sp * sg, 1.0 - versin;

  const Eigen::Vector3d cap(0.0, 0.0, p.endcap);
  Transform t = Transform::Identity();
  t.topLeftCorner<3, 3>() = r;
  t.topRightCorner<3, 1>() = cap + Eigen::Vector3d(px * cg, px * sg, pz) + r * cap;
  return t;
}

ArmConfig straight_arm(int m, const SectionParams& p) {
  ArmConfig arm;
  arm.q = Eigen::VectorXd::Zero(2 * m);
  arm.sections.assign(m, p);
  return arm;
}

void validate_arm(const ArmConfig& arm) {
  if (arm.sections.empty()) throw InvalidParams("arm must have at least one section");
  if (arm.q.size() != 2 * arm.section_count()) {
    throw InvalidParams("q must hold 2 entries per section");
  }
  for (int i = 0; i < arm.section_count(); ++i) {
    try {
      validate_params(arm.sections[i]);
    } catch (const Error& e) {
      e.rethrow_with_context("section " + std::to_string(i + 1));
    }
    if (!(arm.curvature(i) >= 0.0)) {
      throw DomainError("section " + std::to_string(i + 1) + ": curvature must be >= 0");
    }
  }
}

ForwardKinematics forward_kinematics(const ArmConfig& arm, double delta_kappa) {
  ForwardKinematics out;
  for (int i = 0; i < arm.section_count(); ++i) {
    const SectionParams& p = arm.sections[i];
    if (!(arm.curvature(i) >= 0.0)) {
      throw DomainError("section " + std::to_string(i + 1) + ": curvature must be >= 0");
    }
    const double k = arm.curvature(i);
    out.chain = out.chain * section_transform(p.length * k, arm.orientation(i), k, p, delta_kappa);
  }
  out.tip = out.chain.topRightCorner<3, 1>();
  return out;
}

Eigen::MatrixXd jacobian(const ArmConfig& arm, double delta_kappa) {
  ArmConfig base = arm;
  for (int i = 0; i < base.section_count(); ++i) {
    if (base.q[2 * i + 1] < delta_kappa) base.q[2 * i + 1] += delta_kappa;
  }
  const Eigen::Index dim = base.q.size();
  Eigen::MatrixXd j(3, dim);
  ArmConfig probe = base;
  for (Eigen::Index c = 0; c < dim; ++c) {
    const double h = 1e-6 * std::max(1.0, std::abs(base.q[c]));
    probe.q[c] = base.q[c] + h;
    const Eigen::Vector3d plus = forward_kinematics(probe, delta_kappa).tip;
    probe.q[c] = base.q[c] - h;
    const Eigen::Vector3d minus = forward_kinematics(probe, delta_kappa).tip;
    probe.q[c] = base.q[c];
    j.col(c) = (plus - minus) / (2.0 * h);
  }
  return j;
}

Eigen::MatrixXd damped_pseudoinverse(const Eigen::MatrixXd& j, double damping) {
  const Eigen::Index rows = j.rows();
  const Eigen::MatrixXd gram =
      j * j.transpose() + damping * damping * Eigen::MatrixXd::Identity(rows, rows);
  // gram is symmetric positive definite for damping > 0
  return gram.llt().solve(j).transpose();
}

const IKSettings& validate_ik_settings(const IKSettings& st) {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw InvalidParams(what);
  };
  require(st.damping > 0.0, "k must be > 0");
  require((st.gain.array() >= 0.0).all(), "K entries must be >= 0");
  require(st.dt > 0.0, "dt must be > 0");
  require(st.max_steps >= 1, "max_steps must be >= 1");
  require(st.target_tol > 0.0, "target_tol must be > 0");
  require(st.delta_kappa > 0.0, "delta_kappa must be > 0");
  require(st.divergence_bound > 0.0, "divergence_bound must be > 0");
  return st;
}

void normalize_config(ArmConfig& arm) {
  for (int i = 0; i < arm.section_count(); ++i) {
    double& g = arm.q[2 * i];
    double& k = arm.q[2 * i + 1];
    if (k < 0.0) {
      k = -k;
      g += kPi;
    }
    k = std::min(k, arm.sections[i].max_curvature());
    g = normalize_angle(g);
  }
}

void ik_step(ArmConfig& arm, const Eigen::Vector3d& velocity, const Eigen::Vector3d& error,
             const IKSettings& st) {
  const Eigen::MatrixXd j = jacobian(arm, st.delta_kappa);
  const Eigen::MatrixXd pinv = damped_pseudoinverse(j, st.damping);
  const Eigen::Vector3d command = velocity + st.gain.cwiseProduct(error);
  Eigen::VectorXd qdot = pinv * command;
  if (st.null_velocity.size() == qdot.size()) {
    const Eigen::Index dim = qdot.size();
    qdot += (Eigen::MatrixXd::Identity(dim, dim) - pinv * j) * st.null_velocity;
  }
  arm.q += qdot * st.dt;
  normalize_config(arm);
}

namespace {

class DivergenceGuard {
 public:
  explicit DivergenceGuard(double bound) : bound_(bound) {}

  void observe(double error, double t) {
    if (!std::isfinite(error) || error > bound_) {
      if (++run_ >= 10) {
        throw Diverged("tracking error above " + std::to_string(bound_) +
                       " cm for 10 consecutive steps (t = " + std::to_string(t) + " s)");
      }
    } else {
      run_ = 0;
    }
  }

 private:
  double bound_;
  int run_ = 0;
};

}  // namespace

std::vector<IKStep> ik_track(std::span<const TrajectorySample> samples, const ArmConfig& start,
                             const IKSettings& st) {
  validate_ik_settings(st);
  validate_arm(start);
  ArmConfig arm = start;
  DivergenceGuard guard(st.divergence_bound);
  std::vector<IKStep> out;
  out.reserve(samples.size());
  for (const TrajectorySample& x : samples) {
    const Eigen::Vector3d e = x.position - forward_kinematics(arm, st.delta_kappa).tip;
    out.push_back({x.t, arm.q, e.norm()});
    guard.observe(e.norm(), x.t);
    ik_step(arm, x.velocity, e, st);
  }
  return out;
}

IKResult ik_converge(const Eigen::Vector3d& target, const ArmConfig& start, const IKSettings& st,
                     double tol) {
  validate_ik_settings(st);
  validate_arm(start);
  IKResult out{start, 0, 0.0, false};
  DivergenceGuard guard(st.divergence_bound);
  for (;;) {
    const Eigen::Vector3d e = target - forward_kinematics(out.arm, st.delta_kappa).tip;
    out.error = e.norm();
    if (out.error < tol) {
      out.converged = true;
      return out;
    }
    if (out.steps >= st.max_steps) return out;
    guard.observe(out.error, out.steps * st.dt);
    ik_step(out.arm, Eigen::Vector3d::Zero(), e, st);
    ++out.steps;
  }
}

std::vector<Eigen::MatrixXd> configs_to_cable_lengths(std::span<const ArmConfig> configs,
                                                      CableModel model, const SolverSettings& s) {
  std::vector<Eigen::MatrixXd> out;
  out.reserve(configs.size());
  for (std::size_t step = 0; step < configs.size(); ++step) {
    const ArmConfig& arm = configs[step];
    validate_arm(arm);
    int width = 0;
    for (const SectionParams& p : arm.sections) width = std::max(width, p.cable_count);
    Eigen::MatrixXd lengths = Eigen::MatrixXd::Constant(arm.section_count(), width, NAN);
    for (int i = 0; i < arm.section_count(); ++i) {
      const SectionParams& p = arm.sections[i];
      try {
        const BendingConfig cfg = arm.bending(i);
        if (model == CableModel::Baseline) {
          const std::vector<double> l = baseline_inverse(cfg, p);
          for (int c = 0; c < p.cable_count; ++c) lengths(i, c) = l[c];
        } else {
          const MultiCableSolution sol = solve_inverse_multi(cfg, p, s);
          for (int c = 0; c < p.cable_count; ++c) lengths(i, c) = sol.cables[c].length;
        }
      } catch (const Error& e) {
        e.rethrow_with_context("step " + std::to_string(step) + ", section " +
                               std::to_string(i + 1));
      }
    }
    out.push_back(std::move(lengths));
  }
  return out;
}

}  // namespace softarm
