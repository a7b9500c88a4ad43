#include "softarm/statics_single.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "continuation.hpp"
#include "softarm/errors.hpp"
#include "softarm/nlsolve.hpp"

namespace softarm {

Eigen::Vector2d equivalent_force(double tension, double incident, double bend_angle) {
  if (incident > 0.5 * bend_angle) {
    throw DomainError("incident angle must not exceed half the bending angle");
  }
  const double psi = bend_angle - incident;
  return tension * Eigen::Vector2d(-std::sin(psi) + std::sin(incident),
                                   std::cos(psi) - std::cos(incident));
}

Eigen::Vector2d tip_force(double tension, double incident, double bend_angle) {
  const double psi = bend_angle - incident;
  return tension * Eigen::Vector2d(std::sin(psi), -std::cos(psi));
}

Eigen::Vector2d support_force(double tension, double incident) {
  return tension * Eigen::Vector2d(-std::sin(incident), std::cos(incident));
}

Eigen::Vector2d tip_arm(double offset, double rd, double bend_angle) {
  const double s = std::sin(0.5 * bend_angle);
  const double c = std::cos(0.5 * bend_angle);
  return {-offset - 2.0 * rd * s * s, 2.0 * rd * s * c};
}

Eigen::Vector2d equivalent_arm(double offset, double rd, double bend_angle) {
  const double s = std::sin(0.5 * bend_angle);
  const double c = std::cos(0.5 * bend_angle);
  return {-offset - rd * s * s, rd * s * c};
}

double assembled_cable_moment(double tension, double offset, double rd, double bend_angle,
                              double incident) {
  return cross2(equivalent_arm(offset, rd, bend_angle),
                equivalent_force(tension, incident, bend_angle)) +
         cross2(tip_arm(offset, rd, bend_angle), tip_force(tension, incident, bend_angle));
}

double support_moment(double tension, double offset, double incident) {
  return tension * offset * std::cos(incident);
}

double incident_angle(double backbone_curvature, double cable_curvature, double offset,
                      double half_angle) {
  if (!(backbone_curvature > 0.0)) throw DomainError("incident angle needs kappa_b > 0");
  const double arg = (1.0 - backbone_curvature * offset) * (cable_curvature / backbone_curvature) *
                     std::sin(half_angle);
  if (!(std::abs(arg) <= 1.0)) {
    throw ArcsinDomain("arcsin argument " + std::to_string(arg) + " outside [-1, 1]");
  }
  return half_angle - std::asin(arg);
}

double transverse_deformation(double backbone_curvature, double cable_curvature, double offset,
                              double half_angle, double incident) {
  // 1 - cos x written as 2 sin^2(x/2) to keep small bends accurate
  auto versin = [](double x) {
    const double s = std::sin(0.5 * x);
    return 2.0 * s * s;
  };
  return (1.0 / backbone_curvature - offset) * versin(half_angle) -
         versin(half_angle - incident) / cable_curvature;
}

Eigen::Vector4d residual_single(const SingleCableState& x, const SectionParams& p) {
  if (!(x.cable_curvature > 0.0)) throw DomainError("cable curvature must be > 0");
  const double half = 0.5 * p.length * x.curvature;
  const double d = p.cable_offset;
  const double dh = transverse_deformation(x.curvature, x.cable_curvature, d, half, x.incident);
  Eigen::Vector4d r;
  r[0] = (p.bend_stiffness * x.curvature - x.tension * d * std::cos(x.incident)) /
         (p.bend_stiffness / (p.length * p.length));
  r[1] = x.incident - incident_angle(x.curvature, x.cable_curvature, d, half);
  r[2] = (x.tension - p.cutin_stiffness / x.cable_curvature * dh) / (p.cutin_stiffness / p.length);
  r[3] = x.length - (p.length * x.curvature - 2.0 * x.incident) / x.cable_curvature;
  return r;
}

SingleCableState undeformed_guess(double curvature, const SectionParams& p) {
  SingleCableState g;
  g.curvature = curvature;
  g.incident = 0.0;
  g.cable_curvature = curvature / (1.0 - curvature * p.cable_offset);
  // Tension from the moment balance; the cut-in law alone would give T = 0.
  g.tension = p.bend_stiffness * curvature / p.cable_offset;
  g.length = p.length * (1.0 - curvature * p.cable_offset);
  return g;
}

namespace {

SingleCableState straight_state(const SectionParams& p) {
  SingleCableState st;
  st.length = p.length;
  return st;
}

void check_tension(const SingleCableState& st, const SolverSettings& s) {
  if (st.tension < -s.tension_tol) {
    throw Infeasible("solved cable tension " + std::to_string(st.tension) + " N is negative");
  }
}

// Forward unknowns: (kappa_b, theta0, kappa_c, T); l is known.
ResidualSystem forward_system(double length, const SectionParams& p, const SolverSettings& s) {
  ResidualSystem sys;
  sys.dimension = 4;
  sys.evaluate = [length, &p](const Eigen::VectorXd& v) -> Eigen::VectorXd {
    return residual_single({v[0], v[1], v[2], v[3], length}, p);
  };
  sys.lower = Eigen::Vector4d(s.delta_kappa, -INFINITY, 1e-12, -INFINITY);
  sys.upper = Eigen::Vector4d(p.max_curvature(), INFINITY, INFINITY, INFINITY);
  return sys;
}

// Inverse unknowns: (l, theta0, kappa_c, T); kappa_b is known.
ResidualSystem inverse_system(double curvature, const SectionParams& p) {
  ResidualSystem sys;
  sys.dimension = 4;
  sys.evaluate = [curvature, &p](const Eigen::VectorXd& v) -> Eigen::VectorXd {
    return residual_single({curvature, v[1], v[2], v[3], v[0]}, p);
  };
  sys.lower = Eigen::Vector4d(-INFINITY, -INFINITY, 1e-12, -INFINITY);
  return sys;
}

}  // namespace

SingleCableState solve_forward_single(double length, const SectionParams& p,
                                      const SolverSettings& s) {
  validate_params(p);
  validate_settings(s);
  if (!(length > 0.0 && length <= p.length)) {
    throw DomainError("cable length must be in (0, L], got " + std::to_string(length));
  }
  const double target = (p.length - length) / (p.length * p.cable_offset);
  if (target < s.delta_kappa) return straight_state(p);

  auto solve_at = [&](double len, const Eigen::VectorXd* warm) {
    const ResidualSystem sys = forward_system(len, p, s);
    Eigen::VectorXd x0(4);
    if (warm) {
      x0 = *warm;
    } else {
      const double k = std::clamp((p.length - len) / (p.length * p.cable_offset), s.delta_kappa,
                                  p.max_curvature());
      const SingleCableState g = undeformed_guess(k, p);
      x0 << g.curvature, g.incident, g.cable_curvature, g.tension;
    }
    return solve_system(sys, x0, s).x;
  };

  auto via_continuation = [&] {
    return detail::continuation([&](double t, const std::optional<Eigen::VectorXd>& warm) {
      return solve_at(p.length - t * (p.length - length), warm ? &*warm : nullptr);
    });
  };
  Eigen::VectorXd x;
  try {
    x = solve_at(length, nullptr);
  } catch (const NoConvergence&) {
    x = via_continuation();
  } catch (const SingularJacobian&) {
    x = via_continuation();
  }
  const SingleCableState st{x[0], x[1], x[2], x[3], length};
  check_tension(st, s);
  return st;
}

SingleCableState solve_inverse_single(double curvature, const SectionParams& p,
                                      const SolverSettings& s) {
  validate_params(p);
  validate_settings(s);
  if (!(curvature >= 0.0 && curvature <= p.max_curvature())) {
    throw DomainError("backbone curvature must be in [0, pi/L], got " + std::to_string(curvature));
  }
  validate_curvature(p, curvature);
  if (curvature < s.delta_kappa) return straight_state(p);

  auto solve_at = [&](double k, const Eigen::VectorXd* warm) {
    const ResidualSystem sys = inverse_system(k, p);
    Eigen::VectorXd x0(4);
    if (warm) {
      x0 = *warm;
    } else {
      const SingleCableState g = undeformed_guess(k, p);
      x0 << g.length, g.incident, g.cable_curvature, g.tension;
    }
    return solve_system(sys, x0, s).x;
  };

  auto via_continuation = [&] {
    return detail::continuation([&](double t, const std::optional<Eigen::VectorXd>& warm) {
      return solve_at(t * curvature, warm ? &*warm : nullptr);
    });
  };
  Eigen::VectorXd x;
  try {
    x = solve_at(curvature, nullptr);
  } catch (const NoConvergence&) {
    x = via_continuation();
  } catch (const SingularJacobian&) {
    x = via_continuation();
  }
  const SingleCableState st{curvature, x[1], x[2], x[3], x[0]};
  check_tension(st, s);
  return st;
}

SingleCableStaticsDetail statics_detail(const SingleCableState& x, const SectionParams& p) {
  SingleCableStaticsDetail out;
  const double d = p.cable_offset;
  const double phi = p.length * x.curvature;
  out.incident = x.incident;
  out.tension = x.tension;
  out.cable_curvature = x.cable_curvature;
  out.length = x.length;
  out.force_density = x.tension * x.cable_curvature;
  out.accumulated_force = x.tension * (phi - 2.0 * x.incident);
  out.equivalent_force = equivalent_force(x.tension, x.incident, phi);
  out.tip_force = tip_force(x.tension, x.incident, phi);
  out.support_force = support_force(x.tension, x.incident);
  if (x.curvature > 0.0) {
    const double rd = 1.0 / x.curvature - d;
    out.tip_arm = tip_arm(d, rd, phi);
    out.equivalent_arm = equivalent_arm(d, rd, phi);
    out.deformation =
        transverse_deformation(x.curvature, x.cable_curvature, d, 0.5 * phi, x.incident);
    out.chord_ordinate = rd * std::sin(0.5 * phi);
  } else {
    out.tip_arm = Eigen::Vector2d(-d, p.length);
    out.equivalent_arm = Eigen::Vector2d(-d, 0.5 * p.length);
  }
  out.equivalent_moment = cross2(out.equivalent_arm, out.equivalent_force);
  out.tip_moment = cross2(out.tip_arm, out.tip_force);
  out.support_moment = -support_moment(x.tension, d, x.incident);
  return out;
}

}  // namespace softarm
