#include "softarm/model.hpp"

#include <cmath>
#include <string>

#include "softarm/errors.hpp"

namespace softarm {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidParams: return "InvalidParams";
    case ErrorKind::Config: return "Config";
    case ErrorKind::Domain: return "Domain";
    case ErrorKind::ArcsinDomain: return "ArcsinDomain";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::SingularJacobian: return "SingularJacobian";
    case ErrorKind::Infeasible: return "Infeasible";
    case ErrorKind::NoBracket: return "NoBracket";
    case ErrorKind::InsufficientData: return "InsufficientData";
    case ErrorKind::Diverged: return "Diverged";
  }
  return "Unknown";
}

double normalize_angle(double angle) {
  double a = std::fmod(angle, kTwoPi);
  if (a < 0.0) a += kTwoPi;
  // fmod of a tiny negative value can round up to exactly 2*pi
  if (a >= kTwoPi) a = 0.0;
  return a;
}

double wrap_to_pi(double angle) {
  double a = normalize_angle(angle);
  if (a > kPi) a -= kTwoPi;
  return a;
}

SectionParams reference_section() {
  return SectionParams{9.30, 1.25, 20.02, 3.10, 3, 1.0};
}

const SectionParams& validate_params(const SectionParams& p) {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw InvalidParams(what);
  };
  require(std::isfinite(p.length) && p.length > 0.0, "L must be > 0");
  require(std::isfinite(p.cable_offset) && p.cable_offset > 0.0, "d must be > 0");
  require(std::isfinite(p.bend_stiffness) && p.bend_stiffness > 0.0, "K_b must be > 0");
  require(std::isfinite(p.cutin_stiffness) && p.cutin_stiffness > 0.0, "K_c must be > 0");
  require(p.cable_count >= 3, "n must be >= 3");
  require(std::isfinite(p.endcap) && p.endcap >= 0.0, "h must be >= 0");
  // The solvers admit curvatures up to pi/L; every cable must stay inside R_b.
  require(p.cable_offset < p.length / kPi, "d must be < L/pi");
  return p;
}

void validate_curvature(const SectionParams& p, double curvature) {
  if (!(curvature >= 0.0) || !std::isfinite(curvature)) {
    throw DomainError("backbone curvature must be >= 0, got " + std::to_string(curvature));
  }
  if (curvature * p.cable_offset >= 1.0) {
    throw DomainError("d must be < 1/kappa_b (kappa_b = " + std::to_string(curvature) + ")");
  }
}

BendingConfig::BendingConfig(double curvature, double orientation)
    : curvature_(curvature), orientation_(curvature == 0.0 ? 0.0 : normalize_angle(orientation)) {
  if (!(curvature >= 0.0)) {
    throw DomainError("backbone curvature must be >= 0");
  }
}

BendingConfig BendingConfig::from_angle(double bend_angle, double orientation, double length) {
  return BendingConfig(bend_angle / length, orientation);
}

const SolverSettings& validate_settings(const SolverSettings& s) {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw InvalidParams(what);
  };
  require(s.residual_tol > 0.0, "residual_tol must be > 0");
  require(s.max_iter >= 1, "max_iter must be >= 1");
  require(s.damping_init > 0.0, "damping_init must be > 0");
  require(s.delta_kappa > 0.0, "delta_kappa must be > 0");
  require(s.fd_step > 0.0, "fd_step must be > 0");
  require(s.tension_tol > 0.0, "tol_T must be > 0");
  return s;
}

const char* to_string(CableModel model) {
  return model == CableModel::Proposed ? "proposed" : "baseline";
}

CableModel parse_cable_model(std::string_view name) {
  if (name == "proposed") return CableModel::Proposed;
  if (name == "baseline") return CableModel::Baseline;
  throw ConfigError("unknown model '" + std::string(name) + "' (expected proposed or baseline)");
}

}  // namespace softarm
