#pragma once

#include <Eigen/Core>

#include "softarm/model.hpp"

namespace softarm {

// Planar force and moment terms of a section bent by one cable. Vectors are
// expressed in the section base frame: x points from the cable towards the
// backbone's bending side, y along the undeformed backbone.

/// Resultant transverse force of the cable on the body, F_eq (N).
/// Throws DomainError if incident > bend_angle / 2.
Eigen::Vector2d equivalent_force(double tension, double incident, double bend_angle);

/// Contraction force applied at the cable anchor, F_T (N).
Eigen::Vector2d tip_force(double tension, double incident, double bend_angle);

/// Base support reaction closing the force balance, F_r (N).
Eigen::Vector2d support_force(double tension, double incident);

/// Lever arm of the tip force about the base point (cm). `rd` is the
/// undeformed cable radius 1/kappa_b - d.
Eigen::Vector2d tip_arm(double offset, double rd, double bend_angle);

/// Lever arm chosen for the transverse resultant on the section's symmetry axis (cm).
Eigen::Vector2d equivalent_arm(double offset, double rd, double bend_angle);

/// z-component of a x b for planar vectors.
inline double cross2(const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
  return a.x() * b.y() - a.y() * b.x();
}

/// Total cable moment r_eq x F_eq + r_T x F_T assembled from the individual
/// force and arm terms.
double assembled_cable_moment(double tension, double offset, double rd, double bend_angle,
                              double incident);

/// Magnitude of the support moment, T d cos(theta0) (N*cm).
double support_moment(double tension, double offset, double incident);

/// Incident angle from the chord relation. Throws ArcsinDomain when the
/// arcsin argument leaves [-1, 1].
double incident_angle(double backbone_curvature, double cable_curvature, double offset,
                      double half_angle);

/// Maximum transverse deformation of the cable, Delta h (cm).
double transverse_deformation(double backbone_curvature, double cable_curvature, double offset,
                              double half_angle, double incident);

/// Unknowns and knowns of the single-cable system in one place.
struct SingleCableState {
  double curvature = 0.0;        // kappa_b
  double incident = 0.0;         // theta0
  double cable_curvature = 0.0;  // kappa_c
  double tension = 0.0;          // T
  double length = 0.0;           // l
};

/// Scaled residual rows: moment balance / (K_b/L^2), incident-angle relation,
/// cut-in tension law / (K_c/L), length relation.
Eigen::Vector4d residual_single(const SingleCableState& x, const SectionParams& p);

/// Closed-form start point with an undeformed cable (theta0 = 0).
SingleCableState undeformed_guess(double curvature, const SectionParams& p);

/// Cable length -> backbone curvature. Returns the straight state when the
/// implied curvature is below delta_kappa (exactly 0 for l = L).
/// Throws DomainError unless 0 < l <= L; NoConvergence; Infeasible.
SingleCableState solve_forward_single(double length, const SectionParams& p,
                                      const SolverSettings& s);

/// Backbone curvature -> cable length. Throws DomainError outside
/// [0, pi/L]; NoConvergence; Infeasible.
SingleCableState solve_inverse_single(double curvature, const SectionParams& p,
                                      const SolverSettings& s);

/// Every intermediate force/moment term at a solved state.
struct SingleCableStaticsDetail {
  double force_density = 0.0;         // rho (N/cm)
  double accumulated_force = 0.0;     // F_rho (N)
  Eigen::Vector2d equivalent_force = Eigen::Vector2d::Zero();
  Eigen::Vector2d tip_force = Eigen::Vector2d::Zero();
  Eigen::Vector2d support_force = Eigen::Vector2d::Zero();
  Eigen::Vector2d tip_arm = Eigen::Vector2d::Zero();
  Eigen::Vector2d equivalent_arm = Eigen::Vector2d::Zero();
  double equivalent_moment = 0.0;     // M_eq
  double tip_moment = 0.0;            // M_T
  double support_moment = 0.0;        // M_r, signed (opposes the cable moment)
  double deformation = 0.0;           // Delta h (cm)
  double chord_ordinate = 0.0;        // Delta y (cm)
  double incident = 0.0;
  double tension = 0.0;
  double cable_curvature = 0.0;
  double length = 0.0;
};

SingleCableStaticsDetail statics_detail(const SingleCableState& x, const SectionParams& p);

}  // namespace softarm
