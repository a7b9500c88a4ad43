#pragma once

#include <span>
#include <vector>

#include <Eigen/Core>

#include "softarm/model.hpp"

namespace softarm {

// Cable indices are 0-based in this API. Cable i sits at azimuth 2*pi*i/n
// about the backbone, counterclockwise from the base-frame x axis.

struct CableGeometry {
  double beta = 0.0;            // angle between cable azimuth and bending direction (rad)
  double neutral_offset = 0.0;  // d_i = d cos(beta_i), signed (cm)
};

CableGeometry cable_geometry(int index, int count, double orientation, double offset);

/// The cable most opposed to the bending direction (minimal cos beta_i);
/// ties go to the lowest index.
int select_slack_cable(int count, double orientation);

/// The n - 2 most opposed cables, ordered by increasing cos beta_i. For
/// n = 3 this is exactly {select_slack_cable}.
std::vector<int> slack_cables(int count, double orientation);

/// Full state of one section: configuration plus every per-cable unknown.
struct MultiCableState {
  double curvature = 0.0;
  double orientation = 0.0;
  std::vector<double> incident;
  std::vector<double> cable_curvature;
  std::vector<double> tension;
  std::vector<double> length;
};

/// Scaled (3n + 2)-vector: planar moment balance, lateral moment balance,
/// n incident-angle rows, n tension rows, n length rows. Row scaling matches
/// residual_single.
Eigen::VectorXd residual_multi(const MultiCableState& x, const SectionParams& p);

/// Lateral moments M_p,i about the base point for each cable (N*cm).
std::vector<double> lateral_moments(const MultiCableState& x, const SectionParams& p);

struct MultiCableSolution {
  BendingConfig config;
  CableSolution cables;
};

/// Cable lengths -> (kappa_b, gamma). Solves with every tension free; if that
/// does not converge, starts from the slack set of the geometric fit. Cables
/// needing negative tension are then pinned slack, and pinned cables shorter
/// than their unloaded path are released, until both conditions hold.
/// Throws DomainError, NoConvergence, Infeasible.
MultiCableSolution solve_forward_multi(std::span<const double> lengths, const SectionParams& p,
                                       const SolverSettings& s);

/// (kappa_b, gamma) -> cable lengths with the slack selection pinned to zero
/// tension. Throws DomainError, NoConvergence, Infeasible.
MultiCableSolution solve_inverse_multi(const BendingConfig& cfg, const SectionParams& p,
                                       const SolverSettings& s);

/// Geometric cable lengths l_i = L (1 - kappa_b d_i).
std::vector<double> baseline_inverse(const BendingConfig& cfg, const SectionParams& p);

struct BaselineFit {
  BendingConfig config;
  double residual_norm = 0.0;  // 2-norm of the contraction misfit (cm)
};

/// Least-squares inversion of the geometric model over all cables.
BaselineFit baseline_forward(std::span<const double> lengths, const SectionParams& p);

}  // namespace softarm
