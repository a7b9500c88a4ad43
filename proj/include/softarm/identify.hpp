#pragma once

#include <span>

#include "softarm/model.hpp"

namespace softarm {

/// One measurement at bending angle `bend_angle` (rad). `value` is a tension
/// (N) for K_b fits and a contraction L - l (cm) for K_c fits.
struct BendSample {
  double bend_angle = 0.0;
  double value = 0.0;
  int replicate = 0;
};

struct StiffnessFit {
  double value = 0.0;
  int angles = 0;          // distinct bending angles after replicate averaging
  int large_angles = 0;    // K_b only: angles above 15 deg, where theta0 ~ 0 is doubtful
  double objective = 0.0;  // residual sum of squares of the averaged data
  bool bracket_violated = false;  // K_c only
};

/// K_b = sum(T d kappa) / sum(kappa^2) with kappa = phi/L, replicates averaged
/// per angle. Throws InsufficientData below 2 angles, DomainError for phi <= 0
/// or T <= 0.
StiffnessFit identify_kb(std::span<const BendSample> samples, const SectionParams& p);

/// Least-squares K_c by golden-section search on [lo, hi] against the
/// single-cable inverse model. `p.cutin_stiffness` is ignored. Throws
/// InsufficientData below 3 angles, DomainError for phi outside (0, pi] or
/// contraction outside [0, L).
StiffnessFit identify_kc(std::span<const BendSample> samples, const SectionParams& p,
                         const SolverSettings& s, double lo = 0.1, double hi = 100.0);

}  // namespace softarm
