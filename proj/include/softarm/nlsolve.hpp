#pragma once

#include <functional>

#include <Eigen/Core>

#include "softarm/model.hpp"

namespace softarm {

/// A square nonlinear system r(x) = 0. The evaluation map may throw
/// DomainError/ArcsinDomain for inadmissible trial points; the solver treats
/// those as rejected steps. Empty bound vectors mean unbounded.
struct ResidualSystem {
  int dimension = 0;
  std::function<Eigen::VectorXd(const Eigen::VectorXd&)> evaluate;
  Eigen::VectorXd lower;
  Eigen::VectorXd upper;

  Eigen::VectorXd project(Eigen::VectorXd x) const;
};

struct SolveReport {
  Eigen::VectorXd x;
  double residual_norm = 0.0;  // infinity norm at x
  int iterations = 0;
};

/// Damped Newton with a central-difference Jacobian. The full step is halved
/// (up to 30 times) until the residual 2-norm decreases; iterates are clamped
/// to the bounds. Converged when the residual infinity norm is below
/// `settings.residual_tol`.
///
/// Throws NoConvergence (with best iterate) or SingularJacobian.
SolveReport solve_system(const ResidualSystem& sys, const Eigen::VectorXd& x0,
                         const SolverSettings& settings);

/// Central-difference Jacobian with per-variable step max(h, h*|x_j|). Falls
/// back to a one-sided difference when one probe is inadmissible.
Eigen::MatrixXd finite_difference_jacobian(const ResidualSystem& sys, const Eigen::VectorXd& x,
                                           const Eigen::VectorXd& r, double fd_step);

/// Plain bisection; returns the midpoint of a bracket no wider than `tol`.
/// Throws NoBracket when f(lo) and f(hi) share a strict sign.
double solve_scalar_bisection(const std::function<double(double)>& f, double lo, double hi,
                              double tol);

struct GoldenSectionResult {
  double x = 0.0;
  double value = 0.0;
  int evaluations = 0;
  bool bracket_violated = false;  // an interior probe exceeded both ends
};

/// Golden-section minimization on [lo, hi]. Probes where `f` throws a
/// solver error are treated as outside the admissible region and shrink the
/// bracket from that side.
GoldenSectionResult golden_section_minimize(const std::function<double(double)>& f, double lo,
                                            double hi, double tol);

}  // namespace softarm
