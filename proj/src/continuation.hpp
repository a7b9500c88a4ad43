#pragma once

#include <algorithm>
#include <optional>
#include <string>

#include <Eigen/Core>

#include "softarm/errors.hpp"

namespace softarm::detail {

// Walks a homotopy parameter from 0 to 1, warm-starting each solve from the
// previous one. `solve_at(s, warm)` returns the solution vector at `s` or
// throws a solver error; `warm` is empty on the first step.
template <class SolveAt>
Eigen::VectorXd continuation(SolveAt&& solve_at, double first_step = 0.125) {
  constexpr double kMinStep = 1.0 / 4096.0;
  double s = 0.0;
  double ds = first_step;
  std::optional<Eigen::VectorXd> warm;
  while (s < 1.0) {
    const double target = std::min(1.0, s + ds);
    try {
      Eigen::VectorXd x = solve_at(target, warm);
      s = target;
      warm = std::move(x);
      ds = std::min(0.25, ds * 1.5);
    } catch (const NoConvergence&) {
      ds *= 0.5;
    } catch (const SingularJacobian&) {
      ds *= 0.5;
    }
    if (ds < kMinStep) {
      throw NoConvergence("continuation step collapsed at s = " + std::to_string(s),
                          warm.value_or(Eigen::VectorXd()), INFINITY);
    }
  }
  return *warm;
}

}  // namespace softarm::detail
