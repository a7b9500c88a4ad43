#pragma once

#include <filesystem>
#include <optional>
#include <string_view>
#include <vector>

#include "softarm/kinematics.hpp"
#include "softarm/model.hpp"
#include "softarm/trajectory.hpp"

namespace softarm {

/// Contents of a JSON run configuration:
///
///   {
///     "arm": {"m": 2, "section": {"L": 9.30, "d": 1.25, "K_b": 20.02,
///                                 "K_c": 3.10, "n": 3, "h": 1.0}},
///     "solver": {"residual_tol": 1e-9, "max_iter": 100, "damping_init": 1.0,
///                "delta_kappa": 1e-6, "fd_step": 1e-7, "tol_T": 1e-9},
///     "ik": {"k": 0.01, "K": [1, 1, 1], "dt": 0.02, "max_steps": 2000,
///            "target_tol": 1e-3, "divergence_bound": 1000},
///     "trajectory": {"kind": "circle", "center": [0, 0, 20], "radius": 2,
///                    "normal": [0, 0, 1], "duration": 60, "dt": 0.02}
///   }
///
/// "arm" is required; "sections" (a list) may replace "section", in which
/// case "m" is optional. Every other block and field falls back to the
/// defaults. Unknown keys are rejected. Units: cm, N, s, rad.
struct RunConfig {
  std::vector<SectionParams> sections;
  SolverSettings solver;
  IKSettings ik;  // delta_kappa mirrors solver.delta_kappa
  std::optional<TrajectorySpec> trajectory;

  ArmConfig straight() const;
};

/// Throws ConfigError for malformed text, missing or mistyped fields, and
/// InvalidParams for values that break a parameter invariant.
RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::filesystem::path& path);

}  // namespace softarm
