#pragma once

#include <numbers>
#include <string_view>
#include <vector>

namespace softarm {

// Library-wide units: centimeters, radians, Newtons. Degrees appear only at
// the command-line and file boundaries.

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

constexpr double deg_to_rad(double deg) { return deg * (kPi / 180.0); }
constexpr double rad_to_deg(double rad) { return rad * (180.0 / kPi); }

/// Wraps an angle into [0, 2*pi).
double normalize_angle(double angle);

/// Wraps an angle into (-pi, pi].
double wrap_to_pi(double angle);

/// Geometric and stiffness constants of one arm section.
struct SectionParams {
  double length = 0.0;           // L, backbone length (cm)
  double cable_offset = 0.0;     // d, cable incident point to backbone (cm)
  double bend_stiffness = 0.0;   // K_b (N*cm^2)
  double cutin_stiffness = 0.0;  // K_c (N/cm^2)
  int cable_count = 0;           // n
  double endcap = 0.0;           // h, endcap thickness (cm); rig-specific

  /// Largest admissible backbone curvature (bending angle of pi).
  double max_curvature() const { return kPi / length; }
};

/// Identified single-section constants of the reference prototype with a
/// three-cable layout. The endcap thickness is a rig-specific placeholder.
SectionParams reference_section();

/// Throws InvalidParams naming the first violated invariant.
const SectionParams& validate_params(const SectionParams& p);

/// Checks that `curvature` keeps every cable on the finite-radius side.
void validate_curvature(const SectionParams& p, double curvature);

/// One section's bending state. Orientation is stored in [0, 2*pi); a straight
/// section always carries orientation 0.
class BendingConfig {
 public:
  BendingConfig() = default;
  BendingConfig(double curvature, double orientation);

  double curvature() const { return curvature_; }
  double orientation() const { return orientation_; }
  double bend_angle(double length) const { return length * curvature_; }
  double half_angle(double length) const { return 0.5 * length * curvature_; }
  bool straight() const { return curvature_ == 0.0; }

  static BendingConfig from_angle(double bend_angle, double orientation, double length);

 private:
  double curvature_ = 0.0;
  double orientation_ = 0.0;
};

struct SolverSettings {
  double residual_tol = 1e-9;
  int max_iter = 100;
  double damping_init = 1.0;
  double delta_kappa = 1e-6;  // cm^-1, straight-section threshold
  double fd_step = 1e-7;
  double tension_tol = 1e-9;  // N
};

const SolverSettings& validate_settings(const SolverSettings& s);

/// Solved quantities of one cable inside a section.
struct CableState {
  double length = 0.0;           // l_i (cm)
  double tension = 0.0;          // T_i (N)
  double incident_angle = 0.0;   // theta0_i (rad)
  double curvature = 0.0;        // kappa_c,i (1/cm)
  double beta = 0.0;             // angle to bending direction (rad)
  double neutral_offset = 0.0;   // d_i, signed distance to neutral plane (cm)
  bool slack = false;
};

using CableSolution = std::vector<CableState>;

/// Which cable-length model maps configurations to lengths and back.
enum class CableModel { Proposed, Baseline };

const char* to_string(CableModel model);

/// Accepts "proposed" or "baseline"; throws ConfigError otherwise.
CableModel parse_cable_model(std::string_view name);

}  // namespace softarm
