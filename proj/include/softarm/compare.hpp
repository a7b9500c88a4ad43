#pragma once

#include <span>
#include <string>
#include <vector>

#include "softarm/model.hpp"
#include "softarm/table.hpp"

namespace softarm {

/// One cable of one grid cell. `kind` is "single" for the one-cable sweep
/// (orientation 0, cable 1) and "multi" for the n-cable section. Cable
/// indices are 1-based. When the proposed solve fails, its fields are NaN and
/// `status` names the error kind; otherwise `status` is "ok".
struct CompareRow {
  std::string kind;
  double bend_angle = 0.0;   // rad
  double orientation = 0.0;  // rad
  int cable = 1;
  double length_proposed = 0.0;
  double length_baseline = 0.0;
  double tension = 0.0;
  double incident = 0.0;
  std::string status = "ok";
};

/// The single-cable sweep over `bend_angles` followed by every
/// (bend angle, orientation) cell of the multi-cable grid, in grid order.
std::vector<CompareRow> compare_models(const SectionParams& p, std::span<const double> bend_angles,
                                       std::span<const double> orientations,
                                       const SolverSettings& s);

/// Columns: case,phi_b,gamma,i,l_proposed,l_baseline,T,theta0,status.
Table compare_table(const std::vector<CompareRow>& rows);

}  // namespace softarm
