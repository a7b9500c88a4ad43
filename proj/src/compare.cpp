#include "softarm/compare.hpp"

#include <cmath>

#include "softarm/errors.hpp"
#include "softarm/statics_multi.hpp"
#include "softarm/statics_single.hpp"

namespace softarm {

std::vector<CompareRow> compare_models(const SectionParams& p, std::span<const double> bend_angles,
                                       std::span<const double> orientations,
                                       const SolverSettings& s) {
  validate_params(p);
  validate_settings(s);
  std::vector<CompareRow> out;

  for (double phi : bend_angles) {
    const double kappa = phi / p.length;
    CompareRow row;
    row.kind = "single";
    row.bend_angle = phi;
    row.length_baseline = p.length * (1.0 - kappa * p.cable_offset);
    try {
      const SingleCableState st = solve_inverse_single(kappa, p, s);
      row.length_proposed = st.length;
      row.tension = st.tension;
      row.incident = st.incident;
    } catch (const Error& e) {
      row.length_proposed = row.tension = row.incident = NAN;
      row.status = to_string(e.kind());
    }
    out.push_back(row);
  }

  for (double phi : bend_angles) {
    for (double gamma : orientations) {
      const BendingConfig cfg = BendingConfig::from_angle(phi, gamma, p.length);
      const std::vector<double> baseline = baseline_inverse(cfg, p);
      std::vector<CompareRow> cell(p.cable_count);
      try {
        const MultiCableSolution sol = solve_inverse_multi(cfg, p, s);
        for (int i = 0; i < p.cable_count; ++i) {
          cell[i].length_proposed = sol.cables[i].length;
          cell[i].tension = sol.cables[i].tension;
          cell[i].incident = sol.cables[i].incident_angle;
        }
      } catch (const Error& e) {
        for (CompareRow& r : cell) {
          r.length_proposed = r.tension = r.incident = NAN;
          r.status = to_string(e.kind());
        }
      }
      for (int i = 0; i < p.cable_count; ++i) {
        cell[i].kind = "multi";
        cell[i].bend_angle = phi;
        cell[i].orientation = gamma;
        cell[i].cable = i + 1;
        cell[i].length_baseline = baseline[i];
        out.push_back(cell[i]);
      }
    }
  }
  return out;
}

Table compare_table(const std::vector<CompareRow>& rows) {
  Table t;
  t.columns = {"case", "phi_b", "gamma", "i", "l_proposed", "l_baseline", "T", "theta0", "status"};
  for (const CompareRow& r : rows) {
    t.add({r.kind, r.bend_angle, r.orientation, static_cast<long long>(r.cable), r.length_proposed,
           r.length_baseline, r.tension, r.incident, r.status});
  }
  return t;
}

}  // namespace softarm
