#include "softarm/identify.hpp"

#include <cmath>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "softarm/errors.hpp"
#include "softarm/nlsolve.hpp"
#include "softarm/statics_single.hpp"

namespace softarm {

namespace {

// Mean value per bending angle, ordered by angle.
std::vector<std::pair<double, double>> average_replicates(std::span<const BendSample> samples) {
  std::map<double, std::pair<double, int>> acc;
  for (const BendSample& x : samples) {
    auto& [sum, count] = acc[x.bend_angle];
    sum += x.value;
    ++count;
  }
  std::vector<std::pair<double, double>> out;
  out.reserve(acc.size());
  for (const auto& [phi, sc] : acc) out.emplace_back(phi, sc.first / sc.second);
  return out;
}

}  // namespace

StiffnessFit identify_kb(std::span<const BendSample> samples, const SectionParams& p) {
  validate_params(p);
  for (const BendSample& x : samples) {
    if (!(x.bend_angle > 0.0)) throw DomainError("bending angle must be > 0");
    if (!(x.value > 0.0)) throw DomainError("tension must be > 0");
  }
  const auto data = average_replicates(samples);
  if (data.size() < 2) {
    throw InsufficientData("K_b needs at least 2 bending angles, got " +
                           std::to_string(data.size()));
  }
  StiffnessFit fit;
  fit.angles = static_cast<int>(data.size());
  double num = 0.0;
  double den = 0.0;
  for (const auto& [phi, tension] : data) {
    const double kappa = phi / p.length;
    num += tension * p.cable_offset * kappa;
    den += kappa * kappa;
    if (phi > deg_to_rad(15.0)) ++fit.large_angles;
  }
  fit.value = num / den;
  for (const auto& [phi, tension] : data) {
    const double r = tension * p.cable_offset - fit.value * phi / p.length;
    fit.objective += r * r;
  }
  return fit;
}

StiffnessFit identify_kc(std::span<const BendSample> samples, const SectionParams& p,
                         const SolverSettings& s, double lo, double hi) {
  for (const BendSample& x : samples) {
    if (!(x.bend_angle > 0.0 && x.bend_angle <= kPi)) {
      throw DomainError("bending angle must be in (0, pi]");
    }
    if (!(x.value >= 0.0 && x.value < p.length)) {
      throw DomainError("contraction must be in [0, L)");
    }
  }
  const auto data = average_replicates(samples);
  if (data.size() < 3) {
    throw InsufficientData("K_c needs at least 3 bending angles, got " +
                           std::to_string(data.size()));
  }

  auto sse = [&](double kc) {
    SectionParams trial = p;
    trial.cutin_stiffness = kc;
    validate_params(trial);
    double total = 0.0;
    for (const auto& [phi, contraction] : data) {
      const SingleCableState st = solve_inverse_single(phi / p.length, trial, s);
      const double r = (p.length - st.length) - contraction;
      total += r * r;
    }
    return total;
  };

  const GoldenSectionResult g = golden_section_minimize(sse, lo, hi, 1e-7);
  StiffnessFit fit;
  fit.value = g.x;
  fit.angles = static_cast<int>(data.size());
  fit.objective = g.value;
  fit.bracket_violated = g.bracket_violated;
  return fit;
}

}  // namespace softarm
