// softarm: command-line front end for the soft arm statics and kinematics.
//
// Exit codes: 0 success, 2 solver failure or infeasible request, 3 bad
// configuration or arguments, 1 anything else.

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "softarm/compare.hpp"
#include "softarm/config.hpp"
#include "softarm/errors.hpp"
#include "softarm/identify.hpp"
#include "softarm/kinematics.hpp"
#include "softarm/statics_multi.hpp"
#include "softarm/table.hpp"
#include "softarm/tracking.hpp"
#include "softarm/trajectory.hpp"

namespace {

using namespace softarm;

struct Common {
  std::string config;
  std::string out;
  std::string format = "csv";
  std::string model = "proposed";
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--config", c.config, "JSON run configuration")->required()->check(CLI::ExistingFile);
  cmd->add_option("--out", c.out, "output file (default: stdout)");
  cmd->add_option("--format", c.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--model", c.model, "cable model: proposed or baseline")
      ->check(CLI::IsMember({"proposed", "baseline"}));
}

void emit(const Common& c, const Table& t) {
  const OutputFormat format = parse_output_format(c.format);
  if (c.out.empty()) {
    write_table(std::cout, t, format);
    return;
  }
  std::ofstream f(c.out, std::ios::binary);
  if (!f) throw ConfigError("cannot write " + c.out);
  write_table(f, t, format);
}

const SectionParams& pick_section(const RunConfig& cfg, int section) {
  if (section < 1 || section > static_cast<int>(cfg.sections.size())) {
    throw ConfigError("--section must be in [1, " + std::to_string(cfg.sections.size()) + "]");
  }
  return cfg.sections[section - 1];
}

Table cable_table(int section, const BendingConfig& b, const SectionParams& p,
                  const CableSolution& cables) {
  Table t;
  t.columns = {"section", "i", "l", "T", "theta0", "kappa_c", "beta", "d_i", "slack",
               "kappa_b", "gamma", "phi_b"};
  for (std::size_t i = 0; i < cables.size(); ++i) {
    const CableState& c = cables[i];
    t.add({static_cast<long long>(section), static_cast<long long>(i + 1), c.length, c.tension,
           c.incident_angle, c.curvature, c.beta, c.neutral_offset,
           static_cast<long long>(c.slack), b.curvature(), b.orientation(),
           b.bend_angle(p.length)});
  }
  return t;
}

// Baseline cable states: unloaded arcs with no tension model.
CableSolution baseline_cables(const BendingConfig& b, const SectionParams& p,
                              const std::vector<double>& lengths) {
  CableSolution out(p.cable_count);
  for (int i = 0; i < p.cable_count; ++i) {
    const CableGeometry g = cable_geometry(i, p.cable_count, b.orientation(), p.cable_offset);
    out[i].length = lengths[i];
    out[i].tension = NAN;
    out[i].beta = g.beta;
    out[i].neutral_offset = g.neutral_offset;
    out[i].curvature = b.curvature() / (1.0 - b.curvature() * g.neutral_offset);
  }
  return out;
}

std::vector<Eigen::MatrixXd> cable_commands(const std::vector<IKStep>& steps, const RunConfig& cfg,
                                            CableModel model) {
  std::vector<ArmConfig> qs;
  qs.reserve(steps.size());
  for (const IKStep& s : steps) {
    ArmConfig a = cfg.straight();
    a.q = s.q;
    qs.push_back(std::move(a));
  }
  return configs_to_cable_lengths(qs, model, cfg.solver);
}

void add_q_columns(Table& t, int m) {
  for (int i = 1; i <= m; ++i) {
    t.columns.push_back("gamma_" + std::to_string(i));
    t.columns.push_back("kappa_" + std::to_string(i));
  }
}

void add_length_columns(Table& t, const RunConfig& cfg) {
  for (std::size_t i = 0; i < cfg.sections.size(); ++i) {
    for (int c = 1; c <= cfg.sections[i].cable_count; ++c) {
      t.columns.push_back("l_" + std::to_string(i + 1) + "_" + std::to_string(c));
    }
  }
}

void append_q(std::vector<Cell>& row, const Eigen::VectorXd& q) {
  for (Eigen::Index j = 0; j < q.size(); ++j) row.emplace_back(q[j]);
}

void append_lengths(std::vector<Cell>& row, const Eigen::MatrixXd& l, const RunConfig& cfg) {
  for (std::size_t i = 0; i < cfg.sections.size(); ++i) {
    for (int c = 0; c < cfg.sections[i].cable_count; ++c) row.emplace_back(l(i, c));
  }
}

const TrajectorySpec& require_trajectory(const RunConfig& cfg) {
  if (!cfg.trajectory) throw ConfigError("config has no trajectory block");
  return *cfg.trajectory;
}

std::vector<BendSample> read_samples(const std::string& path, const char* value_column) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open samples " + path);
  std::string line;
  const std::string expected = std::string("phi_b_deg,") + value_column + ",replicate";
  if (!std::getline(in, line) || line != expected) {
    throw ConfigError(path + ": header must be '" + expected + "'");
  }
  std::vector<BendSample> out;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    for (std::string f; std::getline(ss, f, ',');) fields.push_back(f);
    if (fields.size() != 3) {
      throw ConfigError(path + ":" + std::to_string(lineno) + ": expected 3 fields");
    }
    try {
      out.push_back({deg_to_rad(std::stod(fields[0])), std::stod(fields[1]), std::stoi(fields[2])});
    } catch (const std::logic_error&) {
      throw ConfigError(path + ":" + std::to_string(lineno) + ": not a number");
    }
  }
  return out;
}

Table fit_table(const char* name, const StiffnessFit& f) {
  Table t;
  t.columns = {"parameter", "value", "angles", "large_angles", "objective", "bracket_violated"};
  t.add({std::string(name), f.value, static_cast<long long>(f.angles),
         static_cast<long long>(f.large_angles), f.objective,
         static_cast<long long>(f.bracket_violated)});
  return t;
}

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidParams:
    case ErrorKind::Config:
      return 3;
    case ErrorKind::Domain:
    case ErrorKind::ArcsinDomain:
    case ErrorKind::NoConvergence:
    case ErrorKind::SingularJacobian:
    case ErrorKind::Infeasible:
    case ErrorKind::NoBracket:
    case ErrorKind::Diverged:
      return 2;
    case ErrorKind::InsufficientData:
      return 1;
  }
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cable-driven soft arm statics, kinematics and identification"};
  app.require_subcommand(1);
  Common c;

  int section = 1;
  std::vector<double> lengths;
  double phi_deg = 0.0;
  double gamma_deg = 0.0;
  std::vector<double> phis_deg;
  std::vector<double> gammas_deg;
  std::string plant = "proposed";
  std::string samples;

  auto* fwd = app.add_subcommand("solve-forward", "cable lengths -> bending configuration");
  add_common(fwd, c);
  fwd->add_option("--lengths", lengths, "cable lengths (cm), comma separated")
      ->required()->delimiter(',');
  fwd->add_option("--section", section, "section index (1-based)");

  auto* inv = app.add_subcommand("solve-inverse", "bending configuration -> cable lengths");
  add_common(inv, c);
  inv->add_option("--phi-deg", phi_deg, "bending angle (deg)")->required();
  inv->add_option("--gamma-deg", gamma_deg, "bending orientation (deg)");
  inv->add_option("--section", section, "section index (1-based)");

  auto* base = app.add_subcommand("baseline", "geometric model in either direction");
  add_common(base, c);
  auto* base_phi = base->add_option("--phi-deg", phi_deg, "bending angle (deg)");
  base->add_option("--gamma-deg", gamma_deg, "bending orientation (deg)")->needs(base_phi);
  auto* base_len = base->add_option("--lengths", lengths, "cable lengths (cm)")->delimiter(',');
  base_phi->excludes(base_len);
  base->add_option("--section", section, "section index (1-based)");

  auto* fk = app.add_subcommand("fk", "tip position of the arm");
  add_common(fk, c);
  fk->add_option("--phi-deg", phis_deg, "bending angle per section (deg)")
      ->required()->delimiter(',');
  fk->add_option("--gamma-deg", gammas_deg, "orientation per section (deg)")->delimiter(',');

  auto* ik = app.add_subcommand("ik-track", "closed-loop IK along the configured trajectory");
  add_common(ik, c);

  auto* sim = app.add_subcommand("simulate", "open-loop tracking with a simulated plant");
  add_common(sim, c);
  sim->add_option("--plant", plant, "plant model: proposed or baseline")
      ->check(CLI::IsMember({"proposed", "baseline"}));

  auto* cmp = app.add_subcommand("compare", "proposed vs baseline inverse over a grid");
  add_common(cmp, c);
  cmp->add_option("--phi-deg", phis_deg, "bending angles (deg); default 0,10,...,180")
      ->delimiter(',');
  cmp->add_option("--gamma-deg", gammas_deg, "orientations (deg); default 0,15,30,45,60")
      ->delimiter(',');

  auto* kb = app.add_subcommand("identify-kb", "bending stiffness from tension samples");
  add_common(kb, c);
  kb->add_option("--samples", samples, "CSV: phi_b_deg,tension_N,replicate")
      ->required()->check(CLI::ExistingFile);

  auto* kc = app.add_subcommand("identify-kc", "cut-in stiffness from contraction samples");
  add_common(kc, c);
  kc->add_option("--samples", samples, "CSV: phi_b_deg,delta_l_cm,replicate")
      ->required()->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 3;
  }

  try {
    const RunConfig cfg = load_config(c.config);
    const CableModel model = parse_cable_model(c.model);
    const SolverSettings& s = cfg.solver;

    if (fwd->parsed() || (base->parsed() && !lengths.empty())) {
      const SectionParams& p = pick_section(cfg, section);
      const bool geometric = base->parsed() || model == CableModel::Baseline;
      if (geometric) {
        const BaselineFit fit = baseline_forward(lengths, p);
        Table t = cable_table(section, fit.config, p, baseline_cables(fit.config, p, lengths));
        t.summary.emplace_back("residual_norm", fit.residual_norm);
        emit(c, t);
      } else {
        const MultiCableSolution sol = solve_forward_multi(lengths, p, s);
        emit(c, cable_table(section, sol.config, p, sol.cables));
      }
    } else if (inv->parsed() || base->parsed()) {
      const SectionParams& p = pick_section(cfg, section);
      const BendingConfig b =
          BendingConfig::from_angle(deg_to_rad(phi_deg), deg_to_rad(gamma_deg), p.length);
      if (base->parsed() || model == CableModel::Baseline) {
        emit(c, cable_table(section, b, p, baseline_cables(b, p, baseline_inverse(b, p))));
      } else {
        emit(c, cable_table(section, b, p, solve_inverse_multi(b, p, s).cables));
      }
    } else if (fk->parsed()) {
      ArmConfig arm = cfg.straight();
      const auto m = static_cast<std::size_t>(arm.section_count());
      if (phis_deg.size() != m || (!gammas_deg.empty() && gammas_deg.size() != m)) {
        throw ConfigError("--phi-deg/--gamma-deg need one value per section (" +
                          std::to_string(m) + ")");
      }
      for (std::size_t i = 0; i < m; ++i) {
        arm.q[2 * i] = gammas_deg.empty() ? 0.0 : deg_to_rad(gammas_deg[i]);
        arm.q[2 * i + 1] = deg_to_rad(phis_deg[i]) / arm.sections[i].length;
      }
      validate_arm(arm);
      const ForwardKinematics out = forward_kinematics(arm, s.delta_kappa);
      Table t;
      t.columns = {"x", "y", "z"};
      t.add({out.tip.x(), out.tip.y(), out.tip.z()});
      emit(c, t);
    } else if (ik->parsed()) {
      const std::vector<TrajectorySample> xs = gen_trajectory(require_trajectory(cfg));
      const IKResult start = settle_ik(xs.front().position, cfg.straight(), cfg.ik);
      const std::vector<IKStep> steps = ik_track(xs, start.arm, cfg.ik);
      const std::vector<Eigen::MatrixXd> l = cable_commands(steps, cfg, model);
      Table t;
      t.columns = {"t", "x_d", "y_d", "z_d", "error"};
      add_q_columns(t, start.arm.section_count());
      add_length_columns(t, cfg);
      double mean = 0.0;
      for (std::size_t k = 0; k < steps.size(); ++k) {
        std::vector<Cell> row{steps[k].t, xs[k].position.x(), xs[k].position.y(),
                              xs[k].position.z(), steps[k].error};
        append_q(row, steps[k].q);
        append_lengths(row, l[k], cfg);
        t.add(std::move(row));
        mean += steps[k].error;
      }
      t.summary.emplace_back("mean_error", mean / static_cast<double>(steps.size()));
      emit(c, t);
    } else if (sim->parsed()) {
      const TrackingReport r = simulate_tracking(require_trajectory(cfg), parse_cable_model(plant),
                                                 model, cfg.sections, cfg.ik, s);
      Table t;
      t.columns = {"t", "x_d", "y_d", "z_d", "x", "y", "z", "error"};
      add_q_columns(t, static_cast<int>(cfg.sections.size()));
      add_length_columns(t, cfg);
      for (const TrackingStep& k : r.steps) {
        std::vector<Cell> row{k.t, k.desired.x(), k.desired.y(), k.desired.z(),
                              k.achieved.x(), k.achieved.y(), k.achieved.z(), k.error};
        append_q(row, k.q);
        append_lengths(row, k.lengths, cfg);
        t.add(std::move(row));
      }
      t.summary = {{"plant", std::string(plant)}, {"controller", c.model},
                   {"mean_error", r.mean_error}, {"max_error", r.max_error},
                   {"steps", static_cast<long long>(r.steps.size())}};
      emit(c, t);
      std::cerr << "mean_error " << format_double(r.mean_error) << " cm, max_error "
                << format_double(r.max_error) << " cm\n";
    } else if (cmp->parsed()) {
      if (phis_deg.empty()) {
        for (int d = 0; d <= 180; d += 10) phis_deg.push_back(d);
      }
      if (gammas_deg.empty()) gammas_deg = {0, 15, 30, 45, 60};
      std::vector<double> phis;
      std::vector<double> gammas;
      for (double d : phis_deg) phis.push_back(deg_to_rad(d));
      for (double d : gammas_deg) gammas.push_back(deg_to_rad(d));
      emit(c, compare_table(compare_models(cfg.sections.front(), phis, gammas, s)));
    } else if (kb->parsed()) {
      const StiffnessFit f = identify_kb(read_samples(samples, "tension_N"), cfg.sections.front());
      if (f.large_angles > 0) {
        std::cerr << "warning: " << f.large_angles
                  << " bending angle(s) above 15 deg; the small-angle assumption may not hold\n";
      }
      emit(c, fit_table("K_b", f));
    } else if (kc->parsed()) {
      const StiffnessFit f =
          identify_kc(read_samples(samples, "delta_l_cm"), cfg.sections.front(), s);
      emit(c, fit_table("K_c", f));
    }
  } catch (const Error& e) {
    std::cerr << "error [" << to_string(e.kind()) << "]: " << e.what() << '\n';
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
