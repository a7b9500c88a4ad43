#include "softarm/config.hpp"

#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>

#include <json.hpp>

#include "softarm/errors.hpp"

namespace softarm {

namespace {

using nlohmann::json;

// Field access on one JSON object with its dotted path for error messages.
class Block {
 public:
  Block(const json& j, std::string path, std::initializer_list<const char*> allowed)
      : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) throw ConfigError(path_ + " must be an object");
    for (const auto& [key, value] : j_.items()) {
      bool known = false;
      for (const char* a : allowed) known = known || key == a;
      if (!known) throw ConfigError("unknown key " + path_ + "." + key);
    }
  }

  bool has(const char* key) const { return j_.contains(key); }

  const json& at(const char* key) const {
    if (!has(key)) throw ConfigError("missing " + path_ + "." + key);
    return j_.at(key);
  }

  std::string where(const char* key) const { return path_ + "." + key; }

  double number(const char* key) const {
    const json& v = at(key);
    if (!v.is_number()) throw ConfigError(where(key) + " must be a number");
    return v.get<double>();
  }

  double number(const char* key, double fallback) const {
    return has(key) ? number(key) : fallback;
  }

  int integer(const char* key) const {
    const json& v = at(key);
    if (!v.is_number_integer()) throw ConfigError(where(key) + " must be an integer");
    return v.get<int>();
  }

  int integer(const char* key, int fallback) const { return has(key) ? integer(key) : fallback; }

  Eigen::Vector3d vec3(const char* key, const Eigen::Vector3d& fallback) const {
    if (!has(key)) return fallback;
    const json& v = at(key);
    if (!v.is_array() || v.size() != 3) throw ConfigError(where(key) + " must be a 3-element array");
    Eigen::Vector3d out;
    for (int i = 0; i < 3; ++i) {
      if (!v[i].is_number()) throw ConfigError(where(key) + " must hold numbers");
      out[i] = v[i].get<double>();
    }
    return out;
  }

 private:
  const json& j_;
  std::string path_;
};

SectionParams read_section(const json& j, const std::string& path) {
  const Block b(j, path, {"L", "d", "K_b", "K_c", "n", "h"});
  SectionParams p;
  p.length = b.number("L");
  p.cable_offset = b.number("d");
  p.bend_stiffness = b.number("K_b");
  p.cutin_stiffness = b.number("K_c");
  p.cable_count = b.integer("n");
  p.endcap = b.number("h");
  try {
    validate_params(p);
  } catch (const Error& e) {
    e.rethrow_with_context(path);
  }
  return p;
}

std::vector<SectionParams> read_arm(const json& j) {
  const Block b(j, "arm", {"m", "section", "sections"});
  std::vector<SectionParams> out;
  if (b.has("sections") == b.has("section")) {
    throw ConfigError("arm needs exactly one of 'section' or 'sections'");
  }
  if (b.has("section")) {
    const int m = b.integer("m");
    if (m < 1) throw ConfigError("arm.m must be >= 1");
    out.assign(m, read_section(b.at("section"), "arm.section"));
    return out;
  }
  const json& list = b.at("sections");
  if (!list.is_array() || list.empty()) throw ConfigError("arm.sections must be a non-empty array");
  for (std::size_t i = 0; i < list.size(); ++i) {
    out.push_back(read_section(list[i], "arm.sections[" + std::to_string(i) + "]"));
  }
  if (b.has("m") && b.integer("m") != static_cast<int>(out.size())) {
    throw ConfigError("arm.m does not match the number of sections");
  }
  return out;
}

SolverSettings read_solver(const json& j) {
  const Block b(j, "solver",
                {"residual_tol", "max_iter", "damping_init", "delta_kappa", "fd_step", "tol_T"});
  SolverSettings s;
  s.residual_tol = b.number("residual_tol", s.residual_tol);
  s.max_iter = b.integer("max_iter", s.max_iter);
  s.damping_init = b.number("damping_init", s.damping_init);
  s.delta_kappa = b.number("delta_kappa", s.delta_kappa);
  s.fd_step = b.number("fd_step", s.fd_step);
  s.tension_tol = b.number("tol_T", s.tension_tol);
  validate_settings(s);
  return s;
}

IKSettings read_ik(const json& j) {
  const Block b(j, "ik", {"k", "K", "dt", "max_steps", "target_tol", "divergence_bound"});
  IKSettings st;
  st.damping = b.number("k", st.damping);
  st.gain = b.vec3("K", st.gain);
  st.dt = b.number("dt", st.dt);
  st.max_steps = b.integer("max_steps", st.max_steps);
  st.target_tol = b.number("target_tol", st.target_tol);
  st.divergence_bound = b.number("divergence_bound", st.divergence_bound);
  return st;
}

TrajectorySpec read_trajectory(const json& j) {
  const Block b(j, "trajectory", {"kind", "center", "radius", "end", "normal", "duration", "dt"});
  TrajectorySpec t;
  const json& kind = b.at("kind");
  if (!kind.is_string()) throw ConfigError("trajectory.kind must be a string");
  t.kind = parse_trajectory_kind(kind.get<std::string>());
  t.center = b.vec3("center", t.center);
  t.radius = b.number("radius", t.radius);
  t.end = b.vec3("end", t.end);
  t.normal = b.vec3("normal", t.normal);
  t.duration = b.number("duration");
  t.dt = b.number("dt", t.dt);
  validate_trajectory(t);
  return t;
}

}  // namespace

ArmConfig RunConfig::straight() const {
  ArmConfig arm;
  arm.sections = sections;
  arm.q = Eigen::VectorXd::Zero(2 * static_cast<Eigen::Index>(sections.size()));
  return arm;
}

RunConfig parse_config(std::string_view text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  const Block b(root, "config", {"arm", "solver", "ik", "trajectory"});
  RunConfig cfg;
  cfg.sections = read_arm(b.at("arm"));
  if (b.has("solver")) cfg.solver = read_solver(b.at("solver"));
  if (b.has("ik")) cfg.ik = read_ik(b.at("ik"));
  cfg.ik.delta_kappa = cfg.solver.delta_kappa;
  try {
    validate_ik_settings(cfg.ik);
  } catch (const Error& e) {
    e.rethrow_with_context("ik");
  }
  if (b.has("trajectory")) cfg.trajectory = read_trajectory(b.at("trajectory"));
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  RunConfig cfg;
  try {
    cfg = parse_config(text.str());
  } catch (const Error& e) {
    e.rethrow_with_context(path.string());
  }
  return cfg;
}

}  // namespace softarm
