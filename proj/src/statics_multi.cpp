#include "softarm/statics_multi.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include <Eigen/Dense>

#include "continuation.hpp"
#include "softarm/errors.hpp"
#include "softarm/nlsolve.hpp"
#include "softarm/statics_single.hpp"

namespace softarm {

CableGeometry cable_geometry(int index, int count, double orientation, double offset) {
  const double beta = kTwoPi * index / count - orientation;
  return {beta, offset * std::cos(beta)};
}

std::vector<int> slack_cables(int count, double orientation) {
  constexpr double kTie = 1e-12;
  std::vector<int> order(count);
  std::iota(order.begin(), order.end(), 0);
  std::vector<double> cosine(count);
  for (int i = 0; i < count; ++i) {
    cosine[i] = std::cos(cable_geometry(i, count, orientation, 1.0).beta);
  }
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return cosine[a] < cosine[b] - kTie; });
  order.resize(std::max(count - 2, 0));
  return order;
}

int select_slack_cable(int count, double orientation) {
  return slack_cables(count, orientation).front();
}

namespace {

// With `sine_form` the angle row is written as
// sin(alpha - theta0) - (1 - kappa_b d_i)(kappa_c/kappa_b) sin(alpha), which has
// the same roots for 0 <= theta0 <= alpha <= pi/2 but stays differentiable
// where the arcsin argument reaches 1 (an unloaded cable at a half-turn).
Eigen::VectorXd residual_rows(const MultiCableState& x, const SectionParams& p, bool sine_form) {
  const int n = p.cable_count;
  if (static_cast<int>(x.incident.size()) != n || static_cast<int>(x.cable_curvature.size()) != n ||
      static_cast<int>(x.tension.size()) != n || static_cast<int>(x.length.size()) != n) {
    throw DomainError("multi-cable state must hold n entries per cable quantity");
  }
  const double d = p.cable_offset;
  const double half = 0.5 * p.length * x.curvature;
  const double moment_scale = p.bend_stiffness / (p.length * p.length);
  const double tension_scale = p.cutin_stiffness / p.length;

  Eigen::VectorXd r(3 * n + 2);
  double planar = 0.0;
  double lateral = 0.0;
  for (int i = 0; i < n; ++i) {
    const CableGeometry g = cable_geometry(i, n, x.orientation, d);
    const double kc = x.cable_curvature[i];
    if (!(kc > 0.0)) throw DomainError("cable curvature must be > 0");
    const double th = x.incident[i];
    const double arm = x.tension[i] * d * std::cos(th);
    planar += arm * std::cos(g.beta);
    lateral += arm * std::sin(g.beta);
    const double dh = transverse_deformation(x.curvature, kc, g.neutral_offset, half, th);
    if (sine_form) {
      r[2 + i] = std::sin(half - th) -
                 (1.0 - x.curvature * g.neutral_offset) * kc / x.curvature * std::sin(half);
    } else {
      r[2 + i] = th - incident_angle(x.curvature, kc, g.neutral_offset, half);
    }
    r[2 + n + i] = (x.tension[i] - p.cutin_stiffness / kc * dh) / tension_scale;
    r[2 + 2 * n + i] = x.length[i] - (p.length * x.curvature - 2.0 * th) / kc;
  }
  r[0] = (p.bend_stiffness * x.curvature - planar) / moment_scale;
  r[1] = lateral / moment_scale;
  return r;
}

}  // namespace

Eigen::VectorXd residual_multi(const MultiCableState& x, const SectionParams& p) {
  return residual_rows(x, p, false);
}

std::vector<double> lateral_moments(const MultiCableState& x, const SectionParams& p) {
  const int n = p.cable_count;
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) {
    const double beta = cable_geometry(i, n, x.orientation, p.cable_offset).beta;
    out[i] = x.tension[i] * std::cos(x.incident[i]) * p.cable_offset * std::sin(beta);
  }
  return out;
}

std::vector<double> baseline_inverse(const BendingConfig& cfg, const SectionParams& p) {
  validate_params(p);
  validate_curvature(p, cfg.curvature());
  const int n = p.cable_count;
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) {
    const double di = cable_geometry(i, n, cfg.orientation(), p.cable_offset).neutral_offset;
    out[i] = p.length * (1.0 - cfg.curvature() * di);
  }
  return out;
}

namespace {

// Least-squares fit of contractions L - l_i = L d (a cos psi_i + b sin psi_i)
// over the listed cables; minimum-norm when underdetermined.
Eigen::Vector2d fit_contractions(std::span<const double> lengths, const std::vector<int>& cables,
                                 const SectionParams& p, double* residual = nullptr) {
  const auto k = static_cast<Eigen::Index>(cables.size());
  Eigen::MatrixXd a(k, 2);
  Eigen::VectorXd b(k);
  for (Eigen::Index r = 0; r < k; ++r) {
    const double psi = kTwoPi * cables[r] / p.cable_count;
    a(r, 0) = p.length * p.cable_offset * std::cos(psi);
    a(r, 1) = p.length * p.cable_offset * std::sin(psi);
    b[r] = p.length - lengths[cables[r]];
  }
  const Eigen::Vector2d ab = a.completeOrthogonalDecomposition().solve(b);
  if (residual) *residual = (a * ab - b).norm();
  return ab;
}

std::vector<int> all_cables(int n) {
  std::vector<int> v(n);
  std::iota(v.begin(), v.end(), 0);
  return v;
}

MultiCableState straight_multi(std::span<const double> lengths, int n) {
  MultiCableState st;
  st.incident.assign(n, 0.0);
  st.cable_curvature.assign(n, 0.0);
  st.tension.assign(n, 0.0);
  st.length.assign(lengths.begin(), lengths.end());
  return st;
}

MultiCableSolution to_solution(const MultiCableState& st, const SectionParams& p,
                               const std::vector<bool>& pinned) {
  MultiCableSolution out;
  out.config = BendingConfig(st.curvature, st.orientation);
  const int n = p.cable_count;
  out.cables.resize(n);
  for (int i = 0; i < n; ++i) {
    const CableGeometry g = cable_geometry(i, n, out.config.orientation(), p.cable_offset);
    CableState& c = out.cables[i];
    c.length = st.length[i];
    c.tension = st.tension[i];
    c.incident_angle = st.incident[i];
    c.curvature = st.cable_curvature[i];
    c.beta = g.beta;
    c.neutral_offset = g.neutral_offset;
    c.slack = pinned[i];
  }
  return out;
}

// A zero-tension cable carries no transverse load: theta0 = 0 and it follows
// the concentric arc of radius 1/kappa_b - d_i.
void set_unloaded(MultiCableState& st, int i, const SectionParams& p) {
  const double di = cable_geometry(i, p.cable_count, st.orientation, p.cable_offset).neutral_offset;
  st.incident[i] = 0.0;
  st.tension[i] = 0.0;
  st.cable_curvature[i] = st.curvature / (1.0 - st.curvature * di);
}

double unloaded_length(const MultiCableState& st, int i, const SectionParams& p) {
  const double di = cable_geometry(i, p.cable_count, st.orientation, p.cable_offset).neutral_offset;
  return p.length * (1.0 - st.curvature * di);
}

// Undeformed-cable tensions: the moment is shared by the cables facing the
// bending direction in proportion to cos(beta_i).
void seed_free_cables(MultiCableState& st, const std::vector<int>& free, const SectionParams& p) {
  double norm = 0.0;
  for (int i : free) {
    const double c = std::cos(cable_geometry(i, p.cable_count, st.orientation, 1.0).beta);
    norm += std::max(c, 0.0) * std::max(c, 0.0);
  }
  for (int i : free) {
    set_unloaded(st, i, p);
    const double c = std::cos(cable_geometry(i, p.cable_count, st.orientation, 1.0).beta);
    st.tension[i] = norm > 0.0 ? p.bend_stiffness * st.curvature * std::max(c, 0.0) /
                                     (p.cable_offset * norm)
                               : 0.0;
  }
}

// The sine-form angle row also admits alpha - theta0 > pi/2; reject that branch.
void check_angle_branch(const MultiCableState& st, const SectionParams& p) {
  constexpr double kSlop = 1e-9;
  const double half = 0.5 * p.length * st.curvature;
  for (std::size_t i = 0; i < st.incident.size(); ++i) {
    if (st.incident[i] < -kSlop || st.incident[i] > half + kSlop) {
      throw NoConvergence("cable " + std::to_string(i + 1) + " incident angle left [0, alpha]",
                          Eigen::VectorXd(), INFINITY);
    }
  }
}

bool is_solver_failure(const Error& e) {
  return e.kind() == ErrorKind::NoConvergence || e.kind() == ErrorKind::SingularJacobian;
}

// Forward system for a fixed pinned set. Unknowns: kappa_b, gamma, then
// (theta0, kappa_c, T) for each free cable. Rows: both moment balances, then
// angle, tension and length rows of each free cable.
class ForwardProblem {
 public:
  ForwardProblem(std::span<const double> lengths, const SectionParams& p, const SolverSettings& s,
                 std::vector<int> free)
      : lengths_(lengths.begin(), lengths.end()), p_(p), s_(s), free_(std::move(free)) {}

  int dimension() const { return 2 + 3 * static_cast<int>(free_.size()); }

  MultiCableState unpack(const Eigen::VectorXd& v, std::span<const double> lengths) const {
    const int n = p_.cable_count;
    MultiCableState st;
    st.curvature = v[0];
    st.orientation = v[1];
    st.incident.assign(n, 0.0);
    st.cable_curvature.assign(n, 0.0);
    st.tension.assign(n, 0.0);
    st.length.assign(lengths.begin(), lengths.end());
    for (int i = 0; i < n; ++i) set_unloaded(st, i, p_);
    for (std::size_t k = 0; k < free_.size(); ++k) {
      const int i = free_[k];
      st.incident[i] = v[2 + 3 * k];
      st.cable_curvature[i] = v[3 + 3 * k];
      st.tension[i] = v[4 + 3 * k];
    }
    return st;
  }

  Eigen::VectorXd pack(const MultiCableState& st) const {
    Eigen::VectorXd v(dimension());
    v[0] = st.curvature;
    v[1] = st.orientation;
    for (std::size_t k = 0; k < free_.size(); ++k) {
      const int i = free_[k];
      v[2 + 3 * k] = st.incident[i];
      v[3 + 3 * k] = st.cable_curvature[i];
      v[4 + 3 * k] = st.tension[i];
    }
    return v;
  }

  ResidualSystem system(std::vector<double> lengths) const {
    ResidualSystem sys;
    sys.dimension = dimension();
    sys.evaluate = [this, lengths = std::move(lengths)](const Eigen::VectorXd& v) {
      const int n = p_.cable_count;
      const Eigen::VectorXd full = residual_rows(unpack(v, lengths), p_, true);
      Eigen::VectorXd r(dimension());
      r[0] = full[0];
      r[1] = full[1];
      for (std::size_t k = 0; k < free_.size(); ++k) {
        const int i = free_[k];
        r[2 + 3 * k] = full[2 + i];
        r[3 + 3 * k] = full[2 + n + i];
        r[4 + 3 * k] = full[2 + 2 * n + i];
      }
      return r;
    };
    sys.lower = Eigen::VectorXd::Constant(dimension(), -INFINITY);
    sys.upper = Eigen::VectorXd::Constant(dimension(), INFINITY);
    sys.lower[0] = s_.delta_kappa;
    sys.upper[0] = p_.max_curvature();
    for (std::size_t k = 0; k < free_.size(); ++k) sys.lower[3 + 3 * k] = 1e-12;
    return sys;
  }

  Eigen::VectorXd guess(std::span<const double> lengths) const {
    const Eigen::Vector2d ab = fit_contractions(lengths, free_, p_);
    MultiCableState st = straight_multi(lengths, p_.cable_count);
    st.curvature = std::clamp(ab.norm(), 10.0 * s_.delta_kappa, p_.max_curvature());
    st.orientation = ab.norm() > 0.0 ? std::atan2(ab[1], ab[0]) : 0.0;
    seed_free_cables(st, free_, p_);
    return pack(st);
  }

  Eigen::VectorXd solve(std::span<const double> lengths, const Eigen::VectorXd* warm) const {
    const Eigen::VectorXd x0 = warm ? *warm : guess(lengths);
    return solve_system(system({lengths.begin(), lengths.end()}), x0, s_).x;
  }

  // Newton from `warm` (or the undeformed guess); on failure, optionally a
  // homotopy on the cable contractions starting from the straight section.
  MultiCableState solve(const MultiCableState* warm, bool allow_continuation) const {
    Eigen::VectorXd x;
    try {
      const Eigen::VectorXd start = warm ? pack(*warm) : guess(lengths_);
      x = solve(lengths_, &start);
    } catch (const Error& e) {
      if (!is_solver_failure(e) || !allow_continuation) throw;
      x = detail::continuation([&](double t, const std::optional<Eigen::VectorXd>& prev) {
        std::vector<double> partial(lengths_.size());
        for (std::size_t i = 0; i < partial.size(); ++i) {
          partial[i] = p_.length + t * (lengths_[i] - p_.length);
        }
        return solve(partial, prev ? &*prev : nullptr);
      });
    }
    return unpack(x, lengths_);
  }

 private:
  std::vector<double> lengths_;
  const SectionParams& p_;
  const SolverSettings& s_;
  std::vector<int> free_;
};

// Inverse system with the slack set pinned. Unknowns: (theta0, kappa_c, T)
// per active cable. Rows: both moment balances plus angle and tension rows of
// each active cable. Lengths follow from the length rows afterwards.
class InverseProblem {
 public:
  InverseProblem(const SectionParams& p, const SolverSettings& s, std::vector<int> active)
      : p_(p), s_(s), active_(std::move(active)) {}

  int dimension() const { return 3 * static_cast<int>(active_.size()); }

  MultiCableState unpack(const Eigen::VectorXd& v, double curvature, double orientation) const {
    const int n = p_.cable_count;
    MultiCableState st;
    st.curvature = curvature;
    st.orientation = orientation;
    st.incident.assign(n, 0.0);
    st.cable_curvature.assign(n, 0.0);
    st.tension.assign(n, 0.0);
    st.length.assign(n, 0.0);
    for (int i = 0; i < n; ++i) set_unloaded(st, i, p_);
    for (std::size_t k = 0; k < active_.size(); ++k) {
      const int i = active_[k];
      st.incident[i] = v[3 * k];
      st.cable_curvature[i] = v[3 * k + 1];
      st.tension[i] = v[3 * k + 2];
    }
    for (int i = 0; i < n; ++i) {
      st.length[i] = (p_.length * curvature - 2.0 * st.incident[i]) / st.cable_curvature[i];
    }
    return st;
  }

  ResidualSystem system(double curvature, double orientation) const {
    ResidualSystem sys;
    sys.dimension = dimension();
    sys.evaluate = [this, curvature, orientation](const Eigen::VectorXd& v) {
      const int n = p_.cable_count;
      const Eigen::VectorXd full = residual_rows(unpack(v, curvature, orientation), p_, true);
      Eigen::VectorXd r(2 + 2 * active_.size());
      r[0] = full[0];
      r[1] = full[1];
      for (std::size_t k = 0; k < active_.size(); ++k) {
        r[2 + 2 * k] = full[2 + active_[k]];
        r[3 + 2 * k] = full[2 + n + active_[k]];
      }
      return r;
    };
    sys.lower = Eigen::VectorXd::Constant(dimension(), -INFINITY);
    for (std::size_t k = 0; k < active_.size(); ++k) sys.lower[3 * k + 1] = 1e-12;
    return sys;
  }

  Eigen::VectorXd guess(double curvature, double orientation) const {
    // Undeformed cables: the two active tensions close both moment balances.
    const int a = active_[0];
    const int b = active_[1];
    const double ba = cable_geometry(a, p_.cable_count, orientation, 1.0).beta;
    const double bb = cable_geometry(b, p_.cable_count, orientation, 1.0).beta;
    Eigen::Matrix2d m;
    m << std::cos(ba), std::cos(bb), std::sin(ba), std::sin(bb);
    const Eigen::Vector2d t =
        m.partialPivLu().solve(Eigen::Vector2d(p_.bend_stiffness * curvature / p_.cable_offset, 0.0));
    Eigen::VectorXd v(dimension());
    for (std::size_t k = 0; k < active_.size(); ++k) {
      const double di =
          cable_geometry(active_[k], p_.cable_count, orientation, p_.cable_offset).neutral_offset;
      v[3 * k] = 0.0;
      v[3 * k + 1] = curvature / (1.0 - curvature * di);
      v[3 * k + 2] = t[static_cast<Eigen::Index>(k)];
    }
    return v;
  }

  Eigen::VectorXd solve(double curvature, double orientation, const Eigen::VectorXd* warm) const {
    const Eigen::VectorXd x0 = warm ? *warm : guess(curvature, orientation);
    return solve_system(system(curvature, orientation), x0, s_).x;
  }

 private:
  const SectionParams& p_;
  const SolverSettings& s_;
  std::vector<int> active_;
};

}  // namespace

BaselineFit baseline_forward(std::span<const double> lengths, const SectionParams& p) {
  validate_params(p);
  if (static_cast<int>(lengths.size()) != p.cable_count) {
    throw DomainError("expected " + std::to_string(p.cable_count) + " cable lengths");
  }
  BaselineFit fit;
  const Eigen::Vector2d ab = fit_contractions(lengths, all_cables(p.cable_count), p, &fit.residual_norm);
  const double k = ab.norm();
  fit.config = BendingConfig(k, k > 0.0 ? std::atan2(ab[1], ab[0]) : 0.0);
  return fit;
}

MultiCableSolution solve_forward_multi(std::span<const double> lengths, const SectionParams& p,
                                       const SolverSettings& s) {
  validate_params(p);
  validate_settings(s);
  const int n = p.cable_count;
  if (static_cast<int>(lengths.size()) != n) {
    throw DomainError("expected " + std::to_string(n) + " cable lengths");
  }
  for (double l : lengths) {
    if (!(l > 0.0) || !std::isfinite(l)) throw DomainError("cable lengths must be > 0");
  }

  auto straight = [&] {
    return to_solution(straight_multi(lengths, n), p, std::vector<bool>(n, false));
  };
  if (std::all_of(lengths.begin(), lengths.end(), [&](double l) { return l >= p.length; })) {
    return straight();
  }
  const BaselineFit fit = baseline_forward(lengths, p);
  if (fit.config.curvature() < s.delta_kappa) {
    // An inextensible straight backbone cannot take up a common contraction.
    const double shortest = *std::min_element(lengths.begin(), lengths.end());
    if (p.length - shortest > s.delta_kappa * p.length * p.cable_offset) {
      throw Infeasible("cable lengths contract the section without bending it");
    }
    return straight();
  }

  auto free_of = [n](const std::vector<bool>& pinned) {
    std::vector<int> free;
    for (int i = 0; i < n; ++i) {
      if (!pinned[i]) free.push_back(i);
    }
    return free;
  };

  // All tensions free first. If that does not converge, start from the slack
  // set the geometric fit predicts.
  std::vector<bool> pinned(n, false);
  MultiCableState st;
  try {
    st = ForwardProblem(lengths, p, s, free_of(pinned)).solve(nullptr, false);
  } catch (const Error& e) {
    if (!is_solver_failure(e)) throw;
    for (int j : slack_cables(n, fit.config.orientation())) pinned[j] = true;
    st = ForwardProblem(lengths, p, s, free_of(pinned)).solve(nullptr, true);
  }

  // Complementarity: free cables pull (T >= 0), pinned cables are no shorter
  // than their unloaded path. Repair one violation per round.
  for (int round = 0; round < 4 * n; ++round) {
    int pin = -1;
    for (int i = 0; i < n; ++i) {
      if (!pinned[i] && st.tension[i] < -s.tension_tol &&
          (pin < 0 || st.tension[i] < st.tension[pin])) {
        pin = i;
      }
    }
    int unpin = -1;
    double worst_gap = 1e-9;
    for (int i = 0; i < n; ++i) {
      const double gap = pinned[i] ? unloaded_length(st, i, p) - lengths[i] : 0.0;
      if (gap > worst_gap) {
        worst_gap = gap;
        unpin = i;
      }
    }
    if (pin < 0 && unpin < 0) {
      check_angle_branch(st, p);
      return to_solution(st, p, pinned);
    }

    if (pin >= 0) {
      pinned[pin] = true;
      if (free_of(pinned).empty()) return straight();
    } else {
      pinned[unpin] = false;
    }
    const ForwardProblem next(lengths, p, s, free_of(pinned));
    try {
      st = next.solve(&st, false);
    } catch (const Error& e) {
      if (!is_solver_failure(e)) throw;
      st = next.solve(nullptr, true);
    }
  }
  throw Infeasible("no consistent slack assignment for the given cable lengths");
}

MultiCableSolution solve_inverse_multi(const BendingConfig& cfg, const SectionParams& p,
                                       const SolverSettings& s) {
  validate_params(p);
  validate_settings(s);
  const int n = p.cable_count;
  const double kappa = cfg.curvature();
  if (kappa > p.max_curvature()) {
    throw DomainError("backbone curvature must be in [0, pi/L], got " + std::to_string(kappa));
  }
  validate_curvature(p, kappa);
  if (kappa < s.delta_kappa) {
    return to_solution(straight_multi(std::vector<double>(n, p.length), n), p,
                       std::vector<bool>(n, false));
  }

  const std::vector<int> slack = slack_cables(n, cfg.orientation());
  std::vector<bool> pinned(n, false);
  for (int j : slack) pinned[j] = true;
  std::vector<int> active;
  for (int i = 0; i < n; ++i) {
    if (!pinned[i]) active.push_back(i);
  }

  const InverseProblem problem(p, s, active);
  Eigen::VectorXd x;
  try {
    x = problem.solve(kappa, cfg.orientation(), nullptr);
  } catch (const Error& e) {
    if (!is_solver_failure(e)) throw;
    x = detail::continuation([&](double t, const std::optional<Eigen::VectorXd>& warm) {
      return problem.solve(t * kappa, cfg.orientation(), warm ? &*warm : nullptr);
    });
  }
  const MultiCableState st = problem.unpack(x, kappa, cfg.orientation());
  check_angle_branch(st, p);
  for (int i : active) {
    if (st.tension[i] < -s.tension_tol) {
      throw Infeasible("active cable " + std::to_string(i + 1) + " needs tension " +
                       std::to_string(st.tension[i]) + " N");
    }
  }
  return to_solution(st, p, pinned);
}

}  // namespace softarm
