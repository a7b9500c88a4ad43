#include "softarm/nlsolve.hpp"

#include <cmath>
#include <limits>
#include <optional>
#include <string>

#include <Eigen/QR>

#include "softarm/errors.hpp"

namespace softarm {
namespace {

constexpr int kMaxHalvings = 30;

// Evaluates the system, mapping inadmissible points (domain errors or
// non-finite output) to nullopt.
std::optional<Eigen::VectorXd> try_evaluate(const ResidualSystem& sys, const Eigen::VectorXd& x) {
  try {
    Eigen::VectorXd r = sys.evaluate(x);
    if (!r.allFinite()) return std::nullopt;
    return r;
  } catch (const DomainError&) {
    return std::nullopt;
  } catch (const ArcsinDomain&) {
    return std::nullopt;
  }
}

}  // namespace

Eigen::VectorXd ResidualSystem::project(Eigen::VectorXd x) const {
  if (lower.size() == x.size()) x = x.cwiseMax(lower);
  if (upper.size() == x.size()) x = x.cwiseMin(upper);
  return x;
}

Eigen::MatrixXd finite_difference_jacobian(const ResidualSystem& sys, const Eigen::VectorXd& x,
                                           const Eigen::VectorXd& r, double fd_step) {
  const auto n = x.size();
  Eigen::MatrixXd jac(r.size(), n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const double h = std::max(fd_step, fd_step * std::abs(x[j]));
    Eigen::VectorXd xp = x;
    Eigen::VectorXd xm = x;
    xp[j] += h;
    xm[j] -= h;
    // Probes are not projected: a probe just outside a bound is still a
    // valid point of the residual map unless it throws.
    auto rp = try_evaluate(sys, xp);
    auto rm = try_evaluate(sys, xm);
    if (rp && rm) {
      jac.col(j) = (*rp - *rm) / (2.0 * h);
    } else if (rp) {
      jac.col(j) = (*rp - r) / h;
    } else if (rm) {
      jac.col(j) = (r - *rm) / h;
    } else {
      throw SingularJacobian("no admissible finite-difference probe for variable " +
                             std::to_string(j));
    }
  }
  return jac;
}

SolveReport solve_system(const ResidualSystem& sys, const Eigen::VectorXd& x0,
                         const SolverSettings& settings) {
  if (x0.size() != sys.dimension) {
    throw DomainError("initial guess has length " + std::to_string(x0.size()) + ", expected " +
                      std::to_string(sys.dimension));
  }
  Eigen::VectorXd x = sys.project(x0);
  auto r0 = try_evaluate(sys, x);
  if (!r0) throw NoConvergence("initial guess is outside the residual domain", x, INFINITY);
  Eigen::VectorXd r = *r0;
  double merit = r.norm();

  for (int iter = 0; iter < settings.max_iter; ++iter) {
    const double inf_norm = r.lpNorm<Eigen::Infinity>();
    if (inf_norm < settings.residual_tol) return {x, inf_norm, iter};

    const Eigen::MatrixXd jac = finite_difference_jacobian(sys, x, r, settings.fd_step);
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(jac);
    if (qr.rank() < sys.dimension) {
      throw SingularJacobian("Jacobian rank " + std::to_string(qr.rank()) + " < " +
                             std::to_string(sys.dimension));
    }
    const Eigen::VectorXd dx = qr.solve(-r);
    if (!dx.allFinite()) throw SingularJacobian("non-finite Newton step");

    double step = settings.damping_init;
    bool accepted = false;
    for (int k = 0; k <= kMaxHalvings; ++k, step *= 0.5) {
      Eigen::VectorXd trial = sys.project(x + step * dx);
      auto rt = try_evaluate(sys, trial);
      if (rt && rt->norm() < merit) {
        x = std::move(trial);
        r = std::move(*rt);
        merit = r.norm();
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      throw NoConvergence("step halving stagnated at residual " + std::to_string(inf_norm), x,
                          inf_norm);
    }
  }
  const double inf_norm = r.lpNorm<Eigen::Infinity>();
  if (inf_norm < settings.residual_tol) return {x, inf_norm, settings.max_iter};
  throw NoConvergence("iteration budget exhausted at residual " + std::to_string(inf_norm), x,
                      inf_norm);
}

double solve_scalar_bisection(const std::function<double(double)>& f, double lo, double hi,
                              double tol) {
  if (!(lo < hi) || !(tol > 0.0)) throw DomainError("bisection needs lo < hi and tol > 0");
  double flo = f(lo);
  const double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if (std::signbit(flo) == std::signbit(fhi)) {
    throw NoBracket("f(lo) and f(hi) have the same sign");
  }
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;  // bracket at floating-point resolution
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if (std::signbit(fm) == std::signbit(flo)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

GoldenSectionResult golden_section_minimize(const std::function<double(double)>& f, double lo,
                                            double hi, double tol) {
  constexpr double kInvPhi = 0.6180339887498949;
  GoldenSectionResult out;
  auto eval = [&](double x) {
    ++out.evaluations;
    try {
      const double v = f(x);
      return std::isfinite(v) ? v : std::numeric_limits<double>::infinity();
    } catch (const NoConvergence&) {
      return std::numeric_limits<double>::infinity();
    } catch (const SingularJacobian&) {
      return std::numeric_limits<double>::infinity();
    } catch (const Infeasible&) {
      return std::numeric_limits<double>::infinity();
    }
  };

  double a = lo;
  double b = hi;
  double fa = eval(a);
  double fb = eval(b);
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = eval(c);
  double fd = eval(d);
  auto check = [&](double fx) {
    if (std::isfinite(fa) && std::isfinite(fb) && fx > std::max(fa, fb)) {
      out.bracket_violated = true;
    }
  };
  check(fc);
  check(fd);

  while (b - a > tol) {
    if (!std::isfinite(fc) && !std::isfinite(fd)) {
      throw NoConvergence("objective inadmissible on the whole bracket",
                          Eigen::VectorXd::Constant(1, 0.5 * (a + b)), INFINITY);
    }
    // An inadmissible probe cuts the bracket from its side.
    const bool keep_left = std::isfinite(fc) && (!std::isfinite(fd) || fc <= fd);
    if (keep_left) {
      b = d;
      fb = fd;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = eval(c);
      check(fc);
    } else {
      a = c;
      fa = fc;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = eval(d);
      check(fd);
    }
  }
  out.x = 0.5 * (a + b);
  out.value = eval(out.x);
  return out;
}

}  // namespace softarm
