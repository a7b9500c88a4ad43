#pragma once

#include <exception>
#include <string>
#include <utility>

#include <Eigen/Core>

namespace softarm {

enum class ErrorKind {
  InvalidParams,
  Config,
  Domain,
  ArcsinDomain,
  NoConvergence,
  SingularJacobian,
  Infeasible,
  NoBracket,
  InsufficientData,
  Diverged,
};

const char* to_string(ErrorKind kind);

/// Base of every error raised by the library. The kind survives context
/// wrapping, so callers (and the CLI exit-code mapping) can dispatch on it.
class Error : public std::exception {
 public:
  Error(ErrorKind kind, std::string message) : kind_(kind), message_(std::move(message)) {}

  ErrorKind kind() const noexcept { return kind_; }
  const char* what() const noexcept override { return message_.c_str(); }

  /// Rethrows a copy of the dynamic type with `context` prepended to the message.
  [[noreturn]] virtual void rethrow_with_context(const std::string& context) const = 0;

 protected:
  void prepend(const std::string& context) { message_ = context + ": " + message_; }

 private:
  ErrorKind kind_;
  std::string message_;
};

template <class Derived, ErrorKind Kind>
class ErrorOf : public Error {
 public:
  explicit ErrorOf(std::string message) : Error(Kind, std::move(message)) {}

  [[noreturn]] void rethrow_with_context(const std::string& context) const override {
    Derived copy(static_cast<const Derived&>(*this));
    copy.prepend(context);
    throw copy;
  }
};

class InvalidParams : public ErrorOf<InvalidParams, ErrorKind::InvalidParams> {
  using ErrorOf::ErrorOf;
};

class ConfigError : public ErrorOf<ConfigError, ErrorKind::Config> {
  using ErrorOf::ErrorOf;
};

class DomainError : public ErrorOf<DomainError, ErrorKind::Domain> {
  using ErrorOf::ErrorOf;
};

/// An arcsin argument left [-1, 1]; solvers treat it as a rejected trial point.
class ArcsinDomain : public ErrorOf<ArcsinDomain, ErrorKind::ArcsinDomain> {
  using ErrorOf::ErrorOf;
};

class SingularJacobian : public ErrorOf<SingularJacobian, ErrorKind::SingularJacobian> {
  using ErrorOf::ErrorOf;
};

class Infeasible : public ErrorOf<Infeasible, ErrorKind::Infeasible> {
  using ErrorOf::ErrorOf;
};

class NoBracket : public ErrorOf<NoBracket, ErrorKind::NoBracket> {
  using ErrorOf::ErrorOf;
};

class InsufficientData : public ErrorOf<InsufficientData, ErrorKind::InsufficientData> {
  using ErrorOf::ErrorOf;
};

class Diverged : public ErrorOf<Diverged, ErrorKind::Diverged> {
  using ErrorOf::ErrorOf;
};

/// Iteration budget exhausted or step halving stagnated. Carries the best
/// iterate seen and its residual norm.
class NoConvergence : public ErrorOf<NoConvergence, ErrorKind::NoConvergence> {
 public:
  NoConvergence(std::string message, Eigen::VectorXd best, double residual_norm)
      : ErrorOf(std::move(message)), best_(std::move(best)), residual_norm_(residual_norm) {}

  const Eigen::VectorXd& best_iterate() const { return best_; }
  double residual_norm() const { return residual_norm_; }

 private:
  Eigen::VectorXd best_;
  double residual_norm_;
};

}  // namespace softarm
