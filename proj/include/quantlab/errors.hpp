#pragma once

#include <stdexcept>
#include <string>

namespace quantlab {

/// Input outside the mathematical domain of an operation (n < 2, sigma2 <= 0, ...).
class DomainError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Mismatched grids, levels or matrix sizes.
class ShapeError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// A computed quantity violated an invariant it must satisfy.
class ConsistencyError : public std::runtime_error {
public:
  ConsistencyError(std::string invariant, double residual, double tolerance)
      : std::runtime_error(invariant + ": residual " + std::to_string(residual) +
                           " exceeds tolerance " + std::to_string(tolerance)),
        invariant_(std::move(invariant)), residual_(residual), tolerance_(tolerance) {}

  const std::string& invariant() const noexcept { return invariant_; }
  double residual() const noexcept { return residual_; }
  double tolerance() const noexcept { return tolerance_; }

private:
  std::string invariant_;
  double residual_;
  double tolerance_;
};

/// Lattice series could not be truncated within the term budget.
class TruncationError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Numerical integration or differencing failed to reach the requested accuracy.
class AccuracyError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Precondition on an argument (e.g. a section that should be holomorphic) failed.
class PreconditionError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace quantlab
