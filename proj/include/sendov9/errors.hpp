#ifndef SENDOV9_ERRORS_HPP
#define SENDOV9_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace sendov {

/// Operand outside the mathematical domain of an operation
/// (division by an interval containing 0, sqrt of a negative, ...).
struct DomainError : std::runtime_error {
  explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

/// Exact evaluation hit an irrational subterm that did not cancel.
struct NonRationalResidue : std::runtime_error {
  explicit NonRationalResidue(const std::string& what) : std::runtime_error(what) {}
};

/// Root finder failed to reach its residual target within the iteration cap.
struct NonConvergence : std::runtime_error {
  explicit NonConvergence(const std::string& what) : std::runtime_error(what) {}
};

/// Product-floor bound requested outside its feasible parameter set.
struct InfeasibleBound : std::runtime_error {
  explicit InfeasibleBound(const std::string& what) : std::runtime_error(what) {}
};

/// Moebius transform evaluated too close to its pole.
struct PoleError : std::runtime_error {
  explicit PoleError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace sendov

#endif
