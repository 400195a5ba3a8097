#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace bellcut {

/// Invalid input: wrong dimensions, malformed files, violated preconditions.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A configurable size guard refused the request.
class GuardError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NonEdgeError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// A probability table that fails the no-signaling check, so it has no preimage under iota.
class NotInImageError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// Lifting a Gram realization hit a vector longer than 1.
class NumericalDegeneracyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input point set is not full-dimensional. Carries the affine hull as
/// rows (a_1..a_d, a_0) meaning a.x = a_0, rendered as text.
class DegenerateInputError : public ValidationError {
 public:
  DegenerateInputError(const std::string& what, std::vector<std::string> equations)
      : ValidationError(what), equations_(std::move(equations)) {}
  const std::vector<std::string>& equations() const { return equations_; }

 private:
  std::vector<std::string> equations_;
};

/// Interior-point solver stopped without meeting its tolerances.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double lower, double upper)
      : std::runtime_error(what), lower_(lower), upper_(upper) {}
  double lower_bound() const { return lower_; }
  double upper_bound() const { return upper_; }

 private:
  double lower_;
  double upper_;
};

}  // namespace bellcut
