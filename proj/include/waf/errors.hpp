#pragma once

#include <stdexcept>
#include <string>

namespace waf {

// Input or precondition problem: malformed mesh/field files, incompatible
// sizes, degenerate geometry, out-of-domain parameters. CLI exit code 3.
class ValidationError : public std::runtime_error {
public:
  explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

// The prescribed data admits no solution on the branch we track (the
// continuation left the solvable region). Expected outcome, not a bug.
// CLI exit code 2.
class NoSolutionError : public std::runtime_error {
public:
  explicit NoSolutionError(const std::string& msg) : std::runtime_error(msg) {}
};

// Numerical machinery failed: factorization broke down, iteration did not
// converge within its budget, eigensolver stalled. CLI exit code 4.
class NumericalError : public std::runtime_error {
public:
  explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
};

class MaxIterationsError : public NumericalError {
public:
  explicit MaxIterationsError(const std::string& msg) : NumericalError(msg) {}
};

// Asking for a quantity outside its regime (quasi-isometry constants past the
// unit-curvature wall, foliation leaves that self-intersect, ...).
class BoundInapplicableError : public ValidationError {
public:
  explicit BoundInapplicableError(const std::string& msg) : ValidationError(msg) {}
};

}  // namespace waf
