#pragma once

#include <optional>
#include <string>
#include <vector>

#include "waf/fields.hpp"
#include "waf/mesh.hpp"

namespace waf {

struct SolveOptions {
  double tolerance = 1e-10;  // L-inf of the pointwise residual
  int max_iterations = 50;
  double min_step = 9.5367431640625e-7;  // 2^-20 damping floor
  int stagnation_window = 10;            // consecutive near-flat iterations
  double stagnation_factor = 0.99;       // "decrease" means new < factor * old
  std::optional<Eigen::VectorXd> initial_guess;  // default: zeros
};

enum class SolutionBranch { Upper, Unknown };

struct ConformalSolution {
  ScalarField u;
  double residual_norm = 0.0;  // L-inf of residual(mesh, q, u)
  int iterations = 0;
  SolutionBranch branch = SolutionBranch::Unknown;
  bool converged = false;
};

// Residual of the conformal-factor equation:
//   Delta u - e^{2u} - q e^{-2u} + 1, per vertex.
ScalarField residual(const SurfaceMesh& mesh, const QuadDiffNormField& q,
                     const ScalarField& u);

// Damped Newton for Delta u = e^{2u} + q e^{-2u} - 1. Tracks the branch
// continuous from u = 0 at q = 0. Throws NoSolutionError when the residual
// stagnates or diverges under full damping (the expected diagnosis past the
// existence threshold), MaxIterationsError when the budget runs out while
// still improving.
ConformalSolution solve_gauss(const SurfaceMesh& mesh, const QuadDiffNormField& q,
                              const SolveOptions& opts = {});

struct ContinuationResult {
  std::vector<double> t_values;               // prefix that was attempted
  std::vector<ConformalSolution> solutions;   // one per converged t
  bool hit_no_solution = false;
  int failed_index = -1;                      // index into requested t list
  double last_good_t = -1.0;                  // largest converged t, -1 if none
  std::string failure_reason;
};

// Solves along the ray q(t) = t^2 * q_hat for ascending t, warm-starting each
// solve from the previous solution. A NoSolutionError stops the sweep and is
// recorded in the result; other solver errors propagate with the ray index.
ContinuationResult continuation_solve(const SurfaceMesh& mesh,
                                      const QuadDiffNormField& q_hat,
                                      const std::vector<double>& t_values,
                                      const SolveOptions& opts = {});

}  // namespace waf
