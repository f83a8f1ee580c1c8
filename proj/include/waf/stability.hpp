#pragma once

#include "waf/triple.hpp"

namespace waf {

struct EigenOptions {
  double residual_tol = 1e-8;  // |W phi - lam M phi|_inf <= tol * |phi|_inf
  int max_iterations = 2000;
  int max_restarts = 5;
};

struct StabilityReport {
  double bottom_eigenvalue = 0.0;
  ScalarField eigenfunction;    // sup-normalized, positive
  ScalarField A_norm_sq_field;  // |A|^2 = 2 lambda^2
  bool strictly_stable = false;
};

inline constexpr double kStrictStabilityTol = 1e-6;

// Second-variation operator of the induced metric e^{2u} g: weak form
// S + M_g diag(2 - 2 lambda^2) with M_g the conformally scaled mass, so the
// pointwise action is -Delta_g f + (2 - 2 lambda^2) f.
LinearOperatorHandle assemble_stability(const MinimalTriple& triple);

// Smallest eigenvalue of the pencil (weak, mass) with its positive
// sup-normalized eigenfunction, by shift-inverted inverse iteration.
// Deterministic: all-ones start. Throws NumericalError after the restart
// budget is exhausted.
std::pair<double, ScalarField> bottom_eigenpair(const LinearOperatorHandle& op,
                                                const EigenOptions& opts = {});

// The field L phi (pointwise action). phi must be strictly positive; for the
// bottom eigenfunction this is the mean-curvature rate of the normal flow,
// equal to lambda1 * phi up to eigensolver residual.
ScalarField mean_convexity_rate(const MinimalTriple& triple, const ScalarField& phi);

StabilityReport stability_report(const MinimalTriple& triple,
                                 const EigenOptions& opts = {});

}  // namespace waf
