#pragma once

#include "waf/fields.hpp"
#include "waf/solver.hpp"

namespace waf {

// The full object of study: base metric (mesh), q = |alpha|^2, and the solved
// conformal factor. Everything downstream (classification, foliation,
// stability, distances) consumes one of these.
struct MinimalTriple {
  SurfaceMesh mesh;
  QuadDiffNormField q;
  ConformalSolution solution;

  // Throws unless the components belong together and the solution converged.
  void validate() const;

  double lambda_at(int v) const;     // sqrt(q_v) * e^{-2 u_v}
  Eigen::VectorXd lambda_field() const;
  double lambda0() const;
};

// Solve and package. Propagates solver errors.
MinimalTriple make_triple(SurfaceMesh mesh, QuadDiffNormField q,
                          const SolveOptions& opts = {});

// Package a caller-supplied exact solution (synthetic triples for tests and
// identities). The residual is computed, not trusted.
MinimalTriple triple_from_exact(SurfaceMesh mesh, QuadDiffNormField q,
                                const ScalarField& u);

}  // namespace waf
