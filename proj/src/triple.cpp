#include "waf/triple.hpp"

namespace waf {

void MinimalTriple::validate() const {
  q.validate(mesh);
  mesh.check_field(solution.u, "triple solution");
  if (!solution.converged)
    throw ValidationError("triple holds a non-converged solution");
}

double MinimalTriple::lambda_at(int v) const {
  return std::sqrt(q.values[v]) * std::exp(-2.0 * solution.u.values[v]);
}

Eigen::VectorXd MinimalTriple::lambda_field() const {
  return (q.values.array().sqrt() * (-2.0 * solution.u.values.array()).exp())
      .matrix();
}

double MinimalTriple::lambda0() const { return lambda_field().maxCoeff(); }

MinimalTriple make_triple(SurfaceMesh mesh, QuadDiffNormField q,
                          const SolveOptions& opts) {
  ConformalSolution sol = solve_gauss(mesh, q, opts);
  MinimalTriple t{std::move(mesh), std::move(q), std::move(sol)};
  t.validate();
  return t;
}

MinimalTriple triple_from_exact(SurfaceMesh mesh, QuadDiffNormField q,
                                const ScalarField& u) {
  const ScalarField r = residual(mesh, q, u);
  ConformalSolution sol;
  sol.u = u;
  sol.residual_norm = r.values.cwiseAbs().maxCoeff();
  sol.iterations = 0;
  sol.converged = true;
  const double l0 =
      (q.values.array().sqrt() * (-2.0 * u.values.array()).exp()).maxCoeff();
  sol.branch = l0 <= 1.0 + 1e-3 ? SolutionBranch::Upper : SolutionBranch::Unknown;
  MinimalTriple t{std::move(mesh), std::move(q), std::move(sol)};
  t.validate();
  return t;
}

}  // namespace waf
