#include "waf/stability.hpp"

#include <Eigen/SparseCholesky>
#include <cmath>
#include <sstream>

namespace waf {

LinearOperatorHandle assemble_stability(const MinimalTriple& triple) {
  triple.validate();
  const LinearOperatorHandle lap = laplacian(triple.mesh);
  const Eigen::ArrayXd e2u = (2.0 * triple.solution.u.values.array()).exp();
  const Eigen::ArrayXd lam2 =
      triple.q.values.array() * (e2u * e2u).inverse();
  const Eigen::ArrayXd mass_g = lap.mass.array() * e2u;
  const Eigen::ArrayXd potential = 2.0 - 2.0 * lam2;

  LinearOperatorHandle op;
  op.weak = -lap.weak;  // Dirichlet stiffness, conformally invariant in 2d
  const Eigen::ArrayXd diag = mass_g * potential;
  for (int i = 0; i < op.weak.rows(); ++i) op.weak.coeffRef(i, i) += diag[i];
  op.mass = mass_g.matrix();
  op.mesh_fingerprint = triple.mesh.fingerprint;
  return op;
}

std::pair<double, ScalarField> bottom_eigenpair(const LinearOperatorHandle& op,
                                                const EigenOptions& opts) {
  const int n = static_cast<int>(op.mass.size());
  if (op.weak.rows() != n || op.weak.cols() != n)
    throw ValidationError("operator matrix/mass size mismatch");
  if ((op.mass.array() <= 0.0).any())
    throw ValidationError("operator mass weights must be positive");
  if (!(opts.residual_tol > 0.0))
    throw ValidationError("eigensolver residual_tol must be > 0");
  if (opts.max_iterations < 1 || opts.max_restarts < 0)
    throw ValidationError("eigensolver iteration budget must be positive");

  // Rayleigh lower bound from the action on constants (the stiffness part
  // kills them): lambda_min >= min_v potential_v.
  const Eigen::ArrayXd on_const =
      (op.weak * Eigen::VectorXd::Ones(n)).array() / op.mass.array();
  double sigma = on_const.minCoeff() - 1.0;

  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt;
  Eigen::VectorXd x = Eigen::VectorXd::Ones(n);
  double lambda = 0.0;

  for (int attempt = 0; attempt <= opts.max_restarts; ++attempt) {
    Eigen::SparseMatrix<double> A = op.weak;
    for (int i = 0; i < n; ++i) A.coeffRef(i, i) -= sigma * op.mass[i];
    ldlt.compute(A);
    if (ldlt.info() != Eigen::Success) {
      sigma -= 1.0 + std::abs(sigma);
      continue;
    }

    for (int it = 0; it < opts.max_iterations; ++it) {
      Eigen::VectorXd y = ldlt.solve((op.mass.array() * x.array()).matrix());
      if (!y.allFinite()) break;
      const double mnorm =
          std::sqrt((y.array() * y.array() * op.mass.array()).sum());
      if (!(mnorm > 0.0)) break;
      y /= mnorm;
      lambda = y.dot(op.weak * y);  // Rayleigh quotient (y is M-normalized)
      x = y;

      const double sup = x.cwiseAbs().maxCoeff();
      const Eigen::VectorXd r =
          ((op.weak * x).array() / op.mass.array() - lambda * x.array()).matrix();
      if (r.cwiseAbs().maxCoeff() <= opts.residual_tol * sup) {
        // Orient positively and sup-normalize.
        if (x.sum() < 0.0) x = -x;
        x /= x.cwiseAbs().maxCoeff();
        ScalarField phi{x, op.mesh_fingerprint};
        return {lambda, std::move(phi)};
      }
    }

    // Re-center the shift just below the current Rayleigh estimate.
    const double margin = 1e-6 * (1.0 + std::abs(lambda));
    sigma = lambda - margin;
  }

  std::ostringstream os;
  os << "eigensolver stalled after " << opts.max_restarts + 1
     << " shift attempts (last estimate " << lambda << ")";
  throw NumericalError(os.str());
}

ScalarField mean_convexity_rate(const MinimalTriple& triple, const ScalarField& phi) {
  triple.validate();
  triple.mesh.check_field(phi, "mean convexity rate phi");
  if ((phi.values.array() <= 0.0).any())
    throw ValidationError("mean convexity rate needs strictly positive phi");
  const LinearOperatorHandle op = assemble_stability(triple);
  return ScalarField{op.apply(phi.values), triple.mesh.fingerprint};
}

StabilityReport stability_report(const MinimalTriple& triple,
                                 const EigenOptions& opts) {
  const LinearOperatorHandle op = assemble_stability(triple);
  auto [lambda, phi] = bottom_eigenpair(op, opts);
  StabilityReport rep;
  rep.bottom_eigenvalue = lambda;
  rep.eigenfunction = std::move(phi);
  const Eigen::ArrayXd lam =
      triple.q.values.array().sqrt() * (-2.0 * triple.solution.u.values.array()).exp();
  rep.A_norm_sq_field =
      ScalarField{(2.0 * lam * lam).matrix(), triple.mesh.fingerprint};
  rep.strictly_stable = lambda > kStrictStabilityTol;
  return rep;
}

}  // namespace waf
