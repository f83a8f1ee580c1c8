#include "waf/solver.hpp"

#include <Eigen/SparseCholesky>
#include <cmath>
#include <sstream>

namespace waf {

namespace {

Eigen::ArrayXd nonlinearity(const Eigen::ArrayXd& u, const Eigen::ArrayXd& q) {
  return (2.0 * u).exp() + q * (-2.0 * u).exp() - 1.0;
}

double lambda0_of(const Eigen::ArrayXd& u, const Eigen::ArrayXd& q) {
  return (q.sqrt() * (-2.0 * u).exp()).maxCoeff();
}

}  // namespace

ScalarField residual(const SurfaceMesh& mesh, const QuadDiffNormField& q,
                     const ScalarField& u) {
  q.validate(mesh);
  mesh.check_field(u, "residual u");
  const LinearOperatorHandle lap = laplacian(mesh);
  const Eigen::ArrayXd r =
      lap.apply(u.values).array() - nonlinearity(u.values.array(), q.values.array());
  return mesh.make_field(r.matrix());
}

ConformalSolution solve_gauss(const SurfaceMesh& mesh, const QuadDiffNormField& q,
                              const SolveOptions& opts) {
  if (!(opts.tolerance > 0.0)) throw ValidationError("solver tolerance must be > 0");
  if (opts.max_iterations < 1) throw ValidationError("max_iterations must be >= 1");
  q.validate(mesh);

  const LinearOperatorHandle lap = laplacian(mesh);
  const Eigen::SparseMatrix<double> S = -lap.weak;  // Dirichlet stiffness, PSD
  const Eigen::ArrayXd M = lap.mass.array();
  const Eigen::ArrayXd qa = q.values.array();
  const int n = mesh.num_vertices;

  Eigen::ArrayXd u;
  if (opts.initial_guess) {
    if (opts.initial_guess->size() != n)
      throw ValidationError("initial guess size mismatch");
    if (!opts.initial_guess->allFinite())
      throw ValidationError("initial guess has nonfinite values");
    u = opts.initial_guess->array();
  } else {
    u = Eigen::ArrayXd::Zero(n);
  }

  const auto pointwise_residual = [&](const Eigen::ArrayXd& v) -> Eigen::ArrayXd {
    return (lap.weak * v.matrix()).array() / M - nonlinearity(v, qa);
  };

  Eigen::ArrayXd r = pointwise_residual(u);
  double rn = r.abs().maxCoeff();
  int stagnant = 0;

  const auto package = [&](int iterations) {
    ConformalSolution sol;
    sol.u = mesh.make_field(u.matrix());
    sol.residual_norm = rn;
    sol.iterations = iterations;
    sol.converged = true;
    sol.branch = lambda0_of(u, qa) <= 1.0 + 1e-3 ? SolutionBranch::Upper
                                                 : SolutionBranch::Unknown;
    return sol;
  };

  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt;
  for (int it = 0; it < opts.max_iterations; ++it) {
    if (!std::isfinite(rn) || rn > 1e12)
      throw NoSolutionError("residual diverged (" + std::to_string(rn) +
                            ") after " + std::to_string(it) + " iterations");
    if (rn <= opts.tolerance) return package(it);

    // J = S + M diag(2 e^{2u} - 2 q e^{-2u}); solve J du = weak residual.
    const Eigen::ArrayXd diag =
        M * (2.0 * (2.0 * u).exp() - 2.0 * qa * (-2.0 * u).exp());
    Eigen::SparseMatrix<double> J = S;
    for (int i = 0; i < n; ++i) J.coeffRef(i, i) += diag[i];

    ldlt.compute(J);
    if (ldlt.info() != Eigen::Success) {
      const double shift = 1e-10 * (S.diagonal().sum() / n + 1.0);
      Eigen::SparseMatrix<double> Jr = J;
      for (int i = 0; i < n; ++i) Jr.coeffRef(i, i) += shift;
      ldlt.compute(Jr);
      if (ldlt.info() != Eigen::Success)
        throw NoSolutionError(
            "linearization not factorizable (past the solvable region) at "
            "iteration " +
            std::to_string(it));
    }
    const Eigen::ArrayXd du = ldlt.solve((M * r).matrix()).array();
    if (!du.allFinite())
      throw NoSolutionError("Newton step nonfinite at iteration " +
                            std::to_string(it));

    double alpha = 1.0;
    double best_rn = rn;
    Eigen::ArrayXd best_u = u, best_r = r;
    bool improved = false;
    while (alpha >= opts.min_step) {
      const Eigen::ArrayXd trial = u + alpha * du;
      const Eigen::ArrayXd tr = pointwise_residual(trial);
      const double trn = tr.abs().maxCoeff();
      if (std::isfinite(trn) && trn < best_rn) {
        best_rn = trn;
        best_u = trial;
        best_r = tr;
        improved = true;
        break;
      }
      alpha *= 0.5;
    }

    if (improved) {
      stagnant = best_rn > opts.stagnation_factor * rn ? stagnant + 1 : 0;
      u = best_u;
      r = best_r;
      rn = best_rn;
    } else {
      ++stagnant;
    }
    if (stagnant >= opts.stagnation_window) {
      std::ostringstream os;
      os << "no solution detected: residual stagnated at " << rn << " over "
         << opts.stagnation_window << " damped iterations";
      throw NoSolutionError(os.str());
    }
  }

  if (rn <= opts.tolerance) return package(opts.max_iterations);
  std::ostringstream os;
  os << "Newton did not converge in " << opts.max_iterations
     << " iterations (residual " << rn << ", tolerance " << opts.tolerance << ")";
  throw MaxIterationsError(os.str());
}

ContinuationResult continuation_solve(const SurfaceMesh& mesh,
                                      const QuadDiffNormField& q_hat,
                                      const std::vector<double>& t_values,
                                      const SolveOptions& opts) {
  q_hat.validate(mesh);
  for (std::size_t i = 0; i < t_values.size(); ++i) {
    if (t_values[i] < 0.0)
      throw ValidationError("ray values must be >= 0");
    if (i > 0 && t_values[i] <= t_values[i - 1])
      throw ValidationError("ray values must be strictly ascending");
  }

  ContinuationResult out;
  SolveOptions step_opts = opts;
  for (std::size_t i = 0; i < t_values.size(); ++i) {
    const double t = t_values[i];
    out.t_values.push_back(t);
    try {
      ConformalSolution sol = solve_gauss(mesh, scale_ray(q_hat, t), step_opts);
      step_opts.initial_guess = sol.u.values;
      out.last_good_t = t;
      out.solutions.push_back(std::move(sol));
    } catch (const NoSolutionError& e) {
      out.hit_no_solution = true;
      out.failed_index = static_cast<int>(i);
      out.failure_reason = e.what();
      break;
    } catch (const MaxIterationsError& e) {
      std::ostringstream os;
      os << "ray index " << i << " (t=" << t << "): " << e.what();
      throw MaxIterationsError(os.str());
    } catch (const NumericalError& e) {
      std::ostringstream os;
      os << "ray index " << i << " (t=" << t << "): " << e.what();
      throw NumericalError(os.str());
    }
  }
  return out;
}

}  // namespace waf
