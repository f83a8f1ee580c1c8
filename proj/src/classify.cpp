#include "waf/classify.hpp"

#include <cmath>
#include <limits>

namespace waf {

const char* to_string(SurfaceClass c) {
  switch (c) {
    case SurfaceClass::Fuchsian: return "Fuchsian";
    case SurfaceClass::AlmostFuchsian: return "AlmostFuchsian";
    case SurfaceClass::WeaklyAFBoundary: return "WeaklyAFBoundary";
    case SurfaceClass::BeyondWAF: return "BeyondWAF";
  }
  return "Fuchsian";
}

CurvatureReport curvature_report(const SurfaceMesh& mesh, const QuadDiffNormField& q,
                                 const ConformalSolution& solution,
                                 double tolerance) {
  if (!(tolerance > 0.0) || tolerance >= 0.5)
    throw ValidationError("classification tolerance must lie in (0, 0.5)");
  if (!solution.converged)
    throw ValidationError("classification requires a converged solution");
  q.validate(mesh);
  mesh.check_field(solution.u, "classification u");

  CurvatureReport rep;
  rep.tolerance = tolerance;
  Eigen::VectorXd lambda =
      (q.values.array().sqrt() * (-2.0 * solution.u.values.array()).exp()).matrix();
  rep.lambda0 = 0.0;
  rep.argmax_vertex = 0;
  for (int v = 0; v < lambda.size(); ++v)
    if (lambda[v] > rep.lambda0) {
      rep.lambda0 = lambda[v];
      rep.argmax_vertex = v;
    }
  rep.lambda_field = mesh.make_field(std::move(lambda));

  if (rep.lambda0 <= tolerance) rep.classification = SurfaceClass::Fuchsian;
  else if (rep.lambda0 < 1.0 - tolerance) rep.classification = SurfaceClass::AlmostFuchsian;
  else if (rep.lambda0 <= 1.0 + tolerance) rep.classification = SurfaceClass::WeaklyAFBoundary;
  else rep.classification = SurfaceClass::BeyondWAF;
  return rep;
}

CurvatureReport curvature_report(const MinimalTriple& triple, double tolerance) {
  triple.validate();
  return curvature_report(triple.mesh, triple.q, triple.solution, tolerance);
}

GeometricBounds geometric_bounds(double lambda0, int genus) {
  if (lambda0 < 0.0 || !std::isfinite(lambda0))
    throw ValidationError("lambda0 must be finite and >= 0");
  if (genus < 2) throw ValidationError("genus must be >= 2");
  GeometricBounds b;
  b.genus = genus;
  if (lambda0 >= 1.0) {
    const double inf = std::numeric_limits<double>::infinity();
    b.hausdorff_upper = inf;
    b.core_volume_upper = inf;
    b.qi_constant_upper = inf;
    return b;
  }
  b.hausdorff_upper = 1.0 + lambda0 * lambda0;
  b.core_volume_upper = 4.0 * M_PI * (genus - 1) *
                        (lambda0 / (1.0 - lambda0 * lambda0) +
                         0.5 * std::log((1.0 + lambda0) / (1.0 - lambda0)));
  b.qi_constant_upper = (1.0 + lambda0) / (1.0 - lambda0);
  return b;
}

DilatationReport dilatation_bound(double kappa1, double kappa2) {
  if (!std::isfinite(kappa1) || !std::isfinite(kappa2))
    throw ValidationError("principal curvature inputs must be finite");
  DilatationReport rep;
  rep.kappa1 = kappa1;
  rep.kappa2 = kappa2;
  rep.epsilon = std::min(std::min(std::abs(1.0 - kappa1), std::abs(1.0 + kappa1)),
                         std::min(std::abs(1.0 - kappa2), std::abs(1.0 + kappa2)));
  if (std::abs(kappa1) >= 1.0 || std::abs(kappa2) >= 1.0)
    throw BoundInapplicableError(
        "dilatation bound needs |kappa| < 1 (epsilon would be " +
        std::to_string(rep.epsilon) + ")");
  rep.dilatation_upper = 2.0 / rep.epsilon;
  return rep;
}

}  // namespace waf
