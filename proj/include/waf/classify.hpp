#pragma once

#include <string>

#include "waf/triple.hpp"

namespace waf {

enum class SurfaceClass { Fuchsian, AlmostFuchsian, WeaklyAFBoundary, BeyondWAF };

const char* to_string(SurfaceClass c);

struct CurvatureReport {
  ScalarField lambda_field;  // lambda = sqrt(q) e^{-2u}, per vertex
  double lambda0 = 0.0;
  int argmax_vertex = 0;  // smallest id on ties
  SurfaceClass classification = SurfaceClass::Fuchsian;
  double tolerance = 0.0;  // boundary tolerance used for the call
};

// Bounds from the closed forms in terms of lambda0; all +inf once
// lambda0 >= 1 (the estimates carry no information there).
struct GeometricBounds {
  double hausdorff_upper = 1.0;
  double core_volume_upper = 0.0;
  double qi_constant_upper = 1.0;
  int genus = 2;
};

struct DilatationReport {
  double kappa1 = 0.0;
  double kappa2 = 0.0;
  double epsilon = 1.0;            // min_{i,j} |1 + (-1)^j kappa_i|
  double dilatation_upper = 2.0;   // 2 / epsilon
};

// Default boundary tolerance for WeaklyAFBoundary calls.
inline constexpr double kClassifyTolerance = 1e-3;

CurvatureReport curvature_report(const SurfaceMesh& mesh, const QuadDiffNormField& q,
                                 const ConformalSolution& solution,
                                 double tolerance = kClassifyTolerance);

CurvatureReport curvature_report(const MinimalTriple& triple,
                                 double tolerance = kClassifyTolerance);

GeometricBounds geometric_bounds(double lambda0, int genus);

// Throws BoundInapplicableError when some |kappa| >= 1.
DilatationReport dilatation_bound(double kappa1, double kappa2);

}  // namespace waf
