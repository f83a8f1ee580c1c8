#pragma once

#include <memory>
#include <utility>
#include <vector>

#include "waf/triple.hpp"

namespace waf {

// Asking for foliation data past the unit-curvature wall.
class FoliationUndefinedError : public ValidationError {
public:
  explicit FoliationUndefinedError(const std::string& msg) : ValidationError(msg) {}
};

struct LeafReport {
  double t = 0.0;
  double area = 0.0;
  double min_distortion = 0.0;
  std::pair<double, double> principal_curvature_range{0.0, 0.0};
  bool convex = false;
};

// Principal stretch factors of the leaf metric at signed normal distance t:
// (cosh t + lambda sinh t, cosh t - lambda sinh t).
std::pair<double, double> distortion_factors(double lambda, double t);

// Leaf principal curvatures at distance t from a point with curvature lambda.
std::pair<double, double> leaf_principal_curvatures(double lambda, double t);

// Throws FoliationUndefinedError when lambda0 > 1 + tolerance.
LeafReport leaf_report(const MinimalTriple& triple, double t,
                       double tolerance = 1e-3);

// Integral of the leaf area over [t1, t2] by adaptive quadrature
// (relative tolerance 1e-6).
double slab_volume(const MinimalTriple& triple, double t1, double t2,
                   double tolerance = 1e-3);

// Exact antiderivative of the slab integral for the same triple:
//   area(t) = A cosh^2 t - B sinh^2 t,
//   A = int e^{2u} dA, B = int lambda^2 e^{2u} dA,
// integrated in closed form. Reference value for the quadrature.
double slab_volume_closed_form(const MinimalTriple& triple, double t1, double t2);

// Core-volume closed-form bound 4 pi (g-1) (l/(1-l^2) + ln((1+l)/(1-l))/2);
// +inf at l >= 1.
double core_volume_bound(double lambda0, int genus);

struct FoliationModel {
  std::shared_ptr<const MinimalTriple> triple;
  double t_min = 0.0;
  double t_max = 0.0;

  LeafReport leaf(double t) const;
  std::vector<LeafReport> sample(int count) const;  // count >= 2, uniform in t
};

FoliationModel make_foliation(std::shared_ptr<const MinimalTriple> triple,
                              double t_min, double t_max);

}  // namespace waf
