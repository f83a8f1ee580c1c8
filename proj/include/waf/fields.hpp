#pragma once

#include <string>
#include <utility>
#include <vector>

#include "waf/mesh.hpp"

namespace waf {

enum class FieldProvenance { Constant, Manufactured, PrescribedZeros, External };

const char* to_string(FieldProvenance p);
FieldProvenance provenance_from_string(const std::string& s);

// Nonnegative per-vertex density q = |alpha|^2 measured against the base
// metric. alpha itself is never represented; everything downstream consumes
// only q.
struct QuadDiffNormField {
  Eigen::VectorXd values;
  std::uint64_t mesh_fingerprint = 0;
  FieldProvenance provenance = FieldProvenance::External;
  std::vector<std::pair<int, int>> zero_set;  // (vertex, multiplicity)
  std::string note;                           // free-form provenance detail

  void validate(const SurfaceMesh& mesh) const;
};

// q = c everywhere.
QuadDiffNormField constant_field(const SurfaceMesh& mesh, double c);

// Back-solve q from the discrete equation so that u_exact is an exact
// discrete solution: q = e^{2u} (Delta_h u - e^{2u} + 1). Throws
// ValidationError listing the offending vertices when any q < 0.
QuadDiffNormField manufactured_pair(const SurfaceMesh& mesh,
                                    const ScalarField& u_exact);

// Smooth bump product vanishing to order 2*multiplicity at each prescribed
// vertex (graph-distance powers), positive elsewhere, max = amplitude^2.
// Total multiplicity must be 4g-4.
QuadDiffNormField synth_with_zeros(const SurfaceMesh& mesh,
                                   const std::vector<std::pair<int, int>>& zeros,
                                   double amplitude);

// q scaled by t^2 (the ray parameterization: alpha scales linearly by t).
QuadDiffNormField scale_ray(const QuadDiffNormField& q_hat, double t);

// Deterministic random zero set for a genus-g mesh: vertex choices and the
// multiplicity partition of 4g-4 both come from the seed.
std::vector<std::pair<int, int>> random_zero_set(const SurfaceMesh& mesh,
                                                 std::uint64_t seed);

// --- Smooth manufactured problem (radial profile) ---------------------------
//
// A fixed smooth problem used for refinement studies: the profile
//   u(rho) = -0.15 - 0.015 * (1 - (rho/b0)^2)^4   for rho < b0, else -0.15
// (rho = hyperbolic distance to the polygon center, b0 = 0.85 * apothem) has
// an analytic Laplacian, so q can be evaluated from the smooth equation
// rather than the mesh operator. Discrete solutions then converge to the
// sampled u at the mesh's approximation order.
struct SmoothProblem {
  SurfaceMesh mesh;
  QuadDiffNormField q;
  ScalarField u_exact;
};

SmoothProblem smooth_radial_problem(int genus, int refinement);

}  // namespace waf
