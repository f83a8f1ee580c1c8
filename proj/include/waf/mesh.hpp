#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <array>
#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "waf/errors.hpp"

namespace waf {

// Per-vertex real data bound to a mesh by fingerprint.
struct ScalarField {
  Eigen::VectorXd values;
  std::uint64_t mesh_fingerprint = 0;
};

// Triangle mesh with intrinsic metric (edge lengths only, no embedding).
// Triangles are flat; curvature lives in the vertex angle defects. Immutable
// after finalize(); all operations treat meshes as read-only.
struct SurfaceMesh {
  int genus = 0;
  int refinement_level = 0;
  std::vector<std::array<int, 3>> faces;
  std::vector<std::pair<int, int>> edges;  // endpoints sorted, list ordered
  std::vector<double> edge_lengths;
  std::map<std::string, std::vector<int>> marked_curves;  // closed vertex cycles

  // Derived data, filled by finalize().
  int num_vertices = 0;
  std::unordered_map<std::uint64_t, int> edge_lookup;
  std::vector<std::array<int, 3>> face_edge;      // edge id opposite corner k
  std::vector<std::array<double, 3>> corner_angle;  // angle at corner k
  std::vector<double> face_area;
  Eigen::VectorXd vertex_area;  // lumped: one third of incident face areas
  double total_area = 0.0;
  std::uint64_t fingerprint = 0;

  int edge_id(int a, int b) const;  // -1 when absent
  double edge_length(int a, int b) const;

  // Validates every structural invariant (triangle inequalities, closedness,
  // orientability, connectedness, Euler characteristic) and builds the
  // caches. Throws ValidationError naming the first violation.
  void finalize();

  int euler_characteristic() const {
    return num_vertices - static_cast<int>(edges.size()) +
           static_cast<int>(faces.size());
  }

  Eigen::VectorXd angle_defects() const;  // 2*pi - angle sum, per vertex
  double total_angle_defect() const { return angle_defects().sum(); }

  // (neighbor vertex, edge id) lists, built on demand.
  std::vector<std::vector<std::pair<int, int>>> vertex_adjacency() const;

  double marked_curve_length(const std::string& name) const;

  ScalarField make_field(double fill = 0.0) const;
  ScalarField make_field(Eigen::VectorXd values) const;
  void check_field(const ScalarField& f, const char* what) const;
};

// Symmetric operator in weak form: the pointwise action is
//   (A f)_v = (weak * f)_v / mass_v.
// For the Laplace handle, weak = -S with S the cotangent stiffness, so
// apply() returns the Laplace-Beltrami action and -weak is positive
// semidefinite with constants in its kernel.
struct LinearOperatorHandle {
  Eigen::SparseMatrix<double> weak;
  Eigen::VectorXd mass;
  std::uint64_t mesh_fingerprint = 0;

  Eigen::VectorXd apply_weak(const Eigen::VectorXd& f) const { return weak * f; }
  Eigen::VectorXd apply(const Eigen::VectorXd& f) const {
    return (weak * f).array() / mass.array();
  }
};

// Regular hyperbolic 4g-gon with standard side pairings, subdivided and
// glued into a closed genus-g surface. refinement counts 1->4 rounds on top
// of the base construction (each round quarters the triangles). When
// `embedding` is non-null it receives one Poincare-disk representative per
// quotient vertex (the polygon is centered at the origin).
SurfaceMesh build_polygon_mesh(int genus, int refinement,
                               std::vector<std::complex<double>>* embedding = nullptr);

// Flat midpoint 1->4 subdivision: V' = V+E, E' = 2E+3F, F' = 4F; total area
// preserved exactly; refinement_level incremented.
SurfaceMesh refine(const SurfaceMesh& mesh);

// Cotangent weak Laplacian with lumped vertex-area mass. Throws
// ValidationError naming the face when any corner angle is below
// `angle_floor` radians.
LinearOperatorHandle laplacian(const SurfaceMesh& mesh, double angle_floor = 1e-3);

// Sum_v f_v * w_v * area_v (w = 1 when weight is null).
double integrate(const SurfaceMesh& mesh, const ScalarField& f,
                 const ScalarField* weight = nullptr);

// --- Topology helpers -------------------------------------------------------

// Z/2 cohomology labels: one 2g-bit word per edge such that the XOR along a
// closed edge loop vanishes iff the loop is null-homologous mod 2. Built by
// tree-cotree decomposition.
std::vector<std::uint32_t> homology_edge_labels(const SurfaceMesh& mesh);

// Length of the shortest homologically nontrivial edge loop through `vertex`
// in the metric e^{u}*(edge lengths); u may be null for the bare metric.
// Search is truncated: returns +inf when every such loop is longer than
// `cap`. `labels` must come from homology_edge_labels on the same mesh.
double shortest_essential_loop(const SurfaceMesh& mesh,
                               const std::vector<std::uint32_t>& labels,
                               const Eigen::VectorXd* u, int vertex, double cap);

// Loop lengths for every vertex (entries > cap come back as +inf).
Eigen::VectorXd essential_loop_lengths(const SurfaceMesh& mesh,
                                       const Eigen::VectorXd* u, double cap);

// Vertices whose shortest essential loop in the metric e^{2u}*g has length
// >= 2*eps. Monotone: larger eps gives a subset.
std::vector<int> thick_part(const SurfaceMesh& mesh, const ScalarField& conformal,
                            double eps);

}  // namespace waf
