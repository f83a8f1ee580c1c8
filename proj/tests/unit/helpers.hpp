#pragma once

#include <cmath>
#include <map>
#include <utility>

#include "waf/fields.hpp"
#include "waf/mesh.hpp"
#include "waf/solver.hpp"
#include "waf/triple.hpp"

namespace waftest {

// Meshes are immutable, so one copy per (genus, refinement) serves the whole
// binary. Tests that mutate a mesh must copy it first.
inline const waf::SurfaceMesh& base_mesh(int genus, int refinement) {
  static std::map<std::pair<int, int>, waf::SurfaceMesh> cache;
  const auto key = std::make_pair(genus, refinement);
  auto it = cache.find(key);
  if (it == cache.end())
    it = cache.emplace(key, waf::build_polygon_mesh(genus, refinement)).first;
  return it->second;
}

inline waf::MinimalTriple constant_triple(int genus, int refinement, double c) {
  const waf::SurfaceMesh& mesh = base_mesh(genus, refinement);
  return waf::make_triple(mesh, waf::constant_field(mesh, c), {});
}

// Constant solutions on the branch through u = 0: x = e^{2u} solves
// x^2 - x + c = 0, upper root.
inline double upper_x(double c) { return 0.5 * (1.0 + std::sqrt(1.0 - 4.0 * c)); }
inline double upper_u(double c) { return 0.5 * std::log(upper_x(c)); }
inline double const_lambda0(double c) { return std::sqrt(c) / upper_x(c); }

// Deterministic smooth-ish test vector (not mesh-aware; fine for algebraic
// identities like symmetry and integration by parts).
inline Eigen::VectorXd wiggle(int n, double scale = 1.0) {
  Eigen::VectorXd f(n);
  for (int i = 0; i < n; ++i)
    f[i] = scale * (std::sin(0.7 * i) + 0.3 * std::cos(1.3 * i));
  return f;
}

}  // namespace waftest
