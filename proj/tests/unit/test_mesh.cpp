#include <Eigen/SparseCholesky>
#include <algorithm>
#include <cmath>
#include <set>

#include "doctest.h"
#include "helpers.hpp"
#include "waf/mesh.hpp"

using namespace waf;
using waftest::base_mesh;

namespace {

std::set<int> as_set(const std::vector<int>& v) { return {v.begin(), v.end()}; }

// Smallest eigenvalue of (S, M) restricted to the M-orthogonal complement of
// constants, by deflated inverse iteration on the shifted pencil (S + M, M).
double deflated_bottom(const LinearOperatorHandle& lap) {
  const Eigen::SparseMatrix<double> S = -lap.weak;
  const Eigen::VectorXd& m = lap.mass;
  Eigen::SparseMatrix<double> shifted = S;
  for (int i = 0; i < shifted.rows(); ++i) shifted.coeffRef(i, i) += m[i];
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> solver(shifted);
  REQUIRE(solver.info() == Eigen::Success);
  const double mtot = m.sum();
  auto deflate = [&](Eigen::VectorXd& x) { x.array() -= m.dot(x) / mtot; };
  Eigen::VectorXd x = waftest::wiggle(static_cast<int>(m.size()));
  deflate(x);
  for (int it = 0; it < 200; ++it) {
    x = solver.solve((m.array() * x.array()).matrix());
    deflate(x);
    x /= x.norm();
  }
  const double num = x.dot(S * x);
  const double den = x.dot((m.array() * x.array()).matrix());
  return num / den;
}

}  // namespace

TEST_SUITE("mesh") {

TEST_CASE("base polygon mesh, genus 2: counts, Euler characteristic, defects") {
  const SurfaceMesh& m = base_mesh(2, 0);
  CHECK(m.num_vertices == 62);
  CHECK(m.edges.size() == 192);
  CHECK(m.faces.size() == 128);
  CHECK(m.euler_characteristic() == -2);
  CHECK(std::abs(m.total_angle_defect() + 4.0 * M_PI) < 1e-9 * m.num_vertices);
  CHECK(m.total_area > 0.0);
  for (double a : m.face_area) CHECK(a > 0.0);
}

TEST_CASE("genus 3: Euler characteristic and total defect scale with genus") {
  const SurfaceMesh& m = base_mesh(3, 0);
  CHECK(m.euler_characteristic() == -4);
  CHECK(std::abs(m.total_angle_defect() + 8.0 * M_PI) < 1e-9 * m.num_vertices);
}

TEST_CASE("construction rejects out-of-range genus and refinement") {
  CHECK_THROWS_AS(build_polygon_mesh(1, 0), ValidationError);
  CHECK_THROWS_AS(build_polygon_mesh(0, 0), ValidationError);
  CHECK_THROWS_AS(build_polygon_mesh(2, -1), ValidationError);
}

TEST_CASE("refinement: combinatorics, Euler characteristic, exact area") {
  const SurfaceMesh& m = base_mesh(2, 1);
  SurfaceMesh r = refine(m);
  CHECK(r.num_vertices == m.num_vertices + static_cast<int>(m.edges.size()));
  CHECK(r.edges.size() == 2 * m.edges.size() + 3 * m.faces.size());
  CHECK(r.faces.size() == 4 * m.faces.size());
  CHECK(r.euler_characteristic() == m.euler_characteristic());
  CHECK(r.refinement_level == m.refinement_level + 1);
  CHECK(r.total_area ==
        doctest::Approx(m.total_area).epsilon(1e-12));
}

TEST_CASE("total area converges to 4 pi (g - 1) under refinement") {
  const double target = 4.0 * M_PI;
  double prev = std::abs(base_mesh(2, 0).total_area - target);
  for (int level = 1; level <= 3; ++level) {
    const double err = std::abs(base_mesh(2, level).total_area - target);
    CHECK(err < prev);
    prev = err;
  }
  CHECK(std::abs(base_mesh(2, 3).total_area - target) < 0.01 * target);
}

TEST_CASE("laplacian: kernel, symmetry, divergence theorem, sign") {
  const SurfaceMesh& m = base_mesh(2, 1);
  const LinearOperatorHandle lap = laplacian(m);
  const int n = m.num_vertices;

  // Constants lie in the kernel.
  const Eigen::VectorXd ones = Eigen::VectorXd::Ones(n);
  CHECK(lap.apply(ones).cwiseAbs().maxCoeff() < 1e-12);

  // Weak form is symmetric.
  const Eigen::MatrixXd dense(lap.weak);
  CHECK((dense - dense.transpose()).cwiseAbs().maxCoeff() < 1e-13);

  // Integral of Delta f vanishes on a closed surface.
  const Eigen::VectorXd f = waftest::wiggle(n);
  const ScalarField lf = m.make_field(lap.apply(f));
  CHECK(std::abs(integrate(m, lf)) < 1e-10 * f.cwiseAbs().maxCoeff());

  // -weak is positive semidefinite off constants.
  Eigen::VectorXd g = waftest::wiggle(n, 2.0);
  g.array() -= g.mean();
  CHECK(g.dot(-lap.weak * g) > 0.0);
}

TEST_CASE("laplacian eigenvalue zero is simple") {
  const LinearOperatorHandle lap = laplacian(base_mesh(2, 1));
  const double mu2 = deflated_bottom(lap);
  CHECK(mu2 > 0.1);    // spectral gap of the closed surface
  CHECK(mu2 < 100.0);  // sanity: it converged to the bottom of the deflated pencil
}

TEST_CASE("laplacian rejects corner angles under the floor, naming the face") {
  const SurfaceMesh& m = base_mesh(2, 0);
  // The base fan has corner angles well under 1 radian, so a floor that high
  // must trip while the default floor accepts the same mesh.
  CHECK_NOTHROW(laplacian(m));
  CHECK_THROWS_WITH_AS(laplacian(m, 1.0), doctest::Contains("face"),
                       ValidationError);
}

TEST_CASE("integrate: constants, linearity, weights, foreign fields") {
  const SurfaceMesh& m = base_mesh(2, 1);
  CHECK(integrate(m, m.make_field(1.0)) == doctest::Approx(m.total_area).epsilon(1e-14));
  CHECK(integrate(m, m.make_field(0.0)) == 0.0);

  const ScalarField f = m.make_field(waftest::wiggle(m.num_vertices));
  const ScalarField g = m.make_field(waftest::wiggle(m.num_vertices, -0.4));
  const ScalarField combo = m.make_field(2.0 * f.values + 3.0 * g.values);
  CHECK(integrate(m, combo) ==
        doctest::Approx(2.0 * integrate(m, f) + 3.0 * integrate(m, g))
            .epsilon(1e-12));

  const ScalarField w = m.make_field(1.0);
  CHECK(integrate(m, f, &w) == integrate(m, f));

  const SurfaceMesh& other = base_mesh(2, 0);
  const ScalarField foreign = other.make_field(1.0);
  CHECK_THROWS_AS(integrate(m, foreign), ValidationError);
}

TEST_CASE("integrating 1 approximates the Gauss-Bonnet area at level 3") {
  const SurfaceMesh& m = base_mesh(2, 3);
  const double got = integrate(m, m.make_field(1.0));
  CHECK(std::abs(got - 4.0 * M_PI) < 0.01 * 4.0 * M_PI);
}

TEST_CASE("homology labels separate marked curves from face boundaries") {
  const SurfaceMesh& m = base_mesh(2, 0);
  const auto labels = homology_edge_labels(m);
  REQUIRE(labels.size() == m.edges.size());

  for (std::size_t f = 0; f < m.faces.size(); ++f) {
    const auto [a, b, c] = m.faces[f];
    const std::uint32_t x = labels[m.edge_id(a, b)] ^ labels[m.edge_id(b, c)] ^
                            labels[m.edge_id(c, a)];
    CHECK(x == 0);
  }

  for (const auto& [name, cycle] : m.marked_curves) {
    std::uint32_t x = 0;
    for (std::size_t i = 0; i < cycle.size(); ++i)
      x ^= labels[m.edge_id(cycle[i], cycle[(i + 1) % cycle.size()])];
    INFO("marked curve ", name);
    CHECK(x != 0);
  }
}

TEST_CASE("shortest essential loop: positivity, truncation, curve upper bound") {
  const SurfaceMesh& m = base_mesh(2, 0);
  const auto labels = homology_edge_labels(m);

  const Eigen::VectorXd lens = essential_loop_lengths(m, nullptr, 1e6);
  REQUIRE(lens.size() == m.num_vertices);
  const double systole = lens.minCoeff();
  CHECK(systole > 0.0);

  // A marked curve is an essential loop, so it bounds the loop length at its
  // own vertices from above.
  const auto& cycle = m.marked_curves.at("a1");
  const double curve_len = m.marked_curve_length("a1");
  for (int v : cycle) CHECK(lens[v] <= curve_len + 1e-12);

  // Truncated search reports +inf below the systole.
  const double capped =
      shortest_essential_loop(m, labels, nullptr, 0, 0.5 * systole);
  CHECK(std::isinf(capped));
}

TEST_CASE("thick part: full at tiny eps, monotone nesting, eventual loss") {
  const SurfaceMesh& m = base_mesh(2, 1);
  const ScalarField u = m.make_field(0.0);

  CHECK(thick_part(m, u, 1e-9).size() == static_cast<std::size_t>(m.num_vertices));

  std::vector<double> eps = {0.3, 0.8, 1.3, 1.6, 2.0};
  std::set<int> prev = as_set(thick_part(m, u, eps[0]));
  for (std::size_t i = 1; i < eps.size(); ++i) {
    const std::set<int> cur = as_set(thick_part(m, u, eps[i]));
    CHECK(std::includes(prev.begin(), prev.end(), cur.begin(), cur.end()));
    prev = cur;
  }

  // Past half the largest finite loop length everything is thin.
  const Eigen::VectorXd lens = essential_loop_lengths(m, nullptr, 1e6);
  const double eps_big = 0.5 * lens.maxCoeff() + 1.0;
  CHECK(thick_part(m, u, eps_big).empty());

  CHECK_THROWS_AS(thick_part(m, u, 0.0), ValidationError);
  CHECK_THROWS_AS(thick_part(m, u, -1.0), ValidationError);
}

TEST_CASE("conformal factor shrinks loop lengths and the thick part") {
  const SurfaceMesh& m = base_mesh(2, 1);
  const Eigen::VectorXd zero = Eigen::VectorXd::Zero(m.num_vertices);
  const Eigen::VectorXd shrunk = Eigen::VectorXd::Constant(m.num_vertices, -0.5);
  const Eigen::VectorXd l0 = essential_loop_lengths(m, &zero, 1e6);
  const Eigen::VectorXd l1 = essential_loop_lengths(m, &shrunk, 1e6);
  for (int v = 0; v < m.num_vertices; ++v)
    CHECK(l1[v] == doctest::Approx(std::exp(-0.5) * l0[v]).epsilon(1e-12));
}

TEST_CASE("finalize rejects broken meshes with located messages") {
  SUBCASE("triangle inequality violation names the face") {
    SurfaceMesh m = base_mesh(2, 0);
    m.edge_lengths[m.edge_id(m.faces[0][0], m.faces[0][1])] = 100.0;
    CHECK_THROWS_WITH_AS(m.finalize(), doctest::Contains("face"), ValidationError);
  }
  SUBCASE("nonpositive edge length is rejected") {
    SurfaceMesh m = base_mesh(2, 0);
    m.edge_lengths[3] = 0.0;
    CHECK_THROWS_AS(m.finalize(), ValidationError);
  }
  SUBCASE("missing face breaks closedness") {
    SurfaceMesh m = base_mesh(2, 0);
    m.faces.pop_back();
    CHECK_THROWS_AS(m.finalize(), ValidationError);
  }
  SUBCASE("duplicated face is rejected") {
    SurfaceMesh m = base_mesh(2, 0);
    m.faces.push_back(m.faces.front());
    CHECK_THROWS_AS(m.finalize(), ValidationError);
  }
  SUBCASE("wrong genus breaks the Euler characteristic check") {
    SurfaceMesh m = base_mesh(2, 0);
    m.genus = 3;
    CHECK_THROWS_WITH_AS(m.finalize(), doctest::Contains("euler"), ValidationError);
  }
  SUBCASE("marked curve through non-edges is rejected") {
    SurfaceMesh m = base_mesh(2, 0);
    int far = -1;
    for (int i = 1; i < m.num_vertices; ++i)
      if (m.edge_id(0, i) == -1) { far = i; break; }
    REQUIRE(far != -1);
    m.marked_curves["bogus"] = {0, far, 1};
    CHECK_THROWS_AS(m.finalize(), ValidationError);
  }
}

TEST_CASE("fingerprint: deterministic, metric-sensitive") {
  const SurfaceMesh a = build_polygon_mesh(2, 1);
  const SurfaceMesh b = build_polygon_mesh(2, 1);
  CHECK(a.fingerprint == b.fingerprint);
  CHECK(a.fingerprint != 0);

  SurfaceMesh c = a;
  c.edge_lengths[0] *= 1.0 + 1e-7;
  c.finalize();
  CHECK(c.fingerprint != a.fingerprint);

  CHECK(base_mesh(2, 0).fingerprint != base_mesh(3, 0).fingerprint);
}

TEST_CASE("field binding: size and fingerprint are enforced") {
  const SurfaceMesh& m = base_mesh(2, 0);
  CHECK_THROWS_AS(m.make_field(Eigen::VectorXd::Zero(m.num_vertices + 1)),
                  ValidationError);
  ScalarField f = m.make_field(1.0);
  f.mesh_fingerprint ^= 1;
  CHECK_THROWS_AS(m.check_field(f, "test"), ValidationError);
  ScalarField g = m.make_field(1.0);
  g.values[0] = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(m.check_field(g, "test"), ValidationError);
}

TEST_CASE("marked curves exist, have positive length, unknown names throw") {
  const SurfaceMesh& m = base_mesh(2, 0);
  REQUIRE(m.marked_curves.count("a1") == 1);
  CHECK(m.marked_curve_length("a1") > 0.0);
  CHECK_THROWS_AS(m.marked_curve_length("zz9"), ValidationError);
}

}  // TEST_SUITE
