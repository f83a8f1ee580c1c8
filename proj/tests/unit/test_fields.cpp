#include <cmath>
#include <set>

#include "doctest.h"
#include "helpers.hpp"
#include "waf/fields.hpp"

using namespace waf;
using waftest::base_mesh;

TEST_SUITE("fields") {

TEST_CASE("constant field: contents, provenance, sign guard") {
  const SurfaceMesh& m = base_mesh(2, 0);
  const QuadDiffNormField q = constant_field(m, 0.16);
  CHECK(q.values.size() == m.num_vertices);
  CHECK(q.values.minCoeff() == 0.16);
  CHECK(q.values.maxCoeff() == 0.16);
  CHECK(q.provenance == FieldProvenance::Constant);
  CHECK(q.mesh_fingerprint == m.fingerprint);
  CHECK_NOTHROW(q.validate(m));
  CHECK_THROWS_AS(constant_field(m, -0.01), ValidationError);
}

TEST_CASE("manufactured pair: constant profiles hit the algebraic identity") {
  const SurfaceMesh& m = base_mesh(2, 1);

  SUBCASE("u = 0 gives q = 0") {
    const QuadDiffNormField q = manufactured_pair(m, m.make_field(0.0));
    CHECK(q.values.cwiseAbs().maxCoeff() < 1e-13);
    CHECK(q.provenance == FieldProvenance::Manufactured);
  }
  SUBCASE("constant u gives q = e^{2u}(1 - e^{2u})") {
    const double u0 = -0.2;
    const double expect = std::exp(2.0 * u0) * (1.0 - std::exp(2.0 * u0));
    const QuadDiffNormField q = manufactured_pair(m, m.make_field(u0));
    CHECK(std::abs(q.values.minCoeff() - expect) < 1e-13);
    CHECK(std::abs(q.values.maxCoeff() - expect) < 1e-13);
  }
  SUBCASE("the boundary profile u = -ln(2)/2 gives q = 1/4") {
    const QuadDiffNormField q =
        manufactured_pair(m, m.make_field(-0.5 * std::log(2.0)));
    CHECK(std::abs(q.values.minCoeff() - 0.25) < 1e-13);
    CHECK(std::abs(q.values.maxCoeff() - 0.25) < 1e-13);
  }
  SUBCASE("profiles that would need negative q are rejected with locations") {
    // Positive constant u solves the equation only with q < 0.
    CHECK_THROWS_WITH_AS(manufactured_pair(m, m.make_field(0.3)),
                         doctest::Contains("vert"), ValidationError);
  }
}

TEST_CASE("prescribed zeros: exact vanishing, positivity, amplitude scaling") {
  const SurfaceMesh& m = base_mesh(2, 1);
  const std::vector<std::pair<int, int>> zeros = {
      {3, 1}, {40, 1}, {77, 1}, {150, 1}};  // 4g-4 = 4 simple zeros
  const double amp = 0.35;
  const QuadDiffNormField q = synth_with_zeros(m, zeros, amp);

  CHECK(q.provenance == FieldProvenance::PrescribedZeros);
  CHECK(q.zero_set == zeros);
  std::set<int> zv;
  for (const auto& [v, mult] : zeros) zv.insert(v);
  for (int v = 0; v < m.num_vertices; ++v) {
    if (zv.count(v)) CHECK(q.values[v] == 0.0);
    else CHECK(q.values[v] > 0.0);
  }
  CHECK(q.values.maxCoeff() == doctest::Approx(amp * amp).epsilon(1e-13));

  // q = |alpha|^2, so doubling alpha's amplitude quadruples q.
  const QuadDiffNormField q2 = synth_with_zeros(m, zeros, 2.0 * amp);
  CHECK(q2.values.maxCoeff() ==
        doctest::Approx(4.0 * q.values.maxCoeff()).epsilon(1e-12));

  SUBCASE("wrong total multiplicity is rejected") {
    CHECK_THROWS_AS(synth_with_zeros(m, {{3, 1}, {40, 1}}, amp), ValidationError);
    CHECK_THROWS_AS(synth_with_zeros(m, {{3, 2}, {40, 2}, {77, 1}}, amp),
                    ValidationError);
  }
  SUBCASE("bad amplitude and bad vertices are rejected") {
    CHECK_THROWS_AS(synth_with_zeros(m, zeros, 0.0), ValidationError);
    CHECK_THROWS_AS(synth_with_zeros(m, {{-1, 2}, {40, 2}}, amp), ValidationError);
    CHECK_THROWS_AS(synth_with_zeros(m, {{3, 0}, {40, 4}}, amp), ValidationError);
  }
}

TEST_CASE("higher multiplicity zeros flatten the field near the zero") {
  const SurfaceMesh& m = base_mesh(2, 1);
  // One double zero plus two simple ones.
  const QuadDiffNormField q =
      synth_with_zeros(m, {{5, 2}, {90, 1}, {200, 1}}, 0.3);
  CHECK(q.values[5] == 0.0);
  // Neighbors of a double zero sit far below the global scale.
  const auto adj = m.vertex_adjacency();
  for (const auto& [nbr, eid] : adj[5])
    CHECK(q.values[nbr] < 0.05 * q.values.maxCoeff());
}

TEST_CASE("random zero sets: deterministic, correctly sized, seed-sensitive") {
  const SurfaceMesh& m = base_mesh(2, 1);
  const auto z1 = random_zero_set(m, 7);
  const auto z1b = random_zero_set(m, 7);
  const auto z2 = random_zero_set(m, 8);
  CHECK(z1 == z1b);
  CHECK(z1 != z2);
  int total = 0;
  for (const auto& [v, mult] : z1) {
    CHECK(v >= 0);
    CHECK(v < m.num_vertices);
    CHECK(mult >= 1);
    total += mult;
  }
  CHECK(total == 4 * m.genus - 4);
  CHECK_NOTHROW(synth_with_zeros(m, z1, 0.4).validate(m));
}

TEST_CASE("ray scaling is quadratic in t") {
  const SurfaceMesh& m = base_mesh(2, 0);
  const QuadDiffNormField q_hat = constant_field(m, 1.0);
  const QuadDiffNormField q = scale_ray(q_hat, 0.3);
  CHECK(q.values.maxCoeff() == doctest::Approx(0.09).epsilon(1e-15));
  CHECK(scale_ray(q_hat, 0.0).values.maxCoeff() == 0.0);
  CHECK(q.mesh_fingerprint == q_hat.mesh_fingerprint);
  CHECK_THROWS_AS(scale_ray(q_hat, -0.5), ValidationError);
}

TEST_CASE("field validation rejects broken inputs") {
  const SurfaceMesh& m = base_mesh(2, 0);
  QuadDiffNormField q = constant_field(m, 0.1);

  SUBCASE("negative entry") {
    q.values[4] = -1e-9;
    CHECK_THROWS_WITH_AS(q.validate(m), doctest::Contains("negative"),
                         ValidationError);
  }
  SUBCASE("size mismatch") {
    q.values.conservativeResize(q.values.size() - 1);
    CHECK_THROWS_AS(q.validate(m), ValidationError);
  }
  SUBCASE("foreign mesh") {
    CHECK_THROWS_AS(q.validate(base_mesh(2, 1)), ValidationError);
  }
  SUBCASE("nonfinite entry") {
    q.values[0] = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(q.validate(m), ValidationError);
  }
  SUBCASE("zero set inconsistent with declared provenance") {
    q.provenance = FieldProvenance::PrescribedZeros;
    q.zero_set = {{0, 1}};  // sums to 1, not 4g-4
    CHECK_THROWS_AS(q.validate(m), ValidationError);
  }
}

TEST_CASE("smooth radial problem: admissible q, expected profile range") {
  const SmoothProblem p = smooth_radial_problem(2, 1);
  CHECK(p.mesh.genus == 2);
  CHECK(p.mesh.refinement_level == 1);
  CHECK_NOTHROW(p.q.validate(p.mesh));
  CHECK(p.q.values.minCoeff() > 0.0);
  CHECK(p.u_exact.values.minCoeff() >= -0.165 - 1e-12);
  CHECK(p.u_exact.values.maxCoeff() <= -0.15 + 1e-12);
  // The profile is non-constant on a refined mesh.
  CHECK(p.u_exact.values.maxCoeff() - p.u_exact.values.minCoeff() > 1e-3);
}

}  // TEST_SUITE
