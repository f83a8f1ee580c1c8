#include <cmath>

#include "doctest.h"
#include "helpers.hpp"
#include "waf/solver.hpp"
#include "waf/triple.hpp"

using namespace waf;
using waftest::base_mesh;

TEST_SUITE("solver") {

TEST_CASE("q = 0 returns the Fuchsian solution u = 0 exactly") {
  const SurfaceMesh& m = base_mesh(2, 1);
  const ConformalSolution s = solve_gauss(m, constant_field(m, 0.0));
  CHECK(s.converged);
  CHECK(s.branch == SolutionBranch::Upper);
  CHECK(s.u.values.cwiseAbs().maxCoeff() <= 1e-10);
  CHECK(s.residual_norm <= 1e-10);
  CHECK(s.iterations == 0);
}

TEST_CASE("residual: algebraic spot checks") {
  const SurfaceMesh& m = base_mesh(2, 1);

  SUBCASE("(q, u) = (0, 0) is an exact root") {
    const ScalarField r = residual(m, constant_field(m, 0.0), m.make_field(0.0));
    CHECK(r.values.cwiseAbs().maxCoeff() == 0.0);
  }
  SUBCASE("(q, u) = (0, -0.1) misses by 1 - e^{-0.2} everywhere") {
    const ScalarField r = residual(m, constant_field(m, 0.0), m.make_field(-0.1));
    const double expect = 1.0 - std::exp(-0.2);
    CHECK(std::abs(r.values.minCoeff() - expect) < 1e-12);
    CHECK(std::abs(r.values.maxCoeff() - expect) < 1e-12);
  }
  SUBCASE("constant upper-branch roots have zero residual") {
    for (double c : {0.04, 0.16, 0.2499}) {
      const ScalarField r =
          residual(m, constant_field(m, c), m.make_field(waftest::upper_u(c)));
      CHECK(r.values.cwiseAbs().maxCoeff() < 1e-12);
    }
  }
}

TEST_CASE("constant oracle q = 0.16: solution, multiplier, iteration budget") {
  const SurfaceMesh& m = base_mesh(2, 1);
  const ConformalSolution s = solve_gauss(m, constant_field(m, 0.16));
  CHECK(s.converged);
  CHECK(s.branch == SolutionBranch::Upper);
  const double u_star = waftest::upper_u(0.16);  // log(0.8)/2
  CHECK(std::abs(s.u.values.minCoeff() - u_star) < 1e-10);
  CHECK(std::abs(s.u.values.maxCoeff() - u_star) < 1e-10);
  CHECK(s.iterations < 50);

  const MinimalTriple t = make_triple(m, constant_field(m, 0.16), {});
  CHECK(std::abs(t.lambda0() - 0.5) < 1e-10);
}

TEST_CASE("boundary oracle q = 1/4: u = -ln(2)/2, lambda0 = 1") {
  const SurfaceMesh& m = base_mesh(2, 1);
  const ConformalSolution s = solve_gauss(m, constant_field(m, 0.25));
  CHECK(s.converged);
  const double u_star = -0.5 * std::log(2.0);
  CHECK(std::abs(s.u.values.minCoeff() - u_star) < 1e-2);
  CHECK(std::abs(s.u.values.maxCoeff() - u_star) < 1e-2);
  const MinimalTriple t = make_triple(m, constant_field(m, 0.25), {});
  CHECK(std::abs(t.lambda0() - 1.0) < 1e-2);
}

TEST_CASE("q past the existence wall raises NoSolutionError") {
  const SurfaceMesh& m = base_mesh(2, 0);
  CHECK_THROWS_AS(solve_gauss(m, constant_field(m, 0.5)), NoSolutionError);
  CHECK_THROWS_AS(solve_gauss(m, constant_field(m, 1.0)), NoSolutionError);
}

TEST_CASE("exhausting the iteration budget while improving raises MaxIterationsError") {
  const SurfaceMesh& m = base_mesh(2, 0);
  SolveOptions opts;
  opts.max_iterations = 2;
  CHECK_THROWS_AS(solve_gauss(m, constant_field(m, 0.16), opts),
                  MaxIterationsError);
}

TEST_CASE("solver option validation") {
  const SurfaceMesh& m = base_mesh(2, 0);
  const QuadDiffNormField q = constant_field(m, 0.1);
  SolveOptions opts;
  SUBCASE("nonpositive tolerance") {
    opts.tolerance = 0.0;
    CHECK_THROWS_AS(solve_gauss(m, q, opts), ValidationError);
  }
  SUBCASE("nonpositive iteration budget") {
    opts.max_iterations = 0;
    CHECK_THROWS_AS(solve_gauss(m, q, opts), ValidationError);
  }
  SUBCASE("wrong-size initial guess") {
    opts.initial_guess = Eigen::VectorXd::Zero(m.num_vertices + 2);
    CHECK_THROWS_AS(solve_gauss(m, q, opts), ValidationError);
  }
}

TEST_CASE("uniqueness on the tracked branch: initial guesses agree") {
  const SurfaceMesh& m = base_mesh(2, 1);
  const QuadDiffNormField q = constant_field(m, 0.16);
  const double tol = 1e-10;

  SolveOptions a;  // zeros
  SolveOptions b;
  b.initial_guess = Eigen::VectorXd::Constant(m.num_vertices, -0.5 * std::log(2.0));
  SolveOptions c;
  c.initial_guess = Eigen::VectorXd::Constant(m.num_vertices, -0.2);

  const Eigen::VectorXd ua = solve_gauss(m, q, a).u.values;
  const Eigen::VectorXd ub = solve_gauss(m, q, b).u.values;
  const Eigen::VectorXd uc = solve_gauss(m, q, c).u.values;
  CHECK((ua - ub).cwiseAbs().maxCoeff() < 10.0 * tol);
  CHECK((ua - uc).cwiseAbs().maxCoeff() < 10.0 * tol);
}

TEST_CASE("randomized prescribed-zero fields stay inside the barrier sandwich") {
  const SurfaceMesh& m = base_mesh(2, 1);
  const double lo = -0.5 * std::log(2.0) - 1e-3, hi = 1e-3;
  for (std::uint64_t seed : {1, 2, 3, 4, 5}) {
    const QuadDiffNormField q =
        synth_with_zeros(m, random_zero_set(m, seed), 0.45);
    const MinimalTriple t = make_triple(m, q, {});
    INFO("seed ", seed);
    REQUIRE(t.lambda0() <= 1.0);
    CHECK(t.solution.u.values.minCoeff() >= lo);
    CHECK(t.solution.u.values.maxCoeff() <= hi);
  }
}

TEST_CASE("each converged solution satisfies the Gauss-Bonnet identity") {
  const SurfaceMesh& m = base_mesh(2, 2);
  const QuadDiffNormField q = synth_with_zeros(m, random_zero_set(m, 11), 0.45);
  const MinimalTriple t = make_triple(m, q, {});
  const Eigen::ArrayXd lam = t.lambda_field().array();
  const Eigen::ArrayXd e2u = (2.0 * t.solution.u.values.array()).exp();
  const ScalarField integrand =
      m.make_field(((1.0 + lam.square()) * e2u).matrix());
  const double total = integrate(m, integrand);
  CHECK(std::abs(total - m.total_area) < 1e-8);
  CHECK(std::abs(total - 4.0 * M_PI) < 0.04 * M_PI);
}

TEST_CASE("manufactured smooth problem is recovered to solver tolerance") {
  const SmoothProblem p = smooth_radial_problem(2, 1);
  const QuadDiffNormField q = manufactured_pair(p.mesh, p.u_exact);
  const ConformalSolution s = solve_gauss(p.mesh, q);
  CHECK(s.converged);
  CHECK((s.u.values - p.u_exact.values).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("continuation: warm-started sweep along a ray") {
  const SurfaceMesh& m = base_mesh(2, 1);
  const QuadDiffNormField q_hat = constant_field(m, 1.0);

  SUBCASE("all probes inside the wall converge") {
    const ContinuationResult r =
        continuation_solve(m, q_hat, {0.1, 0.3, 0.5});
    CHECK_FALSE(r.hit_no_solution);
    CHECK(r.solutions.size() == 3);
    CHECK(r.last_good_t == 0.5);
    for (const auto& s : r.solutions) CHECK(s.converged);
    // t = 0.5 means q = 1/4: the boundary constant solution.
    CHECK(std::abs(r.solutions.back().u.values.minCoeff() +
                   0.5 * std::log(2.0)) < 1e-2);
  }
  SUBCASE("a probe past the wall stops the sweep and is recorded") {
    const ContinuationResult r = continuation_solve(m, q_hat, {0.1, 0.6});
    CHECK(r.hit_no_solution);
    CHECK(r.failed_index == 1);
    CHECK(r.solutions.size() == 1);
    CHECK(r.last_good_t == 0.1);
    CHECK_FALSE(r.failure_reason.empty());
  }
  SUBCASE("t = 0 reproduces the Fuchsian point") {
    const ContinuationResult r = continuation_solve(m, q_hat, {0.0});
    REQUIRE(r.solutions.size() == 1);
    CHECK(r.solutions[0].u.values.cwiseAbs().maxCoeff() <= 1e-10);
  }
  SUBCASE("t values must ascend and be nonnegative") {
    CHECK_THROWS_AS(continuation_solve(m, q_hat, {0.3, 0.1}), ValidationError);
    CHECK_THROWS_AS(continuation_solve(m, q_hat, {-0.1, 0.1}), ValidationError);
  }
  SUBCASE("an empty sweep is vacuous") {
    const ContinuationResult r = continuation_solve(m, q_hat, {});
    CHECK(r.solutions.empty());
    CHECK(r.last_good_t == -1.0);
    CHECK_FALSE(r.hit_no_solution);
  }
}

TEST_CASE("triple bundles validate their parts") {
  const SurfaceMesh& m = base_mesh(2, 0);
  MinimalTriple t = waftest::constant_triple(2, 0, 0.09);
  CHECK_NOTHROW(t.validate());
  CHECK(std::abs(t.lambda0() - waftest::const_lambda0(0.09)) < 1e-10);
  CHECK(t.lambda_at(0) == doctest::Approx(t.lambda0()).epsilon(1e-12));

  t.solution.converged = false;
  CHECK_THROWS_AS(t.validate(), ValidationError);
}

}  // TEST_SUITE
