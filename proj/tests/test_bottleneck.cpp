#include "infolab/bottleneck.hpp"
#include "infolab/error.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

using namespace infolab;

namespace {

Eigen::MatrixXd bsc(double p) {
  Eigen::MatrixXd j(2, 2);
  j << 0.5 * (1 - p), 0.5 * p, 0.5 * p, 0.5 * (1 - p);
  return j;
}

IBProblem problem(Eigen::MatrixXd joint, int f, double lambda) {
  IBProblem pr;
  pr.joint = std::move(joint);
  pr.cardinality_f = f;
  pr.lambda = lambda;
  return pr;
}

Eigen::MatrixXd random_joint(int ns, int ny, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::exponential_distribution<double> e(1.0);
  Eigen::MatrixXd j(ns, ny);
  for (Eigen::Index i = 0; i < j.size(); ++i) j.data()[i] = e(rng);
  return j / j.sum();
}

const double kBscMI = std::numbers::ln2 - oracle::binary_entropy(0.1);

}  // namespace

TEST_CASE("independent Y carries no relevant information") {
  Eigen::VectorXd ps(3), py(2);
  ps << 0.2, 0.5, 0.3;
  py << 0.4, 0.6;
  const IBProblem pr = problem(ps * py.transpose(), 2, 0.5);
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    IBSolverOptions opts;
    opts.seed = seed;
    CHECK(std::abs(solve_ib(pr, opts).I_fY) < 1e-9);
  }
}

TEST_CASE("binary symmetric channel recovers the channel information") {
  CHECK(std::abs(kBscMI - 0.3681) < 1e-4);
  const auto curve = ib_curve(problem(bsc(0.1), 2, 1.0), {0.01}, 5);
  REQUIRE(curve.size() == 1);
  CHECK(std::abs(curve[0].I_fY - kBscMI) < 1e-3);
  CHECK(curve[0].residual < 1e-6);
}

TEST_CASE("single-valued representation is exactly uninformative") {
  const IBSolution s = solve_ib(problem(bsc(0.1), 1, 0.1));
  CHECK(s.I_Sf == 0.0);
  CHECK(s.I_fY == 0.0);
  CHECK(check_dpi(s, problem(bsc(0.1), 1, 0.1)));
}

TEST_CASE("problem validation") {
  CHECK_THROWS_WITH_AS(solve_ib(problem(bsc(0.1), 2, 0.0)), "deterministic limit unsupported", InputError);
  CHECK_THROWS_AS(solve_ib(problem(bsc(0.1) * 2.0, 2, 1.0)), InputError);
  CHECK_THROWS_AS(solve_ib(problem(bsc(0.1), 0, 1.0)), InputError);
  CHECK_THROWS_AS(solve_ib(problem(bsc(0.1), 2, -1.0)), InputError);
  Eigen::MatrixXd neg = bsc(0.1);
  neg(0, 1) = -0.05;
  neg(0, 0) += 0.1;
  CHECK_THROWS_AS(solve_ib(problem(neg, 2, 1.0)), InputError);
  CHECK_THROWS_AS(solve_ib(problem(random_joint(65, 2, 1), 2, 1.0)), InputError);
  CHECK_THROWS_AS(ib_curve(problem(bsc(0.1), 2, 1.0), {}, 1), InputError);
}

TEST_CASE("property: solutions are distributions satisfying DPI") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const int ns = 2 + static_cast<int>(seed % 4), ny = 2 + static_cast<int>(seed % 3);
    const int nf = 1 + static_cast<int>(seed % 3);
    const double lambda = 0.05 + 0.1 * static_cast<double>(seed % 5);
    const IBProblem pr = problem(random_joint(ns, ny, seed), nf, lambda);
    IBSolverOptions opts;
    opts.seed = seed;
    const IBSolution s = solve_ib(pr, opts);
    CHECK((s.encoder.array() >= 0.0).all());
    CHECK((s.encoder.array() <= 1.0).all());
    CHECK(((s.encoder.rowwise().sum().array() - 1.0).abs() < 1e-10).all());
    CHECK(check_dpi(s, pr));
    CHECK(s.I_Sf <= std::log(static_cast<double>(nf)) + 1e-9);
    CHECK(s.I_fY <= table_mutual_information(pr.joint) + 1e-9);
    if (s.converged) {
      CHECK(s.residual < opts.tol * 10);
      CHECK((ib_update(pr, s.encoder) - s.encoder).cwiseAbs().maxCoeff() == doctest::Approx(s.residual));
    }
  }
}

TEST_CASE("evaluate_encoder reproduces the solver informations") {
  const IBProblem pr = problem(random_joint(4, 3, 3), 3, 0.2);
  const IBSolution s = solve_ib(pr);
  const IBSolution e = evaluate_encoder(pr, s.encoder);
  CHECK(e.I_Sf == doctest::Approx(s.I_Sf).epsilon(1e-12));
  CHECK(e.I_fY == doctest::Approx(s.I_fY).epsilon(1e-12));
}

TEST_CASE("budget is reported, not enforced") {
  IBProblem pr = problem(bsc(0.1), 2, 0.01);
  pr.budget = 0.1;
  const IBSolution s = solve_ib(pr);
  REQUIRE(s.within_budget.has_value());
  CHECK(*s.within_budget == (s.I_Sf <= 0.1));
  CHECK(s.I_Sf > 0.1);
  pr.budget.reset();
  CHECK_FALSE(solve_ib(pr).within_budget.has_value());
}

TEST_CASE("curve end points and frontier ordering") {
  const IBProblem pr = problem(random_joint(4, 4, 8), 3, 1.0);
  const std::vector<double> lambdas{100.0, 2.0, 1.0, 0.5, 0.2, 0.1, 0.05, 0.02};
  auto curve = ib_curve(pr, lambdas, 8);
  REQUIRE(curve.size() == lambdas.size());
  for (std::size_t i = 0; i < lambdas.size(); ++i) CHECK(curve[i].lambda == lambdas[i]);
  CHECK(curve[0].I_Sf < 1e-6);
  CHECK(curve[0].I_fY < 1e-6);
  std::sort(curve.begin(), curve.end(), [](const auto& a, const auto& b) { return a.I_Sf < b.I_Sf; });
  for (std::size_t i = 1; i < curve.size(); ++i) CHECK(curve[i].I_fY >= curve[i - 1].I_fY - 1e-6);
}

TEST_CASE("curve is independent of the thread count") {
  const IBProblem pr = problem(random_joint(3, 3, 9), 2, 1.0);
  const auto a = ib_curve(pr, {0.5, 0.1, 0.05}, 4, {}, 1);
  const auto b = ib_curve(pr, {0.5, 0.1, 0.05}, 4, {}, 3);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].I_fY == b[i].I_fY);
    CHECK(a[i].seed == b[i].seed);
  }
}

TEST_CASE("property: best fixed point is optimal against a grid of encoders") {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const Eigen::MatrixXd joint = random_joint(2, 2, 50 + seed);
    const auto grid = oracle::ib_encoder_grid(joint, 200);
    for (double lambda : {0.02, 0.1, 0.3}) {
      double best = -1e300;
      for (const auto& g : grid) best = std::max(best, g.I_fY - lambda * g.I_Sf);
      const auto curve = ib_curve(problem(joint, 2, lambda), {lambda}, 6);
      CHECK(curve[0].I_fY - lambda * curve[0].I_Sf >= best - 1e-3);
    }
  }
}

TEST_CASE("DPI check rejects a violating solution") {
  const IBProblem pr = problem(bsc(0.1), 2, 0.1);
  IBSolution fake = solve_ib(pr);
  fake.I_Sf = 0.01;
  fake.I_fY = 0.2;
  CHECK_FALSE(check_dpi(fake, pr));
  fake.I_Sf = 0.5;
  fake.I_fY = 0.5;
  CHECK_FALSE(check_dpi(fake, pr));
}

TEST_CASE("table MI matches the oracle") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Eigen::MatrixXd j = random_joint(5, 3, seed);
    CHECK(table_mutual_information(j) == doctest::Approx(oracle::table_mi(j)).epsilon(1e-12));
  }
}
