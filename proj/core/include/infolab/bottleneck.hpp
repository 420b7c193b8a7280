#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <vector>

namespace infolab {

// Discrete information bottleneck problem over a joint table p(s, y).
// `lambda` is the Lagrange multiplier on I(S;f); the tradeoff parameter of
// the classic IB objective is its reciprocal.
struct IBProblem {
  Eigen::MatrixXd joint;  // |S| x |Y|
  int cardinality_f = 2;
  double lambda = 1.0;
  std::optional<double> budget;  // capacity C in nats

  // Throws InputError on malformed tables or parameters.
  void validate() const;
};

struct IBSolution {
  Eigen::MatrixXd encoder;     // |S| x |F|, p(f|s)
  Eigen::VectorXd marginal_f;  // p(f)
  Eigen::MatrixXd decoder;     // |F| x |Y|, p(y|f)
  double I_Sf = 0.0;
  double I_fY = 0.0;
  double residual = 0.0;  // max-norm change of one more fixed-point update
  int iterations = 0;
  bool converged = false;
  std::optional<bool> within_budget;  // I_Sf <= C when a budget is set
};

struct IBSolverOptions {
  int max_iter = 10000;
  double tol = 1e-12;
  std::uint64_t seed = 0;
};

// Mutual information of a (not necessarily normalized) nonnegative table.
double table_mutual_information(const Eigen::MatrixXd& table);

// Iterates encoder -> marginal -> decoder until the encoder moves less than
// tol in max norm. Starts from a seeded random row-stochastic encoder.
IBSolution solve_ib(const IBProblem& problem, const IBSolverOptions& options = {});

// Reconstructs marginal, decoder and both informations from an encoder.
IBSolution evaluate_encoder(const IBProblem& problem, const Eigen::MatrixXd& encoder);

// One application of the self-consistent update to `encoder`.
Eigen::MatrixXd ib_update(const IBProblem& problem, const Eigen::MatrixXd& encoder);

struct IBCurvePoint {
  double lambda = 0.0;
  double I_Sf = 0.0;
  double I_fY = 0.0;
  double residual = 0.0;
  int iterations = 0;
  std::uint64_t seed = 0;  // restart that produced the point
};

// Best (highest I_fY) fixed point per lambda over `restarts` seeds.
std::vector<IBCurvePoint> ib_curve(const IBProblem& problem, const std::vector<double>& lambdas,
                                   int restarts, const IBSolverOptions& options = {},
                                   unsigned threads = 1);

// I_fY <= I_SY + 1e-9 and I_fY <= I_Sf + 1e-9.
bool check_dpi(const IBSolution& solution, const IBProblem& problem);

}  // namespace infolab
