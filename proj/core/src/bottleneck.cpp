#include "infolab/bottleneck.hpp"

#include "infolab/error.hpp"
#include "infolab/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace infolab {

namespace {

constexpr double kDpiSlack = 1e-9;

Eigen::VectorXd source_marginal(const IBProblem& p) { return p.joint.rowwise().sum(); }

Eigen::MatrixXd channel(const IBProblem& p) {
  Eigen::MatrixXd cond = p.joint;
  for (Eigen::Index s = 0; s < cond.rows(); ++s) {
    const double ps = cond.row(s).sum();
    if (ps > 0.0) cond.row(s) /= ps;
  }
  return cond;
}

double kl_divergence(const Eigen::RowVectorXd& p, const Eigen::RowVectorXd& q) {
  double kl = 0.0;
  for (Eigen::Index y = 0; y < p.size(); ++y) {
    if (p(y) <= 0.0) continue;
    if (q(y) <= 0.0) return std::numeric_limits<double>::infinity();
    kl += p(y) * std::log(p(y) / q(y));
  }
  return std::max(kl, 0.0);
}

}  // namespace

void IBProblem::validate() const {
  if (joint.rows() < 1 || joint.cols() < 1) throw InputError("joint table must be non-empty");
  if (joint.rows() > 64 || joint.cols() > 64) throw InputError("joint table exceeds 64 x 64");
  if (!joint.allFinite() || (joint.array() < 0.0).any())
    throw InputError("joint table entries must be finite and nonnegative");
  if (std::abs(joint.sum() - 1.0) > 1e-12) throw InputError("joint table must sum to 1");
  if (cardinality_f < 1 || cardinality_f > 64) throw InputError("cardinality_f must be in [1, 64]");
  if (!std::isfinite(lambda) || lambda < 0.0) throw InputError("lambda must be finite and >= 0");
  if (lambda == 0.0) throw InputError("deterministic limit unsupported");
  if (budget && !(*budget >= 0.0)) throw InputError("budget must be >= 0");
}

double table_mutual_information(const Eigen::MatrixXd& table) {
  const Eigen::VectorXd rows = table.rowwise().sum();
  const Eigen::RowVectorXd cols = table.colwise().sum();
  // A single row or column carries no information; taking the total from
  // that margin makes every log term exactly zero.
  const double total = table.rows() == 1 ? rows(0) : table.cols() == 1 ? cols(0) : rows.sum();
  if (!(total > 0.0)) return 0.0;
  double mi = 0.0;
  for (Eigen::Index i = 0; i < table.rows(); ++i) {
    for (Eigen::Index j = 0; j < table.cols(); ++j) {
      const double t = table(i, j);
      if (t <= 0.0) continue;
      mi += t / total * std::log((t * total) / (rows(i) * cols(j)));
    }
  }
  return mi;
}

IBSolution evaluate_encoder(const IBProblem& problem, const Eigen::MatrixXd& encoder) {
  const Eigen::VectorXd ps = source_marginal(problem);
  const Eigen::Index n_f = encoder.cols();
  IBSolution sol;
  sol.encoder = encoder;
  // p(s, f) and p(f, y) tables; marginals are taken from the same tables so
  // that a constant representation gives exactly zero information.
  const Eigen::MatrixXd sf = ps.asDiagonal() * encoder;
  const Eigen::MatrixXd fy = encoder.transpose() * problem.joint;
  sol.marginal_f = sf.colwise().sum().transpose();
  sol.decoder = Eigen::MatrixXd::Constant(n_f, problem.joint.cols(), 1.0 / problem.joint.cols());
  for (Eigen::Index f = 0; f < n_f; ++f) {
    const double mass = fy.row(f).sum();
    if (mass > 0.0) sol.decoder.row(f) = fy.row(f) / mass;
  }
  sol.I_Sf = table_mutual_information(sf);
  sol.I_fY = table_mutual_information(fy);
  if (problem.budget) sol.within_budget = sol.I_Sf <= *problem.budget;
  return sol;
}

Eigen::MatrixXd ib_update(const IBProblem& problem, const Eigen::MatrixXd& encoder) {
  const IBSolution current = evaluate_encoder(problem, encoder);
  const Eigen::MatrixXd cond = channel(problem);
  const Eigen::Index n_s = encoder.rows(), n_f = encoder.cols();
  Eigen::MatrixXd next(n_s, n_f);
  std::vector<double> logw(static_cast<std::size_t>(n_f));
  for (Eigen::Index s = 0; s < n_s; ++s) {
    double best = -std::numeric_limits<double>::infinity();
    for (Eigen::Index f = 0; f < n_f; ++f) {
      const double pf = current.marginal_f(f);
      double lw = -std::numeric_limits<double>::infinity();
      if (pf > 0.0) {
        const double kl = kl_divergence(cond.row(s), current.decoder.row(f));
        if (std::isfinite(kl)) lw = std::log(pf) - kl / problem.lambda;
      }
      logw[static_cast<std::size_t>(f)] = lw;
      best = std::max(best, lw);
    }
    if (!std::isfinite(best)) {
      next.row(s) = encoder.row(s);
      continue;
    }
    double z = 0.0;
    for (Eigen::Index f = 0; f < n_f; ++f) {
      const double w = std::exp(logw[static_cast<std::size_t>(f)] - best);
      next(s, f) = w;
      z += w;
    }
    next.row(s) /= z;
  }
  return next;
}

IBSolution solve_ib(const IBProblem& problem, const IBSolverOptions& options) {
  problem.validate();
  if (!(options.tol > 0.0)) throw InputError("tol must be > 0");
  if (options.max_iter < 1) throw InputError("max_iter must be >= 1");
  const Eigen::Index n_s = problem.joint.rows(), n_f = problem.cardinality_f;

  std::mt19937_64 rng(options.seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  Eigen::MatrixXd encoder(n_s, n_f);
  for (Eigen::Index s = 0; s < n_s; ++s) {
    for (Eigen::Index f = 0; f < n_f; ++f) encoder(s, f) = unif(rng) + 1e-3;
    encoder.row(s) /= encoder.row(s).sum();
  }

  int iter = 0;
  bool converged = false;
  while (iter < options.max_iter) {
    Eigen::MatrixXd next = ib_update(problem, encoder);
    const double change = (next - encoder).cwiseAbs().maxCoeff();
    encoder = std::move(next);
    ++iter;
    if (change < options.tol) {
      converged = true;
      break;
    }
  }
  IBSolution sol = evaluate_encoder(problem, encoder);
  sol.iterations = iter;
  sol.converged = converged;
  sol.residual = (ib_update(problem, encoder) - encoder).cwiseAbs().maxCoeff();
  return sol;
}

std::vector<IBCurvePoint> ib_curve(const IBProblem& problem, const std::vector<double>& lambdas,
                                   int restarts, const IBSolverOptions& options,
                                   unsigned threads) {
  if (lambdas.empty()) throw InputError("lambda grid must be non-empty");
  if (restarts < 1) throw InputError("seeds per point must be >= 1");
  for (double l : lambdas)
    if (!(l > 0.0)) throw InputError("every lambda on the grid must be > 0");

  const std::size_t runs = lambdas.size() * static_cast<std::size_t>(restarts);
  std::vector<IBSolution> solutions(runs);
  std::vector<std::uint64_t> seeds(runs);
  parallel_for(runs, threads, [&](std::size_t r) {
    IBProblem p = problem;
    p.lambda = lambdas[r / static_cast<std::size_t>(restarts)];
    IBSolverOptions o = options;
    o.seed = mix_seed(options.seed, r);
    seeds[r] = o.seed;
    solutions[r] = solve_ib(p, o);
  });

  std::vector<IBCurvePoint> curve;
  for (std::size_t li = 0; li < lambdas.size(); ++li) {
    std::size_t best = li * static_cast<std::size_t>(restarts);
    for (int k = 1; k < restarts; ++k) {
      const std::size_t r = li * static_cast<std::size_t>(restarts) + static_cast<std::size_t>(k);
      if (solutions[r].I_fY > solutions[best].I_fY) best = r;
    }
    const IBSolution& s = solutions[best];
    curve.push_back({lambdas[li], s.I_Sf, s.I_fY, s.residual, s.iterations, seeds[best]});
  }
  return curve;
}

bool check_dpi(const IBSolution& solution, const IBProblem& problem) {
  const double i_sy = table_mutual_information(problem.joint);
  return solution.I_fY <= i_sy + kDpiSlack && solution.I_fY <= solution.I_Sf + kDpiSlack;
}

}  // namespace infolab
