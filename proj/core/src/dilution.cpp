#include "infolab/dilution.hpp"

#include "infolab/error.hpp"
#include "infolab/estimators.hpp"
#include "infolab/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

namespace infolab {

namespace {

constexpr double kTwoPiE = 2.0 * std::numbers::pi * std::numbers::e;

struct Moments {
  double mean = 0.0;
  double var = 0.0;
};

Moments moments(const std::vector<double>& v) {
  const double n = static_cast<double>(v.size());
  double mean = 0.0;
  for (double x : v) mean += x;
  mean /= n;
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  return {mean, ss / (n - 1.0)};
}

}  // namespace

void GaussianSystemSpec::validate() const {
  if (d < 1) throw InputError("dimension d must be >= 1");
  if (!(sigma > 0.0) || !std::isfinite(sigma)) throw InputError("sigma must be > 0");
  if (n_pairs < 1) throw InputError("n_pairs must be >= 1");
  if (covariance) {
    const auto& c = *covariance;
    if (c.rows() != d || c.cols() != d) throw InputError("covariance must be d x d");
    if (!c.allFinite() || !c.isApprox(c.transpose(), 1e-12))
      throw InputError("covariance must be symmetric");
    const auto diag = covariance_diagnostics(c);
    if (!(diag.lambda_min > 0.0))
      throw InputError("covariance is not positive definite (lambda_min = " +
                       std::to_string(diag.lambda_min) + ")");
  }
}

Eigen::MatrixXd GaussianSystemSpec::covariance_matrix() const {
  if (covariance) return *covariance;
  return Eigen::MatrixXd::Identity(d, d) * (sigma * sigma);
}

CovarianceDiagnostics covariance_diagnostics(const Eigen::MatrixXd& covariance) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(covariance, Eigen::EigenvaluesOnly);
  const auto& ev = eig.eigenvalues();
  return {covariance.trace() / static_cast<double>(covariance.rows()), ev.maxCoeff(), ev.minCoeff()};
}

PairSamples sample_pairs(const GaussianSystemSpec& spec) {
  spec.validate();
  const Eigen::Index n = spec.n_pairs, d = spec.d;
  std::optional<Eigen::MatrixXd> chol;
  if (spec.covariance) chol = Eigen::LLT<Eigen::MatrixXd>(*spec.covariance).matrixL();

  std::mt19937_64 rng(spec.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  PairSamples out{Eigen::MatrixXd(n, d), Eigen::MatrixXd(n, d)};
  Eigen::VectorXd z(d);
  for (Eigen::Index p = 0; p < n; ++p) {
    for (Eigen::MatrixXd* target : {&out.first, &out.second}) {
      for (Eigen::Index i = 0; i < d; ++i) z(i) = normal(rng);
      if (chol) {
        target->row(p) = (*chol * z).transpose();
      } else {
        target->row(p) = spec.sigma * z.transpose();
      }
    }
  }
  return out;
}

DistanceMetric DistanceMetric::euclidean() { return DistanceMetric{}; }

DistanceMetric DistanceMetric::mahalanobis(const Eigen::MatrixXd& covariance) {
  if (covariance.rows() != covariance.cols() || covariance.rows() == 0)
    throw InputError("Mahalanobis covariance must be square");
  const auto diag = covariance_diagnostics(covariance);
  if (!(diag.lambda_min > 1e-14 * std::max(1.0, diag.lambda_max)))
    throw NumericalError("singular covariance for Mahalanobis distance (lambda_min = " +
                         std::to_string(diag.lambda_min) + ")");
  DistanceMetric m;
  m.factor_.emplace(covariance);
  if (m.factor_->info() != Eigen::Success)
    throw NumericalError("Cholesky factorization of the covariance failed");
  m.covariance_ = covariance;
  m.lipschitz_ = 1.0 / std::sqrt(diag.lambda_min);
  return m;
}

double DistanceMetric::operator()(const Eigen::Ref<const Eigen::VectorXd>& a,
                                  const Eigen::Ref<const Eigen::VectorXd>& b) const {
  if (a.size() != b.size()) throw InputError("distance between vectors of different length");
  const Eigen::VectorXd diff = a - b;
  if (!factor_) return diff.norm();
  // ||L^{-1} diff|| with Sigma = L L^T gives sqrt(diff^T Sigma^{-1} diff).
  return factor_->matrixL().solve(diff).norm();
}

const char* to_string(MetricKind kind) {
  return kind == MetricKind::euclidean ? "euclidean" : "mahalanobis";
}

MetricKind parse_metric_kind(const std::string& text) {
  if (text == "euclidean") return MetricKind::euclidean;
  if (text == "mahalanobis") return MetricKind::mahalanobis;
  throw InputError("unknown metric '" + text + "'");
}

DilutionReport dilution_report(const GaussianSystemSpec& spec, const DistanceMetric& metric,
                               const DilutionOptions& options) {
  spec.validate();
  if (spec.n_pairs < 1000) throw InputError("dilution report needs n_pairs >= 1000");
  const Eigen::MatrixXd sys_cov = spec.covariance_matrix();

  DilutionReport r;
  r.d = spec.d;
  r.n_pairs = spec.n_pairs;
  r.metric = metric.name();
  r.seed = spec.seed;
  r.diagnostics = covariance_diagnostics(sys_cov);

  if (spec.covariance) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(sys_cov, Eigen::EigenvaluesOnly);
    double h = 0.0;
    for (Eigen::Index i = 0; i < eig.eigenvalues().size(); ++i)
      h += 0.5 * std::log(kTwoPiE * eig.eigenvalues()(i));
    r.H_S_theory = h;
  } else {
    r.H_S_theory = spec.d * 0.5 * std::log(kTwoPiE * spec.sigma * spec.sigma);
  }
  if (!(r.H_S_theory > 0.0))
    throw InputError("system entropy is not positive; the efficiency ratio is undefined");

  const PairSamples pairs = sample_pairs(spec);
  std::vector<double> dist(static_cast<std::size_t>(spec.n_pairs));
  std::vector<double> dist2(dist.size());
  for (Eigen::Index p = 0; p < spec.n_pairs; ++p) {
    const double v = metric(pairs.first.row(p).transpose(), pairs.second.row(p).transpose());
    dist[static_cast<std::size_t>(p)] = v;
    dist2[static_cast<std::size_t>(p)] = v * v;
  }
  const Moments md = moments(dist);
  const Moments md2 = moments(dist2);
  r.mean_D = md.mean;
  r.var_D = md.var;
  r.mean_D2 = md2.mean;
  r.var_D2 = md2.var;

  // S - S' ~ N(0, 2 Sigma_S); with weighting W, D^2 is a quadratic form in
  // A = W^{-1} Sigma_S: E = 2 tr A, Var = 8 tr A^2, Var(D) ~ tr A^2 / tr A.
  Eigen::MatrixXd a = sys_cov;
  if (const auto* w = metric.weighting_covariance()) a = w->llt().solve(sys_cov);
  const double tr_a = a.trace();
  const double tr_a2 = (a * a).trace();
  r.theory_mean_D2 = 2.0 * tr_a;
  r.theory_var_D2 = 8.0 * tr_a2;
  r.theory_var_D = tr_a2 / tr_a;

  r.H_D_hat = estimators::kl_entropy(dist, options.entropy_k);
  r.eta_bar = std::max(0.0, r.H_D_hat) / r.H_S_theory;
  return r;
}

DilutionReport dilution_report(const GaussianSystemSpec& spec, MetricKind metric,
                               const DilutionOptions& options) {
  spec.validate();
  if (metric == MetricKind::euclidean) return dilution_report(spec, DistanceMetric::euclidean(), options);
  return dilution_report(spec, DistanceMetric::mahalanobis(spec.covariance_matrix()), options);
}

std::vector<DilutionReport> dilution_sweep(const std::vector<int>& dims,
                                           const GaussianSystemSpec& base, MetricKind metric,
                                           const DilutionOptions& options, unsigned threads) {
  if (dims.empty()) throw InputError("dimension list must be non-empty");
  if (!std::is_sorted(dims.begin(), dims.end()) ||
      std::adjacent_find(dims.begin(), dims.end()) != dims.end())
    throw InputError("dimension list must be strictly ascending");
  if (base.covariance) throw InputError("dimension sweeps use the i.i.d. generator only");
  std::vector<DilutionReport> out(dims.size());
  parallel_for(dims.size(), threads, [&](std::size_t i) {
    GaussianSystemSpec spec = base;
    spec.d = dims[i];
    out[i] = dilution_report(spec, metric, options);
  });
  return out;
}

}  // namespace infolab
