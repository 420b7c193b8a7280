#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace infolab {

// Zero-mean Gaussian system of dimension d, either i.i.d. N(0, sigma^2) per
// coordinate or N(0, covariance).
struct GaussianSystemSpec {
  int d = 1;
  double sigma = 1.0;
  std::optional<Eigen::MatrixXd> covariance;
  int n_pairs = 10000;
  std::uint64_t seed = 0;

  void validate() const;
  Eigen::MatrixXd covariance_matrix() const;
};

// Weak-correlation diagnostics of a covariance: trace per dimension and the
// extreme eigenvalues.
struct CovarianceDiagnostics {
  double trace_over_d = 0.0;
  double lambda_max = 0.0;
  double lambda_min = 0.0;
};

CovarianceDiagnostics covariance_diagnostics(const Eigen::MatrixXd& covariance);

// Row p of `first` and `second` is the p-th independent pair (S, S').
struct PairSamples {
  Eigen::MatrixXd first;
  Eigen::MatrixXd second;
};

PairSamples sample_pairs(const GaussianSystemSpec& spec);

class DistanceMetric {
 public:
  static DistanceMetric euclidean();
  // Throws NumericalError (reporting lambda_min) unless covariance is SPD.
  static DistanceMetric mahalanobis(const Eigen::MatrixXd& covariance);

  double operator()(const Eigen::Ref<const Eigen::VectorXd>& a,
                    const Eigen::Ref<const Eigen::VectorXd>& b) const;

  bool is_euclidean() const { return !factor_.has_value(); }
  std::string name() const { return is_euclidean() ? "euclidean" : "mahalanobis"; }
  // Lipschitz constant of S -> D(S, S') in the Euclidean norm.
  double lipschitz_constant() const { return lipschitz_; }
  const Eigen::MatrixXd* weighting_covariance() const {
    return covariance_ ? &*covariance_ : nullptr;
  }

 private:
  std::optional<Eigen::LLT<Eigen::MatrixXd>> factor_;
  std::optional<Eigen::MatrixXd> covariance_;
  double lipschitz_ = 1.0;
};

enum class MetricKind { euclidean, mahalanobis };
const char* to_string(MetricKind kind);
MetricKind parse_metric_kind(const std::string& text);

struct DilutionReport {
  int d = 0;
  int n_pairs = 0;
  std::string metric;
  std::uint64_t seed = 0;
  double H_S_theory = 0.0;
  double H_D_hat = 0.0;
  double eta_bar = 0.0;  // upper bound H(D) / H(S) on the efficiency
  double mean_D = 0.0;
  double mean_D2 = 0.0;
  double var_D2 = 0.0;
  double var_D = 0.0;
  double theory_mean_D2 = 0.0;
  double theory_var_D2 = 0.0;
  double theory_var_D = 0.0;
  CovarianceDiagnostics diagnostics;
};

struct DilutionOptions {
  int entropy_k = 3;
};

DilutionReport dilution_report(const GaussianSystemSpec& spec, const DistanceMetric& metric,
                               const DilutionOptions& options = {});
// Mahalanobis uses the system's own covariance.
DilutionReport dilution_report(const GaussianSystemSpec& spec, MetricKind metric,
                               const DilutionOptions& options = {});

// One report per dimension; the template's covariance must be unset.
std::vector<DilutionReport> dilution_sweep(const std::vector<int>& dims,
                                           const GaussianSystemSpec& base, MetricKind metric,
                                           const DilutionOptions& options = {},
                                           unsigned threads = 0);

}  // namespace infolab
