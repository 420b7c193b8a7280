#pragma once

#include "infolab/sample_matrix.hpp"

#include <cstddef>
#include <span>
#include <string>

namespace infolab {

enum class EstimatorMethod {
  automatic,             // discrete_plugin for discrete columns, knn otherwise
  histogram,
  knn,                   // Kozachenko-Leonenko entropy / KSG mutual information
  gaussian_closed_form,
  discrete_plugin,
};

enum class LogBase { nats, bits };

const char* to_string(EstimatorMethod method);
EstimatorMethod parse_estimator_method(const std::string& text);

struct EstimatorConfig {
  EstimatorMethod method = EstimatorMethod::automatic;
  int bins = 0;  // 0 selects ceil(n^(1/3)) capped at 64
  int k = 3;
  // Every estimate is computed in nats; this only affects formatted output.
  LogBase log_base = LogBase::nats;

  // Throws InputError when the parameters are unusable for n samples.
  void validate(std::size_t n) const;
};

// Resolves `automatic` for a column (pair) of the given kinds.
EstimatorMethod resolve_method(EstimatorMethod method, ColumnKind a, ColumnKind b);

int default_histogram_bins(std::size_t n);

// Entropy of one column in nats: Shannon for discrete columns, differential
// for continuous ones.
double estimate_entropy(std::span<const double> column, ColumnKind kind,
                        const EstimatorConfig& cfg);

// Raw estimate (may be slightly negative for knn). Symmetric in (x, y).
double estimate_mi_raw(std::span<const double> x, ColumnKind kx,
                       std::span<const double> y, ColumnKind ky,
                       const EstimatorConfig& cfg);

struct MIEstimate {
  double value = 0.0;  // clamped at 0
  bool clamped = false;
};

MIEstimate estimate_mi_checked(std::span<const double> x, ColumnKind kx,
                               std::span<const double> y, ColumnKind ky,
                               const EstimatorConfig& cfg);

// Nonnegative mutual information in nats.
inline double estimate_mi(std::span<const double> x, ColumnKind kx,
                          std::span<const double> y, ColumnKind ky,
                          const EstimatorConfig& cfg) {
  return estimate_mi_checked(x, kx, y, ky, cfg).value;
}

// Building blocks exposed for reuse and testing.
namespace estimators {

double plugin_entropy(std::span<const double> column);
double plugin_mi(std::span<const double> x, std::span<const double> y);
double histogram_entropy(std::span<const double> column, int bins);
double histogram_mi(std::span<const double> x, std::span<const double> y, int bins);
double kl_entropy(std::span<const double> column, int k);
double ksg_mi(std::span<const double> x, std::span<const double> y, int k);
double gaussian_entropy(std::span<const double> column);
double gaussian_mi(std::span<const double> x, std::span<const double> y);
double sample_variance(std::span<const double> column);

}  // namespace estimators

}  // namespace infolab
