#pragma once

#include "infolab/estimators.hpp"
#include "infolab/mi_matrix.hpp"
#include "infolab/sample_matrix.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace infolab {

inline constexpr double kDefaultRankTolerance = 1e-10;

// Singular spectrum of an MI matrix restricted to the numerically nonzero
// modes, with the normalized weights p_i = sigma_i / sum(sigma) and the
// effective rank exp(-sum p_i ln p_i).
struct SpectralSummary {
  std::vector<double> singular_values;  // descending, all > rank_tolerance * sigma_1
  std::vector<double> weights;
  int numerical_rank = 0;
  double effective_rank = 0.0;  // 0 for the zero matrix
  double rank_tolerance = kDefaultRankTolerance;
  // Left singular vectors of the retained modes (d x numerical_rank); for
  // randomized summaries, the aligned range basis.
  Eigen::MatrixXd left_vectors;
};

// Effective rank of an arbitrary nonnegative spectrum; zeros are ignored.
double effective_rank(std::span<const double> singular_values);

SpectralSummary spectral_summary(const Eigen::MatrixXd& matrix,
                                 double rank_rel_tol = kDefaultRankTolerance);
inline SpectralSummary spectral_summary(const MIMatrix& m,
                                        double rank_rel_tol = kDefaultRankTolerance) {
  return spectral_summary(m.values, rank_rel_tol);
}

// Numerical rank: count of singular values above rel_tol * sigma_1.
int numerical_rank(const Eigen::MatrixXd& matrix, double rank_rel_tol = kDefaultRankTolerance);

struct CapacityBudget {
  double capacity = 0.0;            // nats
  std::optional<int> dimension_cap;  // optional k

  void validate() const;
};

// Largest n with sigma_1 + ... + sigma_n <= capacity, counting only positive
// singular values and never above the dimension cap.
int capacity_modes(std::span<const double> singular_values, const CapacityBudget& budget);

enum class ThetaSource { override_value, formula, fallback_default };
const char* to_string(ThetaSource source);

inline constexpr double kDefaultTheta = 0.05;

struct EmergenceVerdict {
  double complexity = 0.0;   // effective rank C(S)
  int numerical_rank = 0;    // Rank(I), reported next to the effective rank
  int capacity_modes = 0;    // C'
  double capacity = 0.0;     // budget C (nats)
  double epsilon = 0.0;
  double theta = kDefaultTheta;
  ThetaSource theta_source = ThetaSource::fallback_default;
  std::optional<double> theta_formula;  // raw formula value before clamping
  bool emerged = false;                 // complexity > capacity_modes
  std::vector<double> direction;        // u_{C'+1}; empty unless emerged
  std::optional<double> mode_singular_value;           // lambda_{C'+1}
  std::optional<double> feature_entropy_lower_bound;   // 0.5 ln(2 pi e lambda_{C'+1})
  std::optional<double> feature_entropy;               // H(f_new) estimate
  std::optional<double> system_entropy;                // sum of column entropies
  std::optional<double> mi_ratio;                      // H(f_new) / H(S)
  std::optional<bool> threshold_met;                   // mi_ratio > theta
};

struct EmergenceOptions {
  double epsilon = 0.01;
  std::optional<double> theta_override;
  double rank_rel_tol = kDefaultRankTolerance;
  EstimatorConfig entropy_estimator;  // per-column and f_new entropies
};

// Checks C(S) > C' and, when it holds, builds f_new = u_{C'+1}^T S over the
// samples and compares its information ratio against the threshold.
EmergenceVerdict emergence_check(const SampleMatrix& samples, const MIMatrix& m,
                                 const CapacityBudget& budget,
                                 const EmergenceOptions& options = {});

// Range-finder approximation of the spectrum from l random probes.
SpectralSummary randomized_effective_rank(const Eigen::MatrixXd& matrix, int probes,
                                          std::uint64_t seed,
                                          double rank_rel_tol = kDefaultRankTolerance);
inline SpectralSummary randomized_effective_rank(const MIMatrix& m, int probes,
                                                 std::uint64_t seed,
                                                 double rank_rel_tol = kDefaultRankTolerance) {
  return randomized_effective_rank(m.values, probes, seed, rank_rel_tol);
}

}  // namespace infolab
