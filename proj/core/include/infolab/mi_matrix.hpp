#pragma once

#include "infolab/estimators.hpp"
#include "infolab/sample_matrix.hpp"

#include <Eigen/Dense>

#include <cstddef>
#include <string>

namespace infolab {

enum class DiagonalPolicy { automatic, self_entropy, zero };

const char* to_string(DiagonalPolicy policy);
DiagonalPolicy parse_diagonal_policy(const std::string& text);

// Symmetric d x d matrix of pairwise mutual informations, in nats.
struct MIMatrix {
  Eigen::MatrixXd values;
  DiagonalPolicy diagonal_policy = DiagonalPolicy::zero;
  EstimatorConfig estimator;
  std::size_t clamp_events = 0;  // negative pairwise estimates raised to 0

  std::size_t dims() const { return static_cast<std::size_t>(values.rows()); }
};

// Wraps an externally supplied matrix after checking finiteness, symmetry
// (1e-12) and that off-diagonal entries are >= -tol. Small negatives are
// clamped and counted.
MIMatrix make_mi_matrix(Eigen::MatrixXd values, DiagonalPolicy policy,
                        EstimatorConfig estimator = {}, double tol = 1e-12);

struct MIMatrixOptions {
  DiagonalPolicy diagonal = DiagonalPolicy::automatic;
  unsigned threads = 0;  // 0 = hardware concurrency
};

MIMatrix build_mi_matrix(const SampleMatrix& samples, const EstimatorConfig& cfg,
                         const MIMatrixOptions& options = {});

struct WeightTransform {
  enum class Kind { identity, exp_scale, normalize_max };
  Kind kind = Kind::identity;
  double alpha = 1.0;  // exp_scale only

  static WeightTransform identity() { return {Kind::identity, 1.0}; }
  static WeightTransform exp_scale(double alpha) { return {Kind::exp_scale, alpha}; }
  static WeightTransform normalize_max() { return {Kind::normalize_max, 1.0}; }

  std::string id() const;
};

struct WeightMatrix {
  Eigen::MatrixXd values;
  std::string transform_id;
};

// Elementwise transform of the off-diagonal MI entries; diagonal set to 0.
WeightMatrix mi_weights(const MIMatrix& m, const WeightTransform& transform);

}  // namespace infolab
