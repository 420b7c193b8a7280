#include "infolab/spectral.hpp"

#include "infolab/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace infolab {

namespace {

// Flips each column so its largest-magnitude entry is positive, making
// singular vectors reproducible across SVD backends.
void canonicalize_signs(Eigen::MatrixXd& vectors) {
  for (Eigen::Index c = 0; c < vectors.cols(); ++c) {
    Eigen::Index arg = 0;
    vectors.col(c).cwiseAbs().maxCoeff(&arg);
    if (vectors(arg, c) < 0.0) vectors.col(c) *= -1.0;
  }
}

SpectralSummary summarize(const Eigen::VectorXd& sigma, const Eigen::MatrixXd& vectors,
                          double rank_rel_tol) {
  SpectralSummary s;
  s.rank_tolerance = rank_rel_tol;
  if (sigma.size() == 0 || !(sigma(0) > 0.0)) return s;
  const double cutoff = rank_rel_tol * sigma(0);
  for (Eigen::Index i = 0; i < sigma.size(); ++i) {
    if (sigma(i) > cutoff) s.singular_values.push_back(sigma(i));
  }
  s.numerical_rank = static_cast<int>(s.singular_values.size());
  double total = 0.0;
  for (double v : s.singular_values) total += v;
  for (double v : s.singular_values) s.weights.push_back(v / total);
  s.effective_rank = effective_rank(s.singular_values);
  if (vectors.size() > 0) {
    s.left_vectors = vectors.leftCols(s.numerical_rank);
    canonicalize_signs(s.left_vectors);
  }
  return s;
}

}  // namespace

double effective_rank(std::span<const double> singular_values) {
  double total = 0.0;
  for (double v : singular_values) {
    if (v < 0.0) throw InputError("singular values must be nonnegative");
    total += v;
  }
  if (!(total > 0.0)) return 0.0;
  double h = 0.0;
  for (double v : singular_values) {
    if (v > 0.0) {
      const double p = v / total;
      h -= p * std::log(p);
    }
  }
  return std::exp(h);
}

SpectralSummary spectral_summary(const Eigen::MatrixXd& matrix, double rank_rel_tol) {
  if (matrix.rows() != matrix.cols() || matrix.rows() == 0)
    throw InputError("spectral summary needs a non-empty square matrix");
  if (!matrix.allFinite()) throw InputError("matrix contains non-finite entries");
  if (!(rank_rel_tol >= 0.0)) throw InputError("rank tolerance must be nonnegative");
  Eigen::BDCSVD<Eigen::MatrixXd> svd(matrix, Eigen::ComputeThinU);
  return summarize(svd.singularValues(), svd.matrixU(), rank_rel_tol);
}

int numerical_rank(const Eigen::MatrixXd& matrix, double rank_rel_tol) {
  if (matrix.size() == 0) return 0;
  Eigen::BDCSVD<Eigen::MatrixXd> svd(matrix);
  const auto& sigma = svd.singularValues();
  if (!(sigma(0) > 0.0)) return 0;
  const double cutoff = rank_rel_tol * sigma(0);
  return static_cast<int>((sigma.array() > cutoff).count());
}

void CapacityBudget::validate() const {
  if (!(capacity >= 0.0) || !std::isfinite(capacity))
    throw InputError("capacity must be a finite nonnegative number");
  if (dimension_cap && *dimension_cap < 0) throw InputError("dimension cap must be >= 0");
}

int capacity_modes(std::span<const double> singular_values, const CapacityBudget& budget) {
  budget.validate();
  double prefix = 0.0;
  int modes = 0;
  for (double s : singular_values) {
    if (!(s > 0.0)) break;
    prefix += s;
    if (prefix > budget.capacity) break;
    ++modes;
  }
  if (budget.dimension_cap) modes = std::min(modes, *budget.dimension_cap);
  return modes;
}

const char* to_string(ThetaSource source) {
  switch (source) {
    case ThetaSource::override_value: return "override";
    case ThetaSource::formula: return "formula";
    case ThetaSource::fallback_default: return "fallback_default";
  }
  return "unknown";
}

EmergenceVerdict emergence_check(const SampleMatrix& samples, const MIMatrix& m,
                                 const CapacityBudget& budget,
                                 const EmergenceOptions& options) {
  if (!(options.epsilon > 0.0)) throw InputError("epsilon must be > 0");
  if (m.dims() != samples.dims()) throw InputError("MI matrix does not match the sample matrix");
  if (options.theta_override && !(*options.theta_override > 0.0 && *options.theta_override < 1.0))
    throw InputError("theta must lie in (0, 1)");

  const SpectralSummary summary = spectral_summary(m.values, options.rank_rel_tol);
  EmergenceVerdict v;
  v.complexity = summary.effective_rank;
  v.numerical_rank = summary.numerical_rank;
  v.capacity_modes = capacity_modes(summary.singular_values, budget);
  v.capacity = budget.capacity;
  v.epsilon = options.epsilon;
  v.emerged = v.complexity > static_cast<double>(v.capacity_modes);

  const auto mode = static_cast<std::size_t>(v.capacity_modes);
  const bool mode_exists = summary.singular_values.size() > mode;

  const std::size_t d = samples.dims();
  std::vector<double> column_entropy(d);
  double system_entropy = 0.0;
  for (std::size_t j = 0; j < d; ++j) {
    column_entropy[j] = estimate_entropy(samples.column(j), samples.kind(j), options.entropy_estimator);
    system_entropy += column_entropy[j];
  }
  v.system_entropy = system_entropy;

  if (mode_exists) {
    const double lambda = summary.singular_values[mode];
    v.mode_singular_value = lambda;
    v.feature_entropy_lower_bound = 0.5 * std::log(2.0 * std::numbers::pi * std::numbers::e * lambda);
    const double h1 = column_entropy[0];
    if (h1 > 0.0) {
      v.theta_formula = std::log(2.0 * std::numbers::pi * std::numbers::e * lambda) /
                            (2.0 * static_cast<double>(d) * h1) -
                        options.epsilon;
    }
  }
  if (options.theta_override) {
    v.theta = *options.theta_override;
    v.theta_source = ThetaSource::override_value;
  } else if (v.theta_formula && *v.theta_formula > 0.0 && *v.theta_formula < 1.0) {
    v.theta = *v.theta_formula;
    v.theta_source = ThetaSource::formula;
  } else {
    v.theta = kDefaultTheta;
    v.theta_source = ThetaSource::fallback_default;
  }

  if (!v.emerged) return v;
  if (!mode_exists) throw NumericalError("spectral gap exhausted");

  const Eigen::VectorXd u = summary.left_vectors.col(static_cast<Eigen::Index>(mode)).normalized();
  v.direction.assign(u.data(), u.data() + u.size());
  Eigen::VectorXd feature = samples.data() * u;

  double h_feature = 0.0;
  if (samples.all_discrete()) {
    // f_new takes finitely many values; snap away last-bit noise so equal
    // combinations of levels are counted as one value.
    const double scale = std::max(1.0, feature.cwiseAbs().maxCoeff());
    for (Eigen::Index i = 0; i < feature.size(); ++i)
      feature(i) = std::round(feature(i) / scale * 1e9) / 1e9 * scale;
    h_feature = estimators::plugin_entropy({feature.data(), static_cast<std::size_t>(feature.size())});
  } else {
    EstimatorConfig cfg = options.entropy_estimator;
    if (cfg.method == EstimatorMethod::automatic || cfg.method == EstimatorMethod::discrete_plugin)
      cfg.method = EstimatorMethod::knn;
    h_feature = estimate_entropy({feature.data(), static_cast<std::size_t>(feature.size())},
                                 ColumnKind::continuous, cfg);
  }
  v.feature_entropy = h_feature;
  if (system_entropy > 0.0) {
    v.mi_ratio = h_feature / system_entropy;
    v.threshold_met = *v.mi_ratio > v.theta;
  }
  return v;
}

SpectralSummary randomized_effective_rank(const Eigen::MatrixXd& matrix, int probes,
                                          std::uint64_t seed, double rank_rel_tol) {
  if (matrix.rows() != matrix.cols() || matrix.rows() == 0)
    throw InputError("randomized rank needs a non-empty square matrix");
  const Eigen::Index d = matrix.rows();
  if (probes < 1 || probes > d) throw InputError("probe count l must satisfy 1 <= l <= d");
  const Eigen::Index l = probes;

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::MatrixXd omega(d, l);
  for (Eigen::Index c = 0; c < l; ++c)
    for (Eigen::Index r = 0; r < d; ++r) omega(r, c) = normal(rng);

  const Eigen::MatrixXd sketch = matrix * omega;
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(sketch);
  Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(d, l);

  // Rotate the range basis onto the singular directions of Q^T A so that the
  // row norms of Q^T A are the singular value estimates.
  Eigen::JacobiSVD<Eigen::MatrixXd> small(q.transpose() * matrix, Eigen::ComputeThinU);
  q = q * small.matrixU();
  const Eigen::MatrixXd projected = q.transpose() * matrix;

  std::vector<std::pair<double, Eigen::Index>> norms;
  for (Eigen::Index i = 0; i < l; ++i) norms.emplace_back(projected.row(i).norm(), i);
  std::stable_sort(norms.begin(), norms.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });
  Eigen::VectorXd sigma(l);
  Eigen::MatrixXd basis(d, l);
  for (Eigen::Index i = 0; i < l; ++i) {
    sigma(i) = norms[static_cast<std::size_t>(i)].first;
    basis.col(i) = q.col(norms[static_cast<std::size_t>(i)].second);
  }
  return summarize(sigma, basis, rank_rel_tol);
}

}  // namespace infolab
