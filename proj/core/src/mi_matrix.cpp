#include "infolab/mi_matrix.hpp"

#include "infolab/error.hpp"
#include "infolab/parallel.hpp"

#include <cmath>
#include <cstdio>
#include <vector>

namespace infolab {

const char* to_string(DiagonalPolicy policy) {
  switch (policy) {
    case DiagonalPolicy::automatic: return "auto";
    case DiagonalPolicy::self_entropy: return "self_entropy";
    case DiagonalPolicy::zero: return "zero";
  }
  return "unknown";
}

DiagonalPolicy parse_diagonal_policy(const std::string& text) {
  if (text == "auto" || text == "automatic") return DiagonalPolicy::automatic;
  if (text == "self_entropy" || text == "entropy") return DiagonalPolicy::self_entropy;
  if (text == "zero") return DiagonalPolicy::zero;
  throw InputError("unknown diagonal policy '" + text + "'");
}

MIMatrix make_mi_matrix(Eigen::MatrixXd values, DiagonalPolicy policy,
                        EstimatorConfig estimator, double tol) {
  if (values.rows() != values.cols()) throw InputError("MI matrix must be square");
  if (values.rows() < 1) throw InputError("MI matrix must be non-empty");
  if (!values.allFinite()) throw InputError("MI matrix contains non-finite entries");
  MIMatrix m;
  m.diagonal_policy = policy == DiagonalPolicy::automatic ? DiagonalPolicy::zero : policy;
  m.estimator = estimator;
  const Eigen::Index d = values.rows();
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = i + 1; j < d; ++j) {
      if (std::abs(values(i, j) - values(j, i)) > 1e-12)
        throw InputError("MI matrix is not symmetric");
      for (double* v : {&values(i, j), &values(j, i)}) {
        if (*v < -tol) throw InputError("MI matrix has a negative off-diagonal entry");
        if (*v < 0.0) {
          *v = 0.0;
          ++m.clamp_events;
        }
      }
    }
  }
  m.values = std::move(values);
  return m;
}

MIMatrix build_mi_matrix(const SampleMatrix& samples, const EstimatorConfig& cfg,
                         const MIMatrixOptions& options) {
  cfg.validate(samples.samples());
  DiagonalPolicy policy = options.diagonal;
  if (policy == DiagonalPolicy::automatic)
    policy = samples.all_discrete() ? DiagonalPolicy::self_entropy : DiagonalPolicy::zero;
  if (policy == DiagonalPolicy::self_entropy && !samples.all_discrete())
    throw InputError("self-MI undefined for continuous columns");

  const std::size_t d = samples.dims();
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  pairs.reserve(d * (d - 1) / 2);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j) pairs.emplace_back(i, j);

  std::vector<MIEstimate> estimates(pairs.size());
  parallel_for(pairs.size(), options.threads, [&](std::size_t p) {
    const auto [i, j] = pairs[p];
    estimates[p] = estimate_mi_checked(samples.column(i), samples.kind(i),
                                       samples.column(j), samples.kind(j), cfg);
  });

  MIMatrix m;
  m.values = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  m.diagonal_policy = policy;
  m.estimator = cfg;
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    const auto [i, j] = pairs[p];
    const auto ii = static_cast<Eigen::Index>(i), jj = static_cast<Eigen::Index>(j);
    m.values(ii, jj) = m.values(jj, ii) = estimates[p].value;
    if (estimates[p].clamped) ++m.clamp_events;
  }
  if (policy == DiagonalPolicy::self_entropy) {
    std::vector<double> diag(d);
    parallel_for(d, options.threads, [&](std::size_t i) {
      diag[i] = estimate_entropy(samples.column(i), samples.kind(i), cfg);
    });
    for (std::size_t i = 0; i < d; ++i)
      m.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = diag[i];
  }
  return m;
}

std::string WeightTransform::id() const {
  switch (kind) {
    case Kind::identity: return "identity";
    case Kind::normalize_max: return "normalize_max";
    case Kind::exp_scale: {
      char buf[64];
      std::snprintf(buf, sizeof buf, "exp_scale(%.12g)", alpha);
      return buf;
    }
  }
  return "unknown";
}

WeightMatrix mi_weights(const MIMatrix& m, const WeightTransform& transform) {
  const Eigen::Index d = m.values.rows();
  WeightMatrix w{Eigen::MatrixXd::Zero(d, d), transform.id()};
  double max_off = 0.0;
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j)
      if (i != j) max_off = std::max(max_off, m.values(i, j));
  if (transform.kind == WeightTransform::Kind::normalize_max && !(max_off > 0.0))
    throw InputError("no dependence structure");
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) {
      if (i == j) continue;
      const double v = m.values(i, j);
      switch (transform.kind) {
        case WeightTransform::Kind::identity: w.values(i, j) = v; break;
        case WeightTransform::Kind::exp_scale: w.values(i, j) = std::exp(transform.alpha * v); break;
        case WeightTransform::Kind::normalize_max: w.values(i, j) = v / max_off; break;
      }
    }
  }
  return w;
}

}  // namespace infolab
