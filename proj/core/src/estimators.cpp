#include "infolab/estimators.hpp"

#include "infolab/error.hpp"

#include <boost/math/special_functions/digamma.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <queue>
#include <utility>
#include <vector>

namespace infolab {

namespace {

double digamma(double x) { return boost::math::digamma(x); }

void require_finite(std::span<const double> column) {
  for (double v : column)
    if (!std::isfinite(v)) throw InputError("column contains non-finite entries");
}

// Sums terms in sorted order so the total does not depend on the order in
// which cells were enumerated.
double ordered_sum(std::vector<double>& terms) {
  std::sort(terms.begin(), terms.end());
  double total = 0.0;
  for (double t : terms) total += t;
  return total;
}

std::vector<double> sorted_copy(std::span<const double> column) {
  std::vector<double> v(column.begin(), column.end());
  std::sort(v.begin(), v.end());
  return v;
}

void require_spread(std::span<const double> column) {
  const auto [lo, hi] = std::minmax_element(column.begin(), column.end());
  if (*lo == *hi) throw InputError("degenerate variance");
}

std::vector<double> bin_indices(std::span<const double> column, int bins) {
  const auto [lo_it, hi_it] = std::minmax_element(column.begin(), column.end());
  const double lo = *lo_it;
  const double width = (*hi_it - lo) / bins;
  std::vector<double> idx(column.size());
  for (std::size_t i = 0; i < column.size(); ++i) {
    int b = static_cast<int>(std::floor((column[i] - lo) / width));
    idx[i] = static_cast<double>(std::clamp(b, 0, bins - 1));
  }
  return idx;
}

void check_method_kind(EstimatorMethod method, ColumnKind kind) {
  const bool discrete_method = method == EstimatorMethod::discrete_plugin;
  if (discrete_method != (kind == ColumnKind::discrete)) {
    throw InputError(std::string("estimator '") + to_string(method) +
                     "' is incompatible with a " + to_string(kind) + " column");
  }
}

}  // namespace

const char* to_string(EstimatorMethod method) {
  switch (method) {
    case EstimatorMethod::automatic: return "auto";
    case EstimatorMethod::histogram: return "histogram";
    case EstimatorMethod::knn: return "knn";
    case EstimatorMethod::gaussian_closed_form: return "gaussian_closed_form";
    case EstimatorMethod::discrete_plugin: return "discrete_plugin";
  }
  return "unknown";
}

EstimatorMethod parse_estimator_method(const std::string& text) {
  if (text == "auto" || text == "automatic") return EstimatorMethod::automatic;
  if (text == "histogram") return EstimatorMethod::histogram;
  if (text == "knn" || text == "ksg") return EstimatorMethod::knn;
  if (text == "gaussian" || text == "gaussian_closed_form") return EstimatorMethod::gaussian_closed_form;
  if (text == "plugin" || text == "discrete_plugin") return EstimatorMethod::discrete_plugin;
  throw InputError("unknown estimator method '" + text + "'");
}

void EstimatorConfig::validate(std::size_t n) const {
  if (method == EstimatorMethod::histogram && bins != 0 && bins < 2)
    throw InputError("histogram estimator needs bins >= 2");
  if (method == EstimatorMethod::knn || method == EstimatorMethod::automatic) {
    if (k < 1) throw InputError("knn estimator needs k >= 1");
    if (method == EstimatorMethod::knn && static_cast<std::size_t>(k) + 1 > n)
      throw InputError("knn estimator needs n >= k + 1 samples");
  }
}

EstimatorMethod resolve_method(EstimatorMethod method, ColumnKind a, ColumnKind b) {
  if (method != EstimatorMethod::automatic) return method;
  if (a == ColumnKind::discrete && b == ColumnKind::discrete) return EstimatorMethod::discrete_plugin;
  if (a == ColumnKind::continuous && b == ColumnKind::continuous) return EstimatorMethod::knn;
  throw InputError("mixed discrete/continuous column pairs are not supported");
}

int default_histogram_bins(std::size_t n) {
  const int b = static_cast<int>(std::ceil(std::cbrt(static_cast<double>(n))));
  return std::clamp(b, 2, 64);
}

namespace estimators {

double plugin_entropy(std::span<const double> column) {
  const auto v = sorted_copy(column);
  const double n = static_cast<double>(v.size());
  std::vector<double> terms;
  for (std::size_t i = 0; i < v.size();) {
    std::size_t j = i;
    while (j < v.size() && v[j] == v[i]) ++j;
    const double p = static_cast<double>(j - i) / n;
    terms.push_back(-p * std::log(p));
    i = j;
  }
  return std::max(0.0, ordered_sum(terms));
}

double plugin_mi(std::span<const double> x, std::span<const double> y) {
  const std::size_t n = x.size();
  std::vector<std::pair<double, double>> joint(n);
  for (std::size_t i = 0; i < n; ++i) joint[i] = {x[i], y[i]};
  std::sort(joint.begin(), joint.end());
  const auto xs = sorted_copy(x);
  const auto ys = sorted_copy(y);
  auto count_of = [](const std::vector<double>& sorted, double value) {
    const auto range = std::equal_range(sorted.begin(), sorted.end(), value);
    return static_cast<double>(range.second - range.first);
  };
  const double nd = static_cast<double>(n);
  std::vector<double> terms;
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j < n && joint[j] == joint[i]) ++j;
    const double c = static_cast<double>(j - i);
    const double cx = count_of(xs, joint[i].first);
    const double cy = count_of(ys, joint[i].second);
    terms.push_back(c / nd * std::log((c * nd) / (cx * cy)));
    i = j;
  }
  return ordered_sum(terms);
}

double histogram_entropy(std::span<const double> column, int bins) {
  require_spread(column);
  const auto [lo, hi] = std::minmax_element(column.begin(), column.end());
  const double width = (*hi - *lo) / bins;
  return plugin_entropy(bin_indices(column, bins)) + std::log(width);
}

double histogram_mi(std::span<const double> x, std::span<const double> y, int bins) {
  require_spread(x);
  require_spread(y);
  const auto bx = bin_indices(x, bins);
  const auto by = bin_indices(y, bins);
  return plugin_mi(bx, by);
}

double kl_entropy(std::span<const double> column, int k) {
  require_spread(column);
  const auto v = sorted_copy(column);
  const std::size_t n = v.size();
  if (static_cast<std::size_t>(k) + 1 > n) throw InputError("knn estimator needs n >= k + 1 samples");
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    // Walk outward from i; the m-th step picks the m-th nearest neighbor.
    std::size_t left = i, right = i;
    int taken = 0;
    double radius = 0.0;
    while (taken < k || radius == 0.0) {
      const bool has_left = left > 0;
      const bool has_right = right + 1 < n;
      if (!has_left && !has_right) break;
      const double dl = has_left ? v[i] - v[left - 1] : INFINITY;
      const double dr = has_right ? v[right + 1] - v[i] : INFINITY;
      if (dl <= dr) {
        --left;
        radius = dl;
      } else {
        ++right;
        radius = dr;
      }
      ++taken;
    }
    // Tied samples would give a zero radius; the neighbor order is raised
    // until the radius is positive and the matching digamma term used.
    acc += std::log(radius) - digamma(taken);
  }
  const double nd = static_cast<double>(n);
  return digamma(nd) + std::numbers::ln2 + acc / nd;
}

double ksg_mi(std::span<const double> x, std::span<const double> y, int k) {
  const std::size_t n = x.size();
  if (static_cast<std::size_t>(k) + 1 > n) throw InputError("knn estimator needs n >= k + 1 samples");
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return x[a] < x[b] || (x[a] == x[b] && a < b);
  });
  std::vector<std::size_t> rank(n);
  for (std::size_t r = 0; r < n; ++r) rank[order[r]] = r;
  const auto xs = sorted_copy(x);
  const auto ys = sorted_copy(y);

  // Number of entries strictly within eps of center (excluding one self hit).
  auto marginal_count = [](const std::vector<double>& sorted, double center, double eps) -> double {
    if (eps <= 0.0) return 0.0;
    const auto lo = std::partition_point(sorted.begin(), sorted.end(), [&](double v) {
      return v < center && !(center - v < eps);
    });
    const auto hi = std::partition_point(lo, sorted.end(), [&](double v) {
      return v <= center || v - center < eps;
    });
    return static_cast<double>(hi - lo) - 1.0;
  };

  double acc = 0.0;
  std::priority_queue<double> best;
  for (std::size_t i = 0; i < n; ++i) {
    best = {};
    const std::size_t r = rank[i];
    auto consider = [&](std::size_t j) {
      const double dist = std::max(std::abs(x[j] - x[i]), std::abs(y[j] - y[i]));
      if (best.size() < static_cast<std::size_t>(k)) {
        best.push(dist);
      } else if (dist < best.top()) {
        best.pop();
        best.push(dist);
      }
    };
    auto full_and_beyond = [&](double dx) {
      return best.size() == static_cast<std::size_t>(k) && dx >= best.top();
    };
    std::size_t lo = r, hi = r;
    bool left_open = true, right_open = true;
    while (left_open || right_open) {
      if (left_open) {
        if (lo == 0) {
          left_open = false;
        } else {
          const std::size_t j = order[lo - 1];
          if (full_and_beyond(x[i] - x[j])) {
            left_open = false;
          } else {
            consider(j);
            --lo;
          }
        }
      }
      if (right_open) {
        if (hi + 1 >= n) {
          right_open = false;
        } else {
          const std::size_t j = order[hi + 1];
          if (full_and_beyond(x[j] - x[i])) {
            right_open = false;
          } else {
            consider(j);
            ++hi;
          }
        }
      }
    }
    const double eps = best.top();
    const double nx = marginal_count(xs, x[i], eps);
    const double ny = marginal_count(ys, y[i], eps);
    acc += digamma(nx + 1.0) + digamma(ny + 1.0);
  }
  const double nd = static_cast<double>(n);
  return digamma(static_cast<double>(k)) + digamma(nd) - acc / nd;
}

double sample_variance(std::span<const double> column) {
  const double n = static_cast<double>(column.size());
  const double mean = std::accumulate(column.begin(), column.end(), 0.0) / n;
  double ss = 0.0;
  for (double v : column) ss += (v - mean) * (v - mean);
  return ss / (n - 1.0);
}

double gaussian_entropy(std::span<const double> column) {
  const double var = sample_variance(column);
  if (!(var > 0.0)) throw InputError("degenerate variance");
  return 0.5 * std::log(2.0 * std::numbers::pi * std::numbers::e * var);
}

double gaussian_mi(std::span<const double> x, std::span<const double> y) {
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxx = 0.0, syy = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx, dy = y[i] - my;
    sxx += dx * dx;
    syy += dy * dy;
    sxy += dx * dy;
  }
  if (!(sxx > 0.0) || !(syy > 0.0)) throw InputError("degenerate variance");
  const double rho2 = (sxy * sxy) / (sxx * syy);
  if (rho2 >= 1.0) throw NumericalError("perfectly correlated columns have infinite Gaussian MI");
  return -0.5 * std::log1p(-rho2);
}

}  // namespace estimators

double estimate_entropy(std::span<const double> column, ColumnKind kind,
                        const EstimatorConfig& cfg) {
  if (column.size() < 2) throw InputError("entropy estimation needs at least 2 samples");
  require_finite(column);
  const EstimatorMethod method = resolve_method(cfg.method, kind, kind);
  check_method_kind(method, kind);
  cfg.validate(column.size());
  switch (method) {
    case EstimatorMethod::discrete_plugin:
      return estimators::plugin_entropy(column);
    case EstimatorMethod::histogram:
      return estimators::histogram_entropy(
          column, cfg.bins == 0 ? default_histogram_bins(column.size()) : cfg.bins);
    case EstimatorMethod::knn:
      return estimators::kl_entropy(column, cfg.k);
    case EstimatorMethod::gaussian_closed_form:
      return estimators::gaussian_entropy(column);
    case EstimatorMethod::automatic:
      break;
  }
  throw InputError("unknown estimator method");
}

double estimate_mi_raw(std::span<const double> x, ColumnKind kx,
                       std::span<const double> y, ColumnKind ky,
                       const EstimatorConfig& cfg) {
  if (x.size() != y.size()) throw InputError("column length mismatch");
  if (x.size() < 2) throw InputError("MI estimation needs at least 2 samples");
  require_finite(x);
  require_finite(y);
  const EstimatorMethod method = resolve_method(cfg.method, kx, ky);
  check_method_kind(method, kx);
  check_method_kind(method, ky);
  if (method == EstimatorMethod::knn && static_cast<std::size_t>(cfg.k) + 1 > x.size())
    throw InputError("knn estimator needs n >= k + 1 samples");
  cfg.validate(x.size());
  switch (method) {
    case EstimatorMethod::discrete_plugin:
      return estimators::plugin_mi(x, y);
    case EstimatorMethod::histogram:
      return estimators::histogram_mi(
          x, y, cfg.bins == 0 ? default_histogram_bins(x.size()) : cfg.bins);
    case EstimatorMethod::knn:
      return estimators::ksg_mi(x, y, cfg.k);
    case EstimatorMethod::gaussian_closed_form:
      return estimators::gaussian_mi(x, y);
    case EstimatorMethod::automatic:
      break;
  }
  throw InputError("unknown estimator method");
}

MIEstimate estimate_mi_checked(std::span<const double> x, ColumnKind kx,
                               std::span<const double> y, ColumnKind ky,
                               const EstimatorConfig& cfg) {
  const double raw = estimate_mi_raw(x, kx, y, ky, cfg);
  if (raw < 0.0) return {0.0, true};
  return {raw, false};
}

}  // namespace infolab
