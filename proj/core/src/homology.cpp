#include "infolab/homology.hpp"

#include "infolab/error.hpp"
#include "infolab/parallel.hpp"

#include <algorithm>
#include <map>

namespace infolab {

Eigen::MatrixXd threshold_matrix(const Eigen::MatrixXd& m, double eps) {
  if (!(eps >= 0.0)) throw InputError("threshold must be >= 0");
  return (m.array() < eps).select(0.0, m);
}

std::vector<double> filtration_grid(const Eigen::MatrixXd& m, double delta) {
  std::vector<double> grid{0.0};
  double max_entry = 0.0;
  for (Eigen::Index i = 0; i < m.size(); ++i) {
    const double v = m.data()[i];
    if (v > 0.0) grid.push_back(v);
    max_entry = std::max(max_entry, v);
  }
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  grid.push_back(max_entry + delta);
  return grid;
}

PersistenceBarcode rank_filtration(const Eigen::MatrixXd& m, const FiltrationOptions& options) {
  if (m.rows() != m.cols() || m.rows() == 0) throw InputError("filtration needs a non-empty square matrix");
  if (!m.allFinite()) throw InputError("matrix contains non-finite entries");
  const double max_entry = std::max(0.0, m.maxCoeff());
  const double delta = options.delta > 0.0 ? options.delta : 1e-6 * std::max(1.0, max_entry);

  PersistenceBarcode bc;
  bc.rank_tolerance = options.rank_rel_tol;
  bc.delta = delta;
  bc.epsilon_grid = filtration_grid(m, delta);
  bc.grid_ranks.resize(bc.epsilon_grid.size());
  parallel_for(bc.epsilon_grid.size(), options.threads, [&](std::size_t g) {
    bc.grid_ranks[g] = numerical_rank(threshold_matrix(m, bc.epsilon_grid[g]), options.rank_rel_tol);
  });

  std::map<int, std::pair<std::size_t, std::size_t>, std::greater<>> span;  // level -> first, last
  std::map<int, std::size_t> hits;
  for (std::size_t g = 0; g < bc.grid_ranks.size(); ++g) {
    const int r = bc.grid_ranks[g];
    auto [it, inserted] = span.try_emplace(r, g, g);
    if (!inserted) it->second.second = g;
    ++hits[r];
  }
  for (const auto& [level, range] : span) {
    const std::size_t covered = range.second - range.first + 1;
    bc.intervals.push_back({level, bc.epsilon_grid[range.first], bc.epsilon_grid[range.second],
                            covered == hits[level]});
  }
  return bc;
}

int persistent_mode_count(const PersistenceBarcode& barcode, double min_persistence) {
  if (!(min_persistence >= 0.0)) throw InputError("min_persistence must be >= 0");
  int count = 0;
  for (const auto& iv : barcode.intervals)
    if (iv.level > 0 && iv.length() >= min_persistence) ++count;
  return count;
}

}  // namespace infolab
