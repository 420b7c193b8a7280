#pragma once

#include "infolab/mi_matrix.hpp"
#include "infolab/spectral.hpp"

#include <Eigen/Dense>

#include <vector>

namespace infolab {

// Entries strictly below eps are zeroed; entries equal to eps survive.
Eigen::MatrixXd threshold_matrix(const Eigen::MatrixXd& m, double eps);

struct PersistenceInterval {
  int level = 0;       // numerical rank
  double birth = 0.0;  // smallest grid threshold attaining the level
  double death = 0.0;  // largest grid threshold attaining the level
  bool contiguous = true;

  double length() const { return death - birth; }
};

struct PersistenceBarcode {
  std::vector<PersistenceInterval> intervals;  // sorted by level, descending
  std::vector<double> epsilon_grid;            // ascending
  std::vector<int> grid_ranks;                 // rank at each grid point
  double rank_tolerance = kDefaultRankTolerance;
  double delta = 0.0;                          // offset of the last grid point
};

struct FiltrationOptions {
  double rank_rel_tol = kDefaultRankTolerance;
  // Last grid point is max entry + delta; 0 picks 1e-6 * max(1, max entry).
  double delta = 0.0;
  unsigned threads = 1;
};

// Grid {0} U {distinct positive entries} U {max + delta}. The rank of the
// thresholded matrix is constant between consecutive entries, so the grid
// characterizes the whole filtration.
std::vector<double> filtration_grid(const Eigen::MatrixXd& m, double delta);

PersistenceBarcode rank_filtration(const Eigen::MatrixXd& m, const FiltrationOptions& options = {});
inline PersistenceBarcode rank_filtration(const MIMatrix& m, const FiltrationOptions& options = {}) {
  return rank_filtration(m.values, options);
}

// Nonzero rank levels whose interval length is at least min_persistence.
int persistent_mode_count(const PersistenceBarcode& barcode, double min_persistence);

}  // namespace infolab
