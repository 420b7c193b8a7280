#include "infolab/homology.hpp"

#include <doctest.h>

#include <random>

using namespace infolab;

namespace {

Eigen::MatrixXd m2(double a, double b, double c) {
  Eigen::MatrixXd m(2, 2);
  m << a, b, b, c;
  return m;
}

}  // namespace

TEST_CASE("thresholding") {
  const Eigen::MatrixXd m = m2(0.5, 0.5, 0.5);
  CHECK(threshold_matrix(m, 0.0) == m);
  CHECK(threshold_matrix(m, 0.5) == m);
  CHECK(threshold_matrix(m, 0.51).isZero(0.0));
  const Eigen::MatrixXd mixed = m2(2.0, 1.0, 0.5);
  const Eigen::MatrixXd once = threshold_matrix(mixed, 0.7);
  CHECK(once(1, 1) == 0.0);
  CHECK(once(0, 1) == 1.0);
  CHECK(threshold_matrix(once, 0.7) == once);
  CHECK(once == once.transpose());
}

TEST_CASE("barcode of diag(0.5, 0.5, 0.5)") {
  const PersistenceBarcode bc = rank_filtration(Eigen::MatrixXd::Identity(3, 3) * 0.5);
  REQUIRE(bc.intervals.size() == 2);
  CHECK(bc.intervals[0].level == 3);
  CHECK(bc.intervals[0].birth == 0.0);
  CHECK(bc.intervals[0].death == 0.5);
  CHECK(bc.intervals[1].level == 0);
  CHECK(bc.intervals[1].birth == doctest::Approx(0.5 + 1e-6).epsilon(1e-12));
  CHECK(bc.intervals[1].death == bc.intervals[1].birth);
  CHECK(bc.delta == doctest::Approx(1e-6));
  CHECK(persistent_mode_count(bc, 0.1) == 1);
  CHECK(persistent_mode_count(bc, 0.6) == 0);
  CHECK(persistent_mode_count(bc, 0.0) == 1);
}

TEST_CASE("barcode of a rank-one block") {
  const PersistenceBarcode bc = rank_filtration(m2(0.5, 0.5, 0.5));
  REQUIRE(bc.intervals.size() == 2);
  CHECK(bc.intervals[0].level == 1);
  CHECK(bc.intervals[0].birth == 0.0);
  CHECK(bc.intervals[0].death == 0.5);
  CHECK(bc.intervals[0].contiguous);
}

TEST_CASE("zero matrix has a single rank-zero interval") {
  const PersistenceBarcode bc = rank_filtration(Eigen::MatrixXd::Zero(3, 3));
  REQUIRE(bc.intervals.size() == 1);
  CHECK(bc.intervals[0].level == 0);
  CHECK(persistent_mode_count(bc, 0.0) == 0);
}

TEST_CASE("non-monotone rank path is flagged") {
  // ranks on the grid {0, 0.5, 1, 2, 2 + delta}: 1, 1, 2, 1, 0
  const PersistenceBarcode bc = rank_filtration(m2(2.0, 1.0, 0.5));
  CHECK(bc.grid_ranks == std::vector<int>{1, 1, 2, 1, 0});
  REQUIRE(bc.intervals.size() == 3);
  CHECK(bc.intervals[0].level == 2);
  CHECK(bc.intervals[0].birth == 1.0);
  CHECK(bc.intervals[0].death == 1.0);
  CHECK(bc.intervals[0].contiguous);
  CHECK(bc.intervals[1].level == 1);
  CHECK(bc.intervals[1].birth == 0.0);
  CHECK(bc.intervals[1].death == 2.0);
  CHECK_FALSE(bc.intervals[1].contiguous);
  CHECK(persistent_mode_count(bc, 0.0) == 2);
  CHECK(persistent_mode_count(bc, 1.0) == 1);
}

TEST_CASE("explicit delta and grid contents") {
  FiltrationOptions opts;
  opts.delta = 0.25;
  const PersistenceBarcode bc = rank_filtration(m2(2.0, 1.0, 1.0), opts);
  CHECK(bc.epsilon_grid == std::vector<double>{0.0, 1.0, 2.0, 2.25});
  CHECK(filtration_grid(m2(2.0, 1.0, 1.0), 0.25) == bc.epsilon_grid);
}

TEST_CASE("property: rank is constant between grid points") {
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<int> level(0, 4);
  for (int trial = 0; trial < 100; ++trial) {
    const int d = 2 + trial % 4;
    Eigen::MatrixXd m(d, d);
    for (int i = 0; i < d; ++i)
      for (int j = i; j < d; ++j) m(i, j) = m(j, i) = 0.25 * level(rng);
    const PersistenceBarcode bc = rank_filtration(m);
    for (std::size_t g = 0; g + 1 < bc.epsilon_grid.size(); ++g) {
      const double mid = 0.5 * (bc.epsilon_grid[g] + bc.epsilon_grid[g + 1]);
      const Eigen::MatrixXd t = threshold_matrix(m, mid);
      // strict zeroing: everything in (g, g+1] removes the same entries
      CHECK(numerical_rank(t) == bc.grid_ranks[g + 1]);
    }
    for (const auto& iv : bc.intervals) CHECK(iv.birth <= iv.death);
  }
}

TEST_CASE("threads do not change the barcode") {
  Eigen::MatrixXd m = Eigen::MatrixXd::Random(8, 8).cwiseAbs();
  m = (m + m.transpose()).eval();
  FiltrationOptions one, many;
  many.threads = 4;
  CHECK(rank_filtration(m, one).grid_ranks == rank_filtration(m, many).grid_ranks);
}
