#include "infolab/error.hpp"
#include "infolab/mi_matrix.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace infolab;

namespace {

SampleMatrix binary_columns(std::size_t n, std::size_t d, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution b(0.5);
  Eigen::MatrixXd data(n, d);
  for (Eigen::Index i = 0; i < data.rows(); ++i)
    for (Eigen::Index j = 0; j < data.cols(); ++j) data(i, j) = b(rng);
  return {data, std::vector<ColumnKind>(d, ColumnKind::discrete)};
}

SampleMatrix gaussian_with_copy(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> z;
  Eigen::MatrixXd data(n, 3);
  for (Eigen::Index i = 0; i < data.rows(); ++i) {
    data(i, 0) = z(rng);
    data(i, 1) = 0.3 * data(i, 0) + z(rng);
    data(i, 2) = data(i, 0);
  }
  return {data, std::vector<ColumnKind>(3, ColumnKind::continuous)};
}

}  // namespace

TEST_CASE("sample matrix validation") {
  CHECK_THROWS_AS(SampleMatrix(Eigen::MatrixXd::Zero(1, 2), {ColumnKind::discrete, ColumnKind::discrete}),
                  InputError);
  CHECK_THROWS_AS(SampleMatrix(Eigen::MatrixXd::Zero(3, 2), {ColumnKind::discrete}), InputError);
  Eigen::MatrixXd bad = Eigen::MatrixXd::Zero(3, 1);
  bad(1, 0) = NAN;
  CHECK_THROWS_AS(SampleMatrix(bad, {ColumnKind::continuous}), InputError);
  const SampleMatrix ok(Eigen::MatrixXd::Zero(3, 2), {ColumnKind::discrete, ColumnKind::continuous});
  CHECK(ok.names() == std::vector<std::string>{"X1", "X2"});
  CHECK_FALSE(ok.all_discrete());
}

TEST_CASE("i.i.d. fair binary pair") {
  const auto s = binary_columns(10000, 2, 1);
  const MIMatrix m = build_mi_matrix(s, {});
  CHECK(m.diagonal_policy == DiagonalPolicy::self_entropy);
  CHECK(m.values(0, 1) < 1e-3);
  CHECK(m.values(0, 1) == m.values(1, 0));
  CHECK(std::abs(m.values(0, 0) - std::numbers::ln2) < 0.01);
  CHECK(std::abs(m.values(1, 1) - std::numbers::ln2) < 0.01);
}

TEST_CASE("single-variable matrix holds the diagonal policy output") {
  const auto s = binary_columns(100, 1, 2);
  const MIMatrix with_entropy = build_mi_matrix(s, {});
  CHECK(with_entropy.dims() == 1);
  CHECK(with_entropy.values(0, 0) == estimate_entropy(s.column(0), ColumnKind::discrete, {}));
  const MIMatrix zeroed = build_mi_matrix(s, {}, {DiagonalPolicy::zero, 1});
  CHECK(zeroed.values(0, 0) == 0.0);
}

TEST_CASE("a duplicated Gaussian column dominates the off-diagonal") {
  const auto s = gaussian_with_copy(2000, 3);
  const MIMatrix m = build_mi_matrix(s, {});
  CHECK(m.diagonal_policy == DiagonalPolicy::zero);
  CHECK(m.values(0, 2) > m.values(0, 1));
  CHECK(m.values(0, 2) > m.values(1, 2));
  CHECK(m.values.diagonal().isZero(0.0));
}

TEST_CASE("self-entropy diagonal is rejected for continuous columns") {
  const auto s = gaussian_with_copy(100, 4);
  CHECK_THROWS_WITH_AS(build_mi_matrix(s, {}, {DiagonalPolicy::self_entropy, 1}),
                       "self-MI undefined for continuous columns", InputError);
}

TEST_CASE("threading does not change the matrix") {
  const auto s = binary_columns(500, 12, 5);
  const MIMatrix a = build_mi_matrix(s, {}, {DiagonalPolicy::automatic, 1});
  const MIMatrix b = build_mi_matrix(s, {}, {DiagonalPolicy::automatic, 4});
  CHECK(a.values == b.values);
  CHECK(a.values == a.values.transpose());
}

TEST_CASE("clamp events are counted") {
  std::mt19937_64 rng(6);
  std::normal_distribution<double> z;
  Eigen::MatrixXd data(60, 8);
  for (Eigen::Index i = 0; i < data.size(); ++i) data.data()[i] = z(rng);
  const MIMatrix m = build_mi_matrix({data, std::vector<ColumnKind>(8, ColumnKind::continuous)}, {});
  CHECK(m.clamp_events > 0);
  CHECK((m.values.array() >= 0.0).all());
}

TEST_CASE("make_mi_matrix validates external matrices") {
  Eigen::MatrixXd v(2, 2);
  v << 0.0, 0.5, 0.4, 0.0;
  CHECK_THROWS_AS(make_mi_matrix(v, DiagonalPolicy::zero), InputError);
  v << 0.0, -1e-14, -1e-14, 0.0;
  const MIMatrix m = make_mi_matrix(v, DiagonalPolicy::zero);
  CHECK(m.clamp_events == 2);
  CHECK(m.values(0, 1) == 0.0);
  v << 0.0, -0.1, -0.1, 0.0;
  CHECK_THROWS_AS(make_mi_matrix(v, DiagonalPolicy::zero), InputError);
}

TEST_CASE("MI weights") {
  Eigen::MatrixXd v(3, 3);
  v << 0.7, 0.5, 0.1, 0.5, 0.7, 0.25, 0.1, 0.25, 0.7;
  const MIMatrix m = make_mi_matrix(v, DiagonalPolicy::self_entropy);

  const WeightMatrix id = mi_weights(m, WeightTransform::identity());
  CHECK(id.values(0, 1) == 0.5);
  CHECK(id.values(2, 1) == 0.25);
  CHECK(id.values.diagonal().isZero(0.0));
  CHECK(id.transform_id == "identity");

  const WeightMatrix nm = mi_weights(m, WeightTransform::normalize_max());
  CHECK(nm.values.maxCoeff() == 1.0);
  CHECK(nm.values(0, 2) == doctest::Approx(0.2));

  const WeightMatrix ex = mi_weights(m, WeightTransform::exp_scale(1.0));
  CHECK(ex.values(0, 1) == doctest::Approx(1.6487212707).epsilon(1e-10));
  CHECK(ex.values(0, 0) == 0.0);
  CHECK(ex.transform_id == "exp_scale(1)");

  const MIMatrix zero = make_mi_matrix(Eigen::MatrixXd::Identity(3, 3), DiagonalPolicy::self_entropy);
  CHECK_THROWS_WITH_AS(mi_weights(zero, WeightTransform::normalize_max()), "no dependence structure",
                       InputError);
}
