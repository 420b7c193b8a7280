#include "infolab/error.hpp"
#include "infolab/estimators.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

using namespace infolab;

namespace {

std::vector<double> bernoulli(std::size_t n, std::uint64_t seed, double p = 0.5) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution b(p);
  std::vector<double> v(n);
  for (auto& x : v) x = b(rng) ? 1.0 : 0.0;
  return v;
}

std::vector<double> normals(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> z;
  std::vector<double> v(n);
  for (auto& x : v) x = z(rng);
  return v;
}

std::pair<std::vector<double>, std::vector<double>> correlated(std::size_t n, double rho,
                                                               std::uint64_t seed) {
  auto a = normals(n, seed);
  auto b = normals(n, seed + 1000);
  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i) y[i] = rho * a[i] + std::sqrt(1 - rho * rho) * b[i];
  return {a, y};
}

EstimatorConfig with(EstimatorMethod m, int k = 3, int bins = 0) {
  EstimatorConfig c;
  c.method = m;
  c.k = k;
  c.bins = bins;
  return c;
}

constexpr auto D = ColumnKind::discrete;
constexpr auto C = ColumnKind::continuous;
const double kHalfLog2PiE = 0.5 * std::log(2 * std::numbers::pi * std::numbers::e);

}  // namespace

TEST_CASE("plug-in entropy of a fair binary column approaches ln 2") {
  const auto x = bernoulli(10000, 1);
  const double h = estimate_entropy(x, D, {});
  CHECK(h == doctest::Approx(oracle::plugin_entropy(x)).epsilon(1e-12));
  CHECK(std::abs(h - std::numbers::ln2) < 0.01);
}

TEST_CASE("constant discrete column has zero entropy") {
  const std::vector<double> x(50, 3.0);
  CHECK(estimate_entropy(x, D, {}) == 0.0);
}

TEST_CASE("Gaussian closed form on standard normal samples") {
  const auto x = normals(10000, 2);
  const double h = estimate_entropy(x, C, with(EstimatorMethod::gaussian_closed_form));
  CHECK(std::abs(h - kHalfLog2PiE) < 0.02);
}

TEST_CASE("continuous estimators agree with the normal entropy") {
  const auto x = normals(10000, 3);
  CHECK(std::abs(estimate_entropy(x, C, with(EstimatorMethod::knn)) - kHalfLog2PiE) < 0.03);
  CHECK(std::abs(estimate_entropy(x, C, with(EstimatorMethod::histogram)) - kHalfLog2PiE) < 0.05);
  // automatic resolves to k-NN for continuous data
  CHECK(estimate_entropy(x, C, {}) == estimate_entropy(x, C, with(EstimatorMethod::knn)));
}

TEST_CASE("k-NN entropy of a uniform variable") {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(0.0, 2.0);
  std::vector<double> x(20000);
  for (auto& v : x) v = u(rng);
  CHECK(std::abs(estimate_entropy(x, C, with(EstimatorMethod::knn)) - std::log(2.0)) < 0.02);
}

TEST_CASE("k-NN entropy tolerates tied samples") {
  auto x = normals(2000, 5);
  for (std::size_t i = 0; i < 200; ++i) x[i + 1000] = x[i];
  const double h = estimate_entropy(x, C, with(EstimatorMethod::knn));
  CHECK(std::isfinite(h));
  CHECK(std::abs(h - kHalfLog2PiE) < 0.15);
}

TEST_CASE("entropy error paths") {
  const std::vector<double> flat(100, 1.0);
  for (auto m : {EstimatorMethod::knn, EstimatorMethod::gaussian_closed_form, EstimatorMethod::histogram}) {
    CHECK_THROWS_WITH_AS(estimate_entropy(flat, C, with(m)), "degenerate variance", InputError);
  }
  const auto x = normals(10, 6);
  CHECK_THROWS_AS(estimate_entropy(x, D, with(EstimatorMethod::knn)), InputError);
  CHECK_THROWS_AS(estimate_entropy(x, C, with(EstimatorMethod::discrete_plugin)), InputError);
  CHECK_THROWS_AS(estimate_entropy(x, C, with(EstimatorMethod::knn, 10)), InputError);
  CHECK_THROWS_AS(estimate_entropy(x, C, with(EstimatorMethod::histogram, 3, 1)), InputError);
  CHECK_THROWS_AS(estimate_entropy(std::vector<double>{1.0}, D, {}), InputError);
  CHECK_THROWS_AS(parse_estimator_method("mine"), InputError);
}

TEST_CASE("histogram bin default") {
  CHECK(default_histogram_bins(1000) == 10);
  CHECK(default_histogram_bins(1001) == 11);
  CHECK(default_histogram_bins(10'000'000) == 64);
  CHECK(default_histogram_bins(2) == 2);
}

TEST_CASE("independent discrete columns with an exact product table") {
  std::vector<double> x, y;
  for (int rep = 0; rep < 25; ++rep)
    for (double a : {0.0, 1.0, 2.0})
      for (double b : {0.0, 1.0}) {
        x.push_back(a);
        y.push_back(b);
      }
  CHECK(estimate_mi(x, D, y, D, {}) == 0.0);
}

TEST_CASE("identical fair binary columns carry ln 2") {
  std::vector<double> x;
  for (int i = 0; i < 1000; ++i) x.push_back(i % 2);
  CHECK(estimate_mi(x, D, x, D, {}) == doctest::Approx(std::numbers::ln2).epsilon(1e-12));
}

TEST_CASE("KSG on a bivariate Gaussian with rho = 0.5") {
  const auto [x, y] = correlated(10000, 0.5, 7);
  const double mi = estimate_mi(x, C, y, C, with(EstimatorMethod::knn, 3));
  CHECK(std::abs(mi - oracle::gaussian_mi(0.5)) < 0.02);
  CHECK(std::abs(oracle::gaussian_mi(0.5) - 0.1438) < 1e-4);
  const double g = estimate_mi(x, C, y, C, with(EstimatorMethod::gaussian_closed_form));
  CHECK(std::abs(g - oracle::gaussian_mi(0.5)) < 0.02);
}

TEST_CASE("MI error paths") {
  const auto x = normals(10, 8);
  const auto y = normals(9, 9);
  CHECK_THROWS_AS(estimate_mi(x, C, y, C, {}), InputError);
  const auto z = normals(3, 10);
  CHECK_THROWS_AS(estimate_mi(z, C, z, C, with(EstimatorMethod::knn, 3)), InputError);
  CHECK_THROWS_AS(estimate_mi(x, C, bernoulli(10, 1), D, {}), InputError);
  CHECK_THROWS_AS(estimate_mi(x, C, x, C, with(EstimatorMethod::gaussian_closed_form)), NumericalError);
}

TEST_CASE("property: MI is symmetric") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> level(0, 4);
    std::vector<double> a(300), b(300);
    for (std::size_t i = 0; i < a.size(); ++i) {
      a[i] = level(rng);
      b[i] = (a[i] + level(rng)) / 2;
    }
    CHECK(estimate_mi(a, D, b, D, {}) == estimate_mi(b, D, a, D, {}));
    const auto [x, y] = correlated(500, 0.3, seed);
    const auto hist = with(EstimatorMethod::histogram);
    CHECK(estimate_mi(x, C, y, C, hist) == estimate_mi(y, C, x, C, hist));
    const auto knn = with(EstimatorMethod::knn);
    CHECK(std::abs(estimate_mi_raw(x, C, y, C, knn) - estimate_mi_raw(y, C, x, C, knn)) < 1e-9);
  }
}

TEST_CASE("property: negative KSG estimates are clamped and flagged") {
  int clamped = 0;
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto x = normals(60, seed);
    const auto y = normals(60, seed + 500);
    const auto est = estimate_mi_checked(x, C, y, C, with(EstimatorMethod::knn));
    CHECK(est.value >= 0.0);
    if (est.clamped) {
      ++clamped;
      CHECK(est.value == 0.0);
      CHECK(estimate_mi_raw(x, C, y, C, with(EstimatorMethod::knn)) < 0.0);
    }
  }
  CHECK(clamped > 0);
}

TEST_CASE("property: plug-in MI equals the direct table sum on small supports") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    std::uniform_int_distribution<int> card(1, 8);
    const int kx = card(rng), ky = card(rng);
    std::uniform_int_distribution<int> ux(0, kx - 1), uy(0, ky - 1);
    std::uniform_int_distribution<int> len(2, 400);
    const int n = len(rng);
    std::vector<double> x(n), y(n);
    for (int i = 0; i < n; ++i) {
      x[i] = ux(rng);
      y[i] = (trial % 2) ? uy(rng) : std::fmod(x[i] + (uy(rng) % 2), ky);
    }
    CHECK(std::abs(estimate_mi(x, D, y, D, {}) - oracle::plugin_mi(x, y)) < 1e-12);
  }
}

TEST_CASE("property: KSG error shrinks with sample size") {
  const double truth = oracle::gaussian_mi(0.5);
  std::vector<double> small, large;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto [xs, ys] = correlated(500, 0.5, 100 + seed);
    const auto [xl, yl] = correlated(10000, 0.5, 200 + seed);
    small.push_back(std::abs(estimate_mi(xs, C, ys, C, with(EstimatorMethod::knn)) - truth));
    large.push_back(std::abs(estimate_mi(xl, C, yl, C, with(EstimatorMethod::knn)) - truth));
  }
  CHECK(oracle::median(large) < oracle::median(small));
}
