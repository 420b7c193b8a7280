#include "infolab/ising.hpp"

#include "infolab/error.hpp"
#include "infolab/parallel.hpp"
#include "infolab/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace infolab {

double onsager_critical_temperature() { return 2.0 / std::log(1.0 + std::sqrt(2.0)); }

void IsingSpec::validate() const {
  if (L < 2) throw InputError("lattice side L must be >= 2");
  if (temperatures.empty()) throw InputError("temperature list must be non-empty");
  for (double t : temperatures)
    if (!(t > 0.0) || !std::isfinite(t)) throw InputError("temperatures must be > 0");
  if (sweeps < 1 || burn_in < 1) throw InputError("sweeps and burn_in must be >= 1");
  if (thin < 1) throw InputError("thin must be >= 1");
  if (site_subsample && (*site_subsample < 1 || *site_subsample > sites()))
    throw InputError("site_subsample must lie in [1, L^2]");
}

int IsingSpec::resolved_subsample() const {
  return site_subsample ? *site_subsample : std::min(sites(), 64);
}

double IsingConfigs::mean_abs_magnetization() const {
  if (magnetization.empty()) return 0.0;
  double acc = 0.0;
  for (double m : magnetization) acc += std::abs(m);
  return acc / static_cast<double>(magnetization.size());
}

double IsingConfigs::mean_energy_per_site() const {
  if (energy_per_site.empty()) return 0.0;
  return std::accumulate(energy_per_site.begin(), energy_per_site.end(), 0.0) /
         static_cast<double>(energy_per_site.size());
}

IsingConfigs simulate(const IsingSpec& spec, double temperature, std::uint64_t chain_seed) {
  spec.validate();
  if (!(temperature > 0.0)) throw InputError("temperature must be > 0");
  const int L = spec.L;
  const int n = L * L;
  std::vector<std::int8_t> lattice(static_cast<std::size_t>(n), 1);

  std::vector<int> up(n), down(n), left(n), right(n);
  for (int r = 0; r < L; ++r) {
    for (int c = 0; c < L; ++c) {
      const int i = r * L + c;
      up[i] = ((r + L - 1) % L) * L + c;
      down[i] = ((r + 1) % L) * L + c;
      left[i] = r * L + (c + L - 1) % L;
      right[i] = r * L + (c + 1) % L;
    }
  }
  // Only dE = 4 and dE = 8 need a random acceptance test.
  const double beta = 1.0 / temperature;
  const double accept4 = std::exp(-4.0 * beta);
  const double accept8 = std::exp(-8.0 * beta);

  std::mt19937_64 rng(chain_seed);
  std::uniform_int_distribution<int> pick(0, n - 1);
  std::uniform_real_distribution<double> unif(0.0, 1.0);

  auto sweep = [&] {
    for (int attempt = 0; attempt < n; ++attempt) {
      const int i = pick(rng);
      const int field = lattice[up[i]] + lattice[down[i]] + lattice[left[i]] + lattice[right[i]];
      const int dE = 2 * lattice[i] * field;
      bool flip = dE <= 0;
      if (!flip) flip = unif(rng) < (dE == 4 ? accept4 : accept8);
      if (flip) lattice[i] = static_cast<std::int8_t>(-lattice[i]);
    }
  };

  IsingConfigs out;
  out.L = L;
  out.temperature = temperature;
  out.seed = chain_seed;
  for (int s = 0; s < spec.burn_in; ++s) sweep();
  const int records = spec.sweeps / spec.thin;
  out.spins.reserve(static_cast<std::size_t>(records) * static_cast<std::size_t>(n));
  for (int s = 1; s <= spec.sweeps; ++s) {
    sweep();
    if (s % spec.thin != 0) continue;
    long mag = 0, bonds = 0;
    for (int i = 0; i < n; ++i) {
      mag += lattice[i];
      bonds += lattice[i] * (lattice[right[i]] + lattice[down[i]]);
    }
    out.spins.insert(out.spins.end(), lattice.begin(), lattice.end());
    out.magnetization.push_back(static_cast<double>(mag) / n);
    out.energy_per_site.push_back(-static_cast<double>(bonds) / n);
  }
  return out;
}

SpinMI spin_mi_matrix(const IsingConfigs& configs, int site_subsample, std::uint64_t seed,
                      unsigned threads) {
  const std::size_t n_cfg = configs.n_configs();
  if (n_cfg < 100) throw InputError("insufficient samples");
  const int n_sites = static_cast<int>(configs.sites());
  if (site_subsample < 1 || site_subsample > n_sites)
    throw InputError("site_subsample must lie in [1, L^2]");

  std::vector<int> all(static_cast<std::size_t>(n_sites));
  std::iota(all.begin(), all.end(), 0);
  SpinMI out;
  if (site_subsample == n_sites) {
    out.sites = all;
  } else {
    std::mt19937_64 rng(seed);
    std::sample(all.begin(), all.end(), std::back_inserter(out.sites),
                static_cast<std::size_t>(site_subsample), rng);
    std::sort(out.sites.begin(), out.sites.end());
  }

  Eigen::MatrixXd data(static_cast<Eigen::Index>(n_cfg), static_cast<Eigen::Index>(out.sites.size()));
  for (std::size_t c = 0; c < n_cfg; ++c)
    for (std::size_t j = 0; j < out.sites.size(); ++j)
      data(static_cast<Eigen::Index>(c), static_cast<Eigen::Index>(j)) =
          configs.spins[c * configs.sites() + static_cast<std::size_t>(out.sites[j])];

  std::vector<std::string> names;
  for (int s : out.sites) names.push_back("s" + std::to_string(s));
  SampleMatrix samples(std::move(data), std::vector<ColumnKind>(out.sites.size(), ColumnKind::discrete),
                       std::move(names));
  EstimatorConfig cfg;
  cfg.method = EstimatorMethod::discrete_plugin;
  out.matrix = build_mi_matrix(samples, cfg, {DiagonalPolicy::self_entropy, threads});
  return out;
}

std::vector<IsingSweepRow> criticality_sweep(const IsingSpec& spec, unsigned threads) {
  spec.validate();
  const int subsample = spec.resolved_subsample();
  std::vector<IsingSweepRow> rows(spec.temperatures.size());
  parallel_for(rows.size(), threads, [&](std::size_t t) {
    const double T = spec.temperatures[t];
    const std::uint64_t chain_seed = mix_seed(spec.seed, t);
    const IsingConfigs configs = simulate(spec, T, chain_seed);
    IsingSweepRow& row = rows[t];
    row.T = T;
    row.mi = spin_mi_matrix(configs, subsample, spec.seed, 1);
    const SpectralSummary summary = spectral_summary(row.mi.matrix);
    row.erank = summary.effective_rank;
    row.numerical_rank = summary.numerical_rank;
    row.mean_abs_magnetization = configs.mean_abs_magnetization();
    row.energy_per_site = configs.mean_energy_per_site();
    row.n_configs = static_cast<int>(configs.n_configs());
    row.site_subsample = subsample;
    row.seed = chain_seed;
  });
  return rows;
}

}  // namespace infolab
