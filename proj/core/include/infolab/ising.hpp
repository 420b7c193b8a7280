#pragma once

#include "infolab/mi_matrix.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace infolab {

// Exact critical temperature of the square-lattice model, J = k_B = 1.
double onsager_critical_temperature();

struct IsingSpec {
  int L = 16;
  std::vector<double> temperatures;
  int sweeps = 20000;  // measurement sweeps after burn-in
  int burn_in = 1000;
  int thin = 10;       // sweeps between recorded configurations
  std::uint64_t seed = 0;
  std::optional<int> site_subsample;  // default min(L^2, 64)

  void validate() const;
  int sites() const { return L * L; }
  int resolved_subsample() const;
};

// Recorded configurations of one chain, spins in {-1, +1}.
struct IsingConfigs {
  int L = 0;
  double temperature = 0.0;
  std::uint64_t seed = 0;
  std::vector<std::int8_t> spins;       // n_configs x L^2, row-major
  std::vector<double> magnetization;    // per config, signed, per site
  std::vector<double> energy_per_site;  // per config

  std::size_t n_configs() const { return magnetization.size(); }
  std::size_t sites() const { return static_cast<std::size_t>(L) * static_cast<std::size_t>(L); }
  double mean_abs_magnetization() const;
  double mean_energy_per_site() const;
};

// Single-spin-flip Metropolis on an L x L periodic lattice from an all-up
// start. Random-site updates, L^2 attempts per sweep.
IsingConfigs simulate(const IsingSpec& spec, double temperature, std::uint64_t chain_seed);

struct SpinMI {
  MIMatrix matrix;
  std::vector<int> sites;  // lattice indices (row-major) of the matrix columns
};

// Plug-in MI between spin columns over a seeded uniform site subsample.
SpinMI spin_mi_matrix(const IsingConfigs& configs, int site_subsample, std::uint64_t seed,
                      unsigned threads = 1);

struct IsingSweepRow {
  double T = 0.0;
  double erank = 0.0;
  int numerical_rank = 0;
  double mean_abs_magnetization = 0.0;
  double energy_per_site = 0.0;
  int n_configs = 0;
  int site_subsample = 0;
  std::uint64_t seed = 0;  // chain seed for this temperature
  SpinMI mi;
};

// Chain t uses mix_seed(seed, t); every temperature shares one site subsample.
std::vector<IsingSweepRow> criticality_sweep(const IsingSpec& spec, unsigned threads = 0);

}  // namespace infolab
