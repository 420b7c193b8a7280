#include "cli.hpp"

#include "infolab/bottleneck.hpp"
#include "infolab/dilution.hpp"
#include "infolab/error.hpp"
#include "infolab/homology.hpp"
#include "infolab/io.hpp"
#include "infolab/ising.hpp"
#include "infolab/mi_matrix.hpp"
#include "infolab/spectral.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <sstream>

namespace infolab::cli {

namespace {

struct Common {
  std::string out;
  unsigned threads = 0;
  std::uint64_t seed = 0;
};

// Options that never change the numbers and are left out of the header.
const std::vector<std::string> kUnrecordedOptions = {"help", "config", "out", "threads"};

void add_common(CLI::App& app, Common& c) {
  app.option_defaults()->always_capture_default();
  app.set_config("--config", "", "Flat 'key = value' config file; flags override it");
  app.allow_config_extras(CLI::config_extras_mode::error);
  app.add_option("--out", c.out, "Output path (default: $INFOLAB_OUT_DIR/<subcommand>.<ext> or stdout)");
  app.add_option("--threads", c.threads, "Worker threads, 0 = all cores");
  app.add_option("--seed", c.seed, "Random seed");
}

io::RunHeader resolved_header(const CLI::App& app, const std::string& subcommand, std::uint64_t seed) {
  io::RunHeader h;
  h.subcommand = subcommand;
  h.seed = seed;
  for (const CLI::Option* opt : app.get_options()) {
    const std::string name = opt->get_single_name();
    if (std::find(kUnrecordedOptions.begin(), kUnrecordedOptions.end(), name) != kUnrecordedOptions.end())
      continue;
    std::string value;
    if (opt->count() > 0) {
      const auto& results = opt->results();
      for (std::size_t i = 0; i < results.size(); ++i) value += (i ? "," : "") + results[i];
    } else {
      value = opt->get_default_str();
    }
    h.config.emplace_back(name, value);
  }
  return h;
}

// Runs `emit` into a buffer and then writes it out in one go, so failed runs
// leave no partial files behind.
void deliver(const Common& c, const std::string& subcommand, const std::string& ext, std::ostream& fallback,
             const std::function<void(std::ostream&)>& emit) {
  std::ostringstream buffer;
  emit(buffer);
  std::string path = c.out;
  if (path.empty()) {
    if (const char* dir = std::getenv(kOutDirEnv); dir && *dir)
      path = (std::filesystem::path(dir) / (subcommand + "." + ext)).string();
  }
  if (path.empty()) {
    fallback << buffer.str();
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw InputError("cannot open output '" + path + "'");
  file << buffer.str();
}

bool wants_json(const std::string& format, const std::string& out) {
  if (format == "json") return true;
  if (format == "csv") return false;
  if (!format.empty()) throw InputError("unknown format '" + format + "'");
  return std::filesystem::path(out).extension() == ".json";
}

struct EstimatorOptions {
  std::string kinds = "auto";
  std::string method = "auto";
  int bins = 0;
  int k = 3;
  std::string diagonal = "auto";

  void add(CLI::App& app) {
    app.add_option("--kinds", kinds, "Column kinds: auto, discrete, continuous, or a comma list");
    app.add_option("--method", method, "Estimator: auto, plugin, histogram, knn, gaussian");
    app.add_option("--bins", bins, "Histogram bins per axis, 0 = ceil(n^(1/3)) capped at 64");
    app.add_option("--k", k, "Neighbour order for knn estimators");
    app.add_option("--diagonal", diagonal, "Diagonal policy: auto, self_entropy, zero");
  }

  EstimatorConfig config() const {
    EstimatorConfig cfg;
    cfg.method = parse_estimator_method(method);
    cfg.bins = bins;
    cfg.k = k;
    return cfg;
  }
};

MIMatrix mi_from_samples(const SampleMatrix& s, const EstimatorOptions& e, unsigned threads) {
  return build_mi_matrix(s, e.config(), {parse_diagonal_policy(e.diagonal), threads});
}

MIMatrix mi_from_matrix_file(const std::string& path) {
  Eigen::MatrixXd v = io::read_matrix_csv_file(path);
  const DiagonalPolicy policy =
      v.diagonal().isZero(0.0) ? DiagonalPolicy::zero : DiagonalPolicy::self_entropy;
  return make_mi_matrix(std::move(v), policy);
}

// --in samples or --matrix MI CSV, exactly one.
struct MatrixSource {
  std::string in;
  std::string matrix;
  EstimatorOptions est;

  void add(CLI::App& app) {
    auto* a = app.add_option("--in", in, "Sample CSV (header row of names)");
    auto* b = app.add_option("--matrix", matrix, "Precomputed MI matrix CSV");
    a->excludes(b);
    est.add(app);
  }

  MIMatrix load(unsigned threads) const {
    if (!matrix.empty()) return mi_from_matrix_file(matrix);
    if (in.empty()) throw InputError("either --in or --matrix is required");
    return mi_from_samples(io::read_samples_file(in, est.kinds), est, threads);
  }
};

// False when help was requested; the help text has then been written.
bool parse(CLI::App& app, const std::vector<std::string>& args, std::ostream& out) {
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return false;
  }
  return true;
}

int cmd_mi_matrix(const std::vector<std::string>& args, std::ostream& out) {
  CLI::App app{"Estimate the pairwise mutual-information matrix", "mi-matrix"};
  Common c;
  add_common(app, c);
  std::string in, format, weights = "none";
  double alpha = 1.0;
  EstimatorOptions est;
  app.add_option("--in", in, "Sample CSV (header row of names)")->required();
  est.add(app);
  app.add_option("--format", format, "csv or json (default from --out extension)");
  app.add_option("--weights", weights, "Export weights instead: none, identity, exp_scale, normalize_max");
  app.add_option("--alpha", alpha, "Scale for exp_scale weights");
  if (!parse(app, args, out)) return kExitOk;

  const SampleMatrix samples = io::read_samples_file(in, est.kinds);
  const MIMatrix m = mi_from_samples(samples, est, c.threads);
  const auto header = resolved_header(app, "mi-matrix", c.seed);
  const bool json = wants_json(format, c.out);
  if (weights != "none") {
    WeightTransform t;
    if (weights == "identity") t = WeightTransform::identity();
    else if (weights == "exp_scale") t = WeightTransform::exp_scale(alpha);
    else if (weights == "normalize_max") t = WeightTransform::normalize_max();
    else throw InputError("unknown weight transform '" + weights + "'");
    const WeightMatrix w = mi_weights(m, t);
    deliver(c, "mi-matrix", "csv", out, [&](std::ostream& o) {
      io::write_csv_header(o, header);
      o << "# transform: " << w.transform_id << '\n';
      io::write_matrix_csv(o, w.values, samples.names());
    });
    return kExitOk;
  }
  deliver(c, "mi-matrix", json ? "json" : "csv", out, [&](std::ostream& o) {
    if (json) io::write_mi_matrix_json(o, m, samples.names(), &header);
    else io::write_matrix_csv(o, m.values, samples.names(), &header);
  });
  return kExitOk;
}

int cmd_erank(const std::vector<std::string>& args, std::ostream& out) {
  CLI::App app{"Spectral summary and effective rank of an MI matrix", "erank"};
  Common c;
  add_common(app, c);
  MatrixSource src;
  double rank_tol = kDefaultRankTolerance;
  int probes = 0;
  src.add(app);
  app.add_option("--rank-tol", rank_tol, "Relative numerical-rank tolerance");
  app.add_option("--probes", probes, "Randomized estimate with l probes (0 = exact SVD)");
  if (!parse(app, args, out)) return kExitOk;

  const MIMatrix m = src.load(c.threads);
  const SpectralSummary s = probes > 0 ? randomized_effective_rank(m, probes, c.seed, rank_tol)
                                       : spectral_summary(m, rank_tol);
  const auto header = resolved_header(app, "erank", c.seed);
  deliver(c, "erank", "csv", out, [&](std::ostream& o) {
    io::write_csv_header(o, header);
    o << "# diagonal_policy: " << to_string(m.diagonal_policy) << '\n';
    io::write_spectral_csv(o, s);
  });
  return kExitOk;
}

int cmd_capacity(const std::vector<std::string>& args, std::ostream& out) {
  CLI::App app{"Convert an encoding budget into affordable spectral modes", "capacity"};
  Common c;
  add_common(app, c);
  MatrixSource src;
  std::vector<double> sigmas;
  double capacity = 0.0;
  int dim_cap = -1;
  src.add(app);
  app.add_option("--sigmas", sigmas, "Singular values, descending")->delimiter(',');
  app.add_option("--capacity", capacity, "Budget C in nats")->required();
  app.add_option("--dim-cap", dim_cap, "Optional dimension cap k (-1 = none)");
  if (!parse(app, args, out)) return kExitOk;

  if (sigmas.empty()) sigmas = spectral_summary(src.load(c.threads)).singular_values;
  if (!std::is_sorted(sigmas.rbegin(), sigmas.rend())) throw InputError("--sigmas must be descending");
  CapacityBudget budget{capacity, dim_cap >= 0 ? std::optional<int>(dim_cap) : std::nullopt};
  const int modes = capacity_modes(sigmas, budget);
  const auto header = resolved_header(app, "capacity", c.seed);
  deliver(c, "capacity", "json", out,
          [&](std::ostream& o) { io::write_capacity_json(o, modes, sigmas, budget, &header); });
  return kExitOk;
}

int cmd_emergence(const std::vector<std::string>& args, std::ostream& out) {
  CLI::App app{"Emergence check: effective rank against converted capacity", "emergence"};
  Common c;
  add_common(app, c);
  std::string in;
  EstimatorOptions est;
  double capacity = 0.0, epsilon = 0.01, rank_tol = kDefaultRankTolerance;
  std::optional<double> theta;
  int dim_cap = -1;
  app.add_option("--in", in, "Sample CSV (header row of names)")->required();
  est.add(app);
  app.add_option("--capacity", capacity, "Budget C in nats")->required();
  app.add_option("--dim-cap", dim_cap, "Optional dimension cap k (-1 = none)");
  app.add_option("--epsilon", epsilon, "Threshold tolerance epsilon > 0");
  app.add_option("--theta", theta, "Override the threshold theta in (0, 1)");
  app.add_option("--rank-tol", rank_tol, "Relative numerical-rank tolerance");
  if (!parse(app, args, out)) return kExitOk;

  const SampleMatrix samples = io::read_samples_file(in, est.kinds);
  const MIMatrix m = mi_from_samples(samples, est, c.threads);
  EmergenceOptions opts;
  opts.epsilon = epsilon;
  opts.theta_override = theta;
  opts.rank_rel_tol = rank_tol;
  opts.entropy_estimator = est.config();
  const CapacityBudget budget{capacity, dim_cap >= 0 ? std::optional<int>(dim_cap) : std::nullopt};
  const EmergenceVerdict v = emergence_check(samples, m, budget, opts);
  const auto header = resolved_header(app, "emergence", c.seed);
  deliver(c, "emergence", "json", out, [&](std::ostream& o) { io::write_verdict_json(o, v, &header); });
  return kExitOk;
}

int cmd_ib(const std::vector<std::string>& args, std::ostream& out) {
  CLI::App app{"Discrete information-bottleneck curve", "ib"};
  Common c;
  add_common(app, c);
  std::string in;
  std::vector<double> lambdas;
  int seeds = 5, max_iter = 10000;
  double tol = 1e-12;
  app.add_option("--in", in, "Problem JSON {joint, cardinality_f, lambda}")->required();
  app.add_option("--lambdas", lambdas, "Lambda grid (default: the problem's lambda)")->delimiter(',');
  app.add_option("--seeds", seeds, "Random restarts per lambda");
  app.add_option("--max-iter", max_iter, "Iteration cap per solve");
  app.add_option("--tol", tol, "Encoder max-norm convergence tolerance");
  if (!parse(app, args, out)) return kExitOk;

  const IBProblem problem = io::read_ib_problem_file(in);
  if (lambdas.empty()) lambdas = {problem.lambda};
  const auto curve = ib_curve(problem, lambdas, seeds, {max_iter, tol, c.seed}, c.threads);
  const auto header = resolved_header(app, "ib", c.seed);
  deliver(c, "ib", "csv", out, [&](std::ostream& o) { io::write_ib_curve_csv(o, curve, &header); });
  return kExitOk;
}

int cmd_dilution(const std::vector<std::string>& args, std::ostream& out) {
  CLI::App app{"Gaussian information-dilution sweep", "dilution"};
  Common c;
  add_common(app, c);
  std::vector<int> dims;
  double sigma = 1.0;
  int pairs = 10000, k = 3;
  std::string metric = "euclidean";
  app.add_option("--dims", dims, "Ascending dimension list")->delimiter(',')->required();
  app.add_option("--sigma", sigma, "Per-coordinate standard deviation");
  app.add_option("--pairs", pairs, "Independent (S, S') pairs per dimension");
  app.add_option("--metric", metric, "euclidean or mahalanobis");
  app.add_option("--k", k, "Neighbour order of the distance-entropy estimator");
  if (!parse(app, args, out)) return kExitOk;

  GaussianSystemSpec spec;
  spec.sigma = sigma;
  spec.n_pairs = pairs;
  spec.seed = c.seed;
  const auto reports = dilution_sweep(dims, spec, parse_metric_kind(metric), {k}, c.threads);
  const auto header = resolved_header(app, "dilution", c.seed);
  deliver(c, "dilution", "csv", out, [&](std::ostream& o) { io::write_dilution_csv(o, reports, &header); });
  return kExitOk;
}

int cmd_ising(const std::vector<std::string>& args, std::ostream& out) {
  CLI::App app{"2D Ising criticality sweep of the spin MI effective rank", "ising"};
  Common c;
  add_common(app, c);
  IsingSpec spec;
  int sites = 0;
  std::string dump_dir;
  app.add_option("--L", spec.L, "Lattice side");
  app.add_option("--temps", spec.temperatures, "Temperatures")->delimiter(',')->required();
  app.add_option("--sweeps", spec.sweeps, "Measurement sweeps");
  app.add_option("--burn-in", spec.burn_in, "Equilibration sweeps");
  app.add_option("--thin", spec.thin, "Sweeps between recorded configurations");
  app.add_option("--sites", sites, "Site subsample, 0 = min(L^2, 64)");
  app.add_option("--dump-dir", dump_dir, "Write each temperature's MI matrix CSV here");
  if (!parse(app, args, out)) return kExitOk;

  spec.seed = c.seed;
  if (sites > 0) spec.site_subsample = sites;
  const auto rows = criticality_sweep(spec, c.threads);
  const auto header = resolved_header(app, "ising", c.seed);
  deliver(c, "ising", "csv", out, [&](std::ostream& o) { io::write_ising_csv(o, rows, &header); });
  if (!dump_dir.empty()) {
    std::filesystem::create_directories(dump_dir);
    for (const auto& r : rows) {
      std::vector<std::string> names;
      for (int s : r.mi.sites) names.push_back("s" + std::to_string(s));
      std::ofstream f(std::filesystem::path(dump_dir) / ("mi_T" + io::format_double(r.T) + ".csv"));
      if (!f) throw InputError("cannot write into '" + dump_dir + "'");
      io::write_matrix_csv(f, r.mi.matrix.values, names, &header);
    }
  }
  return kExitOk;
}

int cmd_homology(const std::vector<std::string>& args, std::ostream& out) {
  CLI::App app{"Persistent rank filtration of a thresholded MI matrix", "homology"};
  Common c;
  add_common(app, c);
  MatrixSource src;
  double min_persistence = 0.0, rank_tol = kDefaultRankTolerance, delta = 0.0;
  std::string format;
  src.add(app);
  app.add_option("--min-persistence", min_persistence, "Minimum interval length counted as a mode");
  app.add_option("--rank-tol", rank_tol, "Relative numerical-rank tolerance");
  app.add_option("--delta", delta, "Offset of the last grid point, 0 = 1e-6 * max(1, max entry)");
  app.add_option("--format", format, "json or csv (default from --out extension, else json)");
  if (!parse(app, args, out)) return kExitOk;

  const MIMatrix m = src.load(c.threads);
  const PersistenceBarcode bc = rank_filtration(m, {rank_tol, delta, c.threads});
  const int modes = persistent_mode_count(bc, min_persistence);
  const bool json = format.empty() ? std::filesystem::path(c.out).extension() != ".csv"
                                   : wants_json(format, c.out);
  const auto header = resolved_header(app, "homology", c.seed);
  deliver(c, "homology", json ? "json" : "csv", out, [&](std::ostream& o) {
    if (json) io::write_barcode_json(o, bc, &header, modes);
    else io::write_barcode_csv(o, bc, &header, modes);
  });
  return kExitOk;
}

using Command = int (*)(const std::vector<std::string>&, std::ostream&);

const std::map<std::string, Command>& commands() {
  static const std::map<std::string, Command> table = {
      {"mi-matrix", cmd_mi_matrix}, {"erank", cmd_erank},       {"capacity", cmd_capacity},
      {"emergence", cmd_emergence}, {"ib", cmd_ib},             {"dilution", cmd_dilution},
      {"ising", cmd_ising},         {"homology", cmd_homology},
  };
  return table;
}

}  // namespace

std::string usage() {
  return "usage: infolab <subcommand> [options]\n"
         "\n"
         "subcommands:\n"
         "  mi-matrix   pairwise mutual-information matrix (CSV/JSON)\n"
         "  erank       singular spectrum and effective rank\n"
         "  capacity    affordable spectral modes for a budget C\n"
         "  emergence   effective rank vs capacity, new-feature construction\n"
         "  ib          discrete information-bottleneck curve\n"
         "  dilution    Gaussian distance-entropy dilution sweep\n"
         "  ising       2D Ising erank criticality sweep\n"
         "  homology    persistent rank filtration barcode\n"
         "\n"
         "Run 'infolab <subcommand> --help' for options.\n";
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  if (args.empty() || args[0] == "--help" || args[0] == "-h") {
    (args.empty() ? err : out) << usage();
    return args.empty() ? kExitInputError : kExitOk;
  }
  const auto it = commands().find(args[0]);
  if (it == commands().end()) {
    err << "unknown subcommand '" << args[0] << "'\n\n" << usage();
    return kExitInputError;
  }
  const std::vector<std::string> rest(args.begin() + 1, args.end());
  try {
    return it->second(rest, out);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return kExitOk;
    err << "infolab " << args[0] << ": " << e.what() << '\n';
    return kExitInputError;
  } catch (const std::invalid_argument& e) {
    err << "infolab " << args[0] << ": input error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const NumericalError& e) {
    err << "infolab " << args[0] << ": numerical failure: " << e.what() << '\n';
    return kExitNumericalError;
  } catch (const std::exception& e) {
    err << "infolab " << args[0] << ": failure: " << e.what() << '\n';
    return kExitNumericalError;
  }
}

}  // namespace infolab::cli
