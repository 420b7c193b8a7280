#pragma once

#include "infolab/bottleneck.hpp"
#include "infolab/dilution.hpp"
#include "infolab/homology.hpp"
#include "infolab/ising.hpp"
#include "infolab/mi_matrix.hpp"
#include "infolab/sample_matrix.hpp"
#include "infolab/spectral.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace infolab::io {

inline constexpr const char* kToolName = "infolab";
inline constexpr const char* kToolVersion = "0.1.0";

// Run metadata written at the top of every output: "# key: value" lines in
// CSV, a "meta" object in JSON.
struct RunHeader {
  std::string subcommand;
  std::vector<std::pair<std::string, std::string>> config;  // resolved, in order
  std::uint64_t seed = 0;
};

// "%.12g"; non-finite values print as nan / inf / -inf.
std::string format_double(double v);

// Column kinds: "auto" (integer-valued columns are discrete), "discrete",
// "continuous", or a comma list with one entry per column.
std::vector<ColumnKind> parse_kind_declaration(const std::string& text, const Eigen::MatrixXd& data);

struct CsvTable {
  std::vector<std::string> header;
  Eigen::MatrixXd values;
};

// Header row of names, then numeric rows. Blank lines and '#' lines skipped.
CsvTable read_csv(std::istream& in);
CsvTable read_csv_file(const std::string& path);

SampleMatrix read_samples(std::istream& in, const std::string& kinds = "auto");
SampleMatrix read_samples_file(const std::string& path, const std::string& kinds = "auto");

// Square matrix CSV as written by write_matrix_csv.
Eigen::MatrixXd read_matrix_csv_file(const std::string& path);

void write_csv_header(std::ostream& out, const RunHeader& header);

void write_matrix_csv(std::ostream& out, const Eigen::MatrixXd& m,
                      const std::vector<std::string>& names, const RunHeader* header = nullptr);
void write_mi_matrix_json(std::ostream& out, const MIMatrix& m, const std::vector<std::string>& names,
                          const RunHeader* header = nullptr);

void write_spectral_csv(std::ostream& out, const SpectralSummary& s, const RunHeader* header = nullptr);
void write_verdict_json(std::ostream& out, const EmergenceVerdict& v, const RunHeader* header = nullptr);
void write_capacity_json(std::ostream& out, int modes, const std::vector<double>& singular_values,
                         const CapacityBudget& budget, const RunHeader* header = nullptr);

IBProblem parse_ib_problem_json(const std::string& text);
IBProblem read_ib_problem_file(const std::string& path);
void write_ib_curve_csv(std::ostream& out, const std::vector<IBCurvePoint>& curve,
                        const RunHeader* header = nullptr);

void write_dilution_csv(std::ostream& out, const std::vector<DilutionReport>& reports,
                        const RunHeader* header = nullptr);
void write_ising_csv(std::ostream& out, const std::vector<IsingSweepRow>& rows,
                     const RunHeader* header = nullptr);

// `persistent_modes` is the optional persistent_mode_count result.
void write_barcode_json(std::ostream& out, const PersistenceBarcode& bc, const RunHeader* header = nullptr,
                        std::optional<int> persistent_modes = std::nullopt);
void write_barcode_csv(std::ostream& out, const PersistenceBarcode& bc, const RunHeader* header = nullptr,
                       std::optional<int> persistent_modes = std::nullopt);

}  // namespace infolab::io
