#include "infolab/io.hpp"

#include "infolab/error.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace infolab::io {

namespace {

using nlohmann::ordered_json;

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& line, char delim) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, delim)) out.push_back(trim(cell));
  if (!line.empty() && line.back() == delim) out.emplace_back();
  return out;
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  return in;
}

ordered_json meta_json(const RunHeader& h) {
  ordered_json cfg = ordered_json::object();
  for (const auto& [k, v] : h.config) cfg[k] = v;
  return {{"tool", kToolName}, {"version", kToolVersion}, {"subcommand", h.subcommand},
          {"seed", h.seed}, {"config", cfg}};
}

template <class T>
ordered_json optional_json(const std::optional<T>& v) {
  return v ? ordered_json(*v) : ordered_json(nullptr);
}

ordered_json matrix_json(const Eigen::MatrixXd& m) {
  ordered_json rows = ordered_json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    ordered_json row = ordered_json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

void emit_json(std::ostream& out, ordered_json body, const RunHeader* header) {
  ordered_json doc = ordered_json::object();
  if (header) doc["meta"] = meta_json(*header);
  for (auto& [k, v] : body.items()) doc[k] = v;
  out << doc.dump(2) << '\n';
}

bool is_integer_valued(const Eigen::MatrixXd& data, Eigen::Index col) {
  for (Eigen::Index i = 0; i < data.rows(); ++i) {
    const double v = data(i, col);
    if (v != std::floor(v)) return false;
  }
  return true;
}

}  // namespace

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::vector<ColumnKind> parse_kind_declaration(const std::string& text, const Eigen::MatrixXd& data) {
  const auto d = static_cast<std::size_t>(data.cols());
  if (text == "auto") {
    std::vector<ColumnKind> kinds(d);
    for (std::size_t j = 0; j < d; ++j)
      kinds[j] = is_integer_valued(data, static_cast<Eigen::Index>(j)) ? ColumnKind::discrete
                                                                       : ColumnKind::continuous;
    return kinds;
  }
  const auto parts = split(text, ',');
  if (parts.size() == 1) return std::vector<ColumnKind>(d, parse_column_kind(parts[0]));
  if (parts.size() != d) throw InputError("kind list has " + std::to_string(parts.size()) +
                                          " entries for " + std::to_string(d) + " columns");
  std::vector<ColumnKind> kinds;
  for (const auto& p : parts) kinds.push_back(parse_column_kind(p));
  return kinds;
}

CsvTable read_csv(std::istream& in) {
  CsvTable t;
  std::vector<std::vector<double>> rows;
  std::string line;
  bool have_header = false;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string stripped = trim(line);
    if (stripped.empty() || stripped.front() == '#') continue;
    auto cells = split(stripped, ',');
    if (!have_header) {
      t.header = std::move(cells);
      have_header = true;
      continue;
    }
    if (cells.size() != t.header.size())
      throw InputError("CSV line " + std::to_string(line_no) + " has " + std::to_string(cells.size()) +
                       " fields, expected " + std::to_string(t.header.size()));
    std::vector<double> row;
    row.reserve(cells.size());
    for (const auto& c : cells) {
      std::size_t used = 0;
      double v = 0.0;
      try {
        v = std::stod(c, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used == 0 || used != c.size())
        throw InputError("CSV line " + std::to_string(line_no) + ": '" + c + "' is not a number");
      row.push_back(v);
    }
    rows.push_back(std::move(row));
  }
  if (!have_header) throw InputError("CSV input is empty");
  t.values.resize(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(t.header.size()));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j)
      t.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
  return t;
}

CsvTable read_csv_file(const std::string& path) {
  auto in = open_input(path);
  return read_csv(in);
}

SampleMatrix read_samples(std::istream& in, const std::string& kinds) {
  CsvTable t = read_csv(in);
  auto k = parse_kind_declaration(kinds, t.values);
  return SampleMatrix(std::move(t.values), std::move(k), std::move(t.header));
}

SampleMatrix read_samples_file(const std::string& path, const std::string& kinds) {
  auto in = open_input(path);
  return read_samples(in, kinds);
}

Eigen::MatrixXd read_matrix_csv_file(const std::string& path) {
  CsvTable t = read_csv_file(path);
  Eigen::MatrixXd m = t.values;
  // Accept an optional leading name column.
  if (m.cols() == m.rows() + 1) m = t.values.rightCols(t.values.rows());
  if (m.rows() != m.cols()) throw InputError("matrix CSV is not square");
  return m;
}

void write_csv_header(std::ostream& out, const RunHeader& h) {
  out << "# tool: " << kToolName << ' ' << kToolVersion << '\n';
  out << "# subcommand: " << h.subcommand << '\n';
  out << "# seed: " << h.seed << '\n';
  for (const auto& [k, v] : h.config) out << "# config." << k << ": " << v << '\n';
}

void write_matrix_csv(std::ostream& out, const Eigen::MatrixXd& m, const std::vector<std::string>& names,
                      const RunHeader* header) {
  if (header) write_csv_header(out, *header);
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    if (j) out << ',';
    out << (static_cast<std::size_t>(j) < names.size() ? names[static_cast<std::size_t>(j)]
                                                       : "X" + std::to_string(j + 1));
  }
  out << '\n';
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) out << ',';
      out << format_double(m(i, j));
    }
    out << '\n';
  }
}

void write_mi_matrix_json(std::ostream& out, const MIMatrix& m, const std::vector<std::string>& names,
                          const RunHeader* header) {
  ordered_json est = {{"method", to_string(m.estimator.method)},
                      {"bins", m.estimator.bins},
                      {"k", m.estimator.k},
                      {"units", "nats"}};
  emit_json(out,
            {{"names", names},
             {"diagonal_policy", to_string(m.diagonal_policy)},
             {"estimator", est},
             {"clamp_events", m.clamp_events},
             {"values", matrix_json(m.values)}},
            header);
}

void write_spectral_csv(std::ostream& out, const SpectralSummary& s, const RunHeader* header) {
  if (header) write_csv_header(out, *header);
  out << "# effective_rank: " << format_double(s.effective_rank) << '\n';
  out << "# numerical_rank: " << s.numerical_rank << '\n';
  out << "# rank_tolerance: " << format_double(s.rank_tolerance) << '\n';
  out << "index,sigma,p\n";
  for (std::size_t i = 0; i < s.singular_values.size(); ++i)
    out << i + 1 << ',' << format_double(s.singular_values[i]) << ',' << format_double(s.weights[i]) << '\n';
}

void write_verdict_json(std::ostream& out, const EmergenceVerdict& v, const RunHeader* header) {
  emit_json(out,
            {{"complexity", v.complexity},
             {"numerical_rank", v.numerical_rank},
             {"capacity", v.capacity},
             {"capacity_modes", v.capacity_modes},
             {"epsilon", v.epsilon},
             {"theta", v.theta},
             {"theta_source", to_string(v.theta_source)},
             {"theta_formula", optional_json(v.theta_formula)},
             {"emerged", v.emerged},
             {"direction", v.direction},
             {"mode_singular_value", optional_json(v.mode_singular_value)},
             {"feature_entropy_lower_bound", optional_json(v.feature_entropy_lower_bound)},
             {"feature_entropy", optional_json(v.feature_entropy)},
             {"system_entropy", optional_json(v.system_entropy)},
             {"mi_ratio", optional_json(v.mi_ratio)},
             {"threshold_met", optional_json(v.threshold_met)}},
            header);
}

void write_capacity_json(std::ostream& out, int modes, const std::vector<double>& singular_values,
                         const CapacityBudget& budget, const RunHeader* header) {
  emit_json(out,
            {{"capacity", budget.capacity},
             {"dimension_cap", optional_json(budget.dimension_cap)},
             {"singular_values", singular_values},
             {"capacity_modes", modes}},
            header);
}

IBProblem parse_ib_problem_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("invalid IB problem JSON: ") + e.what());
  }
  IBProblem p;
  try {
    const auto& joint = doc.at("joint");
    if (!joint.is_array() || joint.empty()) throw InputError("'joint' must be a non-empty array");
    const auto rows = joint.size();
    const auto cols = joint.at(0).size();
    p.joint.resize(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    for (std::size_t i = 0; i < rows; ++i) {
      if (joint.at(i).size() != cols) throw InputError("'joint' rows differ in length");
      for (std::size_t j = 0; j < cols; ++j)
        p.joint(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = joint.at(i).at(j).get<double>();
    }
    p.cardinality_f = doc.at("cardinality_f").get<int>();
    p.lambda = doc.value("lambda", 1.0);
    if (doc.contains("budget") && !doc["budget"].is_null()) p.budget = doc["budget"].get<double>();
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("invalid IB problem JSON: ") + e.what());
  }
  p.validate();
  return p;
}

IBProblem read_ib_problem_file(const std::string& path) {
  auto in = open_input(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_ib_problem_json(ss.str());
}

void write_ib_curve_csv(std::ostream& out, const std::vector<IBCurvePoint>& curve, const RunHeader* header) {
  if (header) write_csv_header(out, *header);
  out << "lambda,I_Sf,I_fY,residual,iterations\n";
  for (const auto& p : curve)
    out << format_double(p.lambda) << ',' << format_double(p.I_Sf) << ',' << format_double(p.I_fY) << ','
        << format_double(p.residual) << ',' << p.iterations << '\n';
}

void write_dilution_csv(std::ostream& out, const std::vector<DilutionReport>& reports, const RunHeader* header) {
  if (header) write_csv_header(out, *header);
  out << "d,n_pairs,metric,H_S_theory,H_D_hat,eta_bar,mean_D2,var_D2,var_D,seed\n";
  for (const auto& r : reports)
    out << r.d << ',' << r.n_pairs << ',' << r.metric << ',' << format_double(r.H_S_theory) << ','
        << format_double(r.H_D_hat) << ',' << format_double(r.eta_bar) << ',' << format_double(r.mean_D2)
        << ',' << format_double(r.var_D2) << ',' << format_double(r.var_D) << ',' << r.seed << '\n';
}

void write_ising_csv(std::ostream& out, const std::vector<IsingSweepRow>& rows, const RunHeader* header) {
  if (header) write_csv_header(out, *header);
  out << "T,erank,numerical_rank,mean_abs_magnetization,energy_per_site,n_configs,site_subsample,seed\n";
  for (const auto& r : rows)
    out << format_double(r.T) << ',' << format_double(r.erank) << ',' << r.numerical_rank << ','
        << format_double(r.mean_abs_magnetization) << ',' << format_double(r.energy_per_site) << ','
        << r.n_configs << ',' << r.site_subsample << ',' << r.seed << '\n';
}

void write_barcode_json(std::ostream& out, const PersistenceBarcode& bc, const RunHeader* header,
                        std::optional<int> persistent_modes) {
  ordered_json intervals = ordered_json::array();
  for (const auto& iv : bc.intervals)
    intervals.push_back(
        {{"level", iv.level}, {"birth", iv.birth}, {"death", iv.death}, {"contiguous", iv.contiguous}});
  emit_json(out,
            {{"intervals", intervals},
             {"grid", bc.epsilon_grid},
             {"grid_ranks", bc.grid_ranks},
             {"rank_tolerance", bc.rank_tolerance},
             {"delta", bc.delta},
             {"persistent_modes", optional_json(persistent_modes)}},
            header);
}

void write_barcode_csv(std::ostream& out, const PersistenceBarcode& bc, const RunHeader* header,
                       std::optional<int> persistent_modes) {
  if (header) write_csv_header(out, *header);
  if (persistent_modes) out << "# persistent_modes: " << *persistent_modes << '\n';
  out << "level,birth,death,contiguous\n";
  for (const auto& iv : bc.intervals)
    out << iv.level << ',' << format_double(iv.birth) << ',' << format_double(iv.death) << ','
        << (iv.contiguous ? 1 : 0) << '\n';
}

}  // namespace infolab::io
