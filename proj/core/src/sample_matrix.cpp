#include "infolab/sample_matrix.hpp"

#include "infolab/error.hpp"

#include <algorithm>
#include <cmath>

namespace infolab {

const char* to_string(ColumnKind kind) {
  return kind == ColumnKind::discrete ? "discrete" : "continuous";
}

ColumnKind parse_column_kind(const std::string& text) {
  if (text == "discrete" || text == "d") return ColumnKind::discrete;
  if (text == "continuous" || text == "c") return ColumnKind::continuous;
  throw InputError("unknown column kind '" + text + "'");
}

SampleMatrix::SampleMatrix(Eigen::MatrixXd data, std::vector<ColumnKind> kinds,
                           std::vector<std::string> names)
    : data_(std::move(data)), kinds_(std::move(kinds)), names_(std::move(names)) {
  if (data_.rows() < 2) throw InputError("sample matrix needs at least 2 samples");
  if (data_.cols() < 1) throw InputError("sample matrix needs at least 1 variable");
  if (kinds_.size() != static_cast<std::size_t>(data_.cols()))
    throw InputError("every column must carry a kind tag");
  if (!data_.allFinite()) throw InputError("sample matrix contains non-finite entries");
  if (names_.empty()) {
    names_.reserve(kinds_.size());
    for (std::size_t j = 0; j < kinds_.size(); ++j) names_.push_back("X" + std::to_string(j + 1));
  } else if (names_.size() != kinds_.size()) {
    throw InputError("column name count does not match column count");
  }
}

std::span<const double> SampleMatrix::column(std::size_t j) const {
  return {data_.col(static_cast<Eigen::Index>(j)).data(), samples()};
}

bool SampleMatrix::all_discrete() const {
  return std::all_of(kinds_.begin(), kinds_.end(),
                     [](ColumnKind k) { return k == ColumnKind::discrete; });
}

bool SampleMatrix::all_continuous() const {
  return std::all_of(kinds_.begin(), kinds_.end(),
                     [](ColumnKind k) { return k == ColumnKind::continuous; });
}

}  // namespace infolab
