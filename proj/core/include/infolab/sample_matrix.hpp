#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace infolab {

enum class ColumnKind { continuous, discrete };

const char* to_string(ColumnKind kind);
ColumnKind parse_column_kind(const std::string& text);

// n samples (rows) by d variables (columns). Columns are stored contiguously
// (Eigen's default column-major layout), so column() is a zero-copy view.
class SampleMatrix {
 public:
  SampleMatrix(Eigen::MatrixXd data, std::vector<ColumnKind> kinds,
               std::vector<std::string> names = {});

  std::size_t samples() const { return static_cast<std::size_t>(data_.rows()); }
  std::size_t dims() const { return static_cast<std::size_t>(data_.cols()); }

  std::span<const double> column(std::size_t j) const;
  ColumnKind kind(std::size_t j) const { return kinds_[j]; }
  const std::vector<ColumnKind>& kinds() const { return kinds_; }
  const std::vector<std::string>& names() const { return names_; }
  const Eigen::MatrixXd& data() const { return data_; }

  bool all_discrete() const;
  bool all_continuous() const;

 private:
  Eigen::MatrixXd data_;
  std::vector<ColumnKind> kinds_;
  std::vector<std::string> names_;
};

}  // namespace infolab
