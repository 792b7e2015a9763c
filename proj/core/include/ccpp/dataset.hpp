#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace ccpp {

enum class ColumnRole { input, target, unused };

struct ColumnSpec {
  std::string name;    // label used throughout the library (T, V, AP, RH, EP)
  ColumnRole role = ColumnRole::input;
  std::string unit;
  std::string header;  // text expected in the CSV header; empty means `name`

  const std::string& file_header() const { return header.empty() ? name : header; }
};

enum class Split : std::uint8_t { training, selection, testing };

std::string_view to_string(Split split) noexcept;
std::string_view to_string(ColumnRole role) noexcept;

/// Column-labelled table with a split tag per row.
///
/// Values are immutable once constructed; every transformation returns a
/// new Dataset.
class Dataset {
 public:
  Dataset() = default;
  /// All rows start in the training split.
  Dataset(std::vector<ColumnSpec> columns, Eigen::MatrixXd values);
  Dataset(std::vector<ColumnSpec> columns, Eigen::MatrixXd values,
          std::vector<Split> splits);

  std::size_t row_count() const { return static_cast<std::size_t>(values_.rows()); }
  std::size_t column_count() const { return columns_.size(); }

  const std::vector<ColumnSpec>& columns() const { return columns_; }
  const Eigen::MatrixXd& values() const { return values_; }
  const std::vector<Split>& splits() const { return splits_; }

  /// Throws UnknownColumn.
  std::size_t column_index(std::string_view name) const;
  Eigen::VectorXd column(std::string_view name) const;

  std::vector<std::size_t> input_indices() const;
  /// Throws InvalidArgument unless exactly one column is the target.
  std::size_t target_index() const;
  std::vector<std::string> input_names() const;

  std::vector<std::size_t> rows_in(Split split) const;
  std::size_t count(Split split) const;

  /// Rows of one split, re-tagged as training in the returned value.
  Dataset subset(Split split) const;
  Dataset select_rows(std::span<const std::size_t> rows) const;

  Dataset with_splits(std::vector<Split> splits) const;
  /// Same table with only `names` kept as inputs; other inputs become unused.
  Dataset with_inputs(std::span<const std::string> names) const;

 private:
  std::vector<ColumnSpec> columns_;
  Eigen::MatrixXd values_;
  std::vector<Split> splits_;
};

struct ColumnStats {
  double minimum = 0.0;
  double maximum = 0.0;
  double mean = 0.0;
  double deviation = 0.0;  // population form (divides by n)
};

struct Histogram {
  std::vector<double> bin_centers;
  std::vector<double> frequencies;  // percent of the row count
  std::size_t bin_count = 0;
};

struct SplitRatios {
  double training = 0.6;
  double selection = 0.2;
  double testing = 0.2;
};

struct CleanResult {
  Dataset dataset;
  std::vector<std::size_t> removed_rows;  // ascending, indices into the input
};

/// Schema of the public CCPP file (AT,V,AP,RH,PE) mapped onto T,V,AP,RH,EP.
std::vector<ColumnSpec> ccpp_schema();

/// Reads a comma-separated file with a header row matching `schema`.
Dataset load_csv(const std::filesystem::path& path, const std::vector<ColumnSpec>& schema);
/// Writes with 17 significant digits so a reload is bit-exact.
void save_csv(const Dataset& ds, const std::filesystem::path& path);

ColumnStats compute_stats(std::span<const double> values);
ColumnStats compute_stats(const Dataset& ds, std::string_view column);

double median(std::span<const double> values);

/// Seeded shuffle; selection and testing get floor(n * ratio) rows, training
/// the remainder.
Dataset split_random(const Dataset& ds, const SplitRatios& ratios, std::uint64_t seed);

/// Removes rows with |z| > cleaning_parameter in any input or target column.
CleanResult clean_outliers(const Dataset& ds, double cleaning_parameter);

Histogram histogram(std::span<const double> values, std::size_t bin_count);
Histogram histogram(const Dataset& ds, std::string_view column, std::size_t bin_count);

}  // namespace ccpp
