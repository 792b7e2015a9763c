#include "ccpp/dataset.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>

#include "ccpp/error.hpp"
#include "ccpp/rng.hpp"

namespace ccpp {

std::string_view to_string(Split split) noexcept {
  switch (split) {
    case Split::training: return "training";
    case Split::selection: return "selection";
    case Split::testing: return "testing";
  }
  return "unknown";
}

std::string_view to_string(ColumnRole role) noexcept {
  switch (role) {
    case ColumnRole::input: return "input";
    case ColumnRole::target: return "target";
    case ColumnRole::unused: return "unused";
  }
  return "unknown";
}

Dataset::Dataset(std::vector<ColumnSpec> columns, Eigen::MatrixXd values)
    : Dataset(std::move(columns), values,
              std::vector<Split>(static_cast<std::size_t>(values.rows()), Split::training)) {}

Dataset::Dataset(std::vector<ColumnSpec> columns, Eigen::MatrixXd values,
                 std::vector<Split> splits)
    : columns_(std::move(columns)), values_(std::move(values)), splits_(std::move(splits)) {
  if (static_cast<std::size_t>(values_.cols()) != columns_.size()) {
    throw Error(ErrorCode::DimensionMismatch, "value matrix width does not match column count");
  }
  if (splits_.size() != row_count()) {
    throw Error(ErrorCode::DimensionMismatch, "split tag count does not match row count");
  }
  for (std::size_t i = 0; i < columns_.size(); ++i) {
    for (std::size_t j = i + 1; j < columns_.size(); ++j) {
      if (columns_[i].name == columns_[j].name) {
        throw Error(ErrorCode::InvalidArgument, "duplicate column name '" + columns_[i].name + "'");
      }
    }
  }
}

std::size_t Dataset::column_index(std::string_view name) const {
  for (std::size_t i = 0; i < columns_.size(); ++i) {
    if (columns_[i].name == name) return i;
  }
  throw Error(ErrorCode::UnknownColumn, "no column named '" + std::string(name) + "'");
}

Eigen::VectorXd Dataset::column(std::string_view name) const {
  return values_.col(static_cast<Eigen::Index>(column_index(name)));
}

std::vector<std::size_t> Dataset::input_indices() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < columns_.size(); ++i) {
    if (columns_[i].role == ColumnRole::input) out.push_back(i);
  }
  return out;
}

std::size_t Dataset::target_index() const {
  std::size_t found = columns_.size();
  std::size_t count = 0;
  for (std::size_t i = 0; i < columns_.size(); ++i) {
    if (columns_[i].role == ColumnRole::target) {
      found = i;
      ++count;
    }
  }
  if (count != 1) {
    throw Error(ErrorCode::InvalidArgument,
                "expected exactly one target column, found " + std::to_string(count));
  }
  return found;
}

std::vector<std::string> Dataset::input_names() const {
  std::vector<std::string> out;
  for (auto i : input_indices()) out.push_back(columns_[i].name);
  return out;
}

std::vector<std::size_t> Dataset::rows_in(Split split) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < splits_.size(); ++i) {
    if (splits_[i] == split) out.push_back(i);
  }
  return out;
}

std::size_t Dataset::count(Split split) const {
  return static_cast<std::size_t>(std::count(splits_.begin(), splits_.end(), split));
}

Dataset Dataset::subset(Split split) const {
  const auto rows = rows_in(split);
  return select_rows(rows);
}

Dataset Dataset::select_rows(std::span<const std::size_t> rows) const {
  Eigen::MatrixXd out(static_cast<Eigen::Index>(rows.size()), values_.cols());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r] >= row_count()) {
      throw Error(ErrorCode::InvalidArgument, "row index out of range");
    }
    out.row(static_cast<Eigen::Index>(r)) = values_.row(static_cast<Eigen::Index>(rows[r]));
  }
  return Dataset(columns_, std::move(out));
}

Dataset Dataset::with_splits(std::vector<Split> splits) const {
  return Dataset(columns_, values_, std::move(splits));
}

Dataset Dataset::with_inputs(std::span<const std::string> names) const {
  auto columns = columns_;
  for (const auto& name : names) {
    const auto idx = column_index(name);
    if (columns[idx].role != ColumnRole::input) {
      throw Error(ErrorCode::InvalidArgument, "column '" + name + "' is not an input");
    }
  }
  for (auto& col : columns) {
    if (col.role != ColumnRole::input) continue;
    if (std::find(names.begin(), names.end(), col.name) == names.end()) {
      col.role = ColumnRole::unused;
    }
  }
  return Dataset(std::move(columns), values_, splits_);
}

std::vector<ColumnSpec> ccpp_schema() {
  return {
      {"T", ColumnRole::input, "°C", "AT"},
      {"V", ColumnRole::input, "cm Hg", "V"},
      {"AP", ColumnRole::input, "mbar", "AP"},
      {"RH", ColumnRole::input, "%", "RH"},
      {"EP", ColumnRole::target, "MW", "PE"},
  };
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.push_back(trim(line.substr(start)));
      break;
    }
    fields.push_back(trim(line.substr(start, comma - start)));
    start = comma + 1;
  }
  return fields;
}

bool iequals(std::string_view a, std::string_view b) {
  return a.size() == b.size() &&
         std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
           return std::tolower(static_cast<unsigned char>(x)) ==
                  std::tolower(static_cast<unsigned char>(y));
         });
}

}  // namespace

Dataset load_csv(const std::filesystem::path& path, const std::vector<ColumnSpec>& schema) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::IoError, "cannot open '" + path.string() + "'");
  }
  std::string line;
  if (!std::getline(in, line)) {
    throw Error(ErrorCode::EmptyFile, "'" + path.string() + "' has no header row");
  }
  if (line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
  if (trim(line).empty()) {
    throw Error(ErrorCode::EmptyFile, "'" + path.string() + "' has an empty header row");
  }

  const auto header = split_fields(line);
  if (header.size() != schema.size()) {
    throw Error(ErrorCode::HeaderMismatch, "header has " + std::to_string(header.size()) +
                                               " fields, schema expects " +
                                               std::to_string(schema.size()));
  }
  for (std::size_t c = 0; c < schema.size(); ++c) {
    if (!iequals(header[c], schema[c].file_header())) {
      throw Error(ErrorCode::HeaderMismatch, "header field " + std::to_string(c + 1) + " is '" +
                                                 std::string(header[c]) + "', expected '" +
                                                 schema[c].file_header() + "'");
    }
  }

  std::vector<double> cells;
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    const auto fields = split_fields(line);
    const std::size_t row = rows + 1;
    if (fields.size() > schema.size()) {
      throw Error(ErrorCode::ParseError,
                  "row " + std::to_string(row) + " has " + std::to_string(fields.size()) +
                      " fields",
                  CellLocation{row, schema.size() + 1});
    }
    for (std::size_t c = 0; c < schema.size(); ++c) {
      const CellLocation where{row, c + 1};
      if (c >= fields.size() || fields[c].empty()) {
        throw Error(ErrorCode::MissingValue,
                    "empty cell at row " + std::to_string(row) + ", column " +
                        std::to_string(c + 1),
                    where);
      }
      const auto field = fields[c];
      double value = 0.0;
      const char* first = field.data();
      if (*first == '+') ++first;
      const auto [ptr, ec] = std::from_chars(first, field.data() + field.size(), value);
      if (ec != std::errc() || ptr != field.data() + field.size() || !std::isfinite(value)) {
        throw Error(ErrorCode::ParseError,
                    "cannot parse '" + std::string(field) + "' at row " + std::to_string(row) +
                        ", column " + std::to_string(c + 1),
                    where);
      }
      cells.push_back(value);
    }
    ++rows;
  }
  if (rows == 0) {
    throw Error(ErrorCode::EmptyFile, "'" + path.string() + "' has no data rows");
  }

  Eigen::MatrixXd values(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(schema.size()));
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < schema.size(); ++c) {
      values(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          cells[r * schema.size() + c];
    }
  }
  return Dataset(schema, std::move(values));
}

void save_csv(const Dataset& ds, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw Error(ErrorCode::IoError, "cannot write '" + path.string() + "'");
  }
  for (std::size_t c = 0; c < ds.column_count(); ++c) {
    if (c) out << ',';
    out << ds.columns()[c].file_header();
  }
  out << '\n';
  char buf[32];
  for (Eigen::Index r = 0; r < ds.values().rows(); ++r) {
    for (Eigen::Index c = 0; c < ds.values().cols(); ++c) {
      if (c) out << ',';
      std::snprintf(buf, sizeof buf, "%.17g", ds.values()(r, c));
      out << buf;
    }
    out << '\n';
  }
  if (!out) {
    throw Error(ErrorCode::IoError, "write to '" + path.string() + "' failed");
  }
}

ColumnStats compute_stats(std::span<const double> values) {
  if (values.empty()) {
    throw Error(ErrorCode::EmptyInput, "statistics of an empty column");
  }
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  ColumnStats stats;
  stats.minimum = *lo;
  stats.maximum = *hi;
  if (stats.minimum == stats.maximum) {
    stats.mean = stats.minimum;
    stats.deviation = 0.0;
    return stats;
  }
  const double n = static_cast<double>(values.size());
  const double mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  stats.mean = std::clamp(mean, stats.minimum, stats.maximum);
  stats.deviation = std::sqrt(ss / n);
  return stats;
}

ColumnStats compute_stats(const Dataset& ds, std::string_view column) {
  const Eigen::VectorXd col = ds.column(column);
  return compute_stats(std::span<const double>(col.data(), static_cast<std::size_t>(col.size())));
}

double median(std::span<const double> values) {
  if (values.empty()) {
    throw Error(ErrorCode::EmptyInput, "median of an empty column");
  }
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const std::size_t n = sorted.size();
  return n % 2 ? sorted[n / 2] : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
}

Dataset split_random(const Dataset& ds, const SplitRatios& ratios, std::uint64_t seed) {
  const double parts[] = {ratios.training, ratios.selection, ratios.testing};
  for (double p : parts) {
    if (!(p > 0.0) || !std::isfinite(p)) {
      throw Error(ErrorCode::BadRatios, "split ratios must all be positive");
    }
  }
  if (std::abs(ratios.training + ratios.selection + ratios.testing - 1.0) > 1e-9) {
    throw Error(ErrorCode::BadRatios, "split ratios must sum to 1");
  }

  const std::size_t n = ds.row_count();
  // The epsilon absorbs products like 0.3 * 10 = 2.9999999999999996.
  const auto share = [n](double ratio) {
    return static_cast<std::size_t>(std::floor(static_cast<double>(n) * ratio + 1e-9));
  };
  const std::size_t n_selection = share(ratios.selection);
  const std::size_t n_testing = share(ratios.testing);

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  Rng rng(seed);
  for (std::size_t i = n; i > 1; --i) {
    const auto j = static_cast<std::size_t>(rng.below(i));
    std::swap(order[i - 1], order[j]);
  }

  std::vector<Split> tags(n, Split::training);
  for (std::size_t k = 0; k < n_selection; ++k) tags[order[k]] = Split::selection;
  for (std::size_t k = n_selection; k < n_selection + n_testing; ++k) {
    tags[order[k]] = Split::testing;
  }
  return ds.with_splits(std::move(tags));
}

CleanResult clean_outliers(const Dataset& ds, double cleaning_parameter) {
  if (!(cleaning_parameter >= 1.0 && cleaning_parameter <= 10.0)) {
    throw Error(ErrorCode::InvalidArgument, "cleaning parameter must lie in [1, 10]");
  }
  std::vector<bool> drop(ds.row_count(), false);
  for (std::size_t c = 0; c < ds.column_count(); ++c) {
    if (ds.columns()[c].role == ColumnRole::unused) continue;
    const auto col = ds.values().col(static_cast<Eigen::Index>(c));
    const auto stats =
        compute_stats(std::span<const double>(col.data(), static_cast<std::size_t>(col.size())));
    if (stats.deviation == 0.0) {
      // Constant columns have z = 0 everywhere; a zero deviation with spread
      // means the z-score itself is undefined.
      if (stats.minimum != stats.maximum) {
        throw Error(ErrorCode::ZeroDeviation,
                    "column '" + ds.columns()[c].name + "' has zero deviation");
      }
      continue;
    }
    for (Eigen::Index r = 0; r < col.size(); ++r) {
      const double z = (col(r) - stats.mean) / stats.deviation;
      if (std::abs(z) > cleaning_parameter) drop[static_cast<std::size_t>(r)] = true;
    }
  }

  CleanResult result;
  std::vector<std::size_t> keep;
  for (std::size_t r = 0; r < drop.size(); ++r) {
    (drop[r] ? result.removed_rows : keep).push_back(r);
  }
  Dataset kept = ds.select_rows(keep);
  std::vector<Split> tags;
  tags.reserve(keep.size());
  for (auto r : keep) tags.push_back(ds.splits()[r]);
  result.dataset = kept.with_splits(std::move(tags));
  return result;
}

Histogram histogram(std::span<const double> values, std::size_t bin_count) {
  if (bin_count < 1) {
    throw Error(ErrorCode::BadBinCount, "histogram needs at least one bin");
  }
  if (values.empty()) {
    throw Error(ErrorCode::EmptyInput, "histogram of an empty column");
  }
  const auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
  const double lo = *lo_it;
  const double hi = *hi_it;
  Histogram h;
  if (lo == hi) {
    h.bin_count = 1;
    h.bin_centers = {lo};
    h.frequencies = {100.0};
    return h;
  }

  const double width = (hi - lo) / static_cast<double>(bin_count);
  std::vector<std::size_t> counts(bin_count, 0);
  for (double v : values) {
    auto idx = static_cast<std::size_t>(std::floor((v - lo) / width));
    counts[std::min(idx, bin_count - 1)]++;
  }
  h.bin_count = bin_count;
  h.bin_centers.resize(bin_count);
  h.frequencies.resize(bin_count);
  const double n = static_cast<double>(values.size());
  for (std::size_t b = 0; b < bin_count; ++b) {
    h.bin_centers[b] = lo + (static_cast<double>(b) + 0.5) * width;
    h.frequencies[b] = 100.0 * static_cast<double>(counts[b]) / n;
  }
  return h;
}

Histogram histogram(const Dataset& ds, std::string_view column, std::size_t bin_count) {
  if (bin_count < 1) {
    throw Error(ErrorCode::BadBinCount, "histogram needs at least one bin");
  }
  const Eigen::VectorXd col = ds.column(column);
  return histogram(std::span<const double>(col.data(), static_cast<std::size_t>(col.size())),
                   bin_count);
}

}  // namespace ccpp
