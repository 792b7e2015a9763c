#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "ccpp/dataset.hpp"

namespace ccpp {

enum class CorrelationMethod { pearson, spearman, maximal };

/// Regression forms searched by the maximal correlation:
/// linear (x, y), logarithmic (ln x, y), exponential (x, ln y), power (ln x, ln y).
enum class RegressionForm { linear, logarithmic, exponential, power };

std::string_view to_string(CorrelationMethod method) noexcept;
std::string_view to_string(RegressionForm form) noexcept;
CorrelationMethod parse_correlation_method(std::string_view name);

struct MaximalCorrelation {
  double r = 0.0;
  RegressionForm form = RegressionForm::linear;
};

struct Interval {
  double low = 0.0;
  double high = 0.0;
};

struct CorrelationPair {
  std::string a;
  std::string b;
  double r = 0.0;
  Interval ci;
  bool low_confidence = false;  // |r| below the report's min_correlation
  std::optional<RegressionForm> form;  // maximal method only
};

struct CorrelationReport {
  CorrelationMethod method = CorrelationMethod::pearson;
  std::vector<std::string> names;
  std::vector<CorrelationPair> pairs;  // descending |r|
  Eigen::MatrixXd matrix;              // symmetric, unit diagonal
  std::size_t samples = 0;
  double min_correlation = 0.25;
  double level = 0.95;
};

struct CorrelationOptions {
  double min_correlation = 0.25;
  double level = 0.95;
};

double pearson(std::span<const double> x, std::span<const double> y);

/// 1-based ranks; tied values share the mean of their positions.
std::vector<double> average_ranks(std::span<const double> x);

double spearman(std::span<const double> x, std::span<const double> y);

/// Largest-|r| member of the regression-form family whose domain is admissible.
MaximalCorrelation maximal_correlation(std::span<const double> x, std::span<const double> y);

/// Fisher z interval: tanh(atanh(r) -/+ z_crit / sqrt(n - 3)).
Interval confidence_interval(double r, std::size_t n, double level = 0.95);

/// 100 * | |a| - |b| |
double percentage_difference(double a, double b);
Eigen::MatrixXd percentage_difference(const CorrelationReport& a, const CorrelationReport& b);

/// Pairwise report over every input and target column. For the maximal method
/// the earlier column of each pair plays x.
CorrelationReport correlation_matrix(const Dataset& ds, CorrelationMethod method,
                                     const CorrelationOptions& options = {});

/// The k strongest pairs involving `column`.
std::vector<CorrelationPair> top_k(const CorrelationReport& report, std::string_view column,
                                   std::size_t k = 4);

}  // namespace ccpp
