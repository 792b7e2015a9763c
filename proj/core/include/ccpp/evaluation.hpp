#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "ccpp/dataset.hpp"
#include "ccpp/network.hpp"

namespace ccpp {

struct ErrorMetrics {
  std::size_t samples = 0;
  double sse = 0.0;
  double mse = 0.0;
  double rmse = 0.0;
  double nse = 0.0;
  double minkowski = 0.0;
  double minkowski_exponent = 1.5;
};

struct Summary {
  double minimum = 0.0;
  double maximum = 0.0;
  double mean = 0.0;
  double deviation = 0.0;
};

struct ErrorStatistics {
  Summary absolute;
  Summary relative;
  Summary percentage;
  std::size_t excluded_zero_targets = 0;  // rows left out of relative/percentage
};

struct SampleError {
  std::size_t index = 0;  // row within the evaluated batch
  double error = 0.0;     // |prediction - target|
  double prediction = 0.0;
  double target = 0.0;
};

struct InputImportance {
  std::string input;
  double score = 0.0;  // signed
};

/// Residual-based metrics; NSE shares its denominator with R^2.
ErrorMetrics error_metrics(std::span<const double> predictions, std::span<const double> targets,
                           double minkowski_exponent = 1.5);
ErrorMetrics error_metrics(const NetworkModel& model, const Batch& rows,
                           double minkowski_exponent = 1.5);

/// 1 - sum((y_hat - y)^2) / sum((y - mean)^2)
double r_squared(std::span<const double> predictions, std::span<const double> targets);

/// Per-sample absolute, relative (|e|/|y|) and percentage (100 * relative) errors.
struct SampleErrors {
  std::vector<double> absolute;
  std::vector<double> relative;
  std::vector<double> percentage;
  std::size_t excluded_zero_targets = 0;
};
SampleErrors sample_errors(std::span<const double> predictions, std::span<const double> targets);

ErrorStatistics error_statistics(std::span<const double> predictions,
                                 std::span<const double> targets);
ErrorStatistics error_statistics(const NetworkModel& model, const Batch& rows);

/// Top-k absolute errors, descending; ties keep the lower index first.
std::vector<SampleError> maximal_errors(std::span<const double> predictions,
                                        std::span<const double> targets, std::size_t k = 15);
std::vector<SampleError> maximal_errors(const NetworkModel& model, const Batch& rows,
                                        std::size_t k = 15);

/// Mean over rows of [f(x + sigma_j e_j) - f(x)] / sigma_target, where the
/// sigmas are population deviations over the rows.
std::vector<InputImportance> input_importance(const NetworkModel& model, const Batch& rows);

struct ErrorReport {
  ErrorMetrics metrics;
  double r_squared = 0.0;
  ErrorStatistics statistics;
  Histogram error_histogram;  // of signed errors prediction - target
  std::vector<SampleError> maximal;
  std::vector<InputImportance> importance;
  std::vector<double> predictions;
  std::vector<double> targets;
};

struct EvaluationOptions {
  double minkowski_exponent = 1.5;
  std::size_t maximal_errors = 15;
  std::size_t histogram_bins = 10;
};

ErrorReport evaluate(const NetworkModel& model, const Batch& rows,
                     const EvaluationOptions& options = {});

}  // namespace ccpp
