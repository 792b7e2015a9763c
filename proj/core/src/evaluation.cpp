#include "ccpp/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ccpp/error.hpp"

namespace ccpp {

namespace {

void check_lengths(std::span<const double> p, std::span<const double> t) {
  if (p.size() != t.size()) {
    throw Error(ErrorCode::LengthMismatch, "predictions and targets differ in length");
  }
  if (p.empty()) throw Error(ErrorCode::EmptyInput, "no rows to evaluate");
}

double total_sum_of_squares(std::span<const double> t) {
  const double mean = std::accumulate(t.begin(), t.end(), 0.0) / static_cast<double>(t.size());
  double sst = 0.0;
  for (double y : t) sst += (y - mean) * (y - mean);
  return sst;
}

double sum_squared_error(std::span<const double> p, std::span<const double> t) {
  double sse = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) sse += (p[i] - t[i]) * (p[i] - t[i]);
  return sse;
}

Summary summarize(const std::vector<double>& values) {
  if (values.empty()) return {};
  const auto stats = compute_stats(values);
  return {stats.minimum, stats.maximum, stats.mean, stats.deviation};
}

std::vector<double> to_vector(const Eigen::VectorXd& v) {
  return std::vector<double>(v.data(), v.data() + v.size());
}

}  // namespace

ErrorMetrics error_metrics(std::span<const double> p, std::span<const double> t, double q) {
  check_lengths(p, t);
  if (!(q > 0.0)) throw Error(ErrorCode::InvalidArgument, "Minkowski exponent must be positive");
  ErrorMetrics m;
  m.samples = p.size();
  m.minkowski_exponent = q;
  m.sse = sum_squared_error(p, t);
  m.mse = m.sse / static_cast<double>(m.samples);
  m.rmse = std::sqrt(m.mse);
  for (std::size_t i = 0; i < p.size(); ++i) m.minkowski += std::pow(std::abs(p[i] - t[i]), q);
  const double sst = total_sum_of_squares(t);
  if (sst == 0.0) throw Error(ErrorCode::ConstantTargets, "targets are constant; NSE is undefined");
  m.nse = m.sse / sst;
  return m;
}

ErrorMetrics error_metrics(const NetworkModel& model, const Batch& rows, double q) {
  const auto p = to_vector(predict(model, rows.inputs));
  const auto t = to_vector(rows.targets);
  return error_metrics(p, t, q);
}

double r_squared(std::span<const double> p, std::span<const double> t) {
  check_lengths(p, t);
  if (p.size() < 2) throw Error(ErrorCode::TooFewSamples, "R^2 needs at least two rows");
  const double sst = total_sum_of_squares(t);
  if (sst == 0.0) throw Error(ErrorCode::ConstantTargets, "targets are constant; R^2 is undefined");
  return 1.0 - sum_squared_error(p, t) / sst;
}

SampleErrors sample_errors(std::span<const double> p, std::span<const double> t) {
  check_lengths(p, t);
  SampleErrors out;
  out.absolute.reserve(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double e = std::abs(p[i] - t[i]);
    out.absolute.push_back(e);
    if (t[i] == 0.0) {
      ++out.excluded_zero_targets;
      continue;
    }
    const double rel = e / std::abs(t[i]);
    out.relative.push_back(rel);
    out.percentage.push_back(100.0 * rel);
  }
  return out;
}

ErrorStatistics error_statistics(std::span<const double> p, std::span<const double> t) {
  const auto errors = sample_errors(p, t);
  if (errors.relative.empty()) {
    throw Error(ErrorCode::ZeroTarget, "every target is zero; relative errors are undefined");
  }
  ErrorStatistics s;
  s.absolute = summarize(errors.absolute);
  s.relative = summarize(errors.relative);
  s.percentage = summarize(errors.percentage);
  s.excluded_zero_targets = errors.excluded_zero_targets;
  return s;
}

ErrorStatistics error_statistics(const NetworkModel& model, const Batch& rows) {
  const auto p = to_vector(predict(model, rows.inputs));
  const auto t = to_vector(rows.targets);
  return error_statistics(p, t);
}

std::vector<SampleError> maximal_errors(std::span<const double> p, std::span<const double> t,
                                        std::size_t k) {
  check_lengths(p, t);
  if (k < 1) throw Error(ErrorCode::InvalidArgument, "k must be at least 1");
  std::vector<SampleError> all;
  all.reserve(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) all.push_back({i, std::abs(p[i] - t[i]), p[i], t[i]});
  const std::size_t keep = std::min(k, all.size());
  std::partial_sort(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(keep), all.end(),
                    [](const SampleError& a, const SampleError& b) {
                      return a.error > b.error || (a.error == b.error && a.index < b.index);
                    });
  all.resize(keep);
  return all;
}

std::vector<SampleError> maximal_errors(const NetworkModel& model, const Batch& rows,
                                        std::size_t k) {
  const auto p = to_vector(predict(model, rows.inputs));
  const auto t = to_vector(rows.targets);
  return maximal_errors(p, t, k);
}

std::vector<InputImportance> input_importance(const NetworkModel& model, const Batch& rows) {
  if (rows.size() == 0) throw Error(ErrorCode::EmptyInput, "no rows to evaluate");
  if (static_cast<std::size_t>(rows.inputs.cols()) != model.input_count()) {
    throw Error(ErrorCode::DimensionMismatch, "batch width does not match model inputs");
  }
  const auto target_stats = compute_stats(to_vector(rows.targets));
  if (target_stats.deviation == 0.0) {
    throw Error(ErrorCode::ConstantTargets, "targets are constant; importance is undefined");
  }
  const Eigen::VectorXd base = predict(model, rows.inputs);
  std::vector<InputImportance> out;
  for (Eigen::Index j = 0; j < rows.inputs.cols(); ++j) {
    const Eigen::VectorXd col = rows.inputs.col(j);
    const double sigma = compute_stats(to_vector(col)).deviation;
    Eigen::MatrixXd shifted = rows.inputs;
    shifted.col(j).array() += sigma;
    const Eigen::VectorXd moved = predict(model, shifted);
    const double mean_change = (moved - base).mean();
    out.push_back({model.input_names[static_cast<std::size_t>(j)],
                   mean_change / target_stats.deviation});
  }
  return out;
}

ErrorReport evaluate(const NetworkModel& model, const Batch& rows,
                     const EvaluationOptions& options) {
  ErrorReport report;
  report.predictions = to_vector(predict(model, rows.inputs));
  report.targets = to_vector(rows.targets);
  report.metrics = error_metrics(report.predictions, report.targets, options.minkowski_exponent);
  report.r_squared = 1.0 - report.metrics.nse;
  report.statistics = error_statistics(report.predictions, report.targets);
  std::vector<double> signed_errors(report.predictions.size());
  for (std::size_t i = 0; i < signed_errors.size(); ++i) {
    signed_errors[i] = report.predictions[i] - report.targets[i];
  }
  report.error_histogram = histogram(signed_errors, options.histogram_bins);
  report.maximal = maximal_errors(report.predictions, report.targets, options.maximal_errors);
  report.importance = input_importance(model, rows);
  return report;
}

}  // namespace ccpp
