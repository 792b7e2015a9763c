#include "ccpp/report_json.hpp"

#include <cstdio>

namespace ccpp {

using nlohmann::json;

namespace {

std::string number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

json summary_json(const Summary& s) {
  return {{"minimum", s.minimum}, {"maximum", s.maximum}, {"mean", s.mean},
          {"deviation", s.deviation}};
}

}  // namespace

json to_json(const ColumnStats& stats) {
  return {{"minimum", stats.minimum},
          {"maximum", stats.maximum},
          {"mean", stats.mean},
          {"deviation", stats.deviation}};
}

json to_json(const Histogram& histogram) {
  return {{"bin_count", histogram.bin_count},
          {"bin_centers", histogram.bin_centers},
          {"frequencies", histogram.frequencies}};
}

json to_json(const CorrelationReport& report) {
  json matrix = json::array();
  for (Eigen::Index i = 0; i < report.matrix.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < report.matrix.cols(); ++j) row.push_back(report.matrix(i, j));
    matrix.push_back(std::move(row));
  }
  json pairs = json::array();
  for (const auto& p : report.pairs) {
    json item = {{"a", p.a},
                 {"b", p.b},
                 {"r", p.r},
                 {"ci", {p.ci.low, p.ci.high}},
                 {"low_confidence", p.low_confidence}};
    if (p.form) item["form"] = std::string(to_string(*p.form));
    pairs.push_back(std::move(item));
  }
  return {{"method", std::string(to_string(report.method))},
          {"names", report.names},
          {"samples", report.samples},
          {"min_correlation", report.min_correlation},
          {"level", report.level},
          {"matrix", std::move(matrix)},
          {"pairs", std::move(pairs)}};
}

json to_json(const TrainingTrace& trace) {
  json epochs = json::array();
  for (const auto& e : trace.epochs) {
    epochs.push_back({{"epoch", e.epoch},
                      {"training_loss", e.training_loss},
                      {"training_loss_regularized", e.training_loss_regularized},
                      {"selection_loss", e.selection_loss},
                      {"gradient_norm", e.gradient_norm},
                      {"step", e.step},
                      {"line_search_failed", e.line_search_failed}});
  }
  return {{"initial_training_loss", trace.initial_training_loss},
          {"initial_training_loss_regularized", trace.initial_training_loss_regularized},
          {"initial_selection_loss", trace.initial_selection_loss},
          {"stop_reason", std::string(to_string(trace.stop_reason))},
          {"best_epoch", trace.best_epoch},
          {"regularization_weight", trace.regularization_weight},
          {"epochs", std::move(epochs)}};
}

json to_json(const Candidate& c) {
  return {{"index", c.index},
          {"inputs", c.inputs},
          {"neurons", c.neurons},
          {"training_error", c.training_error},
          {"selection_error", c.selection_error},
          {"epochs", c.epochs},
          {"best_trial", c.best_trial}};
}

json to_json(const SelectionResult& result) {
  json candidates = json::array();
  for (const auto& c : result.candidates) candidates.push_back(to_json(c));
  return {{"candidates", std::move(candidates)},
          {"chosen", result.chosen},
          {"stop_reason", std::string(to_string(result.stop_reason))}};
}

json to_json(const ErrorMetrics& m) {
  return {{"samples", m.samples}, {"sse", m.sse},
          {"mse", m.mse},         {"rmse", m.rmse},
          {"nse", m.nse},         {"minkowski", m.minkowski},
          {"minkowski_exponent", m.minkowski_exponent}};
}

json to_json(const ErrorReport& report) {
  json maximal = json::array();
  for (const auto& s : report.maximal) {
    maximal.push_back({{"index", s.index},
                       {"error", s.error},
                       {"prediction", s.prediction},
                       {"target", s.target}});
  }
  json importance = json::array();
  for (const auto& i : report.importance) {
    importance.push_back({{"input", i.input}, {"score", i.score}});
  }
  return {{"metrics", to_json(report.metrics)},
          {"r_squared", report.r_squared},
          {"statistics",
           {{"absolute", summary_json(report.statistics.absolute)},
            {"relative", summary_json(report.statistics.relative)},
            {"percentage", summary_json(report.statistics.percentage)},
            {"excluded_zero_targets", report.statistics.excluded_zero_targets}}},
          {"error_histogram", to_json(report.error_histogram)},
          {"maximal_errors", std::move(maximal)},
          {"importance", std::move(importance)}};
}

json to_json(const SetpointResult& result, bool include_trace) {
  json out = {{"x_star", result.x_star},
              {"predicted_output", result.predicted_output},
              {"unbounded_output", result.unbounded_output},
              {"saturated", result.saturated},
              {"baseline_output", result.baseline_output},
              {"improvement_percent", result.improvement_percent},
              {"grid_evaluations", result.grid_evaluations},
              {"best_grid_value", result.best_grid_value},
              {"evaluations", result.trace.size()}};
  if (include_trace) {
    json trace = json::array();
    for (const auto& e : result.trace) trace.push_back({{"x", e.x}, {"f", e.value}});
    out["trace"] = std::move(trace);
  }
  return out;
}

std::string trace_csv(const TrainingTrace& trace) {
  std::string out =
      "epoch,training_loss,training_loss_regularized,selection_loss,gradient_norm,step,"
      "line_search_failed\n";
  out += "0," + number(trace.initial_training_loss) + ',' +
         number(trace.initial_training_loss_regularized) + ',' +
         number(trace.initial_selection_loss) + ",,,\n";
  for (const auto& e : trace.epochs) {
    out += std::to_string(e.epoch) + ',' + number(e.training_loss) + ',' +
           number(e.training_loss_regularized) + ',' + number(e.selection_loss) + ',' +
           number(e.gradient_norm) + ',' + number(e.step) + ',' +
           (e.line_search_failed ? "1" : "0") + '\n';
  }
  return out;
}

std::string histogram_csv(const Histogram& histogram) {
  std::string out = "center,frequency\n";
  for (std::size_t i = 0; i < histogram.bin_centers.size(); ++i) {
    out += number(histogram.bin_centers[i]) + ',' + number(histogram.frequencies[i]) + '\n';
  }
  return out;
}

std::string predictions_csv(const ErrorReport& report) {
  std::string out = "prediction,target\n";
  for (std::size_t i = 0; i < report.predictions.size(); ++i) {
    out += number(report.predictions[i]) + ',' + number(report.targets[i]) + '\n';
  }
  return out;
}

}  // namespace ccpp
