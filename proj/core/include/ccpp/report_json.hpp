#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "ccpp/correlation.hpp"
#include "ccpp/dataset.hpp"
#include "ccpp/evaluation.hpp"
#include "ccpp/optimizer.hpp"
#include "ccpp/selection.hpp"
#include "ccpp/training.hpp"

namespace ccpp {

nlohmann::json to_json(const ColumnStats& stats);
nlohmann::json to_json(const Histogram& histogram);
nlohmann::json to_json(const CorrelationReport& report);
/// Wall-clock time is left out so identical runs serialize identically.
nlohmann::json to_json(const TrainingTrace& trace);
nlohmann::json to_json(const Candidate& candidate);
nlohmann::json to_json(const SelectionResult& result);
nlohmann::json to_json(const ErrorMetrics& metrics);
nlohmann::json to_json(const ErrorReport& report);
nlohmann::json to_json(const SetpointResult& result, bool include_trace = false);

/// epoch,training_loss,training_loss_regularized,selection_loss,gradient_norm,step,line_search_failed
std::string trace_csv(const TrainingTrace& trace);
/// center,frequency
std::string histogram_csv(const Histogram& histogram);
/// prediction,target
std::string predictions_csv(const ErrorReport& report);

}  // namespace ccpp
