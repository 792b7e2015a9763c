#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include "ccpp/dataset.hpp"
#include "ccpp/error.hpp"
#include "ccpp/network.hpp"
#include "ccpp/scaling.hpp"

namespace ccpp {

struct LossConfig {
  double regularization_weight = 1e-3;
  double minkowski_exponent = 1.5;  // reporting only
};

enum class StopReason { LossGoal, GradientGoal, MinDecrease, SelectionFailures, MaxEpochs, MaxTime };

std::string_view to_string(StopReason reason) noexcept;

/// Checked after every epoch in declaration order; the first satisfied one stops training.
struct StoppingCriteria {
  double loss_goal = 1e-3;
  double gradient_norm_goal = 0.0;  // 0 disables
  double min_loss_decrease = 0.0;
  std::size_t max_selection_failures = 100;
  std::size_t max_epochs = 1000;
  double max_time_seconds = 3600.0;
};

struct EpochRecord {
  std::size_t epoch = 0;  // 1-based
  double training_loss = 0.0;              // NSE on the training split
  double training_loss_regularized = 0.0;  // NSE + L2 term, the minimized objective
  double selection_loss = 0.0;             // NSE on the selection split
  double gradient_norm = 0.0;
  double step = 0.0;
  bool line_search_failed = false;
};

struct TrainingTrace {
  std::vector<EpochRecord> epochs;
  double initial_training_loss = 0.0;
  double initial_training_loss_regularized = 0.0;
  double initial_selection_loss = 0.0;
  StopReason stop_reason = StopReason::MaxEpochs;
  std::size_t best_epoch = 0;  // index into epochs with the minimal selection loss
  double regularization_weight = 0.0;
  double elapsed_seconds = 0.0;  // wall clock; not part of the deterministic record
};

struct TrainingResult {
  NetworkModel model;
  TrainingTrace trace;
};

/// Raised when a loss evaluates to a non-finite value; carries the trace so far.
class NonFiniteLossError : public Error {
 public:
  NonFiniteLossError(const std::string& message, TrainingTrace trace)
      : Error(ErrorCode::NonFiniteLoss, message), trace_(std::move(trace)) {}
  const TrainingTrace& trace() const noexcept { return trace_; }

 private:
  TrainingTrace trace_;
};

/// NSE over the rows plus regularization_weight * sum(theta^2).
double loss_index(const NetworkModel& model, const Batch& rows, const LossConfig& config);

struct ModelSetup {
  std::vector<std::size_t> hidden = {2};
  ScalerMethod scaler = ScalerMethod::mean_sd;
  std::uint64_t seed = 0;
};

/// Random network sized for `ds`, scalers fitted on its training split and
/// bounds set to the observed target range.
NetworkModel prepare_model(const Dataset& ds, const ModelSetup& setup);

/// Full-batch BFGS with Brent line search. Returns the final-epoch parameters.
TrainingResult train(const NetworkModel& initial, const Dataset& ds, const LossConfig& loss,
                     const StoppingCriteria& stopping);

TrainingResult train(const Dataset& ds, const ModelSetup& setup, const LossConfig& loss,
                     const StoppingCriteria& stopping);

}  // namespace ccpp
