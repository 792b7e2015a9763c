#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "ccpp/correlation.hpp"
#include "ccpp/dataset.hpp"
#include "ccpp/training.hpp"

namespace ccpp {

enum class SelectionStop { SelectionGoal, MaxFailures, MaxIterations, MaxTime, MaxInputs, MaxNeurons };

std::string_view to_string(SelectionStop reason) noexcept;

struct Candidate {
  std::size_t index = 0;
  std::vector<std::string> inputs;  // input subset trained for this candidate
  std::size_t neurons = 0;          // first hidden layer width
  double training_error = 0.0;      // training NSE of the best trial
  double selection_error = 0.0;     // minimum selection NSE over trials
  std::size_t epochs = 0;
  double elapsed_seconds = 0.0;
  std::size_t best_trial = 0;
};

struct SelectionResult {
  std::vector<Candidate> candidates;  // in evaluation order
  std::size_t chosen = 0;             // index into candidates
  SelectionStop stop_reason = SelectionStop::MaxInputs;

  const Candidate& best() const { return candidates.at(chosen); }
};

struct TrainingSetup {
  ScalerMethod scaler = ScalerMethod::mean_sd;
  LossConfig loss;
  StoppingCriteria stopping;
};

struct GrowingInputsConfig {
  std::size_t trials = 3;
  std::size_t max_inputs = 4;
  double selection_goal = 0.0;
  std::size_t max_failures = 100;
  std::size_t max_iterations = 1000;
  double max_time_seconds = 3600.0;
  std::size_t hidden_neurons = 3;
  CorrelationMethod ranking = CorrelationMethod::pearson;
  std::uint64_t seed = 0;
  TrainingSetup training;
};

struct GrowingNeuronsConfig {
  std::size_t min_neurons = 1;
  std::size_t max_neurons = 10;
  std::size_t trials = 3;
  std::uint64_t seed = 0;
  TrainingSetup training;
};

/// Inputs ordered by |correlation with the target| on the training split.
std::vector<std::string> rank_inputs(const Dataset& ds, CorrelationMethod method);

/// Trains `trials` networks (seeds seed + trial) and keeps the lowest selection error.
Candidate evaluate_candidate(const Dataset& ds, std::size_t neurons, std::size_t trials,
                             std::uint64_t seed, const TrainingSetup& setup);

/// Adds ranked inputs one at a time; the candidate chain grows under inclusion.
SelectionResult growing_inputs(const Dataset& ds, const GrowingInputsConfig& config);

/// Sweeps the hidden width from min_neurons to max_neurons.
SelectionResult growing_neurons(const Dataset& ds, const GrowingNeuronsConfig& config);

}  // namespace ccpp
