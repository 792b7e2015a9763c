#include "ccpp/selection.hpp"

#include <algorithm>
#include <chrono>
#include <limits>
#include <cmath>
#include <numeric>

#include "ccpp/error.hpp"

namespace ccpp {

std::string_view to_string(SelectionStop reason) noexcept {
  switch (reason) {
    case SelectionStop::SelectionGoal: return "SelectionGoal";
    case SelectionStop::MaxFailures: return "MaxFailures";
    case SelectionStop::MaxIterations: return "MaxIterations";
    case SelectionStop::MaxTime: return "MaxTime";
    case SelectionStop::MaxInputs: return "MaxInputs";
    case SelectionStop::MaxNeurons: return "MaxNeurons";
  }
  return "unknown";
}

std::vector<std::string> rank_inputs(const Dataset& ds, CorrelationMethod method) {
  const Dataset training = ds.subset(Split::training);
  const auto target_idx = training.target_index();
  const Eigen::VectorXd target = training.values().col(static_cast<Eigen::Index>(target_idx));
  const std::span<const double> y(target.data(), static_cast<std::size_t>(target.size()));

  struct Ranked {
    std::string name;
    double strength;
  };
  std::vector<Ranked> ranked;
  for (auto c : training.input_indices()) {
    const Eigen::VectorXd col = training.values().col(static_cast<Eigen::Index>(c));
    const std::span<const double> x(col.data(), static_cast<std::size_t>(col.size()));
    double r = 0.0;
    switch (method) {
      case CorrelationMethod::pearson: r = pearson(x, y); break;
      case CorrelationMethod::spearman: r = spearman(x, y); break;
      case CorrelationMethod::maximal: r = maximal_correlation(x, y).r; break;
    }
    ranked.push_back({training.columns()[c].name, std::abs(r)});
  }
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const Ranked& a, const Ranked& b) { return a.strength > b.strength; });
  std::vector<std::string> names;
  for (auto& r : ranked) names.push_back(std::move(r.name));
  return names;
}

Candidate evaluate_candidate(const Dataset& ds, std::size_t neurons, std::size_t trials,
                             std::uint64_t seed, const TrainingSetup& setup) {
  if (trials < 1) throw Error(ErrorCode::InvalidArgument, "at least one trial is required");
  if (neurons < 1) throw Error(ErrorCode::InvalidArgument, "at least one hidden neuron is required");
  const auto started = std::chrono::steady_clock::now();
  Candidate candidate;
  candidate.inputs = ds.input_names();
  candidate.neurons = neurons;
  candidate.selection_error = std::numeric_limits<double>::infinity();
  for (std::size_t trial = 0; trial < trials; ++trial) {
    ModelSetup model_setup{{neurons}, setup.scaler, seed + trial};
    const auto result = train(ds, model_setup, setup.loss, setup.stopping);
    const auto& last = result.trace.epochs.back();
    if (last.selection_loss < candidate.selection_error) {
      candidate.selection_error = last.selection_loss;
      candidate.training_error = last.training_loss;
      candidate.epochs = result.trace.epochs.size();
      candidate.best_trial = trial;
    }
  }
  candidate.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return candidate;
}

namespace {

std::size_t argmin_selection(const std::vector<Candidate>& candidates) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < candidates.size(); ++i) {
    if (candidates[i].selection_error < candidates[best].selection_error) best = i;
  }
  return best;
}

}  // namespace

SelectionResult growing_inputs(const Dataset& ds, const GrowingInputsConfig& config) {
  if (config.max_inputs < 1) throw Error(ErrorCode::InvalidArgument, "max_inputs must be >= 1");
  const auto ranked = rank_inputs(ds, config.ranking);
  if (ranked.empty()) throw Error(ErrorCode::InvalidArgument, "dataset has no input columns");

  const auto started = std::chrono::steady_clock::now();
  SelectionResult result;
  result.stop_reason = SelectionStop::MaxInputs;
  double best = std::numeric_limits<double>::infinity();
  std::size_t failures = 0;
  const std::size_t limit = std::min(config.max_inputs, ranked.size());

  for (std::size_t m = 1; m <= limit; ++m) {
    const std::vector<std::string> subset(ranked.begin(),
                                          ranked.begin() + static_cast<std::ptrdiff_t>(m));
    Candidate c = evaluate_candidate(ds.with_inputs(subset), config.hidden_neurons, config.trials,
                                     config.seed, config.training);
    c.index = result.candidates.size();
    const double error = c.selection_error;
    result.candidates.push_back(std::move(c));

    if (error < best) {
      best = error;
      failures = 0;
    } else {
      ++failures;
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    if (error <= config.selection_goal) {
      result.stop_reason = SelectionStop::SelectionGoal;
      break;
    }
    if (failures >= config.max_failures) {
      result.stop_reason = SelectionStop::MaxFailures;
      break;
    }
    if (result.candidates.size() >= config.max_iterations) {
      result.stop_reason = SelectionStop::MaxIterations;
      break;
    }
    if (seconds >= config.max_time_seconds) {
      result.stop_reason = SelectionStop::MaxTime;
      break;
    }
  }
  result.chosen = argmin_selection(result.candidates);
  return result;
}

SelectionResult growing_neurons(const Dataset& ds, const GrowingNeuronsConfig& config) {
  if (config.min_neurons < 1 || config.max_neurons < config.min_neurons) {
    throw Error(ErrorCode::InvalidArgument, "neuron sweep needs 1 <= min_neurons <= max_neurons");
  }
  SelectionResult result;
  for (std::size_t k = config.min_neurons; k <= config.max_neurons; ++k) {
    Candidate c = evaluate_candidate(ds, k, config.trials, config.seed, config.training);
    c.index = result.candidates.size();
    result.candidates.push_back(std::move(c));
  }
  result.chosen = argmin_selection(result.candidates);
  result.stop_reason = SelectionStop::MaxNeurons;
  return result;
}

}  // namespace ccpp
