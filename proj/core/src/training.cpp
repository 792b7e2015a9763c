#include "ccpp/training.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <optional>

#include "ccpp/bfgs.hpp"
#include "ccpp/line_search.hpp"

namespace ccpp {

std::string_view to_string(StopReason reason) noexcept {
  switch (reason) {
    case StopReason::LossGoal: return "LossGoal";
    case StopReason::GradientGoal: return "GradientGoal";
    case StopReason::MinDecrease: return "MinDecrease";
    case StopReason::SelectionFailures: return "SelectionFailures";
    case StopReason::MaxEpochs: return "MaxEpochs";
    case StopReason::MaxTime: return "MaxTime";
  }
  return "unknown";
}

double loss_index(const NetworkModel& model, const Batch& rows, const LossConfig& config) {
  if (rows.size() == 0) throw Error(ErrorCode::EmptyInput, "loss over an empty batch");
  return evaluate_loss(model, scale_inputs(model, rows.inputs), rows.targets,
                       config.regularization_weight, false)
      .loss;
}

NetworkModel prepare_model(const Dataset& ds, const ModelSetup& setup) {
  const auto inputs = ds.input_indices();
  const auto target = ds.target_index();
  if (inputs.empty()) throw Error(ErrorCode::InvalidArgument, "dataset has no input columns");
  const auto training_rows = ds.rows_in(Split::training);
  if (training_rows.empty()) throw Error(ErrorCode::EmptyInput, "training split is empty");

  std::vector<std::size_t> widths{inputs.size()};
  widths.insert(widths.end(), setup.hidden.begin(), setup.hidden.end());
  widths.push_back(1);
  NetworkModel model = initialize_random(widths, setup.seed);

  const auto fit_column = [&](std::size_t col) {
    std::vector<double> values;
    values.reserve(training_rows.size());
    for (auto r : training_rows) {
      values.push_back(ds.values()(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(col)));
    }
    return fit(values, setup.scaler);
  };
  model.input_names = ds.input_names();
  for (std::size_t j = 0; j < inputs.size(); ++j) model.input_scalers[j] = fit_column(inputs[j]);
  model.output_unscaler = fit_column(target);

  const Eigen::VectorXd all_targets = ds.values().col(static_cast<Eigen::Index>(target));
  model.bounds = {all_targets.minCoeff(), all_targets.maxCoeff()};
  if (!(model.bounds.lower < model.bounds.upper)) {
    throw Error(ErrorCode::ConstantTargets, "target column is constant");
  }
  return model;
}

TrainingResult train(const NetworkModel& initial, const Dataset& ds, const LossConfig& loss,
                     const StoppingCriteria& stopping) {
  if (stopping.max_epochs < 1) {
    throw Error(ErrorCode::InvalidArgument, "max_epochs must be at least 1");
  }
  if (!(loss.regularization_weight >= 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "regularization weight must be nonnegative");
  }
  validate(initial);
  const Batch training = make_batch(ds, Split::training);
  const Batch selection = make_batch(ds, Split::selection);
  if (training.size() == 0 || selection.size() == 0) {
    throw Error(ErrorCode::EmptyInput, "training and selection splits must be non-empty");
  }

  const auto started = std::chrono::steady_clock::now();
  const auto elapsed = [&] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  };

  const Eigen::MatrixXd train_x = scale_inputs(initial, training.inputs);
  const Eigen::MatrixXd select_x = scale_inputs(initial, selection.inputs);
  const double lambda = loss.regularization_weight;

  NetworkModel model = initial;
  NetworkModel scratch = initial;
  Eigen::VectorXd theta = parameters(model);

  TrainingTrace trace;
  trace.regularization_weight = lambda;

  const auto abort_if_nonfinite = [&](double value, std::string_view what) {
    if (!std::isfinite(value)) {
      trace.elapsed_seconds = elapsed();
      throw NonFiniteLossError(std::string(what) + " became non-finite after epoch " +
                                   std::to_string(trace.epochs.size()),
                               trace);
    }
  };

  auto current = evaluate_loss(model, train_x, training.targets, lambda, true);
  abort_if_nonfinite(current.loss, "training loss");
  trace.initial_training_loss = current.nse;
  trace.initial_training_loss_regularized = current.loss;
  trace.initial_selection_loss = evaluate_loss(model, select_x, selection.targets, 0.0, false).nse;

  BfgsState bfgs(static_cast<std::size_t>(theta.size()));
  double best_selection = std::numeric_limits<double>::infinity();
  std::size_t selection_failures = 0;

  for (std::size_t epoch = 1;; ++epoch) {
    Eigen::VectorXd direction = bfgs_direction(bfgs, current.gradient);
    if (!(direction.dot(current.gradient) < 0.0)) {
      bfgs.reset();
      direction = -current.gradient;
    }

    const Objective1D along = [&](double t) {
      set_parameters(scratch, theta + t * direction);
      return evaluate_loss(scratch, train_x, training.targets, lambda, false).loss;
    };

    EpochRecord record;
    record.epoch = epoch;
    double step = 0.0;
    try {
      step = brent_line_search(along, current.loss, 1e-3).step;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::BracketFailure) throw;
      record.line_search_failed = true;
      // Fixed fallback step, kept only if it does not raise the loss.
      step = along(1e-3) <= current.loss ? 1e-3 : 0.0;
      bfgs.reset();
    }

    const Eigen::VectorXd next_theta = theta + step * direction;
    set_parameters(model, next_theta);
    auto next = evaluate_loss(model, train_x, training.targets, lambda, true);
    abort_if_nonfinite(next.loss, "training loss");

    if (step > 0.0 && !record.line_search_failed) {
      const Eigen::VectorXd s = next_theta - theta;
      const Eigen::VectorXd y = next.gradient - current.gradient;
      if (!bfgs.update(s, y)) bfgs.reset();
      bfgs.remember(next.gradient, s);
    }

    const double selection_loss = evaluate_loss(model, select_x, selection.targets, 0.0, false).nse;
    abort_if_nonfinite(selection_loss, "selection loss");

    record.training_loss = next.nse;
    record.training_loss_regularized = next.loss;
    record.selection_loss = selection_loss;
    record.gradient_norm = next.gradient.norm();
    record.step = step;
    trace.epochs.push_back(record);

    if (selection_loss < best_selection) {
      best_selection = selection_loss;
      trace.best_epoch = trace.epochs.size() - 1;
      selection_failures = 0;
    } else {
      ++selection_failures;
    }

    const double decrease = current.loss - next.loss;
    theta = next_theta;
    current = std::move(next);

    std::optional<StopReason> stop;
    if (current.loss <= stopping.loss_goal) {
      stop = StopReason::LossGoal;
    } else if (stopping.gradient_norm_goal > 0.0 &&
               record.gradient_norm <= stopping.gradient_norm_goal) {
      stop = StopReason::GradientGoal;
    } else if (decrease <= stopping.min_loss_decrease) {
      stop = StopReason::MinDecrease;
    } else if (selection_failures >= stopping.max_selection_failures) {
      stop = StopReason::SelectionFailures;
    } else if (epoch >= stopping.max_epochs) {
      stop = StopReason::MaxEpochs;
    } else if (elapsed() >= stopping.max_time_seconds) {
      stop = StopReason::MaxTime;
    }
    if (stop) {
      trace.stop_reason = *stop;
      break;
    }
  }

  trace.elapsed_seconds = elapsed();
  return {std::move(model), std::move(trace)};
}

TrainingResult train(const Dataset& ds, const ModelSetup& setup, const LossConfig& loss,
                     const StoppingCriteria& stopping) {
  return train(prepare_model(ds, setup), ds, loss, stopping);
}

}  // namespace ccpp
