#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "ccpp/network.hpp"

namespace ccpp {

/// Per-input [lower, upper] in physical units.
struct InputBox {
  std::vector<double> lower;
  std::vector<double> upper;

  std::size_t size() const { return lower.size(); }
  bool contains(std::span<const double> x) const;
};

/// Throws EmptyBox unless every input has lower < upper.
void validate(const InputBox& box);

/// The [minimum, maximum] recorded in the model's input scalers, i.e. the
/// training-data ranges for a fitted model.
InputBox training_box(const NetworkModel& model);

struct Evaluation {
  std::vector<double> x;
  double value = 0.0;  // network output before the bounding layer
};

struct SetpointResult {
  std::vector<double> x_star;
  double predicted_output = 0.0;    // bounded
  double unbounded_output = 0.0;    // before clamping
  bool saturated = false;           // clamping changed the prediction
  double baseline_output = 0.0;     // bounded
  double improvement_percent = 0.0;
  std::size_t grid_evaluations = 0;
  double best_grid_value = 0.0;
  std::vector<Evaluation> trace;    // baseline, grid, then local ascents
};

struct OptimizerConfig {
  std::size_t grid_per_dim = 11;
  std::size_t restarts = 8;
  double tol = 1e-6;
  std::size_t max_sweeps = 200;
};

/// Grid scan seeding coordinate-wise Brent ascents inside the box. The
/// search objective is the unclamped network output; the reported
/// prediction passes through the bounding layer.
SetpointResult maximize_output(const NetworkModel& model, const InputBox& box,
                               std::span<const double> baseline,
                               const OptimizerConfig& config = {});

struct WhatIfResult {
  double output = 0.0;
  bool extrapolated = false;  // x lies outside the box
  bool saturated = false;     // bounding layer clamped the output
};

WhatIfResult what_if(const NetworkModel& model, std::span<const double> x, const InputBox& box);

}  // namespace ccpp
