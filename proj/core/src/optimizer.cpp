#include "ccpp/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ccpp/error.hpp"
#include "ccpp/line_search.hpp"

namespace ccpp {

bool InputBox::contains(std::span<const double> x) const {
  if (x.size() != size()) return false;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] >= lower[i] && x[i] <= upper[i])) return false;
  }
  return true;
}

void validate(const InputBox& box) {
  if (box.lower.empty() || box.lower.size() != box.upper.size()) {
    throw Error(ErrorCode::EmptyBox, "box has no dimensions or mismatched bounds");
  }
  for (std::size_t i = 0; i < box.size(); ++i) {
    if (!(box.lower[i] < box.upper[i]) || !std::isfinite(box.lower[i]) ||
        !std::isfinite(box.upper[i])) {
      throw Error(ErrorCode::EmptyBox, "box dimension " + std::to_string(i) + " is empty");
    }
  }
}

InputBox training_box(const NetworkModel& model) {
  InputBox box;
  for (const auto& s : model.input_scalers) {
    box.lower.push_back(s.minimum);
    box.upper.push_back(s.maximum);
  }
  return box;
}

namespace {

class Search {
 public:
  Search(const NetworkModel& model, std::vector<Evaluation>& trace)
      : model_(model), trace_(trace) {}

  double operator()(const std::vector<double>& x) {
    const double value = forward_unbounded(model_, x);
    trace_.push_back({x, value});
    return value;
  }

 private:
  const NetworkModel& model_;
  std::vector<Evaluation>& trace_;
};

struct Point {
  std::vector<double> x;
  double value = 0.0;
};

Point coordinate_ascent(Search& objective, const InputBox& box, Point start,
                        const OptimizerConfig& config) {
  Point best = std::move(start);
  for (std::size_t sweep = 0; sweep < config.max_sweeps; ++sweep) {
    const double before = best.value;
    for (std::size_t d = 0; d < box.size(); ++d) {
      std::vector<double> probe = best.x;
      const Objective1D negated = [&](double t) {
        probe[d] = t;
        return -objective(probe);
      };
      const double width = box.upper[d] - box.lower[d];
      const auto line = brent_minimize(negated, box.lower[d], box.upper[d], best.x[d], -best.value,
                                       1e-8 * width);
      double arg = line.step;
      double value = -line.value;
      // Brent never samples the interval ends; boundary optima need them.
      for (double end : {box.lower[d], box.upper[d]}) {
        const double v = -negated(end);
        if (v > value) {
          value = v;
          arg = end;
        }
      }
      if (value > best.value) {
        best.x[d] = arg;
        best.value = value;
      }
    }
    if (best.value - before < config.tol * std::max(1.0, std::abs(before))) break;
  }
  return best;
}

}  // namespace

SetpointResult maximize_output(const NetworkModel& model, const InputBox& box,
                               std::span<const double> baseline, const OptimizerConfig& config) {
  validate(model);
  validate(box);
  if (box.size() != model.input_count() || baseline.size() != model.input_count()) {
    throw Error(ErrorCode::DimensionMismatch, "box, baseline and model inputs differ in size");
  }
  if (!box.contains(baseline)) {
    throw Error(ErrorCode::InvalidArgument, "baseline lies outside the search box");
  }
  if (config.grid_per_dim < 1 || config.restarts < 1) {
    throw Error(ErrorCode::InvalidArgument, "grid_per_dim and restarts must be at least 1");
  }

  SetpointResult result;
  Search objective(model, result.trace);
  const std::vector<double> base(baseline.begin(), baseline.end());
  const double baseline_value = objective(base);

  // Grid scan in row-major order over the axes; the last axis varies fastest.
  const std::size_t dims = box.size();
  const auto axis_value = [&](std::size_t d, std::size_t i) {
    if (config.grid_per_dim == 1) return 0.5 * (box.lower[d] + box.upper[d]);
    if (i + 1 == config.grid_per_dim) return box.upper[d];
    return box.lower[d] + (box.upper[d] - box.lower[d]) * static_cast<double>(i) /
                              static_cast<double>(config.grid_per_dim - 1);
  };
  std::size_t total = 1;
  for (std::size_t d = 0; d < dims; ++d) total *= config.grid_per_dim;
  std::vector<Point> grid;
  grid.reserve(total);
  for (std::size_t k = 0; k < total; ++k) {
    std::vector<double> x(dims);
    std::size_t rest = k;
    for (std::size_t d = dims; d-- > 0;) {
      x[d] = axis_value(d, rest % config.grid_per_dim);
      rest /= config.grid_per_dim;
    }
    const double v = objective(x);
    grid.push_back({std::move(x), v});
  }
  result.grid_evaluations = grid.size();

  std::vector<std::size_t> order(grid.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return grid[a].value > grid[b].value; });
  result.best_grid_value = grid[order.front()].value;

  Point best{base, baseline_value};
  if (grid[order.front()].value > best.value) best = grid[order.front()];
  const std::size_t restarts = std::min(config.restarts, grid.size());
  for (std::size_t r = 0; r < restarts; ++r) {
    Point local = coordinate_ascent(objective, box, grid[order[r]], config);
    // Strict comparison keeps the lowest restart index on ties.
    if (local.value > best.value) best = std::move(local);
  }

  result.x_star = best.x;
  result.unbounded_output = best.value;
  result.predicted_output = std::clamp(best.value, model.bounds.lower, model.bounds.upper);
  result.saturated = result.predicted_output != best.value;
  result.baseline_output = std::clamp(baseline_value, model.bounds.lower, model.bounds.upper);
  result.improvement_percent =
      100.0 * (result.predicted_output - result.baseline_output) / result.baseline_output;
  return result;
}

WhatIfResult what_if(const NetworkModel& model, std::span<const double> x, const InputBox& box) {
  if (x.size() != model.input_count()) {
    throw Error(ErrorCode::DimensionMismatch, "expected " + std::to_string(model.input_count()) +
                                                  " inputs, got " + std::to_string(x.size()));
  }
  for (double v : x) {
    if (!std::isfinite(v)) throw Error(ErrorCode::NonFiniteInput, "what-if input is not finite");
  }
  WhatIfResult out;
  const double raw = forward_unbounded(model, x);
  out.output = std::clamp(raw, model.bounds.lower, model.bounds.upper);
  out.saturated = out.output != raw;
  out.extrapolated = !box.contains(x);
  return out;
}

}  // namespace ccpp
