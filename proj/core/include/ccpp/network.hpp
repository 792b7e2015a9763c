#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "ccpp/dataset.hpp"
#include "ccpp/scaling.hpp"

namespace ccpp {

enum class Activation { tanh, linear };

std::string_view to_string(Activation activation) noexcept;
Activation parse_activation(std::string_view name);

struct PerceptronLayer {
  Eigen::MatrixXd weights;  // neurons x inputs
  Eigen::VectorXd biases;   // neurons
  Activation activation = Activation::tanh;

  std::size_t inputs() const { return static_cast<std::size_t>(weights.cols()); }
  std::size_t neurons() const { return static_cast<std::size_t>(weights.rows()); }
};

struct Bounds {
  double lower = 0.0;
  double upper = 0.0;
};

/// Scaling layer -> perceptron layers -> unscaling layer -> bounding layer.
struct NetworkModel {
  std::vector<std::string> input_names;
  std::vector<ScalerParams> input_scalers;
  std::vector<PerceptronLayer> layers;
  ScalerParams output_unscaler;
  Bounds bounds;

  std::size_t input_count() const { return input_scalers.size(); }
  /// Layer widths including the input width, e.g. {4, 2, 1}.
  std::vector<std::size_t> architecture() const;
};

/// Throws InvalidModel (or the scaler's own error) when an invariant fails.
void validate(const NetworkModel& model);

/// Sum of neurons * inputs + neurons over consecutive width pairs.
std::size_t parameter_count(std::span<const std::size_t> widths);

/// Flat parameters: layer by layer, row-major weights then biases.
Eigen::VectorXd parameters(const NetworkModel& model);
void set_parameters(NetworkModel& model, const Eigen::VectorXd& theta);

/// Prediction in physical units, clamped to the model bounds.
double forward(const NetworkModel& model, std::span<const double> x);
/// Prediction before the bounding layer.
double forward_unbounded(const NetworkModel& model, std::span<const double> x);

/// Hidden-layer activations (before the linear head) for one sample.
std::vector<Eigen::VectorXd> hidden_activations(const NetworkModel& model,
                                                std::span<const double> x);

/// Row-per-sample inputs and targets in physical units.
struct Batch {
  Eigen::MatrixXd inputs;
  Eigen::VectorXd targets;

  std::size_t size() const { return static_cast<std::size_t>(targets.size()); }
};

/// Input and target columns of one split.
Batch make_batch(const Dataset& ds, Split split);
/// Input and target columns of every row.
Batch make_batch(const Dataset& ds);

Eigen::MatrixXd scale_inputs(const NetworkModel& model, const Eigen::MatrixXd& inputs);

/// Bounded predictions for each row of `inputs`.
Eigen::VectorXd predict(const NetworkModel& model, const Eigen::MatrixXd& inputs);
Eigen::VectorXd predict_unbounded(const NetworkModel& model, const Eigen::MatrixXd& inputs);

/// Loss index pieces over a batch whose inputs are already scaled.
struct LossEvaluation {
  double sse = 0.0;             // sum of squared errors, physical units
  double sst = 0.0;             // sum of squared target deviations
  double nse = 0.0;             // sse / sst
  double regularization = 0.0;  // weight * sum(theta^2)
  double loss = 0.0;            // nse + regularization
  Eigen::VectorXd gradient;     // d loss / d theta, empty unless requested
  Eigen::VectorXd sse_gradient; // d sse / d theta, empty unless requested
};

/// Unbounded outputs feed the loss; clamping sits outside the differentiable path.
LossEvaluation evaluate_loss(const NetworkModel& model, const Eigen::MatrixXd& scaled_inputs,
                             const Eigen::VectorXd& targets, double regularization_weight,
                             bool with_gradient);

/// Gradient of the loss index (NSE + L2) for a physical-unit batch.
Eigen::VectorXd gradient(const NetworkModel& model, const Batch& batch,
                         double regularization_weight);
/// Gradient of the unnormalized error term sum((y_hat - y)^2).
Eigen::VectorXd sse_gradient(const NetworkModel& model, const Batch& batch);

/// Weights and biases i.i.d. uniform on [-1, 1]; identity scalers, open bounds.
NetworkModel initialize_random(std::span<const std::size_t> widths, std::uint64_t seed);

/// 4-2-1 network with the published scaling constants, weights and biases.
NetworkModel golden_model();

}  // namespace ccpp
