#include "ccpp/network.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ccpp/error.hpp"
#include "ccpp/rng.hpp"

namespace ccpp {

std::string_view to_string(Activation activation) noexcept {
  switch (activation) {
    case Activation::tanh: return "tanh";
    case Activation::linear: return "linear";
  }
  return "unknown";
}

Activation parse_activation(std::string_view name) {
  if (name == "tanh") return Activation::tanh;
  if (name == "linear") return Activation::linear;
  throw Error(ErrorCode::InvalidArgument, "unknown activation '" + std::string(name) + "'");
}

std::vector<std::size_t> NetworkModel::architecture() const {
  std::vector<std::size_t> widths{input_count()};
  for (const auto& layer : layers) widths.push_back(layer.neurons());
  return widths;
}

void validate(const NetworkModel& model) {
  const auto fail = [](const std::string& why) { throw Error(ErrorCode::InvalidModel, why); };
  if (model.input_scalers.empty()) fail("model has no inputs");
  if (model.input_names.size() != model.input_scalers.size()) {
    fail("input name count does not match scaler count");
  }
  if (model.layers.empty()) fail("model has no perceptron layers");
  std::size_t width = model.input_count();
  for (std::size_t l = 0; l < model.layers.size(); ++l) {
    const auto& layer = model.layers[l];
    if (layer.inputs() != width) {
      fail("layer " + std::to_string(l) + " expects " + std::to_string(layer.inputs()) +
           " inputs, previous width is " + std::to_string(width));
    }
    if (layer.neurons() == 0) fail("layer " + std::to_string(l) + " has no neurons");
    if (static_cast<std::size_t>(layer.biases.size()) != layer.neurons()) {
      fail("layer " + std::to_string(l) + " bias length differs from its neuron count");
    }
    if (!layer.weights.allFinite() || !layer.biases.allFinite()) {
      fail("layer " + std::to_string(l) + " has non-finite parameters");
    }
    width = layer.neurons();
  }
  const auto& head = model.layers.back();
  if (head.neurons() != 1 || head.activation != Activation::linear) {
    fail("last layer must be a single linear neuron");
  }
  if (!(model.bounds.lower < model.bounds.upper)) fail("bounds must satisfy lower < upper");
  for (const auto& s : model.input_scalers) validate(s);
  validate(model.output_unscaler);
}

std::size_t parameter_count(std::span<const std::size_t> widths) {
  std::size_t total = 0;
  for (std::size_t i = 1; i < widths.size(); ++i) total += widths[i] * widths[i - 1] + widths[i];
  return total;
}

Eigen::VectorXd parameters(const NetworkModel& model) {
  const auto widths = model.architecture();
  Eigen::VectorXd theta(static_cast<Eigen::Index>(parameter_count(widths)));
  Eigen::Index k = 0;
  for (const auto& layer : model.layers) {
    for (Eigen::Index i = 0; i < layer.weights.rows(); ++i) {
      for (Eigen::Index j = 0; j < layer.weights.cols(); ++j) theta(k++) = layer.weights(i, j);
    }
    for (Eigen::Index i = 0; i < layer.biases.size(); ++i) theta(k++) = layer.biases(i);
  }
  return theta;
}

void set_parameters(NetworkModel& model, const Eigen::VectorXd& theta) {
  const auto widths = model.architecture();
  if (static_cast<std::size_t>(theta.size()) != parameter_count(widths)) {
    throw Error(ErrorCode::DimensionMismatch, "parameter vector length does not match model");
  }
  Eigen::Index k = 0;
  for (auto& layer : model.layers) {
    for (Eigen::Index i = 0; i < layer.weights.rows(); ++i) {
      for (Eigen::Index j = 0; j < layer.weights.cols(); ++j) layer.weights(i, j) = theta(k++);
    }
    for (Eigen::Index i = 0; i < layer.biases.size(); ++i) layer.biases(i) = theta(k++);
  }
}

namespace {

void check_input(const NetworkModel& model, std::span<const double> x) {
  if (x.size() != model.input_count()) {
    throw Error(ErrorCode::DimensionMismatch, "expected " + std::to_string(model.input_count()) +
                                                  " inputs, got " + std::to_string(x.size()));
  }
  for (double v : x) {
    if (!std::isfinite(v)) throw Error(ErrorCode::NonFiniteInput, "input is not finite");
  }
}

// Per-neuron accumulation runs left to right over the inputs and adds the
// bias last, the same order as the published reference evaluation.
Eigen::VectorXd apply_layer(const PerceptronLayer& layer, const Eigen::VectorXd& v) {
  Eigen::VectorXd out(layer.biases.size());
  for (Eigen::Index i = 0; i < layer.weights.rows(); ++i) {
    double acc = 0.0;
    for (Eigen::Index j = 0; j < layer.weights.cols(); ++j) acc += v(j) * layer.weights(i, j);
    const double z = layer.biases(i) + acc;
    out(i) = layer.activation == Activation::tanh ? std::tanh(z) : z;
  }
  return out;
}

Eigen::VectorXd scaled_vector(const NetworkModel& model, std::span<const double> x) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(x.size()));
  for (std::size_t j = 0; j < x.size(); ++j) {
    v(static_cast<Eigen::Index>(j)) = scale(x[j], model.input_scalers[j]);
  }
  return v;
}

double clamp_to(const Bounds& b, double y) { return std::clamp(y, b.lower, b.upper); }

}  // namespace

double forward_unbounded(const NetworkModel& model, std::span<const double> x) {
  check_input(model, x);
  Eigen::VectorXd v = scaled_vector(model, x);
  for (const auto& layer : model.layers) v = apply_layer(layer, v);
  return unscale(v(0), model.output_unscaler);
}

double forward(const NetworkModel& model, std::span<const double> x) {
  return clamp_to(model.bounds, forward_unbounded(model, x));
}

std::vector<Eigen::VectorXd> hidden_activations(const NetworkModel& model,
                                                std::span<const double> x) {
  check_input(model, x);
  std::vector<Eigen::VectorXd> out;
  Eigen::VectorXd v = scaled_vector(model, x);
  for (std::size_t l = 0; l + 1 < model.layers.size(); ++l) {
    v = apply_layer(model.layers[l], v);
    out.push_back(v);
  }
  return out;
}

Batch make_batch(const Dataset& ds, Split split) { return make_batch(ds.subset(split)); }

Batch make_batch(const Dataset& ds) {
  const auto inputs = ds.input_indices();
  const auto target = ds.target_index();
  Batch batch;
  batch.inputs.resize(static_cast<Eigen::Index>(ds.row_count()),
                      static_cast<Eigen::Index>(inputs.size()));
  for (std::size_t j = 0; j < inputs.size(); ++j) {
    batch.inputs.col(static_cast<Eigen::Index>(j)) =
        ds.values().col(static_cast<Eigen::Index>(inputs[j]));
  }
  batch.targets = ds.values().col(static_cast<Eigen::Index>(target));
  return batch;
}

Eigen::MatrixXd scale_inputs(const NetworkModel& model, const Eigen::MatrixXd& inputs) {
  if (static_cast<std::size_t>(inputs.cols()) != model.input_count()) {
    throw Error(ErrorCode::DimensionMismatch, "batch width does not match model inputs");
  }
  if (!inputs.allFinite()) throw Error(ErrorCode::NonFiniteInput, "batch has non-finite inputs");
  Eigen::MatrixXd out(inputs.rows(), inputs.cols());
  for (Eigen::Index j = 0; j < inputs.cols(); ++j) {
    const auto& s = model.input_scalers[static_cast<std::size_t>(j)];
    for (Eigen::Index i = 0; i < inputs.rows(); ++i) out(i, j) = scale(inputs(i, j), s);
  }
  return out;
}

namespace {

// Layer outputs for a batch; activations[0] is the scaled input.
std::vector<Eigen::MatrixXd> forward_batch(const NetworkModel& model, const Eigen::MatrixXd& x) {
  std::vector<Eigen::MatrixXd> activations;
  activations.reserve(model.layers.size() + 1);
  activations.push_back(x);
  for (const auto& layer : model.layers) {
    Eigen::MatrixXd z = activations.back() * layer.weights.transpose();
    z.rowwise() += layer.biases.transpose();
    if (layer.activation == Activation::tanh) z = z.array().tanh().matrix();
    activations.push_back(std::move(z));
  }
  return activations;
}


// Gradient of sum((y_hat - y)^2) with respect to the flat parameter vector,
// given the batch activations and the residuals y_hat - y.
Eigen::VectorXd backpropagate(const NetworkModel& model, const std::vector<Eigen::MatrixXd>& acts,
                              const Eigen::VectorXd& residual) {
  const Eigen::VectorXd& core = acts.back().col(0);
  Eigen::MatrixXd delta(residual.size(), 1);
  for (Eigen::Index i = 0; i < residual.size(); ++i) {
    delta(i, 0) = 2.0 * residual(i) * unscale_derivative(core(i), model.output_unscaler);
  }
  std::vector<Eigen::MatrixXd> weight_grads(model.layers.size());
  std::vector<Eigen::VectorXd> bias_grads(model.layers.size());
  for (std::size_t l = model.layers.size(); l-- > 0;) {
    const auto& layer = model.layers[l];
    if (layer.activation == Activation::tanh) {
      delta = (delta.array() * (1.0 - acts[l + 1].array().square())).matrix();
    }
    weight_grads[l] = delta.transpose() * acts[l];
    bias_grads[l] = delta.colwise().sum().transpose();
    if (l > 0) delta = delta * layer.weights;
  }

  Eigen::VectorXd g(static_cast<Eigen::Index>(parameter_count(model.architecture())));
  Eigen::Index k = 0;
  for (std::size_t l = 0; l < model.layers.size(); ++l) {
    for (Eigen::Index i = 0; i < weight_grads[l].rows(); ++i) {
      for (Eigen::Index j = 0; j < weight_grads[l].cols(); ++j) g(k++) = weight_grads[l](i, j);
    }
    for (Eigen::Index i = 0; i < bias_grads[l].size(); ++i) g(k++) = bias_grads[l](i);
  }
  return g;
}

Eigen::VectorXd residuals(const NetworkModel& model, const std::vector<Eigen::MatrixXd>& acts,
                          const Eigen::VectorXd& targets) {
  const Eigen::VectorXd& core = acts.back().col(0);
  Eigen::VectorXd r(targets.size());
  for (Eigen::Index i = 0; i < targets.size(); ++i) {
    r(i) = unscale(core(i), model.output_unscaler) - targets(i);
  }
  return r;
}

}  // namespace

Eigen::VectorXd predict_unbounded(const NetworkModel& model, const Eigen::MatrixXd& inputs) {
  const auto acts = forward_batch(model, scale_inputs(model, inputs));
  Eigen::VectorXd out = acts.back().col(0);
  for (Eigen::Index i = 0; i < out.size(); ++i) out(i) = unscale(out(i), model.output_unscaler);
  return out;
}

Eigen::VectorXd predict(const NetworkModel& model, const Eigen::MatrixXd& inputs) {
  Eigen::VectorXd out = predict_unbounded(model, inputs);
  for (Eigen::Index i = 0; i < out.size(); ++i) out(i) = clamp_to(model.bounds, out(i));
  return out;
}

LossEvaluation evaluate_loss(const NetworkModel& model, const Eigen::MatrixXd& scaled_inputs,
                             const Eigen::VectorXd& targets, double regularization_weight,
                             bool with_gradient) {
  if (scaled_inputs.rows() != targets.size() || targets.size() == 0) {
    throw Error(ErrorCode::DimensionMismatch, "batch inputs and targets differ in length");
  }
  if (static_cast<std::size_t>(scaled_inputs.cols()) != model.input_count()) {
    throw Error(ErrorCode::DimensionMismatch, "batch width does not match model inputs");
  }
  const auto acts = forward_batch(model, scaled_inputs);
  const Eigen::VectorXd residual = residuals(model, acts, targets);

  LossEvaluation out;
  out.sse = residual.squaredNorm();
  const double mean = targets.mean();
  out.sst = (targets.array() - mean).square().sum();
  if (out.sst == 0.0) {
    throw Error(ErrorCode::ConstantTargets, "targets are constant; NSE is undefined");
  }
  out.nse = out.sse / out.sst;
  const Eigen::VectorXd theta = parameters(model);
  out.regularization = regularization_weight * theta.squaredNorm();
  out.loss = out.nse + out.regularization;
  if (!with_gradient) return out;

  out.sse_gradient = backpropagate(model, acts, residual);
  out.gradient = out.sse_gradient / out.sst + 2.0 * regularization_weight * theta;
  return out;
}

Eigen::VectorXd gradient(const NetworkModel& model, const Batch& batch,
                         double regularization_weight) {
  return evaluate_loss(model, scale_inputs(model, batch.inputs), batch.targets,
                       regularization_weight, true)
      .gradient;
}

Eigen::VectorXd sse_gradient(const NetworkModel& model, const Batch& batch) {
  if (batch.size() == 0) throw Error(ErrorCode::EmptyInput, "empty batch");
  if (static_cast<std::size_t>(batch.inputs.rows()) != batch.size()) {
    throw Error(ErrorCode::DimensionMismatch, "batch inputs and targets differ in length");
  }
  const auto acts = forward_batch(model, scale_inputs(model, batch.inputs));
  return backpropagate(model, acts, residuals(model, acts, batch.targets));
}

NetworkModel initialize_random(std::span<const std::size_t> widths, std::uint64_t seed) {
  if (widths.size() < 2) {
    throw Error(ErrorCode::BadArchitecture, "architecture needs an input and an output width");
  }
  if (std::any_of(widths.begin(), widths.end(), [](std::size_t w) { return w == 0; })) {
    throw Error(ErrorCode::BadArchitecture, "layer widths must be at least 1");
  }
  if (widths.back() != 1) {
    throw Error(ErrorCode::BadArchitecture, "regression head must have exactly one neuron");
  }
  NetworkModel model;
  for (std::size_t j = 0; j < widths.front(); ++j) {
    model.input_names.push_back("x" + std::to_string(j + 1));
    model.input_scalers.push_back({});
  }
  Rng rng(seed);
  for (std::size_t l = 1; l < widths.size(); ++l) {
    PerceptronLayer layer;
    const auto rows = static_cast<Eigen::Index>(widths[l]);
    const auto cols = static_cast<Eigen::Index>(widths[l - 1]);
    layer.weights.resize(rows, cols);
    layer.biases.resize(rows);
    for (Eigen::Index i = 0; i < rows; ++i) {
      for (Eigen::Index j = 0; j < cols; ++j) layer.weights(i, j) = rng.uniform(-1.0, 1.0);
    }
    for (Eigen::Index i = 0; i < rows; ++i) layer.biases(i) = rng.uniform(-1.0, 1.0);
    layer.activation = l + 1 == widths.size() ? Activation::linear : Activation::tanh;
    model.layers.push_back(std::move(layer));
  }
  model.output_unscaler = {};
  model.bounds = {std::numeric_limits<double>::lowest(), std::numeric_limits<double>::max()};
  return model;
}

NetworkModel golden_model() {
  NetworkModel model;
  model.input_names = {"T", "V", "AP", "RH"};
  // mean_sd scalers: offset = mean, scale = deviation. Ranges are the
  // reported column extremes.
  model.input_scalers = {
      {ScalerMethod::mean_sd, 1.81, 37.1, 19.65119934, 7.452469826},
      {ScalerMethod::mean_sd, 25.4, 81.6, 54.30580139, 12.70790005},
      {ScalerMethod::mean_sd, 993.0, 1030.0, 1013.26001, 5.938789845},
      {ScalerMethod::mean_sd, 25.6, 100.0, 73.30899811, 14.60029984},
  };

  PerceptronLayer hidden;
  hidden.weights.resize(2, 4);
  hidden.weights << 0.593324, 0.00657032, 0.0933036, 0.0310159,
                    0.288555, 0.204765, -0.144645, 0.070106;
  hidden.biases.resize(2);
  hidden.biases << 0.688402, -0.110117;
  hidden.activation = Activation::tanh;

  PerceptronLayer head;
  head.weights.resize(1, 2);
  head.weights << -1.34001, -1.13091;
  head.biases.resize(1);
  head.biases << 0.582504;
  head.activation = Activation::linear;

  model.layers = {hidden, head};
  model.output_unscaler = {ScalerMethod::mean_sd, 420.0, 496.0, 454.3649902, 17.06699944};
  model.bounds = {420.0, 496.0};
  return model;
}

}  // namespace ccpp
