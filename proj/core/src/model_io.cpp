#include "ccpp/model_io.hpp"

#include <fstream>
#include <sstream>

#include "ccpp/error.hpp"

namespace ccpp {

using nlohmann::json;

nlohmann::json scaler_to_json(const ScalerParams& p) {
  return {{"method", to_string(p.method)},
          {"minimum", p.minimum},
          {"maximum", p.maximum},
          {"mean", p.mean},
          {"deviation", p.deviation}};
}

ScalerParams scaler_from_json(const nlohmann::json& doc) {
  ScalerParams p;
  p.method = parse_scaler_method(doc.at("method").get<std::string>());
  p.minimum = doc.at("minimum").get<double>();
  p.maximum = doc.at("maximum").get<double>();
  p.mean = doc.at("mean").get<double>();
  p.deviation = doc.at("deviation").get<double>();
  return p;
}

nlohmann::json model_to_json(const NetworkModel& model) {
  json layers = json::array();
  for (const auto& layer : model.layers) {
    json weights = json::array();
    for (Eigen::Index i = 0; i < layer.weights.rows(); ++i) {
      json row = json::array();
      for (Eigen::Index j = 0; j < layer.weights.cols(); ++j) row.push_back(layer.weights(i, j));
      weights.push_back(std::move(row));
    }
    json biases = json::array();
    for (Eigen::Index i = 0; i < layer.biases.size(); ++i) biases.push_back(layer.biases(i));
    layers.push_back({{"weights", std::move(weights)},
                      {"biases", std::move(biases)},
                      {"activation", to_string(layer.activation)}});
  }
  json scalers = json::array();
  for (const auto& s : model.input_scalers) scalers.push_back(scaler_to_json(s));
  return {{"format", "ccpp-model"},
          {"version", kModelFormatVersion},
          {"input_names", model.input_names},
          {"input_scalers", std::move(scalers)},
          {"layers", std::move(layers)},
          {"output_unscaler", scaler_to_json(model.output_unscaler)},
          {"bounds", {{"lower", model.bounds.lower}, {"upper", model.bounds.upper}}}};
}

NetworkModel model_from_json(const nlohmann::json& doc) {
  if (!doc.is_object() || !doc.contains("version")) {
    throw Error(ErrorCode::CorruptModel, "model document has no version tag");
  }
  if (!doc.at("version").is_number_integer() ||
      doc.at("version").get<int>() != kModelFormatVersion) {
    throw Error(ErrorCode::FormatVersionMismatch,
                "model format version " + doc.at("version").dump() + " is not supported (expected " +
                    std::to_string(kModelFormatVersion) + ")");
  }
  NetworkModel model;
  try {
    model.input_names = doc.at("input_names").get<std::vector<std::string>>();
    for (const auto& s : doc.at("input_scalers")) model.input_scalers.push_back(scaler_from_json(s));
    for (const auto& l : doc.at("layers")) {
      PerceptronLayer layer;
      const auto& weights = l.at("weights");
      const auto rows = static_cast<Eigen::Index>(weights.size());
      const auto cols = rows ? static_cast<Eigen::Index>(weights.at(0).size()) : 0;
      layer.weights.resize(rows, cols);
      for (Eigen::Index i = 0; i < rows; ++i) {
        const auto& row = weights.at(static_cast<std::size_t>(i));
        if (static_cast<Eigen::Index>(row.size()) != cols) {
          throw Error(ErrorCode::CorruptModel, "ragged weight matrix");
        }
        for (Eigen::Index j = 0; j < cols; ++j) {
          layer.weights(i, j) = row.at(static_cast<std::size_t>(j)).get<double>();
        }
      }
      const auto biases = l.at("biases").get<std::vector<double>>();
      layer.biases = Eigen::Map<const Eigen::VectorXd>(biases.data(),
                                                       static_cast<Eigen::Index>(biases.size()));
      layer.activation = parse_activation(l.at("activation").get<std::string>());
      model.layers.push_back(std::move(layer));
    }
    model.output_unscaler = scaler_from_json(doc.at("output_unscaler"));
    model.bounds.lower = doc.at("bounds").at("lower").get<double>();
    model.bounds.upper = doc.at("bounds").at("upper").get<double>();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::CorruptModel, std::string("malformed model document: ") + e.what());
  } catch (const Error& e) {
    if (e.code() == ErrorCode::CorruptModel) throw;
    throw Error(ErrorCode::CorruptModel, e.what());
  }
  try {
    validate(model);
  } catch (const Error& e) {
    throw Error(ErrorCode::CorruptModel, e.what());
  }
  return model;
}

void save_model(const NetworkModel& model, const std::filesystem::path& path) {
  validate(model);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoError, "cannot write model file '" + path.string() + "'");
  out << model_to_json(model).dump(2) << '\n';
  if (!out) throw Error(ErrorCode::IoError, "write to '" + path.string() + "' failed");
}

NetworkModel load_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open model file '" + path.string() + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  json doc;
  try {
    doc = json::parse(buffer.str());
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::CorruptModel,
                "model file '" + path.string() + "' is not valid JSON: " + e.what());
  }
  return model_from_json(doc);
}

}  // namespace ccpp
