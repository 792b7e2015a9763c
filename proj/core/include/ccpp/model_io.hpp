#pragma once

#include <filesystem>

#include <nlohmann/json.hpp>

#include "ccpp/network.hpp"

namespace ccpp {

inline constexpr int kModelFormatVersion = 1;

nlohmann::json model_to_json(const NetworkModel& model);
/// Throws FormatVersionMismatch or CorruptModel.
NetworkModel model_from_json(const nlohmann::json& doc);

nlohmann::json scaler_to_json(const ScalerParams& params);
ScalerParams scaler_from_json(const nlohmann::json& doc);

/// Model file: {version, input_names, input_scalers[], layers[], output_unscaler, bounds}.
void save_model(const NetworkModel& model, const std::filesystem::path& path);
NetworkModel load_model(const std::filesystem::path& path);

}  // namespace ccpp
