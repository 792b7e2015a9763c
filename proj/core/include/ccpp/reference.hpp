#pragma once

#include <array>
#include <filesystem>
#include <optional>

#include "ccpp/optimizer.hpp"

namespace ccpp::reference {

/// Published column extremes for T, V, AP, RH.
InputBox input_box();

/// Median operating conditions used as the setpoint baseline.
inline constexpr std::array<double, 4> kMedianConditions{20.3, 52.1, 1013.0, 75.0};

/// Reported optimum setpoint.
inline constexpr std::array<double, 4> kOptimumConditions{19.4, 25.4, 1021.4, 60.8};

inline constexpr double kMedianOutput = 452.0;
inline constexpr double kOptimumOutput = 462.1;
inline constexpr double kImprovementPercent = 2.23;

/// Location of the public CCPP table: $CCPP_DATA if set, otherwise the
/// build-time default. Empty when neither names an existing file.
std::optional<std::filesystem::path> data_path(const std::filesystem::path& fallback = {});

}  // namespace ccpp::reference
