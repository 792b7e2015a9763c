#pragma once

#include <span>
#include <string_view>

namespace ccpp {

enum class ScalerMethod { none, min_max, mean_sd, log };

std::string_view to_string(ScalerMethod method) noexcept;
/// Throws InvalidArgument for unknown names.
ScalerMethod parse_scaler_method(std::string_view name);

/// Fitted constants of a per-column scaler. Fields unused by the method are
/// still recorded so the model file carries the full column summary.
struct ScalerParams {
  ScalerMethod method = ScalerMethod::none;
  double minimum = 0.0;
  double maximum = 0.0;
  double mean = 0.0;
  double deviation = 0.0;

  bool operator==(const ScalerParams&) const = default;
};

/// Throws DegenerateColumn / NonPositive when the method's precondition fails.
void validate(const ScalerParams& params);

ScalerParams fit(std::span<const double> values, ScalerMethod method);

double scale(double x, const ScalerParams& params);
double unscale(double y, const ScalerParams& params);
/// d unscale(y) / dy
double unscale_derivative(double y, const ScalerParams& params);

/// Scaler for a mean/deviation pair given directly.
inline ScalerParams mean_sd_scaler(double mean, double deviation) {
  return {ScalerMethod::mean_sd, 0.0, 0.0, mean, deviation};
}

}  // namespace ccpp
