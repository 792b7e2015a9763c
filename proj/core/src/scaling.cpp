#include "ccpp/scaling.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ccpp/dataset.hpp"
#include "ccpp/error.hpp"

namespace ccpp {

std::string_view to_string(ScalerMethod method) noexcept {
  switch (method) {
    case ScalerMethod::none: return "none";
    case ScalerMethod::min_max: return "min_max";
    case ScalerMethod::mean_sd: return "mean_sd";
    case ScalerMethod::log: return "log";
  }
  return "unknown";
}

ScalerMethod parse_scaler_method(std::string_view name) {
  for (auto m : {ScalerMethod::none, ScalerMethod::min_max, ScalerMethod::mean_sd,
                 ScalerMethod::log}) {
    if (to_string(m) == name) return m;
  }
  throw Error(ErrorCode::InvalidArgument, "unknown scaler method '" + std::string(name) + "'");
}

void validate(const ScalerParams& p) {
  switch (p.method) {
    case ScalerMethod::none:
      return;
    case ScalerMethod::min_max:
      if (!(p.maximum > p.minimum)) {
        throw Error(ErrorCode::DegenerateColumn, "min_max scaler needs maximum > minimum");
      }
      return;
    case ScalerMethod::mean_sd:
      if (!(p.deviation > 0.0)) {
        throw Error(ErrorCode::DegenerateColumn, "mean_sd scaler needs a positive deviation");
      }
      return;
    case ScalerMethod::log:
      if (!(p.minimum > 0.0)) {
        throw Error(ErrorCode::NonPositive, "log scaler fitted on non-positive values");
      }
      return;
  }
}

ScalerParams fit(std::span<const double> values, ScalerMethod method) {
  if (values.empty()) {
    throw Error(ErrorCode::EmptyInput, "cannot fit a scaler to an empty column");
  }
  if (std::any_of(values.begin(), values.end(), [](double v) { return !std::isfinite(v); })) {
    throw Error(ErrorCode::NonFiniteInput, "cannot fit a scaler to non-finite values");
  }
  const auto stats = compute_stats(values);
  ScalerParams p{method, stats.minimum, stats.maximum, stats.mean, stats.deviation};
  validate(p);
  return p;
}

double scale(double x, const ScalerParams& p) {
  switch (p.method) {
    case ScalerMethod::none: return x;
    case ScalerMethod::min_max: return (x - p.minimum) / (p.maximum - p.minimum);
    case ScalerMethod::mean_sd: return (x - p.mean) / p.deviation;
    case ScalerMethod::log:
      if (!(x > 0.0)) {
        throw Error(ErrorCode::NonPositive, "log scaling of a non-positive value");
      }
      return std::log(x);
  }
  return x;
}

double unscale(double y, const ScalerParams& p) {
  switch (p.method) {
    case ScalerMethod::none: return y;
    case ScalerMethod::min_max: return y * (p.maximum - p.minimum) + p.minimum;
    case ScalerMethod::mean_sd: return y * p.deviation + p.mean;
    case ScalerMethod::log: return std::exp(y);
  }
  return y;
}

double unscale_derivative(double y, const ScalerParams& p) {
  switch (p.method) {
    case ScalerMethod::none: return 1.0;
    case ScalerMethod::min_max: return p.maximum - p.minimum;
    case ScalerMethod::mean_sd: return p.deviation;
    case ScalerMethod::log: return std::exp(y);
  }
  return 1.0;
}

}  // namespace ccpp
