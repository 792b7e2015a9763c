#pragma once

#include <cstdint>
#include <vector>

#include "ccpp/network.hpp"
#include "ccpp/rng.hpp"

namespace ccpp::testing {

/// Random network with mean_sd scalers around physical-looking ranges.
inline NetworkModel random_model(const std::vector<std::size_t>& widths, std::uint64_t seed) {
  NetworkModel m = initialize_random(widths, seed);
  Rng rng(seed + 1000);
  for (auto& s : m.input_scalers) {
    const double mean = rng.uniform(-50.0, 50.0);
    const double dev = rng.uniform(0.5, 20.0);
    s = {ScalerMethod::mean_sd, mean - 3 * dev, mean + 3 * dev, mean, dev};
  }
  const double mean = rng.uniform(100.0, 500.0);
  const double dev = rng.uniform(1.0, 30.0);
  m.output_unscaler = {ScalerMethod::mean_sd, mean - 4 * dev, mean + 4 * dev, mean, dev};
  m.bounds = {mean - 4 * dev, mean + 4 * dev};
  return m;
}

/// Inputs drawn from each input scaler's mean/deviation; targets around the
/// output scaler's mean.
inline Batch random_batch(const NetworkModel& m, std::size_t rows, std::uint64_t seed) {
  Rng rng(seed);
  Batch b;
  b.inputs.resize(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(m.input_count()));
  b.targets.resize(static_cast<Eigen::Index>(rows));
  for (Eigen::Index r = 0; r < b.inputs.rows(); ++r) {
    for (Eigen::Index c = 0; c < b.inputs.cols(); ++c) {
      const auto& s = m.input_scalers[static_cast<std::size_t>(c)];
      b.inputs(r, c) = s.mean + s.deviation * rng.normal();
    }
    b.targets(r) = m.output_unscaler.mean + m.output_unscaler.deviation * rng.normal();
  }
  return b;
}

}  // namespace ccpp::testing
