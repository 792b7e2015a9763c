#include <benchmark/benchmark.h>

#include "ccpp/correlation.hpp"
#include "ccpp/network.hpp"
#include "ccpp/optimizer.hpp"
#include "ccpp/reference.hpp"
#include "ccpp/training.hpp"
#include "synthetic.hpp"

namespace {

const ccpp::Dataset& table() {
  static const ccpp::Dataset ds = ccpp::split_random(ccpp::testing::synthetic_ccpp(), {}, 0);
  return ds;
}

void BM_ForwardSingle(benchmark::State& state) {
  const auto model = ccpp::golden_model();
  for (auto _ : state) {
    benchmark::DoNotOptimize(ccpp::forward(model, ccpp::reference::kOptimumConditions));
  }
}
BENCHMARK(BM_ForwardSingle);

void BM_LossAndGradient(benchmark::State& state) {
  const auto& ds = table();
  ccpp::ModelSetup setup;
  setup.hidden = {static_cast<std::size_t>(state.range(0))};
  const auto model = ccpp::prepare_model(ds, setup);
  const auto batch = ccpp::make_batch(ds, ccpp::Split::training);
  const Eigen::MatrixXd scaled = ccpp::scale_inputs(model, batch.inputs);
  for (auto _ : state) {
    benchmark::DoNotOptimize(ccpp::evaluate_loss(model, scaled, batch.targets, 1e-3, true));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(batch.size()));
}
BENCHMARK(BM_LossAndGradient)->Arg(2)->Arg(10);

void BM_CorrelationMatrix(benchmark::State& state) {
  const auto& ds = table();
  const auto method = static_cast<ccpp::CorrelationMethod>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(ccpp::correlation_matrix(ds, method));
  state.SetLabel(std::string(ccpp::to_string(method)));
}
BENCHMARK(BM_CorrelationMatrix)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);

void BM_TrainDefault(benchmark::State& state) {
  const auto& ds = table();
  for (auto _ : state) benchmark::DoNotOptimize(ccpp::train(ds, ccpp::ModelSetup{}, {}, {}));
}
BENCHMARK(BM_TrainDefault)->Unit(benchmark::kMillisecond)->Iterations(3);

void BM_SetpointSearch(benchmark::State& state) {
  const auto model = ccpp::golden_model();
  const auto box = ccpp::reference::input_box();
  const std::vector<double> baseline(ccpp::reference::kMedianConditions.begin(),
                                     ccpp::reference::kMedianConditions.end());
  for (auto _ : state) benchmark::DoNotOptimize(ccpp::maximize_output(model, box, baseline, {}));
}
BENCHMARK(BM_SetpointSearch)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
