#include <optional>

#include <gtest/gtest.h>

#include "ccpp/correlation.hpp"
#include "ccpp/dataset.hpp"
#include "ccpp/evaluation.hpp"
#include "ccpp/reference.hpp"
#include "ccpp/training.hpp"

// These run against the public 9568-row table when it is available, either
// at the configured CCPP_REFERENCE_DATA path or through $CCPP_DATA.

namespace {

std::optional<ccpp::Dataset> reference_table() {
  const auto path = ccpp::reference::data_path(CCPP_REFERENCE_DATA);
  if (!path) return std::nullopt;
  return ccpp::load_csv(*path, ccpp::ccpp_schema());
}

#define REQUIRE_REFERENCE(var)                                            \
  const auto var = reference_table();                                     \
  if (!var) GTEST_SKIP() << "reference CSV not found (set CCPP_DATA)"

double pearson_of(const ccpp::Dataset& ds, const char* a, const char* b) {
  const auto x = ds.column(a);
  const auto y = ds.column(b);
  return ccpp::pearson({x.data(), static_cast<std::size_t>(x.size())},
                       {y.data(), static_cast<std::size_t>(y.size())});
}

TEST(ReferenceData, ShapeAndRanges) {
  REQUIRE_REFERENCE(ds);
  EXPECT_EQ(ds->row_count(), 9568u);
  const auto t = ccpp::compute_stats(*ds, "T");
  EXPECT_NEAR(t.minimum, 1.81, 0.01);
  EXPECT_NEAR(t.maximum, 37.11, 0.01);
  const auto ep = ccpp::compute_stats(*ds, "EP");
  EXPECT_NEAR(ep.mean, 454.4, 0.1);
}

TEST(ReferenceData, PearsonAgainstTarget) {
  REQUIRE_REFERENCE(ds);
  EXPECT_NEAR(pearson_of(*ds, "T", "EP"), -0.948, 0.005);
  EXPECT_NEAR(pearson_of(*ds, "V", "EP"), -0.87, 0.02);
  EXPECT_NEAR(pearson_of(*ds, "AP", "EP"), 0.52, 0.02);
  EXPECT_NEAR(pearson_of(*ds, "RH", "EP"), 0.39, 0.02);
}

TEST(ReferenceData, SpearmanTemperatureVacuum) {
  REQUIRE_REFERENCE(ds);
  const auto t = ds->column("T");
  const auto v = ds->column("V");
  EXPECT_NEAR(ccpp::spearman({t.data(), static_cast<std::size_t>(t.size())},
                             {v.data(), static_cast<std::size_t>(v.size())}),
              0.85, 0.01);
}

TEST(ReferenceData, DefaultTrainingSingleSeed) {
  REQUIRE_REFERENCE(ds);
  const auto cleaned = ccpp::clean_outliers(*ds, 3.0).dataset;
  const auto split = ccpp::split_random(cleaned, {}, 0);
  const auto r = ccpp::train(split, ccpp::ModelSetup{}, {}, {});
  const auto test = ccpp::evaluate(r.model, ccpp::make_batch(split, ccpp::Split::testing));
  EXPECT_GE(test.r_squared, 0.93);
  EXPECT_GE(r.trace.epochs.back().training_loss, 0.05);
  EXPECT_LE(r.trace.epochs.back().training_loss, 0.08);
}

}  // namespace
