#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include <gtest/gtest.h>

#include "ccpp/dataset.hpp"
#include "ccpp/rng.hpp"
#include "expect_error.hpp"
#include "synthetic.hpp"
#include "temp_dir.hpp"

namespace {

using ccpp::ErrorCode;
using ccpp::testing::TempDir;

std::vector<ccpp::ColumnSpec> five_columns() {
  return {{"a", ccpp::ColumnRole::input, "", ""},
          {"b", ccpp::ColumnRole::input, "", ""},
          {"c", ccpp::ColumnRole::input, "", ""},
          {"d", ccpp::ColumnRole::input, "", ""},
          {"y", ccpp::ColumnRole::target, "", ""}};
}

ccpp::Dataset column_dataset(const std::vector<double>& values) {
  Eigen::MatrixXd m(static_cast<Eigen::Index>(values.size()), 1);
  for (std::size_t i = 0; i < values.size(); ++i) m(static_cast<Eigen::Index>(i), 0) = values[i];
  return ccpp::Dataset({{"x", ccpp::ColumnRole::target, "", ""}}, m);
}

TEST(LoadCsv, SingleRow) {
  TempDir dir;
  const auto path = dir.write("one.csv", "a,b,c,d,y\n1,2,3,4,5\n");
  const auto ds = ccpp::load_csv(path, five_columns());
  ASSERT_EQ(ds.row_count(), 1u);
  ASSERT_EQ(ds.column_count(), 5u);
  for (int c = 0; c < 5; ++c) EXPECT_EQ(ds.values()(0, c), c + 1.0);
  EXPECT_EQ(ds.splits()[0], ccpp::Split::training);
}

TEST(LoadCsv, HeaderIsCaseInsensitive) {
  TempDir dir;
  const auto path = dir.write("h.csv", "A,B,C,D,Y\r\n1,2,3,4,5\r\n");
  EXPECT_EQ(ccpp::load_csv(path, five_columns()).row_count(), 1u);
}

TEST(LoadCsv, PublicHeaderMapsOntoSchemaNames) {
  TempDir dir;
  const auto path = dir.write("p.csv", "AT,V,AP,RH,PE\n14.96,41.76,1024.07,73.17,463.26\n");
  const auto ds = ccpp::load_csv(path, ccpp::ccpp_schema());
  EXPECT_EQ(ds.input_names(), (std::vector<std::string>{"T", "V", "AP", "RH"}));
  EXPECT_EQ(ds.columns()[ds.target_index()].name, "EP");
  EXPECT_DOUBLE_EQ(ds.column("EP")(0), 463.26);
}

TEST(LoadCsv, EmptyCellIsMissingValue) {
  TempDir dir;
  const auto path = dir.write("m.csv", "a,b,c,d,y\n1,2,3,4,5\n1,,3,4,5\n");
  try {
    ccpp::load_csv(path, five_columns());
    FAIL() << "no error";
  } catch (const ccpp::Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::MissingValue);
    ASSERT_TRUE(e.cell().has_value());
    EXPECT_EQ(e.cell()->row, 2u);
    EXPECT_EQ(e.cell()->column, 2u);
  }
}

TEST(LoadCsv, ShortRowIsMissingValue) {
  TempDir dir;
  const auto path = dir.write("s.csv", "a,b,c,d,y\n1,2,3,4\n");
  EXPECT_CCPP_ERROR(ccpp::load_csv(path, five_columns()), ErrorCode::MissingValue);
}

TEST(LoadCsv, TextCellIsParseError) {
  TempDir dir;
  const auto path = dir.write("t.csv", "a,b,c,d,y\n1,2,x3,4,5\n");
  EXPECT_CCPP_ERROR(ccpp::load_csv(path, five_columns()), ErrorCode::ParseError);
  const auto inf = dir.write("i.csv", "a,b,c,d,y\n1,2,inf,4,5\n");
  EXPECT_CCPP_ERROR(ccpp::load_csv(inf, five_columns()), ErrorCode::ParseError);
}

TEST(LoadCsv, HeaderMismatch) {
  TempDir dir;
  EXPECT_CCPP_ERROR(ccpp::load_csv(dir.write("x.csv", "a,b,c,y,d\n1,2,3,4,5\n"), five_columns()),
                    ErrorCode::HeaderMismatch);
  EXPECT_CCPP_ERROR(ccpp::load_csv(dir.write("y.csv", "a,b,c,d\n1,2,3,4\n"), five_columns()),
                    ErrorCode::HeaderMismatch);
}

TEST(LoadCsv, EmptyFile) {
  TempDir dir;
  EXPECT_CCPP_ERROR(ccpp::load_csv(dir.write("e.csv", ""), five_columns()), ErrorCode::EmptyFile);
  EXPECT_CCPP_ERROR(ccpp::load_csv(dir.write("f.csv", "a,b,c,d,y\n"), five_columns()),
                    ErrorCode::EmptyFile);
}

TEST(LoadCsv, MissingFileIsIoError) {
  EXPECT_CCPP_ERROR(ccpp::load_csv("/nonexistent/ccpp.csv", five_columns()), ErrorCode::IoError);
}

TEST(SaveCsv, RoundTripIsBitExact) {
  TempDir dir;
  ccpp::Rng rng(11);
  Eigen::MatrixXd m(50, 5);
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) m(r, c) = rng.normal() * std::pow(10.0, c - 2);
  }
  const ccpp::Dataset ds(five_columns(), m);
  const auto path = dir / "rt.csv";
  ccpp::save_csv(ds, path);
  const auto back = ccpp::load_csv(path, five_columns());
  ASSERT_EQ(back.row_count(), ds.row_count());
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) EXPECT_EQ(back.values()(r, c), m(r, c));
  }
}

TEST(ComputeStats, ConstantColumn) {
  const auto s = ccpp::compute_stats(column_dataset({5, 5, 5}), "x");
  EXPECT_EQ(s.mean, 5.0);
  EXPECT_EQ(s.deviation, 0.0);
  EXPECT_EQ(s.minimum, 5.0);
  EXPECT_EQ(s.maximum, 5.0);
}

TEST(ComputeStats, OneTwoThree) {
  const auto s = ccpp::compute_stats(column_dataset({1, 2, 3}), "x");
  EXPECT_DOUBLE_EQ(s.mean, 2.0);
  EXPECT_NEAR(s.deviation, std::sqrt(2.0 / 3.0), 1e-15);
  EXPECT_NEAR(s.deviation, 0.8165, 1e-4);
}

TEST(ComputeStats, UnknownColumn) {
  EXPECT_CCPP_ERROR(ccpp::compute_stats(column_dataset({1, 2}), "nope"), ErrorCode::UnknownColumn);
}

TEST(ComputeStats, IgnoresSplitsAndIsIdempotent) {
  const auto ds = ccpp::split_random(ccpp::testing::synthetic_ccpp(500, 3), {}, 9);
  for (const auto& col : ds.columns()) {
    const auto a = ccpp::compute_stats(ds, col.name);
    const auto b = ccpp::compute_stats(ds, col.name);
    EXPECT_EQ(a.mean, b.mean);
    EXPECT_EQ(a.deviation, b.deviation);
    EXPECT_LE(a.minimum, a.mean);
    EXPECT_LE(a.mean, a.maximum);
    EXPECT_GT(a.deviation, 0.0);
    const Eigen::VectorXd v = ds.column(col.name);
    EXPECT_EQ(a.minimum, v.minCoeff());
    EXPECT_EQ(a.maximum, v.maxCoeff());
  }
}

TEST(Median, OddAndEven) {
  const std::vector<double> odd{3, 1, 2};
  const std::vector<double> even{4, 1, 3, 2};
  EXPECT_EQ(ccpp::median(odd), 2.0);
  EXPECT_EQ(ccpp::median(even), 2.5);
}

TEST(SplitRandom, ReferenceSizedCounts) {
  const auto ds = ccpp::split_random(ccpp::testing::synthetic_ccpp(9568, 1), {0.6, 0.2, 0.2}, 0);
  EXPECT_EQ(ds.count(ccpp::Split::training), 5742u);
  EXPECT_EQ(ds.count(ccpp::Split::selection), 1913u);
  EXPECT_EQ(ds.count(ccpp::Split::testing), 1913u);
}

TEST(SplitRandom, ZeroRatioRejected) {
  const auto ds = column_dataset({1, 2, 3, 4, 5, 6, 7, 8, 9, 10});
  EXPECT_CCPP_ERROR(ccpp::split_random(ds, {1.0, 0.0, 0.0}, 1), ErrorCode::BadRatios);
  EXPECT_CCPP_ERROR(ccpp::split_random(ds, {0.5, 0.2, 0.2}, 1), ErrorCode::BadRatios);
  EXPECT_CCPP_ERROR(ccpp::split_random(ds, {-0.2, 0.6, 0.6}, 1), ErrorCode::BadRatios);
}

TEST(SplitRandom, DeterministicPerSeed) {
  const auto ds = ccpp::testing::synthetic_ccpp(300, 2);
  EXPECT_EQ(ccpp::split_random(ds, {}, 42).splits(), ccpp::split_random(ds, {}, 42).splits());
  EXPECT_NE(ccpp::split_random(ds, {}, 42).splits(), ccpp::split_random(ds, {}, 43).splits());
}

TEST(SplitRandom, PartitionProperty) {
  ccpp::Rng rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 3 + rng.below(400);
    const double sel = rng.uniform(0.05, 0.45);
    const double test = rng.uniform(0.05, 0.45);
    const ccpp::SplitRatios ratios{1.0 - sel - test, sel, test};
    const auto ds = ccpp::split_random(column_dataset(std::vector<double>(n, 1.0)), ratios, trial);
    std::set<std::size_t> seen;
    std::size_t total = 0;
    for (auto split : {ccpp::Split::training, ccpp::Split::selection, ccpp::Split::testing}) {
      const auto rows = ds.rows_in(split);
      total += rows.size();
      seen.insert(rows.begin(), rows.end());
    }
    EXPECT_EQ(total, n);
    EXPECT_EQ(seen.size(), n);
    EXPECT_EQ(ds.count(ccpp::Split::selection),
              static_cast<std::size_t>(std::floor(static_cast<double>(n) * sel + 1e-9)));
  }
}

TEST(CleanOutliers, RemovesRowBeyondThreshold) {
  // 1000 symmetric +-1 values give mean 0 and deviation 1 exactly; the last
  // row pair is nudged so that one value sits at z = 3.1.
  std::vector<double> v;
  for (int i = 0; i < 500; ++i) {
    v.push_back(1.0);
    v.push_back(-1.0);
  }
  const auto base = column_dataset(v);
  const auto stats = ccpp::compute_stats(base, "x");
  ASSERT_EQ(stats.mean, 0.0);
  ASSERT_EQ(stats.deviation, 1.0);

  v.push_back(3.1);
  v.push_back(-3.1);
  const auto ds = column_dataset(v);
  const auto s = ccpp::compute_stats(ds, "x");
  const auto result = ccpp::clean_outliers(ds, 3.0);
  // Oracle: brute-force z scan with the same statistics.
  std::vector<std::size_t> expected;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (std::abs((v[i] - s.mean) / s.deviation) > 3.0) expected.push_back(i);
  }
  EXPECT_EQ(result.removed_rows, expected);
  EXPECT_EQ(result.removed_rows, (std::vector<std::size_t>{1000, 1001}));
  EXPECT_EQ(result.dataset.row_count(), 1000u);
}

TEST(CleanOutliers, AllAtMeanRemovesNothing) {
  const auto result = ccpp::clean_outliers(column_dataset({4, 4, 4, 4}), 3.0);
  EXPECT_TRUE(result.removed_rows.empty());
  EXPECT_EQ(result.dataset.row_count(), 4u);
}

TEST(CleanOutliers, ParameterRange) {
  const auto ds = column_dataset({1, 2, 3});
  EXPECT_CCPP_ERROR(ccpp::clean_outliers(ds, 0.5), ErrorCode::InvalidArgument);
  EXPECT_CCPP_ERROR(ccpp::clean_outliers(ds, 10.5), ErrorCode::InvalidArgument);
}

TEST(CleanOutliers, MonotoneInParameter) {
  const auto ds = ccpp::testing::synthetic_ccpp(2000, 17);
  std::vector<std::size_t> previous = ccpp::clean_outliers(ds, 1.0).removed_rows;
  for (double p = 1.25; p <= 10.0; p += 0.25) {
    const auto removed = ccpp::clean_outliers(ds, p).removed_rows;
    EXPECT_TRUE(std::includes(previous.begin(), previous.end(), removed.begin(), removed.end()))
        << "p = " << p;
    EXPECT_TRUE(std::is_sorted(removed.begin(), removed.end()));
    previous = removed;
  }
}

TEST(Histogram, TwoBins) {
  const std::vector<double> v{0, 1, 2, 3};
  const auto h = ccpp::histogram(v, 2);
  EXPECT_EQ(h.bin_count, 2u);
  ASSERT_EQ(h.bin_centers.size(), 2u);
  EXPECT_DOUBLE_EQ(h.bin_centers[0], 0.75);
  EXPECT_DOUBLE_EQ(h.bin_centers[1], 2.25);
  EXPECT_DOUBLE_EQ(h.frequencies[0], 50.0);
  EXPECT_DOUBLE_EQ(h.frequencies[1], 50.0);
}

TEST(Histogram, ConstantColumnHasOneFullBin) {
  for (std::size_t bins : {1u, 4u, 10u}) {
    const auto h = ccpp::histogram(column_dataset({7, 7, 7}), "x", bins);
    ASSERT_EQ(h.bin_count, 1u);
    EXPECT_EQ(h.bin_centers[0], 7.0);
    EXPECT_EQ(h.frequencies[0], 100.0);
  }
}

TEST(Histogram, Errors) {
  EXPECT_CCPP_ERROR(ccpp::histogram(column_dataset({1, 2}), "x", 0), ErrorCode::BadBinCount);
  EXPECT_CCPP_ERROR(ccpp::histogram(column_dataset({1, 2}), "z", 3), ErrorCode::UnknownColumn);
}

TEST(Histogram, MassConservation) {
  const auto ds = ccpp::testing::synthetic_ccpp(1234, 21);
  for (const auto& col : ds.columns()) {
    for (std::size_t bins = 1; bins <= 40; bins += 3) {
      const auto h = ccpp::histogram(ds, col.name, bins);
      ASSERT_EQ(h.bin_centers.size(), h.bin_count);
      ASSERT_EQ(h.frequencies.size(), h.bin_count);
      EXPECT_NEAR(std::accumulate(h.frequencies.begin(), h.frequencies.end(), 0.0), 100.0, 1e-9);
    }
  }
}

TEST(Dataset, WithInputsMarksOthersUnused) {
  const auto ds = ccpp::testing::synthetic_ccpp(10, 1);
  const std::vector<std::string> keep{"V", "T"};
  const auto sub = ds.with_inputs(keep);
  EXPECT_EQ(sub.input_names(), (std::vector<std::string>{"T", "V"}));
  EXPECT_EQ(sub.columns()[sub.column_index("AP")].role, ccpp::ColumnRole::unused);
}

}  // namespace
