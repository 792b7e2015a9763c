#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "ccpp/rng.hpp"
#include "ccpp/scaling.hpp"
#include "expect_error.hpp"

namespace {

using ccpp::ErrorCode;
using ccpp::ScalerMethod;

TEST(Fit, MeanSdOneTwoThree) {
  const std::vector<double> v{1, 2, 3};
  const auto p = ccpp::fit(v, ScalerMethod::mean_sd);
  EXPECT_EQ(p.method, ScalerMethod::mean_sd);
  EXPECT_DOUBLE_EQ(p.mean, 2.0);
  EXPECT_NEAR(p.deviation, std::sqrt(2.0 / 3.0), 1e-15);
}

TEST(Fit, MinMaxEndpoints) {
  const std::vector<double> v{0, 10};
  const auto p = ccpp::fit(v, ScalerMethod::min_max);
  EXPECT_EQ(p.minimum, 0.0);
  EXPECT_EQ(p.maximum, 10.0);
}

TEST(Fit, Errors) {
  const std::vector<double> constant{5, 5, 5};
  const std::vector<double> empty;
  const std::vector<double> negative{-1, 2, 3};
  const std::vector<double> nan{1, std::nan(""), 3};
  EXPECT_CCPP_ERROR(ccpp::fit(constant, ScalerMethod::mean_sd), ErrorCode::DegenerateColumn);
  EXPECT_CCPP_ERROR(ccpp::fit(constant, ScalerMethod::min_max), ErrorCode::DegenerateColumn);
  EXPECT_CCPP_ERROR(ccpp::fit(empty, ScalerMethod::none), ErrorCode::EmptyInput);
  EXPECT_CCPP_ERROR(ccpp::fit(negative, ScalerMethod::log), ErrorCode::NonPositive);
  EXPECT_CCPP_ERROR(ccpp::fit(nan, ScalerMethod::mean_sd), ErrorCode::NonFiniteInput);
}

TEST(Scale, MeanMapsToZero) {
  const auto p = ccpp::mean_sd_scaler(3.5, 2.0);
  EXPECT_EQ(ccpp::scale(3.5, p), 0.0);
}

TEST(Scale, PublishedTemperatureConstants) {
  const auto p = ccpp::mean_sd_scaler(19.65119934, 7.452469826);
  const double oracle = (19.4 - 19.65119934) / 7.452469826;
  EXPECT_EQ(ccpp::scale(19.4, p), oracle);
  EXPECT_NEAR(ccpp::scale(19.4, p), -0.033707, 1e-6);
}

TEST(Scale, MinMaxEndpoints) {
  const ccpp::ScalerParams p{ScalerMethod::min_max, 0.0, 10.0, 5.0, 1.0};
  EXPECT_EQ(ccpp::scale(0.0, p), 0.0);
  EXPECT_EQ(ccpp::scale(10.0, p), 1.0);
  EXPECT_EQ(ccpp::unscale(1.0, p), 10.0);
}

TEST(Scale, NoneAndLog) {
  const ccpp::ScalerParams none{};
  EXPECT_EQ(ccpp::scale(-4.25, none), -4.25);
  const ccpp::ScalerParams log{ScalerMethod::log, 1.0, 5.0, 2.0, 1.0};
  EXPECT_EQ(ccpp::scale(std::exp(1.0), log), std::log(std::exp(1.0)));
  EXPECT_CCPP_ERROR(ccpp::scale(0.0, log), ErrorCode::NonPositive);
}

TEST(Unscale, PublishedOutputOffset) {
  const auto p = ccpp::mean_sd_scaler(454.3649902, 17.06699944);
  EXPECT_EQ(ccpp::unscale(0.0, p), 454.3649902);
}

TEST(ScalerProperty, RoundTripAllMethods) {
  ccpp::Rng rng(123);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> values(20);
    const double center = rng.uniform(-1000.0, 1000.0);
    const double spread = rng.uniform(0.01, 100.0);
    for (auto& v : values) v = center + spread * rng.normal();
    std::vector<double> positive(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) positive[i] = std::abs(values[i]) + 1e-3;

    for (auto method : {ScalerMethod::none, ScalerMethod::min_max, ScalerMethod::mean_sd,
                        ScalerMethod::log}) {
      const auto& data = method == ScalerMethod::log ? positive : values;
      const auto p = ccpp::fit(data, method);
      for (double x : data) {
        const double back = ccpp::unscale(ccpp::scale(x, p), p);
        EXPECT_LE(std::abs(back - x), 1e-12 * std::max(1.0, std::abs(x)))
            << ccpp::to_string(method) << " x=" << x;
      }
    }
  }
}

TEST(ScalerProperty, MeanSdNormalizesItsFitData) {
  ccpp::Rng rng(9);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> v(100);
    for (auto& x : v) x = rng.uniform(-50.0, 80.0);
    const auto p = ccpp::fit(v, ScalerMethod::mean_sd);
    double mean = 0.0;
    for (double x : v) mean += ccpp::scale(x, p);
    mean /= static_cast<double>(v.size());
    double var = 0.0;
    for (double x : v) var += std::pow(ccpp::scale(x, p) - mean, 2);
    var /= static_cast<double>(v.size());
    EXPECT_NEAR(mean, 0.0, 1e-10);
    EXPECT_NEAR(std::sqrt(var), 1.0, 1e-10);
  }
}

TEST(ScalerProperty, StrictlyIncreasing) {
  ccpp::Rng rng(4);
  const ccpp::ScalerParams mm{ScalerMethod::min_max, -3.0, 7.0, 0.0, 1.0};
  const ccpp::ScalerParams ms = ccpp::mean_sd_scaler(2.0, 0.5);
  const ccpp::ScalerParams lg{ScalerMethod::log, 0.1, 9.0, 1.0, 1.0};
  for (int i = 0; i < 500; ++i) {
    const double a = rng.uniform(0.01, 10.0);
    const double b = a + rng.uniform(1e-6, 1.0);
    for (const auto* p : {&mm, &ms, &lg}) EXPECT_LT(ccpp::scale(a, *p), ccpp::scale(b, *p));
  }
}

TEST(ScalerMethodNames, ParseRoundTrip) {
  for (auto m : {ScalerMethod::none, ScalerMethod::min_max, ScalerMethod::mean_sd,
                 ScalerMethod::log}) {
    EXPECT_EQ(ccpp::parse_scaler_method(ccpp::to_string(m)), m);
  }
  EXPECT_CCPP_ERROR(ccpp::parse_scaler_method("robust"), ErrorCode::InvalidArgument);
}

}  // namespace
