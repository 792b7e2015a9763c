#pragma once

// Statement-by-statement scalar transcription of the published network
// listing. Shares no code with the core library so it can serve as an oracle
// for the layered implementation.

#include <cmath>

namespace ccpp_tools::published {

inline constexpr double temp_scale = 7.452469826;
inline constexpr double temp_offset = 19.65119934;
inline constexpr double ev_scale = 12.70790005;
inline constexpr double ev_offset = 54.30580139;
inline constexpr double ap_scale = 5.938789845;
inline constexpr double ap_offset = 1013.26001;
inline constexpr double rh_scale = 14.60029984;
inline constexpr double rh_offset = 73.30899811;

inline constexpr double p1_w0[4] = {0.593324, 0.00657032, 0.0933036, 0.0310159};
inline constexpr double p1_b0 = 0.688402;
inline constexpr double p1_w1[4] = {0.288555, 0.204765, -0.144645, 0.070106};
inline constexpr double p1_b1 = -0.110117;
inline constexpr double p2_w0[2] = {-1.34001, -1.13091};
inline constexpr double p2_b0 = 0.582504;

inline constexpr double us_scale = 17.06699944;
inline constexpr double us_offset = 454.3649902;

inline double dot4(const double a[4], const double b[4]) {
  double s = 0.0;
  s += a[0] * b[0];
  s += a[1] * b[1];
  s += a[2] * b[2];
  s += a[3] * b[3];
  return s;
}

inline double dot2(const double a[2], const double b[2]) {
  double s = 0.0;
  s += a[0] * b[0];
  s += a[1] * b[1];
  return s;
}

inline double neural_network_output(double temp, double ev, double ap, double rh) {
  const double scaled_temp = (temp - temp_offset) / temp_scale;
  const double scaled_ev = (ev - ev_offset) / ev_scale;
  const double scaled_ap = (ap - ap_offset) / ap_scale;
  const double scaled_rh = (rh - rh_offset) / rh_scale;
  const double scaled[4] = {scaled_temp, scaled_ev, scaled_ap, scaled_rh};

  const double p1_output0 = std::tanh(p1_b0 + dot4(scaled, p1_w0));
  const double p1_output1 = std::tanh(p1_b1 + dot4(scaled, p1_w1));

  const double hidden[2] = {p1_output0, p1_output1};
  const double p2_output0 = p2_b0 + dot2(hidden, p2_w0);

  return p2_output0 * us_scale + us_offset;
}

}  // namespace ccpp_tools::published
