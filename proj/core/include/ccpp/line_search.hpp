#pragma once

#include <cstddef>
#include <functional>

namespace ccpp {

using Objective1D = std::function<double(double)>;

/// Triple a < b < c with f(b) below both ends.
struct Bracket {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double fa = 0.0;
  double fb = 0.0;
  double fc = 0.0;
};

struct LineSearchResult {
  double step = 0.0;
  double value = 0.0;
  std::size_t evaluations = 0;
};

inline constexpr std::size_t kMaxBracketAttempts = 50;

/// Forward expansion from `initial_step`: doubles while f keeps dropping,
/// halves while f(t) >= f(0). Throws BracketFailure after `max_attempts`
/// trial steps. Non-finite values count as +infinity.
Bracket bracket_minimum(const Objective1D& f, double f0, double initial_step = 1.0,
                        std::size_t max_attempts = kMaxBracketAttempts);

/// Brent's golden-section / parabolic hybrid on [lo, hi] starting from
/// `start` (with f(start) = f_start). Stops once the minimizer is pinned to
/// within `tolerance`; the returned value never exceeds f_start.
LineSearchResult brent_minimize(const Objective1D& f, double lo, double hi, double start,
                                double f_start, double tolerance, std::size_t max_iterations = 100);

/// Bracket from step 1, then Brent on the bracket. The returned step has
/// f(step) <= f(0).
LineSearchResult brent_line_search(const Objective1D& f, double f0, double tolerance = 1e-3);

}  // namespace ccpp
