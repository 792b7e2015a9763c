#include "ccpp/line_search.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "ccpp/error.hpp"

namespace ccpp {

namespace {

double finite_or_inf(double v) {
  return std::isfinite(v) ? v : std::numeric_limits<double>::infinity();
}

}  // namespace

Bracket bracket_minimum(const Objective1D& f, double f0, double initial_step,
                        std::size_t max_attempts) {
  if (!(initial_step > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "initial bracket step must be positive");
  }
  double t = initial_step;
  double ft = finite_or_inf(f(t));
  std::size_t attempts = 1;

  if (ft < f0) {
    double prev = 0.0;
    double fprev = f0;
    while (attempts < max_attempts) {
      const double next = 2.0 * t;
      const double fnext = finite_or_inf(f(next));
      ++attempts;
      if (fnext >= ft) return {prev, t, next, fprev, ft, fnext};
      prev = t;
      fprev = ft;
      t = next;
      ft = fnext;
    }
  } else {
    double c = t;
    double fc = ft;
    while (attempts < max_attempts) {
      t *= 0.5;
      ft = finite_or_inf(f(t));
      ++attempts;
      if (ft < f0) return {0.0, t, c, f0, ft, fc};
      c = t;
      fc = ft;
    }
  }
  throw Error(ErrorCode::BracketFailure,
              "no bracketing triple after " + std::to_string(max_attempts) + " trial steps");
}

LineSearchResult brent_minimize(const Objective1D& f, double lo, double hi, double start,
                                double f_start, double tolerance, std::size_t max_iterations) {
  constexpr double kGolden = 0.3819660112501051;  // (3 - sqrt(5)) / 2
  constexpr double kTiny = 1e-14;
  if (!(lo <= start && start <= hi)) {
    throw Error(ErrorCode::InvalidArgument, "Brent start point lies outside its interval");
  }

  double a = lo;
  double b = hi;
  double x = start;
  double w = start;
  double v = start;
  double fx = f_start;
  double fw = f_start;
  double fv = f_start;
  double d = 0.0;
  double e = 0.0;
  LineSearchResult result{x, fx, 0};

  for (std::size_t iter = 0; iter < max_iterations; ++iter) {
    const double xm = 0.5 * (a + b);
    const double tol1 = 0.5 * tolerance + kTiny * std::abs(x);
    const double tol2 = 2.0 * tol1;
    if (std::abs(x - xm) <= tol2 - 0.5 * (b - a)) break;

    bool golden = true;
    if (std::abs(e) > tol1) {
      // Parabola through (x, fx), (w, fw), (v, fv).
      double r = (x - w) * (fx - fv);
      double q = (x - v) * (fx - fw);
      double p = (x - v) * q - (x - w) * r;
      q = 2.0 * (q - r);
      if (q > 0.0) p = -p;
      q = std::abs(q);
      const double e_prev = e;
      e = d;
      if (std::abs(p) < std::abs(0.5 * q * e_prev) && p > q * (a - x) && p < q * (b - x)) {
        d = p / q;
        const double u = x + d;
        if (u - a < tol2 || b - u < tol2) d = xm >= x ? tol1 : -tol1;
        golden = false;
      }
    }
    if (golden) {
      e = (x >= xm ? a : b) - x;
      d = kGolden * e;
    }

    const double u = std::abs(d) >= tol1 ? x + d : x + (d > 0.0 ? tol1 : -tol1);
    const double fu = finite_or_inf(f(u));
    ++result.evaluations;

    if (fu <= fx) {
      (u >= x ? a : b) = x;
      v = w;
      fv = fw;
      w = x;
      fw = fx;
      x = u;
      fx = fu;
    } else {
      (u < x ? a : b) = u;
      if (fu <= fw || w == x) {
        v = w;
        fv = fw;
        w = u;
        fw = fu;
      } else if (fu <= fv || v == x || v == w) {
        v = u;
        fv = fu;
      }
    }
  }
  result.step = x;
  result.value = fx;
  return result;
}

LineSearchResult brent_line_search(const Objective1D& f, double f0, double tolerance) {
  std::size_t evaluations = 0;
  const Objective1D counted = [&](double t) {
    ++evaluations;
    return f(t);
  };
  const Bracket br = bracket_minimum(counted, f0);
  auto result = brent_minimize(counted, br.a, br.c, br.b, br.fb, tolerance);
  result.evaluations = evaluations;
  return result;
}

}  // namespace ccpp
