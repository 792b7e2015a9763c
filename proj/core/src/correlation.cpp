#include "ccpp/correlation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <boost/math/distributions/normal.hpp>

#include "ccpp/error.hpp"

namespace ccpp {

std::string_view to_string(CorrelationMethod method) noexcept {
  switch (method) {
    case CorrelationMethod::pearson: return "pearson";
    case CorrelationMethod::spearman: return "spearman";
    case CorrelationMethod::maximal: return "maximal";
  }
  return "unknown";
}

std::string_view to_string(RegressionForm form) noexcept {
  switch (form) {
    case RegressionForm::linear: return "linear";
    case RegressionForm::logarithmic: return "logarithmic";
    case RegressionForm::exponential: return "exponential";
    case RegressionForm::power: return "power";
  }
  return "unknown";
}

CorrelationMethod parse_correlation_method(std::string_view name) {
  for (auto m : {CorrelationMethod::pearson, CorrelationMethod::spearman,
                 CorrelationMethod::maximal}) {
    if (to_string(m) == name) return m;
  }
  throw Error(ErrorCode::InvalidArgument, "unknown correlation method '" + std::string(name) + "'");
}

namespace {

void check_pair(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) {
    throw Error(ErrorCode::LengthMismatch, "correlated columns differ in length");
  }
  if (x.size() < 2) {
    throw Error(ErrorCode::TooFewSamples, "correlation needs at least two samples");
  }
}

std::vector<double> transformed(std::span<const double> v, bool take_log) {
  std::vector<double> out(v.begin(), v.end());
  if (take_log) {
    for (auto& e : out) e = std::log(e);
  }
  return out;
}

bool all_positive(std::span<const double> v) {
  return std::all_of(v.begin(), v.end(), [](double e) { return e > 0.0; });
}

}  // namespace

double pearson(std::span<const double> x, std::span<const double> y) {
  check_pair(x, y);
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxx = 0.0;
  double syy = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxx += dx * dx;
    syy += dy * dy;
    sxy += dx * dy;
  }
  if (sxx == 0.0 || syy == 0.0) {
    throw Error(ErrorCode::ConstantColumn, "correlation with a constant column is undefined");
  }
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

std::vector<double> average_ranks(std::span<const double> x) {
  std::vector<std::size_t> order(x.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
  std::vector<double> ranks(x.size());
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i + 1;
    while (j < order.size() && x[order[j]] == x[order[i]]) ++j;
    // Positions i..j-1 (0-based) share rank mean((i+1)..j).
    const double rank = 0.5 * static_cast<double>(i + 1 + j);
    for (std::size_t k = i; k < j; ++k) ranks[order[k]] = rank;
    i = j;
  }
  return ranks;
}

double spearman(std::span<const double> x, std::span<const double> y) {
  check_pair(x, y);
  const auto rx = average_ranks(x);
  const auto ry = average_ranks(y);
  return pearson(rx, ry);
}

MaximalCorrelation maximal_correlation(std::span<const double> x, std::span<const double> y) {
  check_pair(x, y);
  const bool x_pos = all_positive(x);
  const bool y_pos = all_positive(y);

  struct Member {
    RegressionForm form;
    bool log_x;
    bool log_y;
    bool admissible;
  };
  const Member family[] = {
      {RegressionForm::linear, false, false, true},
      {RegressionForm::logarithmic, true, false, x_pos},
      {RegressionForm::exponential, false, true, y_pos},
      {RegressionForm::power, true, true, x_pos && y_pos},
  };

  std::optional<MaximalCorrelation> best;
  for (const auto& m : family) {
    if (!m.admissible) continue;
    const auto tx = transformed(x, m.log_x);
    const auto ty = transformed(y, m.log_y);
    const double r = pearson(tx, ty);
    if (!best || std::abs(r) > std::abs(best->r)) best = MaximalCorrelation{r, m.form};
  }
  if (!best) {
    throw Error(ErrorCode::NoAdmissibleForm, "no regression form admits these columns");
  }
  return *best;
}

Interval confidence_interval(double r, std::size_t n, double level) {
  if (!(std::abs(r) < 1.0)) {
    throw Error(ErrorCode::DegenerateR, "Fisher interval undefined for |r| = 1");
  }
  if (n < 4) {
    throw Error(ErrorCode::TooFewSamples, "Fisher interval needs n >= 4");
  }
  if (!(level > 0.0 && level < 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "confidence level must lie in (0, 1)");
  }
  const boost::math::normal_distribution<double> standard;
  const double critical = boost::math::quantile(standard, 0.5 * (1.0 + level));
  const double z = std::atanh(r);
  const double half = critical / std::sqrt(static_cast<double>(n) - 3.0);
  return {std::tanh(z - half), std::tanh(z + half)};
}

double percentage_difference(double a, double b) {
  return 100.0 * std::abs(std::abs(a) - std::abs(b));
}

Eigen::MatrixXd percentage_difference(const CorrelationReport& a, const CorrelationReport& b) {
  if (a.names != b.names) {
    throw Error(ErrorCode::DimensionMismatch, "reports cover different columns");
  }
  Eigen::MatrixXd out(a.matrix.rows(), a.matrix.cols());
  for (Eigen::Index i = 0; i < out.rows(); ++i) {
    for (Eigen::Index j = 0; j < out.cols(); ++j) {
      out(i, j) = percentage_difference(a.matrix(i, j), b.matrix(i, j));
    }
  }
  return out;
}

CorrelationReport correlation_matrix(const Dataset& ds, CorrelationMethod method,
                                     const CorrelationOptions& options) {
  std::vector<std::size_t> cols;
  for (std::size_t c = 0; c < ds.column_count(); ++c) {
    if (ds.columns()[c].role != ColumnRole::unused) cols.push_back(c);
  }
  if (cols.size() < 2) {
    throw Error(ErrorCode::InvalidArgument, "correlation matrix needs at least two columns");
  }

  CorrelationReport report;
  report.method = method;
  report.samples = ds.row_count();
  report.min_correlation = options.min_correlation;
  report.level = options.level;
  const auto k = static_cast<Eigen::Index>(cols.size());
  report.matrix = Eigen::MatrixXd::Identity(k, k);

  std::vector<Eigen::VectorXd> data;
  for (auto c : cols) {
    report.names.push_back(ds.columns()[c].name);
    data.push_back(ds.values().col(static_cast<Eigen::Index>(c)));
  }
  const auto view = [&](std::size_t i) {
    return std::span<const double>(data[i].data(), static_cast<std::size_t>(data[i].size()));
  };

  for (std::size_t i = 0; i < cols.size(); ++i) {
    for (std::size_t j = i + 1; j < cols.size(); ++j) {
      CorrelationPair pair;
      pair.a = report.names[i];
      pair.b = report.names[j];
      switch (method) {
        case CorrelationMethod::pearson: pair.r = pearson(view(i), view(j)); break;
        case CorrelationMethod::spearman: pair.r = spearman(view(i), view(j)); break;
        case CorrelationMethod::maximal: {
          const auto m = maximal_correlation(view(i), view(j));
          pair.r = m.r;
          pair.form = m.form;
          break;
        }
      }
      if (std::abs(pair.r) >= 1.0) {
        pair.ci = {pair.r, pair.r};
      } else if (report.samples < 4) {
        pair.ci = {-1.0, 1.0};
      } else {
        pair.ci = confidence_interval(pair.r, report.samples, options.level);
      }
      pair.low_confidence = std::abs(pair.r) < options.min_correlation;
      const auto ii = static_cast<Eigen::Index>(i);
      const auto jj = static_cast<Eigen::Index>(j);
      report.matrix(ii, jj) = pair.r;
      report.matrix(jj, ii) = pair.r;
      report.pairs.push_back(std::move(pair));
    }
  }
  std::stable_sort(report.pairs.begin(), report.pairs.end(),
                   [](const CorrelationPair& x, const CorrelationPair& y) {
                     return std::abs(x.r) > std::abs(y.r);
                   });
  return report;
}

std::vector<CorrelationPair> top_k(const CorrelationReport& report, std::string_view column,
                                   std::size_t k) {
  std::vector<CorrelationPair> out;
  for (const auto& p : report.pairs) {
    if (out.size() == k) break;
    if (p.a == column || p.b == column) out.push_back(p);
  }
  return out;
}

}  // namespace ccpp
