#include "ccpp_tools/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <Eigen/Core>
#include <nlohmann/json.hpp>

#include "ccpp/correlation.hpp"
#include "ccpp/dataset.hpp"
#include "ccpp/error.hpp"
#include "ccpp/evaluation.hpp"
#include "ccpp/model_io.hpp"
#include "ccpp/network.hpp"
#include "ccpp/optimizer.hpp"
#include "ccpp/reference.hpp"
#include "ccpp/report_json.hpp"
#include "ccpp/rng.hpp"
#include "ccpp/selection.hpp"
#include "ccpp/training.hpp"
#include "ccpp_tools/published_network.hpp"

#ifndef CCPP_DEFAULT_DATA
#define CCPP_DEFAULT_DATA "data/Folds5x2_pp.csv"
#endif
#ifndef CCPP_VERSION
#define CCPP_VERSION "0.0.0"
#endif

namespace ccpp_tools {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string command;
  std::string data_path = CCPP_DEFAULT_DATA;
  std::string model_path;
  std::uint64_t seed = 0;
  std::string ratios = "0.6,0.2,0.2";
  std::string scaler = "mean_sd";
  std::string arch = "4-2-1";
  double reg_weight = 1e-3;
  double loss_goal = 1e-3;
  std::size_t max_epochs = 1000;
  double max_time = 3600.0;
  double cleaning = 3.0;  // 0 disables
  std::string box;
  std::string out_dir = "ccpp-out";

  std::size_t bins = 10;
  std::string method = "all";
  std::size_t top_k = 4;
  double level = 0.95;
  std::string mode = "neurons";
  std::size_t trials = 3;
  std::size_t min_neurons = 1;
  std::size_t max_neurons = 10;
  std::string split = "testing";
  std::string x;
  std::string baseline;
  std::size_t grid = 11;
  std::size_t restarts = 8;
  bool with_trace = false;
  bool verify = false;
};

json config_json(const RunConfig& c) {
  return {{"command", c.command},       {"data", c.data_path},
          {"model", c.model_path},      {"seed", c.seed},
          {"ratios", c.ratios},         {"scaler", c.scaler},
          {"arch", c.arch},             {"reg_weight", c.reg_weight},
          {"loss_goal", c.loss_goal},   {"max_epochs", c.max_epochs},
          {"max_time", c.max_time},     {"cleaning", c.cleaning},
          {"box", c.box},               {"out", c.out_dir},
          {"bins", c.bins},             {"method", c.method},
          {"top_k", c.top_k},           {"level", c.level},
          {"mode", c.mode},             {"trials", c.trials},
          {"min_neurons", c.min_neurons}, {"max_neurons", c.max_neurons},
          {"split", c.split},           {"x", c.x},
          {"baseline", c.baseline},     {"grid", c.grid},
          {"restarts", c.restarts},     {"trace", c.with_trace},
          {"verify", c.verify}};
}

// ---- parsing helpers ----

std::vector<std::string> split_list(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string current;
  for (char ch : text) {
    if (ch == sep) {
      parts.push_back(current);
      current.clear();
    } else if (ch != ' ') {
      current.push_back(ch);
    }
  }
  parts.push_back(current);
  return parts;
}

double parse_number(const std::string& text, const std::string& what) {
  double value = 0.0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end || text.empty()) {
    throw UsageError("cannot parse '" + text + "' in " + what);
  }
  return value;
}

std::vector<double> parse_vector(const std::string& text, std::size_t expected,
                                 const std::string& what) {
  std::vector<double> values;
  for (const auto& part : split_list(text, ',')) values.push_back(parse_number(part, what));
  if (values.size() != expected) {
    throw UsageError(what + " needs " + std::to_string(expected) + " comma-separated values");
  }
  return values;
}

ccpp::SplitRatios parse_ratios(const std::string& text) {
  const auto v = parse_vector(text, 3, "--ratios");
  return {v[0], v[1], v[2]};
}

/// "4-2-1" -> hidden widths {2}; the first width must match the input count.
std::vector<std::size_t> parse_arch(const std::string& text, std::size_t inputs) {
  std::vector<std::size_t> widths;
  for (const auto& part : split_list(text, '-')) {
    const double w = parse_number(part, "--arch");
    if (w < 1 || w != static_cast<double>(static_cast<std::size_t>(w))) {
      throw UsageError("--arch widths must be positive integers");
    }
    widths.push_back(static_cast<std::size_t>(w));
  }
  if (widths.size() < 3 || widths.back() != 1 || widths.front() != inputs) {
    throw UsageError("--arch must read " + std::to_string(inputs) + "-<hidden...>-1");
  }
  return {widths.begin() + 1, widths.end() - 1};
}

ccpp::InputBox parse_box(const std::string& text, std::size_t expected) {
  ccpp::InputBox box;
  for (const auto& part : split_list(text, ',')) {
    const auto bounds = split_list(part, ':');
    if (bounds.size() != 2) throw UsageError("--box entries read lower:upper");
    box.lower.push_back(parse_number(bounds[0], "--box"));
    box.upper.push_back(parse_number(bounds[1], "--box"));
  }
  if (box.size() != expected) {
    throw UsageError("--box needs " + std::to_string(expected) + " lower:upper entries");
  }
  return box;
}

// ---- output helpers ----

std::string fixed(double v, int digits = 4) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::string exact(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void print_table(std::ostream& out, const std::vector<std::string>& header,
                 const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width(header.size());
  for (std::size_t c = 0; c < header.size(); ++c) width[c] = header[c].size();
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size() && c < width.size(); ++c) {
      width[c] = std::max(width[c], row[c].size());
    }
  }
  const auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t c = 0; c < cells.size(); ++c) {
      if (c > 0) out << "  ";
      const std::string pad(width[c] - cells[c].size(), ' ');
      if (c == 0) {
        out << cells[c] << pad;
      } else {
        out << pad << cells[c];
      }
    }
    out << '\n';
  };
  line(header);
  std::size_t total = 0;
  for (auto w : width) total += w;
  out << std::string(total + 2 * (width.size() - 1), '-') << '\n';
  for (const auto& row : rows) line(row);
}

class Output {
 public:
  explicit Output(const std::string& dir) : dir_(dir) {}

  fs::path path(const std::string& name) const { return dir_ / name; }

  void text(const std::string& name, const std::string& content) const {
    fs::create_directories(dir_);
    std::ofstream f(path(name), std::ios::binary);
    f << content;
    if (!f) throw ccpp::Error(ccpp::ErrorCode::IoError, "cannot write " + path(name).string());
  }

  void json_file(const std::string& name, const json& doc) const { text(name, doc.dump(2) + "\n"); }

 private:
  fs::path dir_;
};

std::uint64_t fnv1a(const fs::path& file) {
  std::ifstream in(file, std::ios::binary);
  std::uint64_t h = 1469598103934665603ULL;
  char buf[1 << 16];
  while (in.read(buf, sizeof buf) || in.gcount() > 0) {
    for (std::streamsize i = 0; i < in.gcount(); ++i) {
      h ^= static_cast<unsigned char>(buf[i]);
      h *= 1099511628211ULL;
    }
  }
  return h;
}

void write_manifest(const Output& output, const RunConfig& cfg,
                    const std::vector<std::string>& args) {
  json data = nullptr;
  std::error_code ec;
  if (fs::is_regular_file(cfg.data_path, ec)) {
    char hash[32];
    std::snprintf(hash, sizeof hash, "%016llx",
                  static_cast<unsigned long long>(fnv1a(cfg.data_path)));
    data = {{"path", cfg.data_path}, {"bytes", fs::file_size(cfg.data_path)},
            {"fnv1a64", hash}};
  }
  const json manifest = {
      {"tool", "ccpp"},
      {"arguments", args},
      {"config", config_json(cfg)},
      {"seed", cfg.seed},
      {"data", data},
      {"versions",
       {{"ccpp", CCPP_VERSION},
        {"model_format", ccpp::kModelFormatVersion},
        {"rng", std::string(ccpp::Rng::algorithm)},
        {"compiler", __VERSION__},
        {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) +
                      "." + std::to_string(EIGEN_MINOR_VERSION)},
        {"nlohmann_json", std::to_string(NLOHMANN_JSON_VERSION_MAJOR) + "." +
                              std::to_string(NLOHMANN_JSON_VERSION_MINOR) + "." +
                              std::to_string(NLOHMANN_JSON_VERSION_PATCH)}}}};
  output.json_file("manifest.json", manifest);
}

// ---- pipeline pieces ----

ccpp::Dataset load_data(const RunConfig& cfg) {
  return ccpp::load_csv(cfg.data_path, ccpp::ccpp_schema());
}

struct Prepared {
  ccpp::Dataset dataset;
  std::size_t removed = 0;
};

Prepared prepare_data(const RunConfig& cfg) {
  Prepared p{load_data(cfg), 0};
  if (cfg.cleaning > 0.0) {
    auto cleaned = ccpp::clean_outliers(p.dataset, cfg.cleaning);
    p.removed = cleaned.removed_rows.size();
    p.dataset = std::move(cleaned.dataset);
  }
  p.dataset = ccpp::split_random(p.dataset, parse_ratios(cfg.ratios), cfg.seed);
  return p;
}

ccpp::TrainingSetup training_setup(const RunConfig& cfg) {
  ccpp::TrainingSetup setup;
  setup.scaler = ccpp::parse_scaler_method(cfg.scaler);
  setup.loss.regularization_weight = cfg.reg_weight;
  setup.stopping.loss_goal = cfg.loss_goal;
  setup.stopping.max_epochs = cfg.max_epochs;
  setup.stopping.max_time_seconds = cfg.max_time;
  return setup;
}

ccpp::NetworkModel model_or_golden(const RunConfig& cfg) {
  return cfg.model_path.empty() ? ccpp::golden_model() : ccpp::load_model(cfg.model_path);
}

ccpp::InputBox box_for(const RunConfig& cfg, const ccpp::NetworkModel& model) {
  return cfg.box.empty() ? ccpp::training_box(model) : parse_box(cfg.box, model.input_count());
}

void print_split_metrics(std::ostream& out, const ccpp::NetworkModel& model,
                         const ccpp::Dataset& ds, json& doc) {
  std::vector<std::vector<std::string>> rows;
  for (auto split : {ccpp::Split::training, ccpp::Split::selection, ccpp::Split::testing}) {
    if (ds.count(split) < 2) continue;
    const auto report = ccpp::evaluate(model, ccpp::make_batch(ds, split));
    rows.push_back({std::string(to_string(split)), std::to_string(report.metrics.samples),
                    fixed(report.metrics.nse, 5), fixed(report.r_squared, 5),
                    fixed(report.metrics.rmse, 3)});
    doc[std::string(to_string(split))] = {{"metrics", ccpp::to_json(report.metrics)},
                                          {"r_squared", report.r_squared}};
  }
  print_table(out, {"split", "rows", "NSE", "R2", "RMSE [MW]"}, rows);
}

// ---- subcommands ----

int cmd_ingest(const RunConfig& cfg, const Output& output, std::ostream& out) {
  const auto ds = load_data(cfg);
  json stats = json::object();
  json hists = json::object();
  std::vector<std::vector<std::string>> rows;
  for (const auto& col : ds.columns()) {
    const Eigen::VectorXd v = ds.column(col.name);
    const std::span<const double> values(v.data(), static_cast<std::size_t>(v.size()));
    const auto s = ccpp::compute_stats(values);
    const double med = ccpp::median(values);
    rows.push_back({col.name, col.unit, fixed(s.minimum, 3), fixed(s.maximum, 3), fixed(s.mean, 3),
                    fixed(s.deviation, 3), fixed(med, 3)});
    json entry = ccpp::to_json(s);
    entry["median"] = med;
    stats[col.name] = entry;
    const auto h = ccpp::histogram(values, cfg.bins);
    hists[col.name] = ccpp::to_json(h);
    output.text("histogram_" + col.name + ".csv", ccpp::histogram_csv(h));
  }
  out << "rows: " << ds.row_count() << "\n\n";
  print_table(out, {"column", "unit", "min", "max", "mean", "deviation", "median"}, rows);

  json doc = {{"rows", ds.row_count()}, {"statistics", stats}, {"histograms", hists}};
  if (cfg.cleaning > 0.0) {
    const auto cleaned = ccpp::clean_outliers(ds, cfg.cleaning);
    out << "\noutlier cleaning (|z| > " << cfg.cleaning << "): removed "
        << cleaned.removed_rows.size() << " of " << ds.row_count() << " rows\n";
    doc["cleaning"] = {{"parameter", cfg.cleaning},
                       {"removed_rows", cleaned.removed_rows},
                       {"remaining", cleaned.dataset.row_count()}};
    ccpp::save_csv(cleaned.dataset, output.path("cleaned.csv"));
  }
  output.json_file("ingest.json", doc);
  return kExitOk;
}

void print_matrix(std::ostream& out, const ccpp::CorrelationReport& report) {
  std::vector<std::string> header{""};
  header.insert(header.end(), report.names.begin(), report.names.end());
  std::vector<std::vector<std::string>> rows;
  for (Eigen::Index i = 0; i < report.matrix.rows(); ++i) {
    std::vector<std::string> row{report.names[static_cast<std::size_t>(i)]};
    for (Eigen::Index j = 0; j < report.matrix.cols(); ++j) row.push_back(fixed(report.matrix(i, j)));
    rows.push_back(std::move(row));
  }
  print_table(out, header, rows);
}

int cmd_correlate(const RunConfig& cfg, const Output& output, std::ostream& out) {
  const auto ds = load_data(cfg);
  std::vector<ccpp::CorrelationMethod> methods;
  if (cfg.method == "all") {
    methods = {ccpp::CorrelationMethod::pearson, ccpp::CorrelationMethod::spearman,
               ccpp::CorrelationMethod::maximal};
  } else {
    methods = {ccpp::parse_correlation_method(cfg.method)};
  }
  const std::string target = ds.columns()[ds.target_index()].name;
  std::vector<ccpp::CorrelationReport> reports;
  for (auto method : methods) {
    const auto report = ccpp::correlation_matrix(ds, method, {0.25, cfg.level});
    out << to_string(method) << " correlation (" << report.samples << " rows)\n";
    print_matrix(out, report);
    std::vector<std::vector<std::string>> rows;
    for (const auto& p : ccpp::top_k(report, target, cfg.top_k)) {
      rows.push_back({p.a + " - " + p.b, fixed(p.r), fixed(p.ci.low), fixed(p.ci.high),
                      p.form ? std::string(to_string(*p.form)) : "",
                      p.low_confidence ? "low" : ""});
    }
    out << "\nstrongest pairs with " << target << '\n';
    print_table(out, {"pair", "r", "ci low", "ci high", "form", "flag"}, rows);
    out << '\n';
    output.json_file("correlation_" + std::string(to_string(method)) + ".json",
                     ccpp::to_json(report));
    reports.push_back(report);
  }
  if (reports.size() == 3) {
    const Eigen::MatrixXd diff = ccpp::percentage_difference(reports[0], reports[1]);
    json rows = json::array();
    for (Eigen::Index i = 0; i < diff.rows(); ++i) {
      json row = json::array();
      for (Eigen::Index j = 0; j < diff.cols(); ++j) row.push_back(diff(i, j));
      rows.push_back(std::move(row));
    }
    output.json_file("correlation_difference.json",
                     {{"a", "pearson"}, {"b", "spearman"}, {"names", reports[0].names},
                      {"percentage_difference", rows}});
  }
  return kExitOk;
}

int cmd_train(const RunConfig& cfg, const Output& output, std::ostream& out) {
  const auto prepared = prepare_data(cfg);
  const auto& ds = prepared.dataset;
  const auto setup = training_setup(cfg);
  ccpp::ModelSetup model_setup;
  model_setup.hidden = parse_arch(cfg.arch, ds.input_indices().size());
  model_setup.scaler = setup.scaler;
  model_setup.seed = cfg.seed;

  const fs::path model_path = cfg.model_path.empty() ? output.path("model.json") : fs::path(cfg.model_path);
  std::error_code ec;
  if (fs::equivalent(model_path, cfg.data_path, ec)) {
    throw UsageError("--model would overwrite the input data file");
  }

  ccpp::TrainingResult result;
  try {
    result = ccpp::train(ds, model_setup, setup.loss, setup.stopping);
  } catch (const ccpp::NonFiniteLossError& e) {
    output.json_file("trace.json", ccpp::to_json(e.trace()));
    output.text("trace.csv", ccpp::trace_csv(e.trace()));
    throw;
  }
  output.json_file("trace.json", ccpp::to_json(result.trace));
  output.text("trace.csv", ccpp::trace_csv(result.trace));
  if (!model_path.parent_path().empty()) fs::create_directories(model_path.parent_path());
  ccpp::save_model(result.model, model_path);

  const auto& trace = result.trace;
  out << "rows: " << ds.row_count() << " (" << prepared.removed << " removed as outliers); "
      << "split " << ds.count(ccpp::Split::training) << '/' << ds.count(ccpp::Split::selection)
      << '/' << ds.count(ccpp::Split::testing) << '\n';
  out << "architecture " << cfg.arch << ", scaler " << cfg.scaler << ", seed " << cfg.seed << '\n';
  out << "epochs: " << trace.epochs.size() << ", stop: " << to_string(trace.stop_reason) << '\n';
  if (!trace.epochs.empty()) {
    out << "final training NSE " << fixed(trace.epochs.back().training_loss, 5)
        << ", selection NSE " << fixed(trace.epochs.back().selection_loss, 5) << "\n\n";
  }
  json summary = {{"epochs", trace.epochs.size()},
                  {"stop_reason", std::string(to_string(trace.stop_reason))},
                  {"removed_rows", prepared.removed},
                  {"model", model_path.string()}};
  print_split_metrics(out, result.model, ds, summary);
  output.json_file("train.json", summary);
  out << "\nmodel written to " << model_path.string() << '\n';
  return kExitOk;
}

int cmd_select(const RunConfig& cfg, const Output& output, std::ostream& out) {
  const auto ds = prepare_data(cfg).dataset;
  const auto setup = training_setup(cfg);
  ccpp::SelectionResult result;
  if (cfg.mode == "neurons") {
    ccpp::GrowingNeuronsConfig c;
    c.min_neurons = cfg.min_neurons;
    c.max_neurons = cfg.max_neurons;
    c.trials = cfg.trials;
    c.seed = cfg.seed;
    c.training = setup;
    result = ccpp::growing_neurons(ds, c);
  } else {
    ccpp::GrowingInputsConfig c;
    c.trials = cfg.trials;
    c.max_inputs = ds.input_indices().size();
    c.seed = cfg.seed;
    c.training = setup;
    result = ccpp::growing_inputs(ds, c);
  }
  std::vector<std::vector<std::string>> rows;
  for (const auto& cand : result.candidates) {
    std::string inputs;
    for (const auto& name : cand.inputs) inputs += (inputs.empty() ? "" : ",") + name;
    rows.push_back({std::to_string(cand.index), inputs, std::to_string(cand.neurons),
                    fixed(cand.training_error, 5), fixed(cand.selection_error, 5),
                    std::to_string(cand.epochs),
                    cand.index == result.best().index ? "*" : ""});
  }
  print_table(out, {"#", "inputs", "neurons", "training NSE", "selection NSE", "epochs", "chosen"},
              rows);
  out << "stop: " << to_string(result.stop_reason) << '\n';
  output.json_file("selection.json", ccpp::to_json(result));
  return kExitOk;
}

int cmd_evaluate(const RunConfig& cfg, const Output& output, std::ostream& out) {
  if (cfg.model_path.empty()) throw UsageError("evaluate needs --model");
  const auto model = ccpp::load_model(cfg.model_path);
  const auto ds = prepare_data(cfg).dataset;
  ccpp::Batch rows;
  if (cfg.split == "all") {
    rows = ccpp::make_batch(ds);
  } else if (cfg.split == "training") {
    rows = ccpp::make_batch(ds, ccpp::Split::training);
  } else if (cfg.split == "selection") {
    rows = ccpp::make_batch(ds, ccpp::Split::selection);
  } else {
    rows = ccpp::make_batch(ds, ccpp::Split::testing);
  }
  const auto report = ccpp::evaluate(model, rows);
  const auto& m = report.metrics;
  out << cfg.split << " rows: " << m.samples << '\n';
  print_table(out, {"metric", "value"},
              {{"SSE", fixed(m.sse, 3)},
               {"MSE", fixed(m.mse, 5)},
               {"RMSE [MW]", fixed(m.rmse, 5)},
               {"NSE", fixed(m.nse, 6)},
               {"Minkowski (p=" + fixed(m.minkowski_exponent, 2) + ")", fixed(m.minkowski, 3)},
               {"R2", fixed(report.r_squared, 6)}});

  const auto summary_row = [](const std::string& name, const ccpp::Summary& s) {
    return std::vector<std::string>{name, fixed(s.minimum), fixed(s.maximum), fixed(s.mean),
                                    fixed(s.deviation)};
  };
  out << '\n';
  print_table(out, {"error", "min", "max", "mean", "deviation"},
              {summary_row("absolute [MW]", report.statistics.absolute),
               summary_row("relative", report.statistics.relative),
               summary_row("percentage", report.statistics.percentage)});

  std::vector<std::vector<std::string>> maximal;
  for (const auto& e : report.maximal) {
    maximal.push_back({std::to_string(e.index), fixed(e.error, 3), fixed(e.prediction, 3),
                       fixed(e.target, 3)});
  }
  out << "\nlargest errors\n";
  print_table(out, {"row", "error", "prediction", "target"}, maximal);

  std::vector<std::vector<std::string>> importance;
  for (const auto& i : report.importance) importance.push_back({i.input, fixed(i.score)});
  out << "\ninput importance\n";
  print_table(out, {"input", "score"}, importance);

  output.json_file("evaluation.json", ccpp::to_json(report));
  output.text("predictions.csv", ccpp::predictions_csv(report));
  output.text("error_histogram.csv", ccpp::histogram_csv(report.error_histogram));
  return kExitOk;
}

int cmd_predict(const RunConfig& cfg, const Output& output, std::ostream& out) {
  if (cfg.x.empty()) throw UsageError("predict needs --x");
  const auto model = model_or_golden(cfg);
  const auto x = parse_vector(cfg.x, model.input_count(), "--x");
  const auto box = box_for(cfg, model);
  const auto r = ccpp::what_if(model, x, box);
  out << "predicted output: " << fixed(r.output, 4) << " MW";
  if (r.extrapolated) out << " [extrapolated: input outside the training box]";
  if (r.saturated) out << " [saturated at output bound]";
  out << '\n';
  output.json_file("prediction.json", {{"x", x},
                                       {"output", r.output},
                                       {"extrapolated", r.extrapolated},
                                       {"saturated", r.saturated}});
  return kExitOk;
}

int cmd_optimize(const RunConfig& cfg, const Output& output, std::ostream& out) {
  const auto model = model_or_golden(cfg);
  const auto box = box_for(cfg, model);
  std::vector<double> baseline;
  if (!cfg.baseline.empty()) {
    baseline = parse_vector(cfg.baseline, model.input_count(), "--baseline");
  } else if (model.input_count() == ccpp::reference::kMedianConditions.size()) {
    baseline.assign(ccpp::reference::kMedianConditions.begin(),
                    ccpp::reference::kMedianConditions.end());
  } else {
    throw UsageError("optimize needs --baseline for a model with " +
                     std::to_string(model.input_count()) + " inputs");
  }
  ccpp::OptimizerConfig oc;
  oc.grid_per_dim = cfg.grid;
  oc.restarts = cfg.restarts;
  const auto r = ccpp::maximize_output(model, box, baseline, oc);

  std::vector<std::vector<std::string>> rows;
  for (std::size_t i = 0; i < model.input_count(); ++i) {
    rows.push_back({model.input_names[i], fixed(box.lower[i], 2), fixed(box.upper[i], 2),
                    fixed(baseline[i], 2), fixed(r.x_star[i], 2)});
  }
  print_table(out, {"input", "lower", "upper", "baseline", "setpoint"}, rows);
  out << "\nbaseline " << fixed(r.baseline_output, 2) << " MW -> setpoint "
      << fixed(r.predicted_output, 2) << " MW (" << (r.improvement_percent >= 0 ? "+" : "")
      << fixed(r.improvement_percent, 2) << "%)";
  if (r.saturated) out << " [saturated; unbounded " << fixed(r.unbounded_output, 2) << " MW]";
  out << "; " << r.trace.size() << " evaluations\n";
  json doc = ccpp::to_json(r, cfg.with_trace);
  doc["baseline"] = baseline;
  doc["box"] = {{"lower", box.lower}, {"upper", box.upper}};
  output.json_file("setpoint.json", doc);
  return kExitOk;
}

int cmd_golden(const RunConfig& cfg, const Output& output, std::ostream& out) {
  const auto model = ccpp::golden_model();
  const auto& x = ccpp::reference::kOptimumConditions;
  const double value = ccpp::forward(model, x);
  const double oracle = published::neural_network_output(x[0], x[1], x[2], x[3]);
  ccpp::save_model(model, output.path("golden_model.json"));
  out << "golden forward at (" << x[0] << ", " << x[1] << ", " << x[2] << ", " << x[3]
      << "): " << exact(value) << " MW\n";
  json doc = {{"x", x}, {"output", value}, {"model", output.path("golden_model.json").string()}};
  if (!cfg.verify) {
    output.json_file("golden.json", doc);
    return kExitOk;
  }
  const bool bit_exact = value == oracle;
  const double published = ccpp::reference::kOptimumOutput;
  const bool near_published = std::abs(value - published) <= 0.2;
  out << "transcription oracle:                   " << exact(oracle) << " MW\n"
      << "layered vs transcription: " << (bit_exact ? "bit-exact" : "MISMATCH") << '\n'
      << "published optimum " << published << " MW: difference " << fixed(value - published, 4)
      << " MW (" << (near_published ? "within" : "outside") << " 0.2 MW)\n";
  doc["oracle"] = oracle;
  doc["bit_exact"] = bit_exact;
  doc["published"] = published;
  doc["within_published_tolerance"] = near_published;
  output.json_file("golden.json", doc);
  return bit_exact ? kExitOk : kExitData;
}

// ---- command-line wiring ----

void add_data(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--data", cfg.data_path, "CCPP CSV file")->envname("CCPP_DATA")
      ->capture_default_str();
}

void add_split(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--seed", cfg.seed, "seed for the split and initial weights")
      ->envname("CCPP_SEED")->capture_default_str();
  sub->add_option("--ratios", cfg.ratios, "training,selection,testing fractions")
      ->envname("CCPP_RATIOS")->capture_default_str();
  sub->add_option("--cleaning", cfg.cleaning, "z-score outlier threshold, 0 disables")
      ->envname("CCPP_CLEANING")->capture_default_str();
}

void add_training(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--scaler", cfg.scaler, "input scaler")
      ->check(CLI::IsMember({"none", "min_max", "mean_sd", "log"}))
      ->envname("CCPP_SCALER")->capture_default_str();
  sub->add_option("--reg-weight", cfg.reg_weight, "L2 regularization weight")
      ->envname("CCPP_REG_WEIGHT")->capture_default_str();
  sub->add_option("--loss-goal", cfg.loss_goal, "stop when training NSE falls below this")
      ->envname("CCPP_LOSS_GOAL")->capture_default_str();
  sub->add_option("--max-epochs", cfg.max_epochs, "epoch limit")
      ->envname("CCPP_MAX_EPOCHS")->capture_default_str();
  sub->add_option("--max-time", cfg.max_time, "time limit per training run [s]")
      ->envname("CCPP_MAX_TIME")->capture_default_str();
}

void add_model(CLI::App* sub, RunConfig& cfg, const std::string& help) {
  sub->add_option("--model", cfg.model_path, help)->envname("CCPP_MODEL");
}

void add_box(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--box", cfg.box, "lower:upper per input, comma separated")
      ->envname("CCPP_BOX");
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Combined cycle power plant output forecasting", "ccpp"};
  app.set_version_flag("--version", CCPP_VERSION);
  app.require_subcommand(1);
  app.add_option("--out", cfg.out_dir, "directory for machine-readable reports")
      ->envname("CCPP_OUT")->capture_default_str();

  auto* ingest = app.add_subcommand("ingest", "load the table, print statistics and histograms");
  add_data(ingest, cfg);
  ingest->add_option("--bins", cfg.bins, "histogram bins")->capture_default_str();
  ingest->add_option("--cleaning", cfg.cleaning, "z-score outlier threshold, 0 disables")
      ->envname("CCPP_CLEANING")->capture_default_str();

  auto* correlate = app.add_subcommand("correlate", "correlation matrices and strongest pairs");
  add_data(correlate, cfg);
  correlate->add_option("--method", cfg.method, "pearson, spearman, maximal or all")
      ->check(CLI::IsMember({"pearson", "spearman", "maximal", "all"}))->capture_default_str();
  correlate->add_option("--top-k", cfg.top_k, "pairs listed per target")->capture_default_str();
  correlate->add_option("--level", cfg.level, "confidence level")->capture_default_str();

  auto* train = app.add_subcommand("train", "fit a network and write model and trace");
  add_data(train, cfg);
  add_split(train, cfg);
  add_training(train, cfg);
  train->add_option("--arch", cfg.arch, "layer widths, e.g. 4-2-1")
      ->envname("CCPP_ARCH")->capture_default_str();
  add_model(train, cfg, "where to write the trained model (default <out>/model.json)");

  auto* select = app.add_subcommand("select", "growing-neurons or growing-inputs sweep");
  add_data(select, cfg);
  add_split(select, cfg);
  add_training(select, cfg);
  select->add_option("--mode", cfg.mode, "neurons or inputs")
      ->check(CLI::IsMember({"neurons", "inputs"}))->capture_default_str();
  select->add_option("--trials", cfg.trials, "trainings per candidate")->capture_default_str();
  select->add_option("--min-neurons", cfg.min_neurons)->capture_default_str();
  select->add_option("--max-neurons", cfg.max_neurons)->capture_default_str();

  auto* evaluate = app.add_subcommand("evaluate", "error report for a trained model");
  add_data(evaluate, cfg);
  add_split(evaluate, cfg);
  add_model(evaluate, cfg, "trained model file");
  evaluate->add_option("--split", cfg.split, "rows to evaluate")
      ->check(CLI::IsMember({"training", "selection", "testing", "all"}))->capture_default_str();

  auto* predict = app.add_subcommand("predict", "what-if forecast for one input vector");
  add_model(predict, cfg, "model file (default: the published network)");
  add_box(predict, cfg);
  predict->add_option("--x", cfg.x, "comma-separated inputs, e.g. 19.4,25.4,1021.4,60.8");

  auto* optimize = app.add_subcommand("optimize", "maximize predicted output inside a box");
  add_model(optimize, cfg, "model file (default: the published network)");
  add_box(optimize, cfg);
  optimize->add_option("--baseline", cfg.baseline, "baseline inputs (default: median conditions)");
  optimize->add_option("--grid", cfg.grid, "grid points per input")->capture_default_str();
  optimize->add_option("--restarts", cfg.restarts, "local ascents from the best grid points")
      ->capture_default_str();
  optimize->add_flag("--trace", cfg.with_trace, "include every evaluation in setpoint.json");

  auto* golden = app.add_subcommand("golden", "emit the published network and check it");
  golden->add_flag("--verify", cfg.verify, "compare against the line-by-line transcription");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << CCPP_VERSION << '\n';
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  std::vector<std::string> args(argv + 1, argv + argc);
  CLI::App* sub = app.get_subcommands().front();
  cfg.command = sub->get_name();
  const Output output(cfg.out_dir);
  try {
    write_manifest(output, cfg, args);
    if (cfg.command == "ingest") return cmd_ingest(cfg, output, out);
    if (cfg.command == "correlate") return cmd_correlate(cfg, output, out);
    if (cfg.command == "train") return cmd_train(cfg, output, out);
    if (cfg.command == "select") return cmd_select(cfg, output, out);
    if (cfg.command == "evaluate") return cmd_evaluate(cfg, output, out);
    if (cfg.command == "predict") return cmd_predict(cfg, output, out);
    if (cfg.command == "optimize") return cmd_optimize(cfg, output, out);
    return cmd_golden(cfg, output, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ccpp::Error& e) {
    err << "error in " << ccpp::module_of(e.code()) << ": " << e.what() << '\n';
    return kExitData;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitData;
  }
}

}  // namespace ccpp_tools
