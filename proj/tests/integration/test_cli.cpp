#include <algorithm>
#include <filesystem>
#include <string>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "ccpp/dataset.hpp"
#include "ccpp/model_io.hpp"
#include "ccpp/reference.hpp"
#include "cli_harness.hpp"
#include "synthetic.hpp"
#include "temp_dir.hpp"

namespace {

namespace fs = std::filesystem;
using ccpp::testing::read_file;
using ccpp::testing::run_cli;
using ccpp::testing::ScopedEnv;
using ccpp::testing::TempDir;
using nlohmann::json;

json read_json(const fs::path& p) { return json::parse(read_file(p)); }

class CliWithData : public ::testing::Test {
 protected:
  void SetUp() override {
    data_ = dir_ / "plant.csv";
    ccpp::save_csv(ccpp::testing::synthetic_ccpp(1500, 11), data_);
  }
  std::string out(const std::string& name) const { return (dir_ / name).string(); }

  TempDir dir_;
  fs::path data_;
};

TEST(Cli, GoldenVerifyExitsZero) {
  TempDir dir;
  const auto r = run_cli({"--out", dir.path().string(), "golden", "--verify"});
  EXPECT_EQ(r.code, ccpp_tools::kExitOk) << r.err;
  EXPECT_NE(r.out.find("bit-exact"), std::string::npos);
  const auto doc = read_json(dir / "golden.json");
  EXPECT_TRUE(doc["bit_exact"].get<bool>());
  EXPECT_EQ(doc["output"].get<double>(), doc["oracle"].get<double>());
  EXPECT_TRUE(fs::exists(dir / "golden_model.json"));
  const auto reloaded = ccpp::load_model(dir / "golden_model.json");
  EXPECT_EQ(ccpp::forward(reloaded, ccpp::reference::kOptimumConditions),
            doc["output"].get<double>());
}

TEST(Cli, UnknownSubcommandIsUsageError) {
  const auto r = run_cli({"bogus"});
  EXPECT_EQ(r.code, ccpp_tools::kExitUsage);
  EXPECT_NE(r.err.find("Usage"), std::string::npos) << r.err;
}

TEST(Cli, NoSubcommandIsUsageError) { EXPECT_EQ(run_cli({}).code, ccpp_tools::kExitUsage); }

TEST(Cli, BadFlagValueIsUsageError) {
  TempDir dir;
  EXPECT_EQ(run_cli({"--out", dir.path().string(), "train", "--max-epochs", "many"}).code,
            ccpp_tools::kExitUsage);
}

TEST(Cli, HelpExitsZero) {
  const auto r = run_cli({"--help"});
  EXPECT_EQ(r.code, ccpp_tools::kExitOk);
  for (const char* sub : {"ingest", "correlate", "train", "select", "evaluate", "predict",
                          "optimize", "golden"}) {
    EXPECT_NE(r.out.find(sub), std::string::npos) << sub;
  }
}

TEST(Cli, MissingDataIsDataError) {
  TempDir dir;
  const auto r =
      run_cli({"--out", dir.path().string(), "ingest", "--data", (dir / "absent.csv").string()});
  EXPECT_EQ(r.code, ccpp_tools::kExitData);
  EXPECT_EQ(r.err.rfind("error in ", 0), 0u) << r.err;
}

TEST(Cli, MalformedDataNamesTheModule) {
  TempDir dir;
  const auto bad = dir.write("bad.csv", "AT,V,AP,RH,PE\n1,2,3,x,5\n");
  const auto r = run_cli({"--out", dir.path().string(), "ingest", "--data", bad.string()});
  EXPECT_EQ(r.code, ccpp_tools::kExitData);
  EXPECT_NE(r.err.find("error in dataset"), std::string::npos) << r.err;
}

TEST(Cli, PredictFlagsExtrapolation) {
  TempDir dir;
  auto r = run_cli({"--out", dir.path().string(), "predict", "--x", "19.4,25.4,1021.4,60.8"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto doc = read_json(dir / "prediction.json");
  EXPECT_FALSE(doc["extrapolated"].get<bool>());
  EXPECT_NEAR(doc["output"].get<double>(), 462.0, 1.5);

  r = run_cli({"--out", dir.path().string(), "predict", "--x", "-50,25.4,1021.4,60.8"});
  ASSERT_EQ(r.code, 0) << r.err;
  doc = read_json(dir / "prediction.json");
  EXPECT_TRUE(doc["extrapolated"].get<bool>());
  EXPECT_NE(r.out.find("extrapolated"), std::string::npos);
}

TEST(Cli, PredictWrongArityIsUsageError) {
  TempDir dir;
  EXPECT_NE(run_cli({"--out", dir.path().string(), "predict", "--x", "1,2,3"}).code, 0);
  EXPECT_EQ(run_cli({"--out", dir.path().string(), "predict"}).code, ccpp_tools::kExitUsage);
}

TEST(Cli, OptimizeGoldenWritesSetpoint) {
  TempDir dir;
  const auto r = run_cli({"--out", dir.path().string(), "optimize", "--trace"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto doc = read_json(dir / "setpoint.json");
  const auto x = doc["x_star"].get<std::vector<double>>();
  const auto lower = doc["box"]["lower"].get<std::vector<double>>();
  const auto upper = doc["box"]["upper"].get<std::vector<double>>();
  ASSERT_EQ(x.size(), 4u);
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_GE(x[i], lower[i]);
    EXPECT_LE(x[i], upper[i]);
  }
  EXPECT_GE(doc["predicted_output"].get<double>(), doc["baseline_output"].get<double>());
  EXPECT_TRUE(doc.contains("trace"));
  EXPECT_NE(r.out.find("baseline"), std::string::npos);
}

TEST(Cli, OptimizeRejectsEmptyBox) {
  TempDir dir;
  const auto r = run_cli({"--out", dir.path().string(), "optimize", "--box",
                          "10:5,25.4:81.6,993:1030,25.6:100"});
  EXPECT_NE(r.code, 0);
}

TEST_F(CliWithData, TrainTwiceIsByteIdentical) {
  const std::vector<std::string> common{"train", "--data", data_.string(), "--seed", "5",
                                        "--max-epochs", "40"};
  auto a = common;
  a.insert(a.begin(), {"--out", out("a")});
  auto b = common;
  b.insert(b.begin(), {"--out", out("b")});
  const auto ra = run_cli(a);
  const auto rb = run_cli(b);
  ASSERT_EQ(ra.code, 0) << ra.err;
  ASSERT_EQ(rb.code, 0) << rb.err;
  for (const char* f : {"trace.csv", "trace.json", "model.json"}) {
    const auto fa = read_file(dir_ / "a" / f);
    EXPECT_FALSE(fa.empty()) << f;
    EXPECT_EQ(fa, read_file(dir_ / "b" / f)) << f;
  }
  // Manifests differ only in the output directory.
  auto ma = read_json(dir_ / "a" / "manifest.json");
  auto mb = read_json(dir_ / "b" / "manifest.json");
  ma.erase("arguments");
  mb.erase("arguments");
  ma["config"].erase("out");
  mb["config"].erase("out");
  EXPECT_EQ(ma, mb);
}

TEST_F(CliWithData, DifferentSeedsDiffer) {
  ASSERT_EQ(run_cli({"--out", out("a"), "train", "--data", data_.string(), "--seed", "1",
                     "--max-epochs", "5"}).code, 0);
  ASSERT_EQ(run_cli({"--out", out("b"), "train", "--data", data_.string(), "--seed", "2",
                     "--max-epochs", "5"}).code, 0);
  EXPECT_NE(read_file(dir_ / "a" / "trace.csv"), read_file(dir_ / "b" / "trace.csv"));
}

TEST_F(CliWithData, ManifestRecordsConfigAndData) {
  const auto r = run_cli({"--out", out("m"), "train", "--data", data_.string(), "--seed", "9",
                          "--max-epochs", "3", "--arch", "4-3-1"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto m = read_json(dir_ / "m" / "manifest.json");
  EXPECT_EQ(m["seed"], 9);
  EXPECT_EQ(m["config"]["arch"], "4-3-1");
  EXPECT_EQ(m["config"]["max_epochs"], 3);
  EXPECT_EQ(m["data"]["bytes"].get<std::uintmax_t>(), fs::file_size(data_));
  EXPECT_EQ(m["data"]["fnv1a64"].get<std::string>().size(), 16u);
  EXPECT_EQ(m["versions"]["rng"], "mt19937_64/u53");
  EXPECT_TRUE(m["versions"].contains("model_format"));
}

TEST_F(CliWithData, FlagsBeatEnvironmentBeatDefaults) {
  {
    ScopedEnv seed("CCPP_SEED", "21");
    ScopedEnv epochs("CCPP_MAX_EPOCHS", "4");
    ASSERT_EQ(run_cli({"--out", out("env"), "train", "--data", data_.string()}).code, 0);
    const auto m = read_json(dir_ / "env" / "manifest.json");
    EXPECT_EQ(m["seed"], 21);
    EXPECT_EQ(m["config"]["max_epochs"], 4);

    ASSERT_EQ(run_cli({"--out", out("flag"), "train", "--data", data_.string(), "--seed", "3"})
                  .code,
              0);
    const auto f = read_json(dir_ / "flag" / "manifest.json");
    EXPECT_EQ(f["seed"], 3);
    EXPECT_EQ(f["config"]["max_epochs"], 4);
  }
  ScopedEnv data("CCPP_DATA", data_.string());
  ScopedEnv out_dir("CCPP_OUT", out("envout"));
  ASSERT_EQ(run_cli({"ingest"}).code, 0);
  const auto m = read_json(dir_ / "envout" / "manifest.json");
  EXPECT_EQ(m["seed"], 0);
  EXPECT_EQ(m["config"]["max_epochs"], 1000);
  EXPECT_EQ(m["data"]["path"], data_.string());
}

TEST_F(CliWithData, SubcommandsLeaveInputsUntouched) {
  const auto before = read_file(data_);
  const auto t0 = fs::last_write_time(data_);
  ASSERT_EQ(run_cli({"--out", out("o"), "ingest", "--data", data_.string()}).code, 0);
  ASSERT_EQ(run_cli({"--out", out("o"), "correlate", "--data", data_.string()}).code, 0);
  ASSERT_EQ(run_cli({"--out", out("o"), "train", "--data", data_.string(), "--max-epochs", "5"})
                .code,
            0);
  const auto model = dir_ / "o" / "model.json";
  const auto model_before = read_file(model);
  ASSERT_EQ(run_cli({"--out", out("o"), "evaluate", "--data", data_.string(), "--model",
                     model.string()}).code,
            0);
  ASSERT_EQ(run_cli({"--out", out("o"), "predict", "--model", model.string(), "--x",
                     "20,50,1010,70"}).code,
            0);
  ASSERT_EQ(run_cli({"--out", out("o"), "optimize", "--model", model.string()}).code, 0);
  EXPECT_EQ(read_file(data_), before);
  EXPECT_EQ(fs::last_write_time(data_), t0);
  EXPECT_EQ(read_file(model), model_before);
}

TEST_F(CliWithData, TrainRefusesToOverwriteData) {
  const auto r = run_cli({"--out", out("o"), "train", "--data", data_.string(), "--model",
                          data_.string(), "--max-epochs", "2"});
  EXPECT_EQ(r.code, ccpp_tools::kExitUsage);
}

TEST_F(CliWithData, IngestWritesReports) {
  const auto r = run_cli({"--out", out("i"), "ingest", "--data", data_.string(), "--bins", "7"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto doc = read_json(dir_ / "i" / "ingest.json");
  EXPECT_EQ(doc["rows"], 1500);
  for (const char* col : {"T", "V", "AP", "RH", "EP"}) {
    const auto csv = read_file(dir_ / "i" / ("histogram_" + std::string(col) + ".csv"));
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 8) << col;
  }
  EXPECT_TRUE(fs::exists(dir_ / "i" / "cleaned.csv"));
  const auto cleaned = ccpp::load_csv(dir_ / "i" / "cleaned.csv", ccpp::ccpp_schema());
  EXPECT_LE(cleaned.row_count(), 1500u);
}

TEST_F(CliWithData, CorrelateWritesEveryMethod) {
  const auto r = run_cli({"--out", out("c"), "correlate", "--data", data_.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  for (const char* m : {"pearson", "spearman", "maximal"}) {
    const auto doc = read_json(dir_ / "c" / ("correlation_" + std::string(m) + ".json"));
    EXPECT_EQ(doc["matrix"].size(), 5u) << m;
  }
  EXPECT_TRUE(fs::exists(dir_ / "c" / "correlation_difference.json"));
  EXPECT_NE(r.out.find("pearson"), std::string::npos);
}

TEST_F(CliWithData, EvaluateNeedsModel) {
  EXPECT_EQ(run_cli({"--out", out("e"), "evaluate", "--data", data_.string()}).code,
            ccpp_tools::kExitUsage);
}

TEST_F(CliWithData, SelectWritesCandidates) {
  const auto r = run_cli({"--out", out("s"), "select", "--data", data_.string(), "--mode",
                          "neurons", "--min-neurons", "1", "--max-neurons", "2", "--trials",
                          "1", "--max-epochs", "20"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto doc = read_json(dir_ / "s" / "selection.json");
  EXPECT_EQ(doc["candidates"].size(), 2u);
}

}  // namespace
