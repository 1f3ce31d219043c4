#include "cli.hpp"

#include <gtest/gtest.h>
#include <json.hpp>

#include <array>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "support/oracles.hpp"

namespace nssga::cli {
namespace {

using json = nlohmann::json;

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun run_cli(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

const std::string kOis = testing::data_path("eur_ois_2011-09.csv");
const std::string kBonds = testing::data_path("usd_bonds_2020-07-28.csv");
const std::string kTable5Row1 = "0.020780,-0.011995,-0.034771,0.023232,1.484620,9.050420";

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("nssga_cli_test_" + name);
}

json without_wall_time(json report) {
  for (json& r : report["records"]) r.erase("wall_time_ms");
  return report;
}

std::vector<std::vector<double>> parse_csv_rows(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "tenor_years,spot_rate,forward_rate");
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    std::vector<double> row;
    std::istringstream cells(line);
    std::string cell;
    while (std::getline(cells, cell, ',')) row.push_back(std::stod(cell));
    rows.push_back(row);
  }
  return rows;
}

// Full-scale runs are shared between tests.
const json& nss_report() {
  static const json report = [] {
    const CliRun r = run_cli({"calibrate", "--input", kOis, "--date", "2011-09-22", "--model", "nss",
                           "--bounds", "ois", "--pop", "1024", "--gens", "10000", "--seed", "42"});
    EXPECT_EQ(r.code, kOk) << r.err;
    return json::parse(r.out);
  }();
  return report;
}

TEST(CliCalibrate, PublishedScaleRunMeetsTolerance) {
  const json& report = nss_report();
  EXPECT_EQ(report["tool"], "nssga");
  EXPECT_EQ(report["rng_seed"], 42);
  ASSERT_EQ(report["records"].size(), 1u);
  const json& rec = report["records"][0];
  EXPECT_EQ(rec["date"], "2011-09-22");
  EXPECT_EQ(rec["model"], "nss");
  EXPECT_EQ(rec["generations"], 10000);
  EXPECT_LE(rec["l2"].get<double>(), 0.0025);
  EXPECT_LE(rec["linf"].get<double>(), 0.0012);
  EXPECT_TRUE(rec.contains("wall_time_ms"));
  EXPECT_EQ(report["config"]["ga"]["population"], 1024);
}

TEST(CliCalibrate, NsFitsWorseThanNss) {
  const CliRun r = run_cli({"calibrate", "--input", kOis, "--date", "2011-09-22", "--model", "ns",
                         "--bounds", "ois-ns", "--pop", "1024", "--gens", "10000", "--seed", "42"});
  ASSERT_EQ(r.code, kOk) << r.err;
  const json ns = json::parse(r.out);
  EXPECT_EQ(ns["records"][0]["model"], "ns");
  EXPECT_FALSE(ns["records"][0]["params"].contains("kappa"));
  EXPECT_GT(ns["records"][0]["l2"].get<double>(), nss_report()["records"][0]["l2"].get<double>());
}

TEST(CliCalibrate, SameCommandSameReport) {
  const std::vector<std::string> args{"calibrate", "--input", kOis,   "--date", "2011-09-23",
                                      "--pop",     "64",      "--gens", "50",   "--seed",
                                      "7",         "--threads", "2"};
  const CliRun a = run_cli(args);
  const CliRun b = run_cli(args);
  ASSERT_EQ(a.code, kOk) << a.err;
  EXPECT_EQ(without_wall_time(json::parse(a.out)).dump(), without_wall_time(json::parse(b.out)).dump());
}

TEST(CliCalibrate, AllDatesWithoutDateFlag) {
  const CliRun r = run_cli({"calibrate", "--input", kOis, "--pop", "32", "--gens", "5", "--returning", "8"});
  ASSERT_EQ(r.code, kOk) << r.err;
  EXPECT_EQ(json::parse(r.out)["records"].size(), 7u);
}

TEST(CliCalibrate, ReplayReproducesParams) {
  const auto path = temp_file("replay.json");
  const CliRun first = run_cli({"calibrate", "--input", kOis, "--date", "2011-09-26", "--pop", "64",
                             "--gens", "40", "--seed", "3", "--out", path.string()});
  ASSERT_EQ(first.code, kOk) << first.err;
  EXPECT_TRUE(first.out.empty());
  const CliRun again = run_cli({"replay", "--report", path.string()});
  ASSERT_EQ(again.code, kOk) << again.err;
  std::ifstream in(path);
  const json original = json::parse(in);
  const json replayed = json::parse(again.out);
  EXPECT_EQ(replayed["records"][0]["params"], original["records"][0]["params"]);
  EXPECT_EQ(without_wall_time(replayed).dump(), without_wall_time(original).dump());
  std::filesystem::remove(path);
}

TEST(CliCalibrate, BoundsFromFile) {
  const auto path = temp_file("bounds.json");
  std::ofstream(path) << "[[0, 0.1], [-0.1, 1], [-2, 2], [0, 2], [0.5, 4], [4, 30]]";
  const CliRun r = run_cli({"calibrate", "--input", kOis, "--date", "2011-09-22", "--bounds",
                         path.string(), "--pop", "64", "--gens", "20"});
  ASSERT_EQ(r.code, kOk) << r.err;
  const json report = json::parse(r.out);
  EXPECT_EQ(report["config"]["bounds"]["intervals"][4][0], 0.5);
  EXPECT_GE(report["records"][0]["params"]["lambda"].get<double>(), 0.5);

  std::ofstream(path) << "[[0, 0.1], [-0.1, 1]]";
  EXPECT_EQ(run_cli({"calibrate", "--input", kOis, "--bounds", path.string(), "--pop", "64",
                     "--gens", "1"})
                .code,
            kConfigError);
  std::filesystem::remove(path);
}

TEST(CliCalibrate, ErrorExitCodes) {
  const CliRun missing = run_cli({"calibrate", "--input", "/nonexistent/ois.csv"});
  EXPECT_EQ(missing.code, kInputError);
  EXPECT_NE(missing.err.find("/nonexistent/ois.csv"), std::string::npos);

  EXPECT_EQ(run_cli({"calibrate", "--input", kOis, "--date", "2011-10-01"}).code, kInputError);
  EXPECT_EQ(run_cli({"calibrate", "--input", kOis, "--bounds", "gbp"}).code, kConfigError);
  EXPECT_EQ(run_cli({"calibrate", "--input", kOis, "--pop", "30"}).code, kConfigError);
  EXPECT_EQ(run_cli({"calibrate", "--input", kOis, "--model", "ns", "--bounds", "ois"}).code,
            kConfigError);
  EXPECT_EQ(run_cli({"calibrate", "--input", kOis, "--model", "cubic"}).code, kConfigError);
  EXPECT_EQ(run_cli({"calibrate"}).code, kConfigError);
  EXPECT_EQ(run_cli({"frobnicate"}).code, kConfigError);
  EXPECT_EQ(run_cli({"--help"}).code, kOk);
}

TEST(CliRoll, DefaultWeekMatchesTolerances) {
  const auto table = temp_file("table.csv");
  const CliRun r = run_cli({"roll", "--input", kOis, "--table", table.string()});
  ASSERT_EQ(r.code, kOk) << r.err;
  const json report = json::parse(r.out);
  ASSERT_EQ(report["records"].size(), 7u);
  for (const json& rec : report["records"]) EXPECT_LE(rec["linf"].get<double>(), 0.0012);
  EXPECT_EQ(report["records"][0]["generations"], 10000);
  EXPECT_EQ(report["records"][1]["generations"], 1000);

  std::ifstream in(table);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "date,beta0,beta1,beta2,beta3,lambda,kappa,l2,linf");
  std::size_t rows = 0;
  while (std::getline(in, line)) ++rows;
  EXPECT_EQ(rows, 7u);
  std::filesystem::remove(table);
}

TEST(CliRoll, ColdStartsAndPlanErrors) {
  const CliRun cold = run_cli({"roll", "--input", kOis, "--carry", "0", "--gens-first", "20",
                            "--gens-next", "10", "--pop", "64"});
  ASSERT_EQ(cold.code, kOk) << cold.err;
  EXPECT_EQ(json::parse(cold.out)["records"].size(), 7u);
  EXPECT_EQ(run_cli({"roll", "--input", kOis, "--gens-first", "0"}).code, kConfigError);
  EXPECT_EQ(run_cli({"roll", "--input", kOis, "--carry", "65"}).code, kConfigError);
}

TEST(CliEval, PublishedParamsOnTheOisGrid) {
  const CliRun r = run_cli({"eval", "--params", kTable5Row1, "--grid-from-ois", kOis});
  ASSERT_EQ(r.code, kOk) << r.err;
  const auto rows = parse_csv_rows(r.out);
  ASSERT_EQ(rows.size(), 45u);
  EXPECT_DOUBLE_EQ(rows.back()[0], 50.0);
  EXPECT_NEAR(rows.back()[1], 0.024092, 0.000942);
}

TEST(CliEval, ZeroTenorIsLevelPlusSlope) {
  const CliRun r = run_cli({"eval", "--params", "0.03,-0.01,0.5,1.0", "--tenors", "0"});
  ASSERT_EQ(r.code, kOk) << r.err;
  const auto rows = parse_csv_rows(r.out);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_DOUBLE_EQ(rows[0][1], 0.02);
  EXPECT_DOUBLE_EQ(rows[0][2], 0.02);
}

TEST(CliEval, DenseGridIsContinuous) {
  const CliRun r = run_cli({"eval", "--params", kTable5Row1, "--from", "0", "--to", "50", "--step", "0.1"});
  ASSERT_EQ(r.code, kOk) << r.err;
  const auto rows = parse_csv_rows(r.out);
  ASSERT_EQ(rows.size(), 501u);
  EXPECT_NEAR(rows.back()[0], 50.0, 1e-12);
  double max_jump = 0.0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    max_jump = std::max(max_jump, std::abs(rows[i][1] - rows[i - 1][1]));
  }
  EXPECT_LT(max_jump, 0.001);
}

TEST(CliEval, ParamsFromReport) {
  const auto path = temp_file("eval_report.json");
  std::ofstream(path) << nss_report().dump();
  const CliRun r = run_cli({"eval", "--report", path.string(), "--tenors", "1,2"});
  ASSERT_EQ(r.code, kOk) << r.err;
  EXPECT_EQ(parse_csv_rows(r.out).size(), 2u);
  EXPECT_EQ(run_cli({"eval", "--report", path.string(), "--record", "3", "--tenors", "1"}).code,
            kConfigError);
  std::filesystem::remove(path);
}

TEST(CliEval, InvalidInputs) {
  EXPECT_EQ(run_cli({"eval", "--params", "0.02,0,0,-1", "--tenors", "1"}).code, kConfigError);
  EXPECT_EQ(run_cli({"eval", "--params", "0.02,0,0", "--tenors", "1"}).code, kConfigError);
  EXPECT_EQ(run_cli({"eval", "--params", "0.02,0,0,x", "--tenors", "1"}).code, kConfigError);
  EXPECT_EQ(run_cli({"eval", "--params", kTable5Row1, "--tenors", "-1"}).code, kConfigError);
  EXPECT_EQ(run_cli({"eval", "--params", kTable5Row1}).code, kConfigError);
  EXPECT_EQ(run_cli({"eval", "--params", kTable5Row1, "--from", "0", "--to", "1"}).code,
            kConfigError);
  EXPECT_EQ(run_cli({"eval", "--report", "/nonexistent.json", "--tenors", "1"}).code, kInputError);
}

TEST(CliFitBonds, UsdCurveInsideBounds) {
  const CliRun r = run_cli({"fit-bonds", "--input", kBonds, "--as-of", "2020-07-28", "--bounds", "usd"});
  ASSERT_EQ(r.code, kOk) << r.err;
  const json report = json::parse(r.out);
  const json& rec = report["records"][0];
  EXPECT_LE(rec["linf"].get<double>(), 0.0015);
  const json& intervals = report["config"]["bounds"]["intervals"];
  const std::array<const char*, 6> names{"beta0", "beta1", "beta2", "beta3", "lambda", "kappa"};
  ASSERT_EQ(rec["params"].size(), names.size());
  for (std::size_t i = 0; i < names.size(); ++i) {
    const double value = rec["params"].at(names[i]).get<double>();
    EXPECT_GT(value, intervals[i][0].get<double>()) << names[i];
    EXPECT_LT(value, intervals[i][1].get<double>()) << names[i];
  }
  ASSERT_EQ(report["residuals"].size(), 31u);
  EXPECT_EQ(report["residuals"][0]["cusip"], "912796XG9");
  double worst = 0.0;
  for (const json& res : report["residuals"]) worst = std::max(worst, std::abs(res["residual"].get<double>()));
  EXPECT_DOUBLE_EQ(worst, rec["linf"].get<double>());
}

TEST(CliFitBonds, BidSideAndErrors) {
  const CliRun bid = run_cli({"fit-bonds", "--input", kBonds, "--as-of", "2020-07-28", "--yield", "bid",
                           "--pop", "64", "--gens", "10"});
  ASSERT_EQ(bid.code, kOk) << bid.err;
  const json report = json::parse(bid.out);
  EXPECT_EQ(report["config"]["yield"], "bid");
  EXPECT_DOUBLE_EQ(report["residuals"][0]["market_yield"].get<double>(), 0.00099132786);

  const auto empty = temp_file("empty.csv");
  std::ofstream(empty) << "";
  EXPECT_EQ(run_cli({"fit-bonds", "--input", empty.string(), "--as-of", "2020-07-28"}).code,
            kInputError);
  std::filesystem::remove(empty);
  EXPECT_EQ(run_cli({"fit-bonds", "--input", kBonds, "--as-of", "2030-01-01"}).code, kInputError);
  EXPECT_EQ(run_cli({"fit-bonds", "--input", kBonds, "--as-of", "2020-07-28", "--yield", "ask"}).code,
            kConfigError);
}

}  // namespace
}  // namespace nssga::cli
