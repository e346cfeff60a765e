// Copyright 2026 The dsa Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "doctest.h"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "dsa/cli.hpp"
#include "dsa/market_data.hpp"
#include "json.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const std::string kData = DSA_TEST_DATA_DIR;

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run dsa_run(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = dsa::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("dsa_cli_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::vector<std::vector<std::string>> csv_rows(const fs::path& p) {
  std::ifstream in(p);
  std::string line;
  std::vector<std::vector<std::string>> rows;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    rows.push_back(dsa::csv::split_row(line));
  }
  return rows;
}

}  // namespace

TEST_CASE("help and version succeed") {
  CHECK(dsa_run({"--help"}).code == 0);
  const auto v = dsa_run({"--version"});
  CHECK(v.code == 0);
  CHECK(v.out.find(dsa::cli::kVersion) != std::string::npos);
}

TEST_CASE("argument errors exit with code 1 and one line") {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {}, {"bogus"}, {"premium"}, {"premium", "--auctions", "/nonexistent.csv", "--spot", "/nonexistent.csv"},
           {"fmpi", "--prices", kData + "/panel.csv", "--rate", "abc"}}) {
    const auto r = dsa_run(args);
    CHECK(r.code == 1);
    CHECK(r.err.rfind("dsa: error[usage]: ", 0) == 0);
    CHECK(std::count(r.err.begin(), r.err.end(), '\n') == 1);
  }
}

TEST_CASE("bad data exits with code 2") {
  const auto dir = scratch("data");
  std::ofstream(dir / "spot.csv") << "market,zone,date,price\nOMEL,ES,2007-01-01,30\nOMEL,ES,2007-01-01,31\n";
  const auto r = dsa_run({"-o", dir.string(), "ingest", "--spot", (dir / "spot.csv").string()});
  CHECK(r.code == 2);
  CHECK(r.err.find("error[data]") != std::string::npos);
  CHECK(r.err.find("duplicate date") != std::string::npos);

  const auto lenient = dsa_run({"-o", dir.string(), "ingest", "--lenient", "--spot", (dir / "spot.csv").string()});
  CHECK(lenient.code == 0);
  const auto report = json::parse(slurp(dir / "ingest_report.json"));
  CHECK(report["files"]["spot"]["rows_rejected"] == 1);
  CHECK(report["metadata"]["tool"] == "dsa");
}

TEST_CASE("numerical failure exits with code 3") {
  const auto dir = scratch("numerical");
  std::ofstream(dir / "panel.csv") << "unit,period,y,vol3y,startbidders,wbidders\n"
                                      "A,2007,1,1,2,1\nA,2008,2,2,4,1\nB,2007,3,3,6,1\nB,2008,5,4,8,1\n";
  const auto r = dsa_run({"-o", dir.string(), "regress", "--panel", (dir / "panel.csv").string(), "--no-period-fe"});
  CHECK(r.code == 3);
  CHECK(r.err.find("error[numerical]") != std::string::npos);
}

TEST_CASE("premium reproduces the fixed-quantity table") {
  const auto dir = scratch("premium");
  const auto r = dsa_run({"-o", dir.string(), "premium", "--auctions", kData + "/cesur_auctions.csv", "--spot",
                          kData + "/cesur_spot.csv", "--fmpi", kData + "/cesur_fmpi.csv"});
  REQUIRE(r.code == 0);
  const auto rows = csv_rows(dir / "premium_OMEL.csv");
  const auto table = csv_rows(kData + "/cesur_table.csv");
  std::size_t matched = 0;
  for (std::size_t t = 1; t < table.size(); ++t) {
    for (const auto& row : rows) {
      if (row[4] != table[t][2] || row[3] != table[t][1]) continue;
      ++matched;
      CHECK(std::abs(std::stod(row[9]) - std::stod(table[t][5])) <= 0.01 + 1e-9);
      CHECK(std::abs(std::stod(row[10]) - std::stod(table[t][6])) <= 0.02 + 1e-9);
      CHECK(std::abs(std::stod(row[12]) - std::stod(table[t][8])) <= 0.01 + 1e-9);
    }
  }
  CHECK(matched == 28);
  CHECK(rows.back()[1] == "all");
  CHECK(std::abs(std::stod(rows.back()[10]) - 7.22) < 0.05);
  const auto summary = json::parse(slurp(dir / "premium_summary.json"));
  CHECK(summary["markets"]["OMEL"]["rows"] == 28);
  CHECK(summary["markets"]["OMEL"]["monetary_impact"].get<double>() > 0.0);
}

TEST_CASE("premium on full-requirements fixtures") {
  const auto dir = scratch("pjm");
  const auto r = dsa_run({"-o", dir.string(), "premium", "--auctions", kData + "/pjm_auctions.csv", "--spot",
                          kData + "/pjm_spot.csv", "--costs", kData + "/pjm_costs.csv", "--fmpi",
                          kData + "/pjm_fmpi.csv"});
  REQUIRE(r.code == 0);
  const auto summary = json::parse(slurp(dir / "premium_summary.json"));
  const auto& pjm = summary["markets"]["PJM"];
  CHECK(pjm["rows"] == 28);
  CHECK(summary["warnings"].size() == 8);
  CHECK(std::abs(pjm["grand_average"]["premium"].get<double>() - 32.00) < 0.05);
  CHECK(pjm["equality_of_means"]["premium"].size() == 6);
}

TEST_CASE("separate premium runs share one summary") {
  const auto dir = scratch("both_markets");
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"premium", "--auctions", kData + "/cesur_auctions.csv", "--spot", kData + "/cesur_spot.csv", "--fmpi",
            kData + "/cesur_fmpi.csv"},
           {"premium", "--auctions", kData + "/pjm_auctions.csv", "--spot", kData + "/pjm_spot.csv", "--costs",
            kData + "/pjm_costs.csv", "--fmpi", kData + "/pjm_fmpi.csv"}}) {
    auto full = args;
    full.insert(full.begin(), {"-o", dir.string()});
    REQUIRE(dsa_run(full).code == 0);
  }
  const auto summary = json::parse(slurp(dir / "premium_summary.json"));
  CHECK(summary["markets"].contains("OMEL"));
  CHECK(summary["markets"].contains("PJM"));
  CHECK(summary["warnings"].size() == 8);
}

TEST_CASE("fmpi subcommand") {
  const auto dir = scratch("fmpi");
  std::ofstream prices(dir / "prices.csv");
  prices << "month,price\n";
  for (int j = 1; j <= 36; ++j) prices << j << ",50\n";
  prices.close();
  const auto r = dsa_run({"-o", dir.string(), "fmpi", "--prices", (dir / "prices.csv").string(), "--rate", "0.07"});
  REQUIRE(r.code == 0);
  CHECK(json::parse(slurp(dir / "fmpi.json"))["fmpi"].get<double>() == doctest::Approx(50.0).epsilon(1e-14));
}

TEST_CASE("event study writes one row per offset") {
  const auto dir = scratch("events");
  const auto r = dsa_run({"-o", dir.string(), "event-study", "--futures", kData + "/futures.csv", "--events",
                          kData + "/events.csv", "--measure", "volume", "--window", "-5", "+5"});
  REQUIRE(r.code == 0);
  const auto rows = csv_rows(dir / "event_study_FTB-Q3-08_volume.csv");
  REQUIRE(rows.size() == 12);
  CHECK(rows[0] == std::vector<std::string>{"offset", "t_stat", "sig01", "sig05"});
  CHECK(rows[1][0] == "-5");
  CHECK(rows[11][0] == "5");
  const auto summary = json::parse(slurp(dir / "event_study_summary.json"));
  CHECK(summary["tally"]["all"]["total"] == 22);
  CHECK(summary["metadata"]["config"]["window"] == json::array({-5, 5}));
}

TEST_CASE("event study needs a source of event dates") {
  const auto r = dsa_run({"event-study", "--futures", kData + "/futures.csv"});
  CHECK(r.code == 1);
}

TEST_CASE("simulate is byte-for-byte deterministic") {
  const auto a = scratch("sim_a");
  const auto b = scratch("sim_b");
  for (const auto& dir : {a, b}) {
    REQUIRE(dsa_run({"-o", dir.string(), "simulate", "--scenario", kData + "/scenario.json", "--seed", "7"}).code == 0);
  }
  const auto first = slurp(a / "simulation.json");
  CHECK(first == slurp(b / "simulation.json"));
  CHECK(json::parse(first)["metadata"]["seed"] == 7);

  REQUIRE(dsa_run({"-o", a.string(), "simulate", "--scenario", kData + "/scenario.json", "--seed", "7", "--runs",
                   "30", "--threads", "3"})
              .code == 0);
  REQUIRE(dsa_run({"-o", b.string(), "simulate", "--scenario", kData + "/scenario.json", "--seed", "7", "--runs",
                   "30", "--threads", "1"})
              .code == 0);
  CHECK(slurp(a / "simulation.json") != slurp(b / "simulation.json"));
  auto ja = json::parse(slurp(a / "simulation.json"));
  auto jb = json::parse(slurp(b / "simulation.json"));
  CHECK(ja["runs"] == jb["runs"]);
}

TEST_CASE("config file values yield to flags") {
  const auto dir = scratch("config");
  std::ofstream(dir / "run.ini") << "[simulate]\nscenario=" << kData << "/scenario.json\nseed=3\npolicy=priority\n";
  const auto from_file = dsa_run({"-o", dir.string(), "--config", (dir / "run.ini").string(), "simulate"});
  REQUIRE(from_file.code == 0);
  auto doc = json::parse(slurp(dir / "simulation.json"));
  CHECK(doc["metadata"]["seed"] == 3);
  CHECK(doc["metadata"]["config"]["policy"] == "priority");

  const auto overridden =
      dsa_run({"-o", dir.string(), "--config", (dir / "run.ini").string(), "simulate", "--seed", "9"});
  REQUIRE(overridden.code == 0);
  doc = json::parse(slurp(dir / "simulation.json"));
  CHECK(doc["metadata"]["seed"] == 9);
}

TEST_CASE("regress and report") {
  const auto dir = scratch("report");
  REQUIRE(dsa_run({"-o", dir.string(), "regress", "--panel", kData + "/panel.csv"}).code == 0);
  const auto reg = json::parse(slurp(dir / "regression.json"));
  CHECK(reg["observations"] == 42);
  CHECK(reg["coefficients"].contains("vol3y"));
  CHECK(reg["fixed_effects"].size() == 6);
  REQUIRE(dsa_run({"-o", dir.string(), "activity", "--futures", kData + "/futures.csv"}).code == 0);
  CHECK(csv_rows(dir / "activity_measures.csv").size() > 100);
  REQUIRE(dsa_run({"-o", dir.string(), "report"}).code == 0);
  const auto md = slurp(dir / "report.md");
  CHECK(md.find("## Panel regression") != std::string::npos);
  CHECK(dsa_run({"-o", scratch("empty").string(), "report"}).code == 2);
}
