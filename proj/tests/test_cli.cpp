#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"

using namespace ptspec;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    for (std::string c; std::getline(ss, c, ',');) cells.push_back(c);
    rows.push_back(cells);
  }
  return rows;
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("ptspec_test_" + std::to_string(::getpid()) + "_" + name);
}

}  // namespace

TEST(Spectrum, EckartJson) {
  const auto r = run({"spectrum", "--model", "eckart", "--A", "3.5", "--beta", "1.0", "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json j = json::parse(r.out);
  ASSERT_EQ(j["levels"].size(), 3u);
  EXPECT_NEAR(j["levels"][0]["energy"].get<double>(), -6.09, 1e-12);
  EXPECT_NEAR(j["levels"][2]["energy"].get<double>(), 3.75, 1e-12);
}

TEST(Spectrum, EmptyIsSuccess) {
  const auto r = run({"spectrum", "--model", "pt", "--alpha", "0.4", "--beta", "0.4"});
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(json::parse(r.out)["levels"].empty());
  EXPECT_NE(r.err.find("all families empty"), std::string::npos);
}

TEST(Spectrum, HulthenCsv) {
  const auto r = run({"spectrum", "--model", "hulthen", "--alpha", "0.5", "--C", "-9", "--format", "csv"});
  ASSERT_EQ(r.code, 0);
  const auto rows = csv_rows(r.out);
  ASSERT_EQ(rows.size(), 4u);
  EXPECT_EQ(std::stod(rows[1][3]), 76.5625);
}

TEST(Spectrum, UsageErrors) {
  EXPECT_EQ(run({"spectrum", "--model", "pt", "--alpha", "-1", "--beta", "1"}).code, 2);
  EXPECT_EQ(run({"spectrum", "--model", "pt", "--alpha", "1"}).code, 2);
  EXPECT_EQ(run({"spectrum", "--model", "morse"}).code, 2);
  EXPECT_EQ(run({"spectrum", "--model", "eckart", "--A", "3", "--beta", "1", "--bogus", "1"}).code, 2);
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Verify, PtFixture) {
  const auto r = run({"verify", "--model", "pt", "--alpha", "4.3", "--beta", "1.7", "--eps", "0.5", "--grid-n", "1500",
                      "--grid-L", "12", "--tol", "1e-2"});
  ASSERT_EQ(r.code, 0) << r.out << r.err;
  const json j = json::parse(r.out);
  EXPECT_EQ(j["matched"], 4);
  EXPECT_EQ(j["method"], "fd");
  EXPECT_EQ(j["seed"], default_seed);
}

TEST(Verify, HulthenResidual) {
  const auto r = run({"verify", "--model", "hulthen", "--alpha", "0.5", "--C", "-9", "--method", "residual", "--tol", "1e-6"});
  ASSERT_EQ(r.code, 0) << r.out << r.err;
  EXPECT_EQ(json::parse(r.out)["matched"], 3);
  EXPECT_EQ(run({"verify", "--model", "hulthen", "--alpha", "0.5", "--C", "-9", "--method", "fd"}).code, 2);
}

TEST(Verify, ExitCodes) {
  EXPECT_EQ(run({"verify", "--model", "pt", "--alpha", "4.3", "--beta", "1.7", "--eps", "2.0"}).code, 2);
  EXPECT_EQ(run({"verify", "--model", "pt", "--alpha", "4.3", "--beta", "1.7", "--grid-n", "20"}).code, 2);
  // a tolerance no FD grid can meet is a verification failure
  const auto r = run({"verify", "--model", "pt", "--alpha", "4.3", "--beta", "1.7", "--grid-n", "400", "--tol", "1e-9"});
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(json::parse(r.out)["all_passed"], false);
}

TEST(Verify, BothMethods) {
  const auto r = run({"verify", "--model", "eckart", "--A", "3.5", "--beta", "1", "--method", "both"});
  ASSERT_EQ(r.code, 0) << r.out << r.err;
  const json j = json::parse(r.out);
  ASSERT_TRUE(j.is_array());
  EXPECT_EQ(j[0]["method"], "fd");
  EXPECT_EQ(j[1]["method"], "residual");
}

TEST(Verify, SeedFromEnvironment) {
  ::setenv("PTSPEC_SEED", "7", 1);
  const auto r = run({"verify", "--model", "pt", "--alpha", "4.3", "--beta", "1.7", "--grid-n", "400", "--tol", "0.1"});
  ::setenv("PTSPEC_SEED", "x", 1);
  const auto bad = run({"verify", "--model", "pt", "--alpha", "4.3", "--beta", "1.7", "--grid-n", "400"});
  ::unsetenv("PTSPEC_SEED");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(json::parse(r.out)["seed"], 7);
  EXPECT_EQ(bad.code, 2);
}

TEST(Sample, PotentialToFile) {
  const auto path = temp_file("v.csv");
  const auto r = run({"sample", "--what", "potential", "--model", "pt", "--alpha", "4.3", "--beta", "1.7", "--out",
                      path.string(), "--grid-n", "21"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(path);
  std::stringstream text;
  text << in.rdbuf();
  const auto rows = csv_rows(text.str());
  std::filesystem::remove(path);
  ASSERT_EQ(rows.size(), 22u);
  EXPECT_EQ(rows[0], (std::vector<std::string>{"t", "ReV", "ImV"}));
}

TEST(Sample, EckartPsiDecays) {
  const auto r = run({"sample", "--what", "psi", "--model", "eckart", "--A", "3.5", "--beta", "1", "--N", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = csv_rows(r.out);
  ASSERT_EQ(rows.size(), 1501u);
  double peak = 0.0;
  for (std::size_t k = 1; k < rows.size(); ++k) peak = std::max(peak, std::stod(rows[k][5]));
  // D = 1/2 for N = 2, so the tails fall off like exp(-|t|/2)
  EXPECT_LT(std::stod(rows[1][5]), 1e-2 * peak);
  EXPECT_LT(std::stod(rows.back()[5]), 1e-2 * peak);
}

TEST(Sample, Contour) {
  const auto r = run({"sample", "--what", "contour", "--arch", "--eps", "0.5", "--grid-n", "11"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = csv_rows(r.out);
  ASSERT_EQ(rows.size(), 12u);
  EXPECT_NEAR(std::stod(rows[6][2]), std::log(1.0 / std::sin(0.5)), 1e-12);
}

TEST(Sample, MissingLevel) {
  EXPECT_EQ(run({"sample", "--what", "psi", "--model", "eckart", "--A", "3.5", "--beta", "1", "--N", "5"}).code, 2);
  EXPECT_EQ(run({"sample", "--what", "psi", "--model", "pt", "--alpha", "4.3", "--beta", "1.7", "--N", "0", "--sigma",
                 "1", "--tau", "-1"})
                .code,
            2);
  EXPECT_EQ(run({"sample", "--what", "psi", "--model", "pt", "--alpha", "4.3", "--beta", "1.7", "--sigma", "0"}).code, 2);
}

TEST(Sweep, EckartCountsNeverDecrease) {
  const auto r = run({"sweep", "--model", "eckart", "--beta", "1", "--vary", "A", "--range", "2:10:0.1"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = csv_rows(r.out);
  EXPECT_EQ(rows[0], (std::vector<std::string>{"value", "N", "sigma", "tau", "energy", "total"}));
  std::map<double, int> totals;
  for (std::size_t k = 1; k < rows.size(); ++k) totals[std::stod(rows[k][0])] = std::stoi(rows[k][5]);
  EXPECT_EQ(totals.size(), 81u);
  int previous = -1;
  for (const auto& [A, n] : totals) {
    EXPECT_GE(n, previous) << "A=" << A;
    // N < A - 1 strictly
    EXPECT_EQ(n, std::max(0, static_cast<int>(std::ceil(A - 1.0 - 1e-9))));
    previous = n;
  }
}

TEST(Sweep, PtPlusMinusFamilyAppearsAboveAlphaPlusOne) {
  const double alpha = 1.5;
  const auto r = run({"sweep", "--model", "pt", "--alpha", "1.5", "--vary", "beta", "--range", "0.25:6:0.25"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = csv_rows(r.out);
  ASSERT_EQ(rows[0].size(), 10u);
  for (std::size_t k = 1; k < rows.size(); ++k) {
    const double beta = std::stod(rows[k][0]);
    const int n_pm = std::stoi(rows[k][8]);
    EXPECT_EQ(n_pm > 0, beta > alpha + 1.0) << "beta=" << beta;
  }
}

TEST(Sweep, RangeErrors) {
  EXPECT_EQ(run({"sweep", "--model", "eckart", "--beta", "1", "--vary", "A", "--range", "5:2:0.1"}).code, 2);
  EXPECT_EQ(run({"sweep", "--model", "eckart", "--beta", "1", "--vary", "A", "--range", "2:5:0"}).code, 2);
  EXPECT_EQ(run({"sweep", "--model", "eckart", "--beta", "1", "--vary", "A", "--range", "2:five:1"}).code, 2);
  EXPECT_EQ(run({"sweep", "--model", "eckart", "--beta", "1", "--vary", "A", "--range", "2:5"}).code, 2);
  EXPECT_EQ(run({"sweep", "--model", "eckart", "--beta", "1", "--vary", "q", "--range", "2:5:1"}).code, 2);
  EXPECT_EQ(run({"sweep", "--model", "eckart", "--beta", "1", "--range", "2:5:1"}).code, 2);
}

TEST(Sweep, JobsDoNotChangeOutput) {
  const std::vector<std::string> base{"sweep", "--model", "hulthen", "--alpha", "0.5", "--vary", "C", "--range", "-40:2:0.5"};
  auto threaded = base;
  threaded.insert(threaded.end(), {"--jobs", "4"});
  const auto a = run(base), b = run(threaded);
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  // C >= 0 rows carry the levelless marker
  EXPECT_NE(a.out.find("2,-1,0,0,nan,0"), std::string::npos);
}

TEST(Config, FlagsTakePrecedence) {
  const auto path = temp_file("cfg.json");
  {
    std::ofstream f(path);
    f << R"({"model": "eckart", "A": 2.5, "beta": 1.0, "format": "csv"})";
  }
  const auto from_file = run({"spectrum", "--config", path.string()});
  const auto override = run({"spectrum", "--config", path.string(), "--A", "3.5"});
  {
    std::ofstream f(path);
    f << R"({"model": "eckart", "unknown": 1})";
  }
  const auto bad_key = run({"spectrum", "--config", path.string()});
  std::filesystem::remove(path);
  ASSERT_EQ(from_file.code, 0) << from_file.err;
  EXPECT_EQ(csv_rows(from_file.out).size(), 3u);
  ASSERT_EQ(override.code, 0);
  EXPECT_EQ(csv_rows(override.out).size(), 4u);
  EXPECT_EQ(bad_key.code, 2);
  EXPECT_EQ(run({"spectrum", "--config", "/nonexistent/ptspec.json"}).code, 2);
}

TEST(Liouville, Check) {
  const auto r = run({"liouville-check", "--alpha", "0.5", "--C", "-9", "--n-samples", "100"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json j = json::parse(r.out);
  EXPECT_LT(j["max_deviation"].get<double>(), 1e-9);
  EXPECT_EQ(j["per_level"].size(), 3u);
  EXPECT_EQ(run({"liouville-check", "--alpha", "0.5", "--C", "-9", "--tol", "1e-30"}).code, 1);
  EXPECT_EQ(run({"liouville-check", "--alpha", "0.5"}).code, 2);
}

TEST(Json, SpectrumOutputRoundTrips) {
  const auto r = run({"spectrum", "--model", "pt", "--alpha", "4.3", "--beta", "1.7"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(spectrum_to_json(spectrum_from_json(json::parse(r.out))).dump(2) + "\n", r.out);
}
