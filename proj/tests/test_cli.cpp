// Copyright 2026 The wva-costlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "nlohmann/json.hpp"

namespace {

namespace fs = std::filesystem;
using wva::cli::run;

constexpr double kPi = std::numbers::pi;

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome invoke(const std::vector<std::string> &args) {
    std::ostringstream out, err;
    const int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

fs::path scratch(const std::string &name) {
    const fs::path dir = fs::temp_directory_path() / "wva_cli_tests";
    fs::create_directories(dir);
    const fs::path p = dir / name;
    fs::remove(p);
    return p;
}

std::string slurp(const fs::path &p) {
    std::ifstream f(p, std::ios::binary);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

std::vector<double> first_row(const std::string &csv) {
    std::istringstream in(csv);
    std::string header, row;
    std::getline(in, header);
    std::getline(in, row);
    std::vector<double> v;
    std::istringstream cells(row);
    for (std::string cell; std::getline(cells, cell, ',');) {
        v.push_back(std::stod(cell));
    }
    return v;
}

TEST(ParseAngle, AcceptsPiMultiplesAndNumbers) {
    EXPECT_DOUBLE_EQ(wva::cli::parse_angle("pi/6"), kPi / 6.0);
    EXPECT_DOUBLE_EQ(wva::cli::parse_angle("-pi/4.5"), -kPi / 4.5);
    EXPECT_DOUBLE_EQ(wva::cli::parse_angle("2pi/3"), 2.0 * kPi / 3.0);
    EXPECT_DOUBLE_EQ(wva::cli::parse_angle("0.0349"), 0.0349);
    EXPECT_THROW(wva::cli::parse_angle("pie"), std::exception);
}

TEST(CliCurve, MaximalCoherenceStartsAtFullCostZeroMeasurement) {
    const Outcome r = invoke({"curve", "--theta", "pi/4"});
    ASSERT_EQ(r.code, wva::cli::kExitOk) << r.err;
    EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "theta,coherence_l1,alpha,cp_norm,cm_norm,slack");
    const auto row = first_row(r.out);
    ASSERT_EQ(row.size(), 6u);
    EXPECT_NEAR(row[1], 1.0, 1e-9);
    EXPECT_NEAR(row[3], 1.0, 1e-9);
    EXPECT_NEAR(row[4], 0.0, 1e-9);
}

TEST(CliCurve, SixthPiStartsAtQuarterMeasurementCost) {
    const fs::path p = scratch("curve_pi6.csv");
    const Outcome r = invoke({"curve", "--theta", "pi/6", "--out", p.string()});
    ASSERT_EQ(r.code, wva::cli::kExitOk) << r.err;
    EXPECT_TRUE(r.out.empty());
    const auto row = first_row(slurp(p));
    EXPECT_NEAR(row[3], 1.0, 1e-9);
    EXPECT_NEAR(row[4], 0.25, 1e-9);
}

TEST(CliCurve, JsonFormatListsSamples) {
    const Outcome r = invoke({"curve", "--theta", "pi/6", "--format", "json"});
    ASSERT_EQ(r.code, wva::cli::kExitOk) << r.err;
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_FALSE(j.empty());
}

TEST(CliCurve, InvalidThetaIsUsageErrorAndWritesNothing) {
    const fs::path p = scratch("curve_bad.csv");
    EXPECT_EQ(invoke({"curve", "--theta", "0", "--out", p.string()}).code, wva::cli::kExitInvalidArguments);
    EXPECT_FALSE(fs::exists(p));
    EXPECT_EQ(invoke({"curve", "--theta", "1.0"}).code, wva::cli::kExitInvalidArguments);
}

TEST(CliErrors, UnwritableOutputIsIoFailure) {
    const Outcome r = invoke({"curve", "--theta", "pi/6", "--out", "/nonexistent_dir/x/curve.csv"});
    EXPECT_EQ(r.code, wva::cli::kExitIoFailure);
    EXPECT_FALSE(r.err.empty());
}

TEST(CliErrors, UnknownFlagAndSubcommand) {
    EXPECT_EQ(invoke({"simulate", "--bogus", "1"}).code, wva::cli::kExitInvalidArguments);
    EXPECT_EQ(invoke({"frobnicate"}).code, wva::cli::kExitInvalidArguments);
    EXPECT_EQ(invoke({"simulate", "--reps", "0"}).code, wva::cli::kExitInvalidArguments);
    EXPECT_EQ(invoke({"simulate", "--format", "xml"}).code, wva::cli::kExitInvalidArguments);
}

TEST(CliErrors, MissingConfigIsIoFailure) {
    EXPECT_EQ(invoke({"simulate", "--config", "/nonexistent_dir/cfg.json"}).code, wva::cli::kExitIoFailure);
}

TEST(CliSimulate, SingleRepReportsNullVariance) {
    const Outcome r = invoke({"simulate", "--reps", "1", "--nu", "50"});
    ASSERT_EQ(r.code, wva::cli::kExitOk) << r.err;
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_TRUE(j["g_est_var"].is_null());
    EXPECT_TRUE(j["fm_empirical"].is_null());
    EXPECT_TRUE(j["slack_emp"].is_null());
    EXPECT_EQ(j["n_reps"], 1);
}

TEST(CliSimulate, ZeroCouplingIsDegenerate) {
    const Outcome r = invoke({"simulate", "--g", "0", "--reps", "50", "--nu", "50"});
    ASSERT_EQ(r.code, wva::cli::kExitOk) << r.err;
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_TRUE(j["degenerate"].get<bool>());
    EXPECT_DOUBLE_EQ(j["g_est_mean"].get<double>(), 0.0);
}

TEST(CliSimulate, SameSeedIsByteIdenticalAndTrialsWritten) {
    const fs::path a = scratch("sim_a.json"), b = scratch("sim_b.json"), t = scratch("trials.csv");
    const std::vector<std::string> base{"simulate", "--reps", "40", "--nu", "100", "--seed", "7"};
    auto with = [&](const fs::path &p) {
        auto v = base;
        v.insert(v.end(), {"--out", p.string(), "--trials-out", t.string()});
        return v;
    };
    ASSERT_EQ(invoke(with(a)).code, wva::cli::kExitOk);
    const std::string trials_a = slurp(t);
    ASSERT_EQ(invoke(with(b)).code, wva::cli::kExitOk);
    EXPECT_EQ(slurp(a), slurp(b));
    EXPECT_EQ(trials_a, slurp(t));
    std::istringstream in(trials_a);
    std::size_t lines = 0;
    for (std::string line; std::getline(in, line);) {
        ++lines;
    }
    EXPECT_EQ(lines, 41u);
    const Outcome other = invoke({"simulate", "--reps", "40", "--nu", "100", "--seed", "8"});
    EXPECT_NE(other.out, slurp(a));
}

TEST(CliConfig, FileFillsAbsentOptionsAndFlagsWin) {
    const fs::path cfg = scratch("cfg.json");
    {
        std::ofstream f(cfg);
        f << R"({"theta": "pi/6", "alpha": -0.6, "g": 0.05, "reps": 20, "nu": 30, "seed": 3})";
    }
    const Outcome from_file = invoke({"simulate", "--config", cfg.string()});
    ASSERT_EQ(from_file.code, wva::cli::kExitOk) << from_file.err;
    const auto j = nlohmann::json::parse(from_file.out);
    EXPECT_DOUBLE_EQ(j["alpha"].get<double>(), -0.6);
    EXPECT_EQ(j["n_reps"], 20);
    const Outcome flag = invoke({"simulate", "--config", cfg.string(), "--reps", "25"});
    ASSERT_EQ(flag.code, wva::cli::kExitOk) << flag.err;
    EXPECT_EQ(nlohmann::json::parse(flag.out)["n_reps"], 25);
}

TEST(CliConfig, UnknownKeyIsUsageError) {
    const fs::path cfg = scratch("cfg_bad.json");
    {
        std::ofstream f(cfg);
        f << R"({"thetta": 0.5})";
    }
    EXPECT_EQ(invoke({"simulate", "--config", cfg.string()}).code, wva::cli::kExitInvalidArguments);
}

TEST(CliQfi, ReportsConventionalAndPostselectedInformation) {
    const Outcome r = invoke({"qfi", "--theta", "pi/6", "--alpha", "-pi/6", "--g", "1e-3"});
    ASSERT_EQ(r.code, wva::cli::kExitOk) << r.err;
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_NEAR(j["F"].get<double>(), 4.0, 1e-9);
    EXPECT_NEAR(j["fm_exact"].get<double>(), 16.0, 1e-3);
    EXPECT_NEAR(j["f_m_exact"].get<double>(), 4.0, 1e-3);
    EXPECT_NEAR(j["p"].get<double>(), 0.25, 1e-5);
    EXPECT_EQ(j["region"], "advantage");
}

TEST(CliVerify, TradeoffSuitePassesOnStandardGrid) {
    const Outcome r = invoke({"verify", "--suite", "eq11", "--theta-grid", "7"});
    ASSERT_EQ(r.code, wva::cli::kExitOk) << r.err;
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_TRUE(j["pass"].get<bool>());
    ASSERT_EQ(j["suites"].size(), 1u);
    EXPECT_EQ(j["suites"][0]["suite"], "eq11");
    EXPECT_EQ(j["suites"][0]["failures"], 0);
}

TEST(CliVerify, PrintedBoundFailsAtEighthPi) {
    const Outcome r = invoke({"verify", "--suite", "eq11", "--compat-printed-bound"});
    EXPECT_EQ(r.code, wva::cli::kExitVerificationFailure);
    const auto j = nlohmann::json::parse(r.out);
    bool eighth = false;
    for (const auto &t : j["suites"][0]["failing_thetas"]) {
        eighth |= std::abs(t.get<double>() - kPi / 8.0) < 1e-12;
    }
    EXPECT_TRUE(eighth);
}

TEST(CliVerify, MultipleSuitesAndUnknownSuite) {
    const Outcome r = invoke({"verify", "--suite", "overlap,conventional"});
    ASSERT_EQ(r.code, wva::cli::kExitOk) << r.err;
    EXPECT_EQ(nlohmann::json::parse(r.out)["suites"].size(), 2u);
    EXPECT_EQ(invoke({"verify", "--suite", "nope"}).code, wva::cli::kExitInvalidArguments);
}

}  // namespace
