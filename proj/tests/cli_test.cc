// Copyright 2026 The Squash Authors
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

#include "squash/cli/commands.h"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "squash/cli/csv.h"

namespace fs = std::filesystem;
using namespace squash::cli;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run_cli(std::vector<std::string> args) {
    args.insert(args.begin(), "squash");
    std::vector<const char*> argv;
    for (const auto& a : args) {
        argv.push_back(a.c_str());
    }
    std::ostringstream out, err;
    const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::vector<std::string>> parse(const std::string& csv) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(csv);
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> fields;
        std::istringstream ls(line);
        std::string f;
        while (std::getline(ls, f, ',')) {
            fields.push_back(f);
        }
        rows.push_back(fields);
    }
    return rows;
}

class CliTest : public ::testing::Test {
   protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("squash_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    std::string path(const std::string& name) const { return (dir_ / name).string(); }

    std::string write(const std::string& name, const std::string& content) const {
        std::ofstream(path(name)) << content;
        return path(name);
    }

    static std::string read(const std::string& p) {
        std::ifstream in(p);
        std::stringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }

    fs::path dir_;
};

}  // namespace

TEST(FormatNumber, TwelveSignificantDigits) {
    EXPECT_EQ(format_number(0.1), "0.1");
    EXPECT_EQ(format_number(1.0 / 3.0), "0.333333333333");
    EXPECT_EQ(format_number(0.0), "0");
    EXPECT_EQ(format_number(-0.0), "0");
}

TEST_F(CliTest, VerifyTheorem1SingleTrivialTrial) {
    const Result r = run_cli({"verify-theorem1", "--trials", "1", "--n-max", "1", "--m-max", "2"});
    EXPECT_EQ(r.code, kExitOk);
    const auto rows = parse(r.out);
    ASSERT_EQ(rows.size(), 2u);
    EXPECT_EQ(rows[1][3], "0");
}

TEST_F(CliTest, VerifyTheorem1Passes) {
    const Result r = run_cli({"verify-theorem1", "--trials", "50", "--seed", "42", "--out", path("t.csv")});
    EXPECT_EQ(r.code, kExitOk);
    EXPECT_EQ(parse(read(path("t.csv"))).size(), 51u);
}

TEST_F(CliTest, CorruptedPovmFailsAndReplays) {
    const std::string dump = path("fail.json");
    const Result r = run_cli({"verify-theorem1", "--trials", "5", "--corrupt-povm", "--failure-out", dump});
    EXPECT_EQ(r.code, kExitPropertyFailure);
    ASSERT_TRUE(fs::exists(dump));
    const Result replay = run_cli({"verify-theorem1", "--replay", dump});
    EXPECT_EQ(replay.code, kExitPropertyFailure);
    EXPECT_NE(replay.err.find("FAIL"), std::string::npos);
}

TEST_F(CliTest, Fig3Properties) {
    const Result r = run_cli({"fig3", "--eps", "0.01,0.05,0.11", "--delta-max", "0.2", "--delta-points", "21"});
    ASSERT_EQ(r.code, kExitOk);
    const auto rows = parse(r.out);
    ASSERT_EQ(rows[0], (std::vector<std::string>{"eps", "delta", "R_eq11", "R_eq12", "R_eq13"}));
    ASSERT_EQ(rows.size(), 1u + 3 * 21);
    for (size_t i = 1; i < rows.size(); ++i) {
        const double eps = std::stod(rows[i][0]);
        const double delta = std::stod(rows[i][1]);
        const double r11 = std::stod(rows[i][2]);
        const double r13 = std::stod(rows[i][4]);
        if (delta == 0.0) {
            EXPECT_EQ(rows[i][2], rows[i][3]);
            EXPECT_EQ(rows[i][2], rows[i][4]);
            if (eps == 0.11) {
                EXPECT_LT(r11, 1e-3);
            }
        }
        if ((eps + delta) / (1 - delta) <= 0.5) {
            EXPECT_LE(r11, r13);
        }
    }
}

TEST_F(CliTest, Fig4Columns) {
    const Result r = run_cli({"fig4", "--eps", "0.01", "--delta", "0.01", "--distance-step", "100"});
    ASSERT_EQ(r.code, kExitOk);
    const auto rows = parse(r.out);
    ASSERT_EQ(rows.size(), 4u);
    EXPECT_EQ(rows[0], (std::vector<std::string>{"eps", "delta", "distance_km", "mu_star", "R_universal",
                                                 "R_stat_preserving"}));
    double prev = 1.0;
    for (size_t i = 1; i < rows.size(); ++i) {
        const double u = std::stod(rows[i][4]);
        EXPECT_GT(u, 0.0);
        EXPECT_LE(u, std::stod(rows[i][5]));
        EXPECT_LE(u, prev);
        prev = u;
    }
}

TEST_F(CliTest, Fig4MismatchedScenarioLists) {
    EXPECT_EQ(run_cli({"fig4", "--eps", "0.01,0.02", "--delta", "0.01"}).code, kExitUsage);
}

TEST_F(CliTest, BoundsQkd) {
    const std::string in = write("t.csv",
                                 "basis_label,correct_single,error_single,double\n"
                                 "Z,85,5,10\nX,85,5,10\nkey,80,10,10\n");
    const Result r = run_cli({"bounds", "--input", in, "--mode", "qkd"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    const auto rows = parse(r.out);
    EXPECT_EQ(rows[1], (std::vector<std::string>{"Z", "test_error", "0.05", "0.15"}));
    EXPECT_EQ(rows[2][1], "key_error_same_basis");
    EXPECT_EQ(rows[3], (std::vector<std::string>{"X", "test_error", "0.05", "0.15"}));
    EXPECT_EQ(rows[4][1], "key_error");
    EXPECT_EQ(rows[4][2], "0");
    EXPECT_EQ(rows[4][3], "0.166666666667");
}

TEST_F(CliTest, BoundsMalformedRowNamesLine) {
    const std::string in = write("bad.csv", "basis_label,correct_single,error_single,double\nZ,85,5,10\nX,8x,5,10\n");
    const Result r = run_cli({"bounds", "--input", in});
    EXPECT_EQ(r.code, kExitUsage);
    EXPECT_NE(r.err.find(":3:"), std::string::npos) << r.err;
}

TEST_F(CliTest, BoundsTomographyAllZero) {
    const std::string in = write("z.csv", "basis_label,plus_single,minus_single,double\nX,0,0,0\nY,0,0,0\nZ,0,0,0\n");
    EXPECT_EQ(run_cli({"bounds", "--input", in, "--mode", "tomography"}).code, kExitUsage);
}

TEST_F(CliTest, BoundsChshIdealSinglet) {
    const double e = std::numbers::sqrt2 / 2.0;
    std::ostringstream csv;
    csv.precision(17);
    csv << "pair,plus_single,minus_single,double\n";
    for (const char* label : {"A1B1", "A1B2", "A2B1"}) {
        csv << label << ',' << (1 + e) / 2 << ',' << (1 - e) / 2 << ",0\n";
    }
    csv << "A2B2," << (1 - e) / 2 << ',' << (1 + e) / 2 << ",0\n";
    const std::string in = write("chsh.csv", csv.str());
    const Result r = run_cli({"bounds", "--input", in, "--mode", "chsh"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    const auto rows = parse(r.out);
    ASSERT_EQ(rows.size(), 7u);
    EXPECT_NEAR(std::stod(rows[5][2]), 2 * std::numbers::sqrt2, 1e-10);
    EXPECT_NEAR(std::stod(rows[5][3]), 2 * std::numbers::sqrt2, 1e-10);
    EXPECT_GE(std::stod(rows[6][2]), 1 - 1e-9);
}

TEST_F(CliTest, MonteCarloDeterministic) {
    const std::vector<std::string> args{"montecarlo", "--signals", "20000", "--p1", "0.3", "--p2", "0.3", "--seed", "5"};
    auto a = args;
    a.insert(a.end(), {"--tallies", path("a.csv")});
    auto b = args;
    b.insert(b.end(), {"--tallies", path("b.csv"), "--threads", "3"});
    const Result ra = run_cli(a);
    const Result rb = run_cli(b);
    ASSERT_EQ(ra.code, kExitOk) << ra.err;
    EXPECT_EQ(ra.out, rb.out);
    EXPECT_EQ(read(path("a.csv")), read(path("b.csv")));
    const Result bounds = run_cli({"bounds", "--input", path("a.csv")});
    EXPECT_EQ(bounds.code, kExitOk) << bounds.err;
}

TEST_F(CliTest, MonteCarloZeroAttack) {
    const Result r = run_cli({"montecarlo", "--signals", "5000"});
    ASSERT_EQ(r.code, kExitOk);
    for (const auto& row : parse(r.out)) {
        if (row[0] == "rate_per_detected") {
            EXPECT_EQ(row[1], "1");
        }
    }
}

TEST_F(CliTest, Passive) {
    const Result r = run_cli({"passive", "--bases", "2,3,4"});
    ASSERT_EQ(r.code, kExitOk);
    const auto rows = parse(r.out);
    ASSERT_EQ(rows.size(), 31u);
    EXPECT_EQ(rows[1], (std::vector<std::string>{"2", "1", "1/2", "1"}));
    for (size_t i = 1; i < rows.size(); ++i) {
        EXPECT_EQ(rows[i][2], "1/" + rows[i][0]);
    }
}

TEST_F(CliTest, ConfigSectionsAndFlagOverride) {
    const std::string cfg = write("run.ini",
                                  "# passive run\n[passive]\nbases = 3\nphotons = 2\n\n"
                                  "[fig3]\neps = 0.02\ndelta-points = 3\n");
    const Result a = run_cli({"--config", cfg, "passive"});
    ASSERT_EQ(a.code, kExitOk) << a.err;
    EXPECT_EQ(parse(a.out)[1], (std::vector<std::string>{"3", "2", "1/3", "1"}));
    const Result b = run_cli({"--config", cfg, "fig3", "--delta-points", "2"});
    ASSERT_EQ(b.code, kExitOk) << b.err;
    EXPECT_EQ(parse(b.out).size(), 3u);
}

TEST_F(CliTest, UsageAndIoErrors) {
    EXPECT_EQ(run_cli({}).code, kExitUsage);
    EXPECT_EQ(run_cli({"nosuch"}).code, kExitUsage);
    EXPECT_EQ(run_cli({"fig3", "--out", "/nonexistent/dir/x.csv"}).code, kExitUsage);
    EXPECT_EQ(run_cli({"bounds", "--input", path("missing.csv")}).code, kExitUsage);
    EXPECT_EQ(run_cli({"--help"}).code, kExitOk);
}
