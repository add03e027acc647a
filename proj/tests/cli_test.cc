// Copyright 2026 The mpsim Authors
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

#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <sstream>
#include <string>

#include <gtest/gtest.h>
#include <json.hpp>

#include "mpsim/dense_oracle.h"
#include "mpsim/exact_cover.h"
#include "mpsim/run_io.h"

namespace mpsim {
namespace {

namespace fs = std::filesystem;

int run_cli(const std::string &args) {
    const std::string cmd = std::string(MPSIM_CLI_PATH) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

class CliTest : public ::testing::Test {
   protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("mpsim_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    void TearDown() override {
        fs::remove_all(dir_);
    }
    std::string path(const std::string &name) const {
        return (dir_ / name).string();
    }
    fs::path dir_;
};

std::vector<std::string> lines_of(const std::string &text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        out.push_back(line);
    }
    return out;
}

TEST_F(CliTest, GenerateWritesVerifiedDeterministicFiles) {
    ASSERT_EQ(run_cli("generate --n 16 --count 3 --seed 7 --out " + path("a")), 0);
    ASSERT_EQ(run_cli("generate --n 16 --count 3 --seed 7 --out " + path("b")), 0);
    const auto manifest = nlohmann::json::parse(read_text_file(path("a/manifest.json")));
    ASSERT_EQ(manifest.size(), 3u);
    for (const auto &entry : manifest) {
        const std::string file = entry.at("file");
        const ExactCoverInstance inst = load_instance(path("a/" + file));
        EXPECT_EQ(count_solutions(inst), 1u);
        EXPECT_EQ(inst.num_clauses(), entry.at("m"));
        EXPECT_EQ(*inst.known_solution(), entry.at("solution"));
        EXPECT_EQ(read_text_file(path("a/" + file)), read_text_file(path("b/" + file)));
    }
}

TEST_F(CliTest, GenerateWithClauseTarget) {
    ASSERT_EQ(run_cli("generate --n 12 --m-target 10 --seed 3 --out " + path("g")), 0);
    const auto manifest = nlohmann::json::parse(read_text_file(path("g/manifest.json")));
    EXPECT_EQ(manifest.at(0).at("m"), 10);
}

TEST_F(CliTest, RunCsvMatchesDenseOracle) {
    const ExactCoverInstance inst = generate_hard_instance(8, 11);
    write_text_file(path("inst.txt"), serialize_instance(inst));
    const int code = run_cli("run --instance " + path("inst.txt") + " --T 20 --chi 16 --stride 20 --out " +
                             path("run.csv"));
    const auto rows = lines_of(read_text_file(path("run.csv")));
    ASSERT_GE(rows.size(), 3u);
    EXPECT_EQ(rows[0], kRunCsvHeader);
    EXPECT_EQ(rows[1].substr(0, 2), "0,");
    EXPECT_EQ(rows.back().substr(0, 2), "1,");
    const auto manifest = nlohmann::json::parse(read_text_file(path("run.csv.json")));
    EXPECT_EQ(code, manifest.at("result").at("solved").get<bool>() ? 0 : 1);

    std::vector<double> fields;
    std::istringstream last(rows.back());
    std::string f;
    while (std::getline(last, f, ',')) {
        fields.push_back(std::stod(f));
    }
    ASSERT_EQ(fields.size(), 8u);
    const DenseRunResult dense = dense_run(inst, Schedule(20.0));
    EXPECT_NEAR(fields[1], dense.energy.back(), 1e-6);
    EXPECT_NEAR(fields[5], dense.success.back(), 1e-6);
}

TEST_F(CliTest, ConfigFileAndOverride) {
    write_text_file(path("cfg.txt"), "n = 8\nseed = 2\nT = 2\nchi = 3\nstride = 4\n");
    ASSERT_LE(run_cli("run --config " + path("cfg.txt") + " --out " + path("a.csv")), 1);
    EXPECT_EQ(nlohmann::json::parse(read_text_file(path("a.csv.json"))).at("config").at("chi"), 3);
    ASSERT_LE(run_cli("run --config " + path("cfg.txt") + " --chi 5 --out " + path("b.csv")), 1);
    EXPECT_EQ(nlohmann::json::parse(read_text_file(path("b.csv.json"))).at("config").at("chi"), 5);
}

TEST_F(CliTest, UsageErrors) {
    EXPECT_EQ(run_cli(""), 2);
    EXPECT_EQ(run_cli("run --bogus"), 2);
    EXPECT_EQ(run_cli("run --instance " + path("missing.txt")), 2);
    write_text_file(path("bad.txt"), "3 1\n1 1 2\n");
    EXPECT_EQ(run_cli("run --instance " + path("bad.txt")), 2);
    EXPECT_EQ(run_cli("run --n 8 --T 1 --delta 0.3"), 2);
    EXPECT_EQ(run_cli("oracle-check --n-max 13"), 2);
}

TEST_F(CliTest, SpectraAndFit) {
    ASSERT_LE(run_cli("run --n 10 --seed 4 --T 10 --chi 8 --stride 4 --out " + path("r.csv") + " --spectra " +
                      path("sp.csv")),
              1);
    ASSERT_EQ(run_cli("fit-schmidt --spectra " + path("sp.csv") + " --cut 5 --s 0.69 > " + path("fit.txt")), 0);
    EXPECT_EQ(run_cli("fit-schmidt --spectra " + path("sp.csv") + " --cut 2"), 2);
}

TEST_F(CliTest, OracleCheckPassesAndCatchesTamper) {
    EXPECT_EQ(run_cli("oracle-check --n-max 8 --programs 4"), 0);
    EXPECT_EQ(run_cli("oracle-check --n-max 8 --programs 4 --tamper"), 1);
}

TEST_F(CliTest, SweepIndependentOfWorkerCount) {
    const std::string common = "sweep --n 8 --count 2 --seed 5 --chi 2,4 --T 2,4 --out ";
    ASSERT_EQ(run_cli(common + path("s1") + " --workers 1"), 0);
    ASSERT_EQ(run_cli(common + path("s2") + " --workers 3"), 0);
    const std::string a = read_text_file(path("s1/sweep.csv"));
    EXPECT_EQ(a, read_text_file(path("s2/sweep.csv")));
    EXPECT_EQ(lines_of(a).size(), 9u);
}

TEST_F(CliTest, MinTWritesSummary) {
    const int code = run_cli("min-t --n 8 --count 2 --seed 1 --chi 8 --T-start 10 --T-max 40 --out " + path("mt"));
    EXPECT_LE(code, 1);
    const auto rows = lines_of(read_text_file(path("mt/min_t.csv")));
    EXPECT_EQ(rows.size(), 3u);
    const auto summary = lines_of(read_text_file(path("mt/min_t_summary.csv")));
    ASSERT_EQ(summary.size(), 2u);
    EXPECT_EQ(summary[1].substr(0, 4), "8,2,");
}

}  // namespace
}  // namespace mpsim
