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

#include "mpsim/oracle_check.h"

#include <gtest/gtest.h>

namespace mpsim {
namespace {

TEST(OracleCheck, DefaultCorpusPasses) {
    OracleCheckOptions opt;
    opt.programs = 6;
    const OracleCheckReport report = run_oracle_check(opt);
    EXPECT_TRUE(report.passed());
    for (const auto &c : report.cases) {
        EXPECT_TRUE(c.passed) << c.name << " seed " << c.seed << " deviation " << c.deviation;
    }
}

TEST(OracleCheck, TamperFailsUnitarityFirst) {
    OracleCheckOptions opt;
    opt.programs = 4;
    opt.tamper = true;
    const OracleCheckReport report = run_oracle_check(opt);
    EXPECT_FALSE(report.passed());
    for (const auto &c : report.cases) {
        EXPECT_EQ(c.name.rfind("unitarity", 0), 0u) << c.name;
    }
    EXPECT_FALSE(report.cases.front().passed);
    EXPECT_FALSE(report.cases.front().trace.empty());
}

TEST(OracleCheck, DeviationGrowsAsChiShrinks) {
    const auto dev = degradation_study(8, 3, {8, 4, 2});
    ASSERT_EQ(dev.size(), 3u);
    EXPECT_LT(dev[0], dev[1]);
    EXPECT_LT(dev[1], dev[2]);
}

TEST(OracleCheck, ProgramTraceAndRanges) {
    const GateProgram p = random_program(5, 9, 6);
    EXPECT_EQ(p.ops.size(), 6u);
    EXPECT_FALSE(first_non_unitary(p).has_value());
    EXPECT_NE(p.trace().find("U"), std::string::npos);
    OracleCheckOptions bad;
    bad.n_max = 13;
    EXPECT_THROW(run_oracle_check(bad), std::invalid_argument);
}

}  // namespace
}  // namespace mpsim
