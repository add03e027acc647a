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

#include "mpsim/run_io.h"

#include <cmath>
#include <sstream>

#include <gtest/gtest.h>

namespace mpsim {
namespace {

TEST(RunCsv, HeaderAndRows) {
    const ExactCoverInstance inst = generate_hard_instance(8, 1);
    std::ostringstream out;
    CsvSink sink(out);
    RunConfig cfg;
    cfg.chi_cap = 4;
    cfg.observable_stride = 10;
    const RunRecord rec = run(inst, Schedule(5.0), cfg, &sink);
    std::istringstream in(out.str());
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line, kRunCsvHeader);
    size_t rows = 0;
    double prev_s = -1.0;
    while (std::getline(in, line)) {
        ++rows;
        const double s = std::stod(line.substr(0, line.find(',')));
        EXPECT_GT(s, prev_s);
        prev_s = s;
        EXPECT_EQ(std::count(line.begin(), line.end(), ','), 7);
    }
    EXPECT_EQ(rows, rec.samples.size());
    EXPECT_EQ(prev_s, 1.0);
}

TEST(RunCsv, Deterministic) {
    const ExactCoverInstance inst = generate_hard_instance(8, 2);
    RunConfig cfg;
    cfg.chi_cap = 4;
    auto once = [&] {
        std::ostringstream out;
        CsvSink sink(out);
        run(inst, Schedule(3.0), cfg, &sink);
        return out.str();
    };
    EXPECT_EQ(once(), once());
}

TEST(RunCsv, FormatsNan) {
    Sample s;
    s.success_normalized = std::nan("");
    const std::string row = format_sample_row(s);
    EXPECT_NE(row.find("nan"), std::string::npos);
}

TEST(Spectra, DumpAndSelect) {
    const ExactCoverInstance inst = generate_hard_instance(10, 3);
    std::ostringstream out;
    SpectraSink sink(out, {5});
    RunConfig cfg;
    cfg.chi_cap = 6;
    cfg.observable_stride = 8;
    run(inst, Schedule(10.0), cfg, &sink);
    const auto sp = select_spectrum(out.str(), 5, 0.7);
    EXPECT_GE(sp.size(), 1u);
    EXPECT_LE(sp.size(), 6u);
    EXPECT_TRUE(std::is_sorted(sp.rbegin(), sp.rend()));
    EXPECT_THROW(select_spectrum(out.str(), 3, 0.7), std::invalid_argument);
    EXPECT_THROW(select_spectrum("bad header\n", 5, 0.7), std::invalid_argument);
}

TEST(Config, Parse) {
    const auto m = parse_config_text("# comment\nchi = 8\n--T=200 # inline\n\nsign=+\n");
    EXPECT_EQ(m.at("chi"), "8");
    EXPECT_EQ(m.at("T"), "200");
    EXPECT_EQ(m.at("sign"), "+");
    EXPECT_THROW(parse_config_text("chi 8\n"), std::invalid_argument);
    EXPECT_THROW(parse_config_text("=8\n"), std::invalid_argument);
}

TEST(Json, ConfigEcho) {
    RunConfig cfg;
    cfg.chi_cap = 12;
    const auto j = config_to_json(cfg, Schedule(50.0, 0.25, 0.125));
    EXPECT_EQ(j.at("chi"), 12);
    EXPECT_EQ(j.at("steps"), 200);
    EXPECT_EQ(j.at("sign"), "-");
}

TEST(Files, RoundTrip) {
    const auto dir = std::filesystem::temp_directory_path() / "mpsim_run_io_test";
    const auto path = dir / "sub" / "inst.txt";
    const ExactCoverInstance inst = generate_hard_instance(9, 4);
    write_text_file(path, serialize_instance(inst));
    EXPECT_EQ(load_instance(path), inst);
    EXPECT_THROW(read_text_file(dir / "missing.txt"), std::runtime_error);
    std::filesystem::remove_all(dir);
}

}  // namespace
}  // namespace mpsim
