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

#ifndef MPSIM_RUN_IO_H
#define MPSIM_RUN_IO_H

#include <filesystem>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "mpsim/adiabatic.h"
#include "mpsim/exact_cover.h"

namespace mpsim {

inline constexpr std::string_view kRunCsvHeader =
    "s,energy_norm,energy_raw,norm2,entropy_halfcut,p_success_norm,p_success_raw,discarded_cum";
inline constexpr std::string_view kSpectraCsvHeader = "step,s,cut,alpha,lambda";

/// One run CSV row (no trailing newline). Doubles use 17 significant digits.
std::string format_sample_row(const Sample &sample);

/// Streams run rows as they are sampled.
class CsvSink : public RecordSink {
   public:
    explicit CsvSink(std::ostream &out);
    void on_sample(const Sample &sample) override;

   private:
    std::ostream &out_;
};

/// Dumps the Schmidt spectrum of the chosen cuts at every sample.
class SpectraSink : public RecordSink {
   public:
    SpectraSink(std::ostream &out, std::vector<int> cuts);
    void on_sample(const Sample &) override {
    }
    void on_state(const Sample &sample, const MpsState &state) override;

   private:
    std::ostream &out_;
    std::vector<int> cuts_;
};

/// Forwards every callback to several sinks.
class TeeSink : public RecordSink {
   public:
    explicit TeeSink(std::vector<RecordSink *> sinks) : sinks_(std::move(sinks)) {
    }
    void on_sample(const Sample &sample) override;
    void on_state(const Sample &sample, const MpsState &state) override;

   private:
    std::vector<RecordSink *> sinks_;
};

/// Spectrum of `cut` at the sampled step whose s is nearest to `s_point`.
std::vector<double> select_spectrum(std::string_view spectra_csv, int cut, double s_point);

nlohmann::json config_to_json(const RunConfig &config, const Schedule &schedule);
nlohmann::json record_to_json(const RunRecord &record);

/// Line-based key=value text; '#' starts a comment. Keys may carry a leading "--".
std::map<std::string, std::string> parse_config_text(std::string_view text);

std::string read_text_file(const std::filesystem::path &path);
void write_text_file(const std::filesystem::path &path, std::string_view text);

ExactCoverInstance load_instance(const std::filesystem::path &path);

}  // namespace mpsim

#endif
