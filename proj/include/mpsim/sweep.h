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

#ifndef MPSIM_SWEEP_H
#define MPSIM_SWEEP_H

#include <exception>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "mpsim/adiabatic.h"
#include "mpsim/analysis.h"
#include "mpsim/exact_cover.h"

namespace mpsim {

/// T values start, start * multiplier, ... up to and including max.
struct TLadder {
    double start = 100.0;
    double multiplier = 2.0;
    double max = 1600.0;

    void validate() const;
    std::vector<double> values() const;
};

struct LadderAttempt {
    double total_time = 0.0;
    bool solved = false;
    double success_probability = 0.0;  // normalized, final
    double wall_seconds = 0.0;
    bool aborted = false;  // the run lost all norm; counted as not solved
};

struct MinTOutcome {
    std::optional<double> t_min;  // empty when the ladder is exhausted
    std::vector<LadderAttempt> attempts;
};

/// Runs the ladder upward and stops at the first T whose run is solved. A run that
/// aborts on norm collapse counts as not solved and the ladder continues.
MinTOutcome min_t_search(const ExactCoverInstance &instance,
                         const TLadder &ladder,
                         const RunConfig &config,
                         double delta = 0.125,
                         std::optional<double> inner_delta = std::nullopt);

/// Calls task(i) for i in [0, count) on at most `workers` threads. The first exception
/// thrown by any task is rethrown after all workers have joined.
void parallel_for(int count, int workers, const std::function<void(int)> &task);

struct SweepPlan {
    std::vector<ExactCoverInstance> instances;
    std::vector<std::string> labels;  // one per instance, used in file names
    std::vector<int> chis;
    std::vector<double> total_times;
    double delta = 0.125;
    std::optional<double> inner_delta;
    RunConfig base;
    std::optional<std::filesystem::path> out_dir;  // per-run CSV files when set
    int workers = 1;

    void validate() const;
};

struct SweepRow {
    std::string label;
    int n = 0;
    int m = 0;
    int chi = 0;
    double total_time = 0.0;
    bool solved = false;
    bool aborted = false;
    double success_probability = 0.0;
    double final_norm_squared = 0.0;
    double final_energy = 0.0;
    double discarded_total = 0.0;
    double wall_seconds = 0.0;
};

inline constexpr std::string_view kSweepCsvHeader =
    "label,n,m,chi,T,solved,aborted,p_success_norm,norm2,energy_norm,discarded_total";

/// Every (instance, chi, T) combination; rows come back in that nested order
/// regardless of the worker count.
std::vector<SweepRow> run_sweep(const SweepPlan &plan);
std::string format_sweep_row(const SweepRow &row);

inline constexpr std::string_view kMinTCsvHeader = "label,n,m,chi,T_min,exhausted,attempts,aborted";
inline constexpr std::string_view kMinTSummaryHeader = "n,instances,solved,exhausted,mean_T_min,worst_T_min,ci95";

struct MinTRow {
    std::string label;
    int n = 0;
    int m = 0;
    int chi = 0;
    MinTOutcome outcome;
};

std::vector<MinTRow> run_min_t(const std::vector<ExactCoverInstance> &instances,
                               const std::vector<std::string> &labels,
                               const TLadder &ladder,
                               const RunConfig &config,
                               double delta,
                               std::optional<double> inner_delta,
                               int workers);
std::string format_min_t_row(const MinTRow &row);

/// Per-n statistics over the solved instances; exhausted ones are counted, never dropped.
struct MinTSummary {
    int n = 0;
    int instances = 0;
    int solved = 0;
    int exhausted = 0;
    SummaryStats t_min;
};
std::vector<MinTSummary> summarize_min_t(const std::vector<MinTRow> &rows);
std::string format_min_t_summary(const MinTSummary &summary);

}  // namespace mpsim

#endif
