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

#include "mpsim/sweep.h"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "mpsim/run_io.h"

namespace mpsim {

void TLadder::validate() const {
    if (!(start > 0.0) || !(multiplier > 1.0) || !(max >= start)) {
        throw std::invalid_argument("TLadder: need start > 0, multiplier > 1 and max >= start");
    }
}

std::vector<double> TLadder::values() const {
    validate();
    std::vector<double> out;
    for (double t = start; t <= max * (1.0 + 1e-12); t *= multiplier) {
        out.push_back(t);
    }
    return out;
}

MinTOutcome min_t_search(const ExactCoverInstance &instance,
                         const TLadder &ladder,
                         const RunConfig &config,
                         double delta,
                         std::optional<double> inner_delta) {
    MinTOutcome out;
    RunConfig cfg = config;
    // Only the final state matters here.
    cfg.observable_stride = std::numeric_limits<int>::max();
    for (double t : ladder.values()) {
        const auto start = std::chrono::steady_clock::now();
        RunRecord rec;
        try {
            rec = run(instance, Schedule(t, delta, inner_delta), cfg);
        } catch (const NumericalError &) {
            const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
            out.attempts.push_back(LadderAttempt{t, false, 0.0, elapsed.count(), true});
            continue;
        }
        out.attempts.push_back(
            LadderAttempt{t, rec.solved, rec.samples.back().success_normalized, rec.wall_seconds});
        if (rec.solved) {
            out.t_min = t;
            break;
        }
    }
    return out;
}

void parallel_for(int count, int workers, const std::function<void(int)> &task) {
    if (count <= 0) {
        return;
    }
    workers = std::max(1, std::min(workers, count));
    if (workers == 1) {
        for (int i = 0; i < count; ++i) {
            task(i);
        }
        return;
    }
    std::atomic<int> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    auto worker = [&] {
        while (true) {
            const int i = next.fetch_add(1);
            if (i >= count) {
                return;
            }
            try {
                task(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) {
                    first_error = std::current_exception();
                }
                next.store(count);
            }
        }
    };
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back(worker);
    }
    for (auto &t : pool) {
        t.join();
    }
    if (first_error) {
        std::rethrow_exception(first_error);
    }
}

void SweepPlan::validate() const {
    if (instances.empty() || chis.empty() || total_times.empty()) {
        throw std::invalid_argument("SweepPlan: instance, chi and T lists must be non-empty");
    }
    if (labels.size() != instances.size()) {
        throw std::invalid_argument("SweepPlan: one label per instance");
    }
    for (int chi : chis) {
        if (chi < 1) {
            throw std::invalid_argument("SweepPlan: chi must be >= 1");
        }
    }
    for (size_t i = 1; i < total_times.size(); ++i) {
        if (!(total_times[i] > total_times[i - 1])) {
            throw std::invalid_argument("SweepPlan: T values must be increasing");
        }
    }
    if (workers < 1) {
        throw std::invalid_argument("SweepPlan: workers must be >= 1");
    }
}

std::vector<SweepRow> run_sweep(const SweepPlan &plan) {
    plan.validate();
    const int per_instance = static_cast<int>(plan.chis.size() * plan.total_times.size());
    const int total = static_cast<int>(plan.instances.size()) * per_instance;
    std::vector<SweepRow> rows(static_cast<size_t>(total));
    parallel_for(total, plan.workers, [&](int idx) {
        const auto &inst = plan.instances[static_cast<size_t>(idx / per_instance)];
        const int rest = idx % per_instance;
        const int chi = plan.chis[static_cast<size_t>(rest) / plan.total_times.size()];
        const double t = plan.total_times[static_cast<size_t>(rest) % plan.total_times.size()];
        SweepRow row;
        row.label = plan.labels[static_cast<size_t>(idx / per_instance)];
        row.n = inst.num_qubits();
        row.m = inst.num_clauses();
        row.chi = chi;
        row.total_time = t;
        RunConfig cfg = plan.base;
        cfg.chi_cap = chi;
        std::ostringstream csv;
        CsvSink sink(csv);
        try {
            const RunRecord rec = run(inst, Schedule(t, plan.delta, plan.inner_delta), cfg, &sink);
            const Sample &last = rec.samples.back();
            row.solved = rec.solved;
            row.success_probability = last.success_normalized;
            row.final_norm_squared = last.norm_squared;
            row.final_energy = last.energy_normalized;
            row.discarded_total = rec.discarded_total;
            row.wall_seconds = rec.wall_seconds;
        } catch (const NumericalError &) {
            row.aborted = true;
        }
        if (plan.out_dir) {
            std::ostringstream name;
            name << row.label << "_chi" << chi << "_T" << t << ".csv";
            write_text_file(*plan.out_dir / name.str(), csv.str());
        }
        rows[static_cast<size_t>(idx)] = std::move(row);
    });
    return rows;
}

std::string format_sweep_row(const SweepRow &r) {
    std::ostringstream out;
    out.precision(17);
    out << r.label << ',' << r.n << ',' << r.m << ',' << r.chi << ',' << r.total_time << ',' << (r.solved ? 1 : 0)
        << ',' << (r.aborted ? 1 : 0) << ',' << r.success_probability << ',' << r.final_norm_squared << ','
        << r.final_energy << ',' << r.discarded_total;
    return out.str();
}

std::vector<MinTRow> run_min_t(const std::vector<ExactCoverInstance> &instances,
                               const std::vector<std::string> &labels,
                               const TLadder &ladder,
                               const RunConfig &config,
                               double delta,
                               std::optional<double> inner_delta,
                               int workers) {
    if (labels.size() != instances.size()) {
        throw std::invalid_argument("run_min_t: one label per instance");
    }
    ladder.validate();
    std::vector<MinTRow> rows(instances.size());
    parallel_for(static_cast<int>(instances.size()), workers, [&](int i) {
        const auto &inst = instances[static_cast<size_t>(i)];
        MinTRow row;
        row.label = labels[static_cast<size_t>(i)];
        row.n = inst.num_qubits();
        row.m = inst.num_clauses();
        row.chi = config.chi_cap;
        row.outcome = min_t_search(inst, ladder, config, delta, inner_delta);
        rows[static_cast<size_t>(i)] = std::move(row);
    });
    return rows;
}

std::string format_min_t_row(const MinTRow &r) {
    std::ostringstream out;
    out << r.label << ',' << r.n << ',' << r.m << ',' << r.chi << ',';
    if (r.outcome.t_min) {
        out << *r.outcome.t_min << ",0,";
    } else {
        out << ",1,";
    }
    const auto aborted = std::count_if(r.outcome.attempts.begin(), r.outcome.attempts.end(),
                                       [](const LadderAttempt &a) { return a.aborted; });
    out << r.outcome.attempts.size() << ',' << aborted;
    return out.str();
}

std::vector<MinTSummary> summarize_min_t(const std::vector<MinTRow> &rows) {
    std::map<int, std::vector<const MinTRow *>> by_n;
    for (const auto &r : rows) {
        by_n[r.n].push_back(&r);
    }
    std::vector<MinTSummary> out;
    for (const auto &[n, group] : by_n) {
        MinTSummary s;
        s.n = n;
        std::vector<double> t_values;
        for (const MinTRow *r : group) {
            ++s.instances;
            if (r->outcome.t_min) {
                ++s.solved;
                t_values.push_back(*r->outcome.t_min);
            } else {
                ++s.exhausted;
            }
        }
        s.t_min = summarize(t_values);
        out.push_back(s);
    }
    return out;
}

std::string format_min_t_summary(const MinTSummary &s) {
    std::ostringstream out;
    out.precision(17);
    out << s.n << ',' << s.instances << ',' << s.solved << ',' << s.exhausted << ',';
    if (s.solved > 0) {
        out << s.t_min.mean << ',' << s.t_min.worst << ',' << s.t_min.ci95_half_width;
    } else {
        out << ",,";
    }
    return out.str();
}

}  // namespace mpsim
