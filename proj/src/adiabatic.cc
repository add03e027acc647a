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

#include "mpsim/adiabatic.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

#include <unsupported/Eigen/MatrixFunctions>

#include "mpsim/observables.h"

namespace mpsim {

namespace {

constexpr double kGridTolerance = 1e-9;

int integer_ratio(double num, double den, const char *what) {
    const double ratio = num / den;
    const double rounded = std::round(ratio);
    if (rounded < 1.0 || std::abs(ratio - rounded) > kGridTolerance * std::max(1.0, ratio)) {
        throw std::invalid_argument(std::string("Schedule: ") + what + " is not a positive integer multiple");
    }
    return static_cast<int>(rounded);
}

}  // namespace

Schedule::Schedule(double total_time, double delta, std::optional<double> inner_delta)
    : total_time_(total_time), delta_(delta), inner_delta_(inner_delta.value_or(delta)) {
    if (!(total_time_ > 0.0) || !(delta_ > 0.0) || !(inner_delta_ > 0.0)) {
        throw std::invalid_argument("Schedule: T, delta and inner delta must be positive");
    }
    steps_ = integer_ratio(total_time_, delta_, "T / delta");
    substeps_ = integer_ratio(delta_, inner_delta_, "delta / inner delta");
}

void RunConfig::validate() const {
    if (chi_cap < 1) {
        throw std::invalid_argument("RunConfig: chi must be >= 1");
    }
    if (observable_stride < 1) {
        throw std::invalid_argument("RunConfig: stride must be >= 1");
    }
    if (!(lambda_floor > 0.0)) {
        throw std::invalid_argument("RunConfig: lambda floor must be positive");
    }
}

double RunRecord::swap_saving() const {
    if (naive_swaps == 0) {
        return 0.0;
    }
    return 1.0 - static_cast<double>(counters.swaps) / static_cast<double>(naive_swaps);
}

OneQubitGate mixer_gate(int degree, double s, double delta, EvolutionSign sign) {
    if (degree < 0) {
        throw std::invalid_argument("mixer_gate: negative degree");
    }
    const cplx e = std::polar(1.0, sign_value(sign) * 0.5 * delta * (1.0 - s) * degree);
    Eigen::Matrix2cd m;
    m << 0.5 * (1.0 + e), 0.5 * (1.0 - e), 0.5 * (1.0 - e), 0.5 * (1.0 + e);
    return OneQubitGate(m);
}

ClauseGates clause_gate_bundle(double s, double delta, EvolutionSign sign, bool literal) {
    const double sg = sign_value(sign);
    const cplx i_unit(0.0, 1.0);
    Eigen::Matrix2cd one;
    Eigen::Matrix4cd two;
    if (literal) {
        Eigen::Matrix2cd z = Eigen::Matrix2cd::Zero();
        z(1, 1) = 1.0;
        const Eigen::Matrix2cd gen1 = z * z - 2.0 * z;
        Eigen::Matrix4cd zz = Eigen::Matrix4cd::Zero();
        for (int a = 0; a < 2; ++a) {
            for (int b = 0; b < 2; ++b) {
                for (int c = 0; c < 2; ++c) {
                    for (int d = 0; d < 2; ++d) {
                        zz(2 * a + b, 2 * c + d) = z(a, c) * z(b, d);
                    }
                }
            }
        }
        one = (sg * i_unit * delta * s * gen1).exp();
        two = (sg * i_unit * 2.0 * delta * s * zz).exp();
    } else {
        one = Eigen::Matrix2cd::Identity();
        one(1, 1) = std::polar(1.0, -sg * delta * s);
        two = Eigen::Matrix4cd::Identity();
        two(3, 3) = std::polar(1.0, sg * 2.0 * delta * s);
    }
    const OneQubitGate g1(one);
    const TwoQubitGate g2(two);
    return ClauseGates{{g1, g1, g1}, {g2, g2, g2}, std::polar(1.0, sg * delta * s)};
}

std::vector<Clause> clause_order(const ExactCoverInstance &instance) {
    std::vector<Clause> order = instance.clauses();
    std::stable_sort(order.begin(), order.end(), [](const Clause &a, const Clause &b) {
        if (a.i() != b.i()) {
            return a.i() < b.i();
        }
        if (a.span() != b.span()) {
            return a.span() < b.span();
        }
        return a < b;
    });
    return order;
}

StepDiagnostics trotter_step(MpsState &state,
                             const ExactCoverInstance &instance,
                             double s,
                             const Schedule &schedule,
                             const RunConfig &config) {
    const int n = instance.num_qubits();
    if (state.num_qubits() != n) {
        throw std::invalid_argument("trotter_step: state and instance sizes differ");
    }
    const double delta = schedule.inner_delta();
    const std::vector<int> deg = degrees(instance);
    std::vector<OneQubitGate> half_mixer;
    half_mixer.reserve(static_cast<size_t>(n));
    for (int q = 0; q < n; ++q) {
        half_mixer.push_back(mixer_gate(deg[static_cast<size_t>(q)], s, delta, config.sign));
    }
    const ClauseGates bundle = clause_gate_bundle(s, delta, config.sign, config.literal_clause_phases);
    const std::vector<Clause> order = clause_order(instance);

    StepDiagnostics diag;
    ClauseRouter router(n, config.truncation(), config.return_mode);
    auto mix = [&] {
        for (int q = 1; q <= n; ++q) {
            if (!half_mixer[static_cast<size_t>(q) - 1].is_identity()) {
                apply_one_qubit(state, q, half_mixer[static_cast<size_t>(q) - 1]);
            }
        }
    };
    for (int sub = 0; sub < schedule.substeps(); ++sub) {
        mix();
        for (size_t c = 0; c < order.size(); ++c) {
            std::optional<Clause> next;
            if (c + 1 < order.size()) {
                next = order[c + 1];
            }
            for (const auto &r : router.apply_clause(state, order[c], bundle, next)) {
                diag.discarded_weight += r.discarded_weight;
                diag.truncations += r.discarded_weight > 0.0 ? 1 : 0;
            }
            diag.global_phase *= bundle.global_phase;
            diag.naive_swaps += naive_clause_swaps(order[c]);
        }
        mix();
    }
    diag.counters = router.counters();
    diag.max_bond = state.max_bond_dimension();
    return diag;
}

Measured energy_expectation(const MpsState &state, const ExactCoverInstance &instance, double s) {
    const int n = instance.num_qubits();
    if (state.num_qubits() != n) {
        throw std::invalid_argument("energy_expectation: state and instance sizes differ");
    }
    const CorrelationEvaluator eval(state);
    const double norm2 = eval.norm_squared();
    Op2 sx;
    sx << 0, 1, 1, 0;
    Op2 z = Op2::Zero();
    z(1, 1) = 1.0;

    std::vector<double> z1(static_cast<size_t>(n) + 1, 0.0);
    for (int q = 1; q <= n; ++q) {
        z1[static_cast<size_t>(q)] = eval.one_point(q, z).real();
    }

    double mixer = 0.0;
    if (s < 1.0) {
        const std::vector<int> deg = degrees(instance);
        for (int q = 1; q <= n; ++q) {
            const int d = deg[static_cast<size_t>(q) - 1];
            if (d != 0) {
                mixer += 0.5 * d * (norm2 - eval.one_point(q, sx).real());
            }
        }
    }
    double problem = 0.0;
    if (s > 0.0) {
        for (const auto &c : instance.clauses()) {
            const auto &m = c.members();
            problem += norm2 - z1[static_cast<size_t>(m[0])] - z1[static_cast<size_t>(m[1])] -
                       z1[static_cast<size_t>(m[2])];
            problem += 2.0 * eval.two_point(m[0], z, m[1], z).real();
            problem += 2.0 * eval.two_point(m[0], z, m[2], z).real();
            problem += 2.0 * eval.two_point(m[1], z, m[2], z).real();
        }
    }
    Measured out;
    out.raw = (1.0 - s) * mixer + s * problem;
    out.normalized = norm2 > 0.0 ? out.raw / norm2 : std::numeric_limits<double>::quiet_NaN();
    return out;
}

Measured success_probability(const MpsState &state, std::string_view solution) {
    const double p = std::norm(amplitude(state, solution));
    const double norm2 = norm_squared(state);
    return Measured{norm2 > 0.0 ? p / norm2 : std::numeric_limits<double>::quiet_NaN(), p};
}

RunRecord run(const ExactCoverInstance &instance, const Schedule &schedule, const RunConfig &config, RecordSink *sink) {
    config.validate();
    const auto start = std::chrono::steady_clock::now();
    auto elapsed = [&] { return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count(); };

    const int n = instance.num_qubits();
    MpsState state = plus_state(n, config.chi_cap, config.lambda_floor);
    const std::optional<std::string> &solution = instance.known_solution();
    RunRecord record;

    auto sample = [&](int step, double s) {
        Sample row;
        row.step = step;
        row.s = s;
        const Measured e = energy_expectation(state, instance, s);
        row.energy_normalized = e.normalized;
        row.energy_raw = e.raw;
        row.norm_squared = norm_squared(state);
        row.entropy_half_cut = n >= 2 ? entanglement_entropy(state, n / 2) : 0.0;
        if (solution) {
            const Measured p = success_probability(state, *solution);
            row.success_normalized = p.normalized;
            row.success_raw = p.raw;
        } else {
            row.success_normalized = row.success_raw = std::numeric_limits<double>::quiet_NaN();
        }
        row.discarded_cumulative = record.discarded_total;
        row.max_bond = state.max_bond_dimension();
        row.wall_seconds = elapsed();
        if (!(row.norm_squared >= kNormCollapseThreshold)) {
            char msg[96];
            std::snprintf(msg, sizeof(msg), "run aborted: norm^2 = %.3e at s = %.6f", row.norm_squared, s);
            throw NumericalError(msg);
        }
        record.samples.push_back(row);
        if (sink != nullptr) {
            sink->on_sample(row);
            sink->on_state(row, state);
        }
    };

    const int steps = schedule.steps();
    for (int l = 0; l < steps; ++l) {
        const double s = schedule.s_at(l);
        if (l % config.observable_stride == 0) {
            sample(l, s);
        }
        const StepDiagnostics diag = trotter_step(state, instance, s, schedule, config);
        record.discarded_total += diag.discarded_weight;
        record.global_phase *= diag.global_phase;
        record.counters += diag.counters;
        record.naive_swaps += diag.naive_swaps;
    }
    sample(steps, 1.0);

    const MostProbable best = most_probable_bitstring(state);
    record.argmax_bits = best.bits;
    record.argmax_probability = best.probability;
    record.argmax_exact = best.exact;
    record.solved = solution ? best.bits == *solution : classical_energy(instance, best.bits) == 0;
    record.final_norm_squared = record.samples.back().norm_squared;
    record.wall_seconds = elapsed();
    return record;
}

}  // namespace mpsim
