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

#ifndef MPSIM_ADIABATIC_H
#define MPSIM_ADIABATIC_H

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mpsim/exact_cover.h"
#include "mpsim/gate_engine.h"
#include "mpsim/mps_state.h"

namespace mpsim {

/// Exponent convention of the evolution operator exp(sign * i * t * H).
enum class EvolutionSign { minus, plus };

inline double sign_value(EvolutionSign sign) {
    return sign == EvolutionSign::minus ? -1.0 : 1.0;
}

/// Discretization of the interpolation s = t / T: M = T / Δ steps, each split into
/// Δ / δ second-order Trotter substeps. s is held at l / M during step l.
class Schedule {
   public:
    explicit Schedule(double total_time, double delta = 0.125, std::optional<double> inner_delta = std::nullopt);

    double total_time() const {
        return total_time_;
    }
    double delta() const {
        return delta_;
    }
    double inner_delta() const {
        return inner_delta_;
    }
    int steps() const {
        return steps_;
    }
    int substeps() const {
        return substeps_;
    }
    double s_at(int step) const {
        return static_cast<double>(step) / steps_;
    }

   private:
    double total_time_;
    double delta_;
    double inner_delta_;
    int steps_;
    int substeps_;
};

struct RunConfig {
    int chi_cap = 8;
    bool renormalize_after_truncation = false;
    int observable_stride = 1;
    EvolutionSign sign = EvolutionSign::minus;
    uint64_t seed = 0;
    double lambda_floor = kDefaultLambdaFloor;
    ReturnMode return_mode = ReturnMode::deferred;
    SchmidtSolver solver = SchmidtSolver::svd;
    /// Build clause phases by exponentiating z^2 - 2z and z z literally instead of
    /// using z^2 = z. Debug cross-check only.
    bool literal_clause_phases = false;

    void validate() const;
    TruncationOptions truncation() const {
        return TruncationOptions{renormalize_after_truncation, solver};
    }
};

/// An observable both divided by <psi|psi> and as the raw bilinear form.
struct Measured {
    double normalized = 0.0;
    double raw = 0.0;
};

struct Sample {
    int step = 0;
    double s = 0.0;
    double energy_normalized = 0.0;
    double energy_raw = 0.0;
    double norm_squared = 0.0;
    double entropy_half_cut = 0.0;
    double success_normalized = 0.0;  // NaN when no solution is known
    double success_raw = 0.0;
    double discarded_cumulative = 0.0;
    int max_bond = 1;
    double wall_seconds = 0.0;
};

struct RunRecord {
    std::vector<Sample> samples;
    std::string argmax_bits;
    double argmax_probability = 0.0;
    bool argmax_exact = false;
    bool solved = false;
    double final_norm_squared = 0.0;
    double discarded_total = 0.0;
    cplx global_phase{1.0, 0.0};
    GateCounters counters;
    int64_t naive_swaps = 0;  // SWAPs three independent pair routings per clause would need
    double wall_seconds = 0.0;

    /// 1 - achieved / naive SWAP count (fused SWAPs cost nothing extra).
    double swap_saving() const;
};

/// Receives samples as a run progresses.
class RecordSink {
   public:
    virtual ~RecordSink() = default;
    virtual void on_sample(const Sample &sample) = 0;
    /// Called with the live state right after on_sample.
    virtual void on_state(const Sample &, const MpsState &) {
    }
};

/// exp(sign i (delta/4)(1-s) d (1 - σx)): identity on |+>, phase exp(sign i (delta/2)(1-s) d) on |->.
OneQubitGate mixer_gate(int degree, double s, double delta, EvolutionSign sign);

/// The factors of exp(sign i delta s (z_i + z_j + z_k - 1)^2): one-qubit phases
/// diag(1, exp(-sign i delta s)), couplings diag(1, 1, 1, exp(sign i 2 delta s)) and the
/// omitted scalar exp(sign i delta s). Identical for every clause.
ClauseGates clause_gate_bundle(double s, double delta, EvolutionSign sign, bool literal = false);

/// Clause application order: by (smallest member, span), then lexicographically.
std::vector<Clause> clause_order(const ExactCoverInstance &instance);

struct StepDiagnostics {
    double discarded_weight = 0.0;
    int truncations = 0;  // two-site updates that dropped weight
    int max_bond = 1;
    cplx global_phase{1.0, 0.0};
    GateCounters counters;
    int64_t naive_swaps = 0;
};

/// One time step at fixed s: Δ/δ repetitions of half mixer, clause sweep, half mixer.
StepDiagnostics trotter_step(MpsState &state,
                             const ExactCoverInstance &instance,
                             double s,
                             const Schedule &schedule,
                             const RunConfig &config);

/// <H(s)> with H(s) = (1-s) Σ d_i (1 - σx_i)/2 + s Σ_c (z_i + z_j + z_k - 1)^2.
Measured energy_expectation(const MpsState &state, const ExactCoverInstance &instance, double s);

Measured success_probability(const MpsState &state, std::string_view solution);

/// Full evolution from |+>^n at s = 0 to s = 1.
RunRecord run(const ExactCoverInstance &instance,
              const Schedule &schedule,
              const RunConfig &config,
              RecordSink *sink = nullptr);

/// Below this norm^2 a run is abandoned with NumericalError.
inline constexpr double kNormCollapseThreshold = 1e-12;

}  // namespace mpsim

#endif
