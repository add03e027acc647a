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

#ifndef MPSIM_GATE_ENGINE_H
#define MPSIM_GATE_ENGINE_H

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "mpsim/exact_cover.h"
#include "mpsim/gates.h"
#include "mpsim/mps_state.h"

namespace mpsim {

struct TruncationReport {
    int cut = 0;
    int pre_rank = 0;   // Schmidt values above lambda_floor before the cap
    int post_rank = 0;  // retained bond dimension
    double discarded_weight = 0.0;
};

/// How the new Schmidt data of a two-site update is obtained. Both give the same
/// spectrum; `density_matrix` diagonalizes the reduced density matrix of the
/// smaller side and is kept as an independent cross-check of `svd`.
enum class SchmidtSolver { svd, density_matrix };

struct TruncationOptions {
    bool renormalize = false;  // rescale retained λ to Σλ² = 1 after a truncation
    SchmidtSolver solver = SchmidtSolver::svd;
};

struct GateCounters {
    int64_t one_qubit = 0;
    int64_t two_qubit = 0;    // non-SWAP two-qubit applications (fused ones included)
    int64_t swaps = 0;        // stand-alone SWAP applications
    int64_t fused_swaps = 0;  // SWAPs merged into a two-qubit gate application

    GateCounters &operator+=(const GateCounters &o);
};

/// Γ[site]^i <- Σ_i' U_{i i'} Γ[site]^i'. Touches nothing else.
void apply_one_qubit(MpsState &state, int site, const OneQubitGate &gate);

/// Two-site update on sites (left_site, left_site + 1) followed by truncation to
/// the state's chi_cap, keeping the largest Schmidt values.
TruncationReport apply_two_qubit_adjacent(
    MpsState &state, int left_site, const TwoQubitGate &gate, const TruncationOptions &options = {});

TruncationReport apply_swap(MpsState &state, int left_site, const TruncationOptions &options = {});

/// Gate on arbitrary distinct sites. site_i is the gate's first qubit. site_i is
/// carried next to site_j with SWAPs and returned afterwards: 2(d-1) SWAPs for
/// distance d.
std::vector<TruncationReport> apply_two_qubit(MpsState &state,
                                              int site_i,
                                              int site_j,
                                              const TwoQubitGate &gate,
                                              const TruncationOptions &options = {},
                                              GateCounters *counters = nullptr);

/// Logical-qubit <-> chain-position permutation. Both sides are 1-based.
class QubitLayout {
   public:
    explicit QubitLayout(int n);

    int num_qubits() const {
        return static_cast<int>(physical_of_.size()) - 1;
    }
    int physical(int logical) const;
    int logical(int physical) const;
    /// Records an exchange of the qubits at positions p and p+1.
    void swap_physical(int p);
    bool is_identity() const;

   private:
    std::vector<int> physical_of_;
    std::vector<int> logical_at_;
};

/// Gates of one clause term: phases on i, j, k and couplings on (i,j), (i,k), (j,k),
/// each pair gate ordered (smaller index first). global_phase is the scalar factor
/// the products omit.
struct ClauseGates {
    std::array<OneQubitGate, 3> one_qubit;
    std::array<TwoQubitGate, 3> two_qubit;
    cplx global_phase{1.0, 0.0};
};

enum class ReturnMode {
    deferred,  // leave qubits shared with the next clause where they are
    eager,     // always restore the identity layout after a clause
};

/// Routes clause gates along the chain. The outer clause members are brought next
/// to the middle one; the middle/right coupling is fused with the SWAP that makes
/// the outer pair adjacent. Afterwards every qubit returns home except those the
/// next clause needs, which stay put. The layout is the identity whenever no
/// next clause is given.
class ClauseRouter {
   public:
    explicit ClauseRouter(int n, TruncationOptions options = {}, ReturnMode mode = ReturnMode::deferred);

    std::vector<TruncationReport> apply_clause(MpsState &state,
                                               const Clause &clause,
                                               const ClauseGates &gates,
                                               const std::optional<Clause> &next = std::nullopt);

    /// Bubble-sorts the chain back to the identity layout, except that `pinned`
    /// logical qubits keep their current positions.
    std::vector<TruncationReport> restore(MpsState &state, std::span<const int> pinned = {});

    const QubitLayout &layout() const {
        return layout_;
    }
    const GateCounters &counters() const {
        return counters_;
    }
    void reset_counters() {
        counters_ = {};
    }

   private:
    void swap_at(MpsState &state, int p, std::vector<TruncationReport> &reports);
    void pair_gate(MpsState &state,
                   int logical_a,
                   int logical_b,
                   const TwoQubitGate &gate,
                   bool then_swap,
                   std::vector<TruncationReport> &reports);

    QubitLayout layout_;
    TruncationOptions options_;
    ReturnMode mode_;
    GateCounters counters_;
};

/// SWAPs used by three independent apply_two_qubit calls for the clause's pairs.
int64_t naive_clause_swaps(const Clause &clause);

}  // namespace mpsim

#endif
