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

#ifndef MPSIM_ORACLE_CHECK_H
#define MPSIM_ORACLE_CHECK_H

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mpsim/dense_oracle.h"
#include "mpsim/exact_cover.h"
#include "mpsim/linalg.h"
#include "mpsim/mps_state.h"

namespace mpsim {

/// One raw gate of a scripted program: a 2x2 on one site or a 4x4 on two sites.
struct ProgramOp {
    std::vector<int> sites;
    Matrix matrix;
};

/// A gate program plus the Hamiltonian point and target string its observables use.
struct GateProgram {
    int n = 0;
    uint64_t seed = 0;
    std::vector<ProgramOp> ops;
    ExactCoverInstance instance{1, {}};
    double s = 0.5;
    std::string target;  // bitstring for the success probability

    std::string trace() const;
};

/// Haar-random one- and two-qubit gates on random sites (two-qubit pairs at any distance).
GateProgram random_program(int n, uint64_t seed, int num_ops);

/// Index of the first op whose matrix is not unitary within kUnitarityTolerance.
std::optional<size_t> first_non_unitary(const GateProgram &program);

struct Deviation {
    double amplitude = 0.0;  // max over all 2^n entries
    double norm = 0.0;
    double entropy = 0.0;
    double energy = 0.0;
    double success = 0.0;

    double max() const;
};

/// Runs the program on an MPS with the given χ and on the dense oracle and compares
/// amplitudes, norm^2, half-cut entropy, <H(s)> and the target probability.
Deviation compare_program(const GateProgram &program, int chi);

/// χ large enough that no cut of an n-qubit chain can be truncated.
int ample_chi(int n);

struct StepCheck {
    double trotter_deviation = 0.0;  // MPS trotter_step vs dense split, max amplitude error
    double exact_distance = 0.0;     // ||MPS step - exact exponential||, O(delta^3)
    double exact_infidelity = 0.0;   // 1 - |<dense exact step|MPS step>|^2, O(delta^6)
};

/// One Trotter step at s from a random product-free starting state (a few steps of
/// evolution from |+>), MPS versus the dense split and the exact exponential.
StepCheck check_trotter_step(const ExactCoverInstance &instance, double s, double delta, int chi, int warmup_steps = 2);

struct CheckCase {
    std::string name;
    uint64_t seed = 0;
    double deviation = 0.0;
    double tolerance = 0.0;
    bool passed = false;
    std::string trace;  // gate trace of the failing program
};

struct OracleCheckOptions {
    int n_max = 10;
    uint64_t seed = 1;
    int programs = 20;
    int ops_per_program = 40;
    std::optional<int> chi;  // default: ample_chi(n)
    bool tamper = false;     // corrupt one gate so the unitarity pre-check must fail
    double tolerance = 1e-8;
};

struct OracleCheckReport {
    std::vector<CheckCase> cases;
    bool passed() const;
};

OracleCheckReport run_oracle_check(const OracleCheckOptions &options);

/// Max program deviation for each χ in `chis` over the same programs.
std::vector<double> degradation_study(int n, uint64_t seed, const std::vector<int> &chis, int programs = 5);

}  // namespace mpsim

#endif
