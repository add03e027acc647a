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

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

#include "mpsim/adiabatic.h"
#include "mpsim/gate_engine.h"
#include "mpsim/gates.h"

namespace mpsim {

std::string GateProgram::trace() const {
    std::ostringstream out;
    for (size_t i = 0; i < ops.size(); ++i) {
        if (i > 0) {
            out << ' ';
        }
        out << (ops[i].sites.size() == 1 ? "U1(" : "U2(");
        for (size_t k = 0; k < ops[i].sites.size(); ++k) {
            out << (k > 0 ? "," : "") << ops[i].sites[k];
        }
        out << ')';
    }
    return out.str();
}

GateProgram random_program(int n, uint64_t seed, int num_ops) {
    if (n < 2 || n > kMaxDenseOracleQubits) {
        throw std::invalid_argument("random_program: n out of range");
    }
    GateProgram p;
    p.n = n;
    p.seed = seed;
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> site(1, n);
    std::bernoulli_distribution two(0.6);
    for (int k = 0; k < num_ops; ++k) {
        if (two(rng)) {
            const int a = site(rng);
            int b = site(rng);
            while (b == a) {
                b = site(rng);
            }
            p.ops.push_back(ProgramOp{{a, b}, gates::random_unitary(4, rng)});
        } else {
            p.ops.push_back(ProgramOp{{site(rng)}, gates::random_unitary(2, rng)});
        }
    }
    const int m = std::max(1, (4 * n) / 5);
    p.instance = random_instance(n, n >= 3 ? m : 0, seed ^ 0x5eedULL);
    p.s = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    std::uniform_int_distribution<int> bit(0, 1);
    for (int q = 0; q < n; ++q) {
        p.target.push_back(bit(rng) ? '1' : '0');
    }
    return p;
}

std::optional<size_t> first_non_unitary(const GateProgram &program) {
    for (size_t i = 0; i < program.ops.size(); ++i) {
        if (!is_unitary(program.ops[i].matrix)) {
            return i;
        }
    }
    return std::nullopt;
}

double Deviation::max() const {
    return std::max({amplitude, norm, entropy, energy, success});
}

int ample_chi(int n) {
    return 1 << (n / 2);
}

Deviation compare_program(const GateProgram &program, int chi) {
    const int n = program.n;
    MpsState mps = basis_state(n, std::string(static_cast<size_t>(n), '0'), chi);
    DenseState dense(n);
    for (const auto &op : program.ops) {
        if (op.sites.size() == 1) {
            apply_one_qubit(mps, op.sites[0], OneQubitGate(op.matrix));
        } else {
            apply_two_qubit(mps, op.sites[0], op.sites[1], TwoQubitGate(op.matrix));
        }
        dense_apply_gate(dense, op.sites, op.matrix);
    }
    Deviation d;
    d.amplitude = (to_statevector(mps) - dense.amplitudes()).cwiseAbs().maxCoeff();
    d.norm = std::abs(norm_squared(mps) - dense_norm_squared(dense));
    d.entropy = std::abs(entanglement_entropy(mps, n / 2) - dense_entropy(dense, n / 2));
    d.energy = std::abs(energy_expectation(mps, program.instance, program.s).normalized -
                        dense_energy(dense, program.instance, program.s).normalized);
    d.success = std::abs(success_probability(mps, program.target).normalized -
                         dense_success_probability(dense, program.target).normalized);
    return d;
}

StepCheck check_trotter_step(const ExactCoverInstance &instance, double s, double delta, int chi, int warmup_steps) {
    const int n = instance.num_qubits();
    const Schedule schedule(delta, delta);
    RunConfig cfg;
    cfg.chi_cap = chi;
    MpsState mps = plus_state(n, chi);
    DenseState dense = DenseState::plus(n);
    for (int w = 0; w < warmup_steps; ++w) {
        const double sw = s * (w + 1) / (warmup_steps + 1);
        trotter_step(mps, instance, sw, schedule, cfg);
        dense_trotter_step(dense, instance, sw, schedule, cfg.sign);
    }
    const StepDiagnostics diag = trotter_step(mps, instance, s, schedule, cfg);
    DenseState exact = dense;
    dense_exact_step(exact, instance, s, delta, cfg.sign);
    dense_trotter_step(dense, instance, s, schedule, cfg.sign);

    // The MPS omits the clause scalar phases; put them back before comparing.
    ComplexVector psi = to_statevector(mps);
    cplx phase{1.0, 0.0};
    for (int w = 0; w < warmup_steps; ++w) {
        const double sw = s * (w + 1) / (warmup_steps + 1);
        phase *= std::polar(1.0, sign_value(cfg.sign) * delta * sw * instance.num_clauses());
    }
    phase *= diag.global_phase;
    psi *= phase;

    StepCheck out;
    out.trotter_deviation = (psi - dense.amplitudes()).cwiseAbs().maxCoeff();
    out.exact_distance = (psi - exact.amplitudes()).norm();
    const cplx overlap = exact.amplitudes().dot(psi);
    out.exact_infidelity = 1.0 - std::norm(overlap) / (psi.squaredNorm() * exact.amplitudes().squaredNorm());
    return out;
}

bool OracleCheckReport::passed() const {
    return std::all_of(cases.begin(), cases.end(), [](const CheckCase &c) { return c.passed; });
}

OracleCheckReport run_oracle_check(const OracleCheckOptions &opt) {
    if (opt.n_max < 4 || opt.n_max > kMaxDenseExponentialQubits) {
        throw std::invalid_argument("oracle check: n_max must lie in [4, " +
                                    std::to_string(kMaxDenseExponentialQubits) + "]");
    }
    std::vector<GateProgram> programs;
    std::mt19937_64 rng(opt.seed);
    std::uniform_int_distribution<int> n_dist(4, opt.n_max);
    for (int p = 0; p < opt.programs; ++p) {
        programs.push_back(random_program(n_dist(rng), rng(), opt.ops_per_program));
    }
    if (opt.tamper && !programs.empty() && !programs[0].ops.empty()) {
        programs[0].ops[programs[0].ops.size() / 2].matrix(0, 0) += 1e-3;
    }

    OracleCheckReport report;
    // Unitarity first: nothing else runs on a corrupted corpus.
    bool unitary = true;
    for (const auto &p : programs) {
        const auto bad = first_non_unitary(p);
        CheckCase c{"unitarity n=" + std::to_string(p.n), p.seed, 0.0, kUnitarityTolerance, !bad, ""};
        if (bad) {
            c.deviation = unitarity_defect(p.ops[*bad].matrix);
            c.trace = "op " + std::to_string(*bad) + " of: " + p.trace();
            unitary = false;
        }
        report.cases.push_back(c);
    }
    if (!unitary) {
        return report;
    }

    for (const auto &p : programs) {
        const int chi = opt.chi.value_or(ample_chi(p.n));
        const Deviation d = compare_program(p, chi);
        CheckCase c{"program n=" + std::to_string(p.n), p.seed, d.max(), opt.tolerance, d.max() <= opt.tolerance, ""};
        if (!c.passed) {
            c.trace = p.trace();
        }
        report.cases.push_back(c);
    }

    // Evolution: the MPS Trotter step against the dense split of the same step.
    std::uniform_real_distribution<double> s_dist(0.05, 0.95);
    for (int n = 6; n <= opt.n_max; n += 2) {
        const uint64_t seed = rng();
        const ExactCoverInstance inst = random_instance(n, (4 * n) / 5, seed);
        const int chi = opt.chi.value_or(ample_chi(n));
        const StepCheck sc = check_trotter_step(inst, s_dist(rng), 0.125, chi);
        CheckCase c{"trotter step n=" + std::to_string(n), seed, sc.trotter_deviation, opt.tolerance,
                    sc.trotter_deviation <= opt.tolerance, ""};
        report.cases.push_back(c);
    }
    return report;
}

std::vector<double> degradation_study(int n, uint64_t seed, const std::vector<int> &chis, int programs) {
    std::vector<GateProgram> corpus;
    std::mt19937_64 rng(seed);
    for (int p = 0; p < programs; ++p) {
        corpus.push_back(random_program(n, rng(), 4 * n));
    }
    std::vector<double> out;
    for (int chi : chis) {
        double worst = 0.0;
        for (const auto &p : corpus) {
            worst = std::max(worst, compare_program(p, chi).amplitude);
        }
        out.push_back(worst);
    }
    return out;
}

}  // namespace mpsim
