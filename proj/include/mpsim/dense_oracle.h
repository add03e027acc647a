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

#ifndef MPSIM_DENSE_ORACLE_H
#define MPSIM_DENSE_ORACLE_H

#include <span>
#include <string_view>
#include <vector>

#include "mpsim/adiabatic.h"
#include "mpsim/exact_cover.h"
#include "mpsim/linalg.h"

namespace mpsim {

inline constexpr int kMaxDenseOracleQubits = 14;
inline constexpr int kMaxDenseExponentialQubits = 12;

/// Full 2^n amplitude vector; index bit (n - q) holds qubit q, so qubit 1 is the
/// most significant bit and indices follow lexicographic bitstring order.
class DenseState {
   public:
    explicit DenseState(int n);
    DenseState(int n, ComplexVector amplitudes);

    static DenseState basis(int n, std::string_view bits);
    static DenseState plus(int n);

    int num_qubits() const {
        return n_;
    }
    const ComplexVector &amplitudes() const {
        return amps_;
    }
    ComplexVector &amplitudes() {
        return amps_;
    }
    cplx amplitude(std::string_view bits) const;

   private:
    int n_;
    ComplexVector amps_;
};

/// Applies a 2x2 (one site) or 4x4 (two sites, first site = high bit of the gate index) matrix.
void dense_apply_gate(DenseState &state, std::span<const int> sites, const Matrix &gate);
void dense_apply_gate(DenseState &state, int site, const Eigen::Matrix2cd &gate);
void dense_apply_gate(DenseState &state, int site_a, int site_b, const Eigen::Matrix4cd &gate);

/// H(s) kept in structured form: diagonal problem part plus weighted σx terms.
struct DenseHamiltonian {
    int n = 0;
    double s = 0.0;
    std::vector<double> problem_diagonal;  // classical energy of every basis state
    std::vector<int> degrees;

    ComplexVector apply(const ComplexVector &v) const;
    /// Dense real symmetric matrix (n <= kMaxDenseExponentialQubits).
    Eigen::MatrixXd to_matrix() const;
};

DenseHamiltonian dense_hamiltonian(const ExactCoverInstance &instance, double s);

/// state <- exp(sign i delta H(s)) state, by Hermitian eigendecomposition.
void dense_exact_step(DenseState &state, const ExactCoverInstance &instance, double s, double delta, EvolutionSign sign);

/// The same second-order split as trotter_step, applied exactly on the dense vector.
/// The problem exponential is the exact diagonal, so clause scalar phases are included.
void dense_trotter_step(
    DenseState &state, const ExactCoverInstance &instance, double s, const Schedule &schedule, EvolutionSign sign);

/// Singular values of the 2^cut x 2^(n-cut) amplitude matrix, non-increasing.
std::vector<double> dense_schmidt(const DenseState &state, int cut);

double dense_norm_squared(const DenseState &state);
/// Entropy (bits) of the normalized spectrum at `cut`.
double dense_entropy(const DenseState &state, int cut);
Measured dense_energy(const DenseState &state, const ExactCoverInstance &instance, double s);
Measured dense_success_probability(const DenseState &state, std::string_view solution);

/// E_1 - E_0 of H(s) for each s (n <= kMaxDenseExponentialQubits).
std::vector<double> dense_gap_trace(const ExactCoverInstance &instance, std::span<const double> s_values);

/// Runs the whole discretized evolution from |+>^n and reports what the MPS run reports.
struct DenseRunResult {
    std::vector<double> s;
    std::vector<double> energy;  // normalized
    std::vector<double> success;
    DenseState final_state{1};
};
DenseRunResult dense_run(const ExactCoverInstance &instance,
                         const Schedule &schedule,
                         EvolutionSign sign = EvolutionSign::minus,
                         int observable_stride = 1);

}  // namespace mpsim

#endif
