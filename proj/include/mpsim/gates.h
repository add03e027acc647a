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

#ifndef MPSIM_GATES_H
#define MPSIM_GATES_H

#include <cstdint>
#include <random>

#include "mpsim/linalg.h"

namespace mpsim {

inline constexpr double kUnitarityTolerance = 1e-12;

/// ||U^dagger U - I|| (Frobenius).
double unitarity_defect(const Matrix &u);
bool is_unitary(const Matrix &u, double tol = kUnitarityTolerance);

/// 2x2 unitary U_{i i'} acting on one qubit. Construction rejects non-unitary input.
class OneQubitGate {
   public:
    explicit OneQubitGate(const Eigen::Matrix2cd &u);
    const Eigen::Matrix2cd &matrix() const {
        return u_;
    }
    bool is_identity() const;

   private:
    Eigen::Matrix2cd u_;
};

/// 4x4 unitary on an ordered qubit pair; row/column index = 2*(first bit) + (second bit).
class TwoQubitGate {
   public:
    explicit TwoQubitGate(const Eigen::Matrix4cd &u);
    const Eigen::Matrix4cd &matrix() const {
        return u_;
    }
    bool is_diagonal() const {
        return diagonal_;
    }

    /// The same operator with the roles of the two qubits exchanged (SWAP U SWAP).
    TwoQubitGate reversed() const;

    /// SWAP * U: apply this gate, then exchange the two qubits.
    TwoQubitGate followed_by_swap() const;

   private:
    Eigen::Matrix4cd u_;
    bool diagonal_;
};

namespace gates {

OneQubitGate identity();
OneQubitGate pauli_x();
OneQubitGate hadamard();
/// diag(1, e^{i phi}).
OneQubitGate phase(double phi);

TwoQubitGate identity2();
TwoQubitGate swap();
TwoQubitGate cnot();
/// diag(1, 1, 1, e^{i phi}).
TwoQubitGate controlled_phase(double phi);
/// The entangling gate of the |00> -> (|00> + |11>)/sqrt(2) worked example:
/// rows (1,0,0,1)/sqrt2, (0,1,0,0), (0,0,1,0), (1,0,0,-1)/sqrt2.
TwoQubitGate bell_example();

/// Haar-random unitary of dimension `dim` (QR of a complex Ginibre matrix with phase fix).
Matrix random_unitary(int dim, std::mt19937_64 &rng);
OneQubitGate random_one_qubit(std::mt19937_64 &rng);
TwoQubitGate random_two_qubit(std::mt19937_64 &rng);

}  // namespace gates

}  // namespace mpsim

#endif
