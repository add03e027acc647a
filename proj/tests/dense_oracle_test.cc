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

#include "mpsim/dense_oracle.h"

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "mpsim/gates.h"
#include "test_util.h"

namespace mpsim {
namespace {

using testing::bits_of;

TEST(DenseState, Construction) {
    EXPECT_EQ(DenseState(3).amplitude("000"), cplx(1.0));
    EXPECT_EQ(DenseState::basis(3, "110").amplitudes()(6), cplx(1.0));
    EXPECT_NEAR(std::abs(DenseState::plus(4).amplitude("1011") - 0.25), 0.0, 1e-15);
    EXPECT_THROW(DenseState(kMaxDenseOracleQubits + 1), std::invalid_argument);
    EXPECT_THROW(DenseState(2, ComplexVector::Zero(3)), std::invalid_argument);
}

TEST(DenseGate, PauliXOnFirstSite) {
    DenseState st(2);
    dense_apply_gate(st, 1, gates::pauli_x().matrix());
    EXPECT_EQ(st.amplitude("10"), cplx(1.0));
}

TEST(DenseGate, BellExample) {
    DenseState st(2);
    dense_apply_gate(st, 1, 2, gates::bell_example().matrix());
    const double r = 1.0 / std::sqrt(2.0);
    EXPECT_NEAR(std::abs(st.amplitudes()(0) - r), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(st.amplitudes()(3) - r), 0.0, 1e-15);
    EXPECT_EQ(st.amplitudes()(1), cplx(0.0));
    EXPECT_EQ(st.amplitudes()(2), cplx(0.0));
    const auto sp = dense_schmidt(st, 1);
    EXPECT_NEAR(sp[0], r, 1e-15);
    EXPECT_NEAR(sp[1], r, 1e-15);
}

TEST(DenseGate, RandomUnitaryThenInverse) {
    std::mt19937_64 rng(3);
    DenseState st = DenseState::plus(6);
    dense_apply_gate(st, 2, 4, Eigen::Matrix4cd(gates::random_unitary(4, rng)));
    const ComplexVector before = st.amplitudes();
    const Matrix u = gates::random_unitary(4, rng);
    const std::vector<int> sites{5, 1};
    dense_apply_gate(st, sites, u);
    EXPECT_NEAR(dense_norm_squared(st), 1.0, 1e-12);
    dense_apply_gate(st, sites, Matrix(u.adjoint()));
    EXPECT_LT((st.amplitudes() - before).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(DenseGate, BadSites) {
    DenseState st(3);
    EXPECT_THROW(dense_apply_gate(st, 4, gates::pauli_x().matrix()), std::out_of_range);
    EXPECT_THROW(dense_apply_gate(st, 2, 2, gates::cnot().matrix()), std::invalid_argument);
    const std::vector<int> three{1, 2, 3};
    EXPECT_THROW(dense_apply_gate(st, three, Matrix::Identity(8, 8)), std::invalid_argument);
}

TEST(DenseHamiltonian, UnitSDiagonalIsClassicalEnergy) {
    const ExactCoverInstance inst = random_instance(8, 7, 1);
    const DenseHamiltonian h = dense_hamiltonian(inst, 1.0);
    const Eigen::MatrixXd m = h.to_matrix();
    for (uint64_t idx = 0; idx < 256; ++idx) {
        EXPECT_EQ(m(static_cast<Eigen::Index>(idx), static_cast<Eigen::Index>(idx)),
                  classical_energy(inst, bits_of(idx, 8)));
    }
    EXPECT_EQ((m - Eigen::MatrixXd(m.diagonal().asDiagonal())).cwiseAbs().maxCoeff(), 0.0);
}

TEST(DenseHamiltonian, HermitianAndPlusIsZeroEigenvector) {
    const ExactCoverInstance inst = random_instance(8, 6, 2);
    const Eigen::MatrixXd m = dense_hamiltonian(inst, 0.4).to_matrix();
    EXPECT_LT((m - m.transpose()).cwiseAbs().maxCoeff(), 1e-12);
    const DenseHamiltonian h0 = dense_hamiltonian(inst, 0.0);
    EXPECT_LT(h0.apply(DenseState::plus(8).amplitudes()).norm(), 1e-12);
    // Structured apply agrees with the dense matrix.
    const ComplexVector v = DenseState::plus(8).amplitudes() + ComplexVector::Unit(256, 17);
    const DenseHamiltonian h = dense_hamiltonian(inst, 0.4);
    EXPECT_LT((h.apply(v) - m.cast<cplx>() * v).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(DenseHamiltonian, GapMinimumInsideInterval) {
    const ExactCoverInstance inst = generate_hard_instance(8, 4);
    std::vector<double> s;
    for (int k = 0; k <= 40; ++k) {
        s.push_back(k / 40.0);
    }
    const auto gaps = dense_gap_trace(inst, s);
    const auto it = std::min_element(gaps.begin(), gaps.end());
    const size_t at = static_cast<size_t>(it - gaps.begin());
    EXPECT_GT(at, 0u);
    EXPECT_LT(at, s.size() - 1);
    EXPECT_GT(*it, 0.0);
}

TEST(DenseExactStep, ZeroDeltaAndNorm) {
    const ExactCoverInstance inst = random_instance(8, 6, 5);
    DenseState st = DenseState::plus(8);
    dense_apply_gate(st, 3, gates::hadamard().matrix());
    const ComplexVector before = st.amplitudes();
    dense_exact_step(st, inst, 0.5, 0.0, EvolutionSign::minus);
    EXPECT_EQ(st.amplitudes(), before);
    dense_exact_step(st, inst, 0.5, 0.7, EvolutionSign::minus);
    EXPECT_NEAR(dense_norm_squared(st), 1.0, 1e-12);
    DenseState big = DenseState::plus(13);
    EXPECT_THROW(dense_exact_step(big, random_instance(13, 3, 1), 0.5, 0.1, EvolutionSign::minus),
                 std::invalid_argument);
}

TEST(DenseSchmidt, ProductAndCutRange) {
    const auto sp = dense_schmidt(DenseState::plus(5), 2);
    EXPECT_NEAR(sp[0], 1.0, 1e-14);
    for (size_t a = 1; a < sp.size(); ++a) {
        EXPECT_NEAR(sp[a], 0.0, 1e-14);
    }
    EXPECT_THROW(dense_schmidt(DenseState(4), 0), std::out_of_range);
    EXPECT_THROW(dense_schmidt(DenseState(4), 4), std::out_of_range);
}

TEST(DenseRun, SamplesAndNorm) {
    const ExactCoverInstance inst = generate_hard_instance(6, 1);
    const DenseRunResult r = dense_run(inst, Schedule(5.0), EvolutionSign::minus, 8);
    EXPECT_EQ(r.s.front(), 0.0);
    EXPECT_EQ(r.s.back(), 1.0);
    EXPECT_NEAR(dense_norm_squared(r.final_state), 1.0, 1e-12);
}

}  // namespace
}  // namespace mpsim
