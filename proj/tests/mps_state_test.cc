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

#include "mpsim/mps_state.h"

#include <cmath>

#include <gtest/gtest.h>

#include "mpsim/gate_engine.h"
#include "mpsim/gates.h"
#include "test_util.h"

namespace mpsim {
namespace {

using testing::bits_of;
using testing::random_circuit_state;

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

TEST(ProductState, BasisTwoQubitsZero) {
    const MpsState st = basis_state(2, "00", 1);
    EXPECT_EQ(st.site(1)[0](0, 0), cplx(1.0));
    EXPECT_EQ(st.site(1)[1](0, 0), cplx(0.0));
    EXPECT_EQ(st.site(2)[0](0, 0), cplx(1.0));
    EXPECT_EQ(st.site(2)[1](0, 0), cplx(0.0));
    ASSERT_EQ(st.bond_dimension(1), 1);
    EXPECT_EQ(st.lambda(1)(0), 1.0);
}

TEST(ProductState, PlusAmplitudes) {
    const MpsState st = plus_state(3, 1);
    EXPECT_NEAR(std::abs(amplitude(st, "101") - cplx(std::pow(2.0, -1.5))), 0.0, 1e-15);
}

TEST(ProductState, SingleSite) {
    const MpsState st = basis_state(1, "1", 1);
    EXPECT_EQ(amplitude(st, "1"), cplx(1.0));
    EXPECT_EQ(amplitude(st, "0"), cplx(0.0));
}

TEST(ProductState, Errors) {
    EXPECT_THROW(MpsState(0, 1), std::invalid_argument);
    EXPECT_THROW(basis_state(3, "01", 1), std::invalid_argument);
    EXPECT_THROW(basis_state(2, "0x", 1), std::invalid_argument);
    EXPECT_THROW(amplitude(plus_state(3, 1), "0000"), std::invalid_argument);
}

TEST(ProductState, BasisAmplitudes) {
    const MpsState st = basis_state(4, "0110", 1);
    EXPECT_EQ(amplitude(st, "0110"), cplx(1.0));
    EXPECT_EQ(amplitude(st, "0111"), cplx(0.0));
    const ComplexVector v = to_statevector(basis_state(2, "10", 1));
    ASSERT_EQ(v.size(), 4);
    EXPECT_EQ(v(2), cplx(1.0));
    EXPECT_EQ(v(0) + v(1) + v(3), cplx(0.0));
}

TEST(WorkedExample, BellFromZeroZero) {
    MpsState st = basis_state(2, "00", 2);
    const TruncationReport rep = apply_two_qubit_adjacent(st, 1, gates::bell_example());
    EXPECT_EQ(rep.discarded_weight, 0.0);
    ASSERT_EQ(st.bond_dimension(1), 2);
    EXPECT_NEAR(st.lambda(1)(0), kInvSqrt2, 1e-12);
    EXPECT_NEAR(st.lambda(1)(1), kInvSqrt2, 1e-12);

    // Γ entries of the tabulated A' (first index: row of site 1 / column of site 2).
    const SiteTensor &g1 = st.site(1);
    const SiteTensor &g2 = st.site(2);
    EXPECT_NEAR(std::abs(g1[0](0, 0) - 1.0), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(g1[1](0, 1) - 1.0), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(g1[0](0, 1)), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(g1[1](0, 0)), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(g2[0](0, 0) - 1.0), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(g2[1](1, 0) - 1.0), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(g2[0](1, 0)), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(g2[1](0, 0)), 0.0, 1e-12);

    EXPECT_NEAR(std::abs(amplitude(st, "00") - kInvSqrt2), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(amplitude(st, "01")), 0.0, 1e-12);
    const ComplexVector v = to_statevector(st);
    EXPECT_NEAR(std::abs(v(0) - kInvSqrt2), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(v(3) - kInvSqrt2), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(v(1)) + std::abs(v(2)), 0.0, 1e-12);

    EXPECT_NEAR(entanglement_entropy(st, 1), 1.0, 1e-12);
    const SchmidtSpectrum sp = schmidt_spectrum(st, 1);
    ASSERT_EQ(sp.values.size(), 2u);
    EXPECT_NEAR(sp.values[0], kInvSqrt2, 1e-12);
    EXPECT_NEAR(sp.values[1], kInvSqrt2, 1e-12);
    EXPECT_EQ(sp.discarded_weight, 0.0);
}

TEST(Amplitude, MatchesDenseOracle) {
    auto p = random_circuit_state(8, 6, 11);
    for (uint64_t idx = 0; idx < 256; idx += 7) {
        const std::string b = bits_of(idx, 8);
        EXPECT_NEAR(std::abs(amplitude(p.mps, b) - p.dense.amplitude(b)), 0.0, 1e-10) << b;
    }
}

TEST(Amplitude, StatevectorEntriesAreBitIdentical) {
    for (int n = 1; n <= 10; ++n) {
        auto p = random_circuit_state(n, 4, 100 + static_cast<uint64_t>(n));
        const ComplexVector v = to_statevector(p.mps);
        for (uint64_t idx = 0; idx < (uint64_t{1} << n); ++idx) {
            ASSERT_EQ(v(static_cast<Eigen::Index>(idx)), amplitude(p.mps, bits_of(idx, n))) << n << " " << idx;
        }
    }
}

TEST(Statevector, NormConsistency) {
    auto p = random_circuit_state(6, 5, 3, 4);
    EXPECT_NEAR(to_statevector(p.mps).squaredNorm(), norm_squared(p.mps), 1e-10);
}

TEST(Statevector, RefusesLargeRegisters) {
    EXPECT_THROW(to_statevector(plus_state(kMaxDenseExportQubits + 1, 1)), std::invalid_argument);
}

TEST(Norm, ProductAndUnitary) {
    EXPECT_NEAR(norm_squared(plus_state(7, 1)), 1.0, 1e-14);
    MpsState st = basis_state(5, "01101", 4);
    std::mt19937_64 rng(5);
    apply_two_qubit_adjacent(st, 2, gates::random_two_qubit(rng));
    EXPECT_NEAR(norm_squared(st), 1.0, 1e-10);
}

TEST(Entropy, ProductStateIsZero) {
    const MpsState st = plus_state(6, 1);
    for (int cut = 1; cut < 6; ++cut) {
        EXPECT_EQ(entanglement_entropy(st, cut), 0.0);
    }
}

TEST(Entropy, MatchesOracleAndBounds) {
    auto p = random_circuit_state(10, 8, 21);
    for (int cut = 1; cut < 10; ++cut) {
        const double s = entanglement_entropy(p.mps, cut);
        EXPECT_NEAR(s, dense_entropy(p.dense, cut), 1e-8) << cut;
        const int chi_cut = p.mps.bond_dimension(cut);
        EXPECT_GE(s, 0.0);
        EXPECT_LE(s, std::log2(std::min({std::pow(2.0, cut), std::pow(2.0, 10 - cut), double(chi_cut)})) + 1e-12);
    }
}

TEST(Entropy, InvalidCut) {
    const MpsState st = plus_state(4, 1);
    EXPECT_THROW(entanglement_entropy(st, 0), std::out_of_range);
    EXPECT_THROW(entanglement_entropy(st, 4), std::out_of_range);
    EXPECT_THROW(schmidt_spectrum(st, 4), std::out_of_range);
}

TEST(SchmidtSpectrum, ProductState) {
    const SchmidtSpectrum sp = schmidt_spectrum(basis_state(3, "010", 1), 2);
    ASSERT_EQ(sp.values.size(), 1u);
    EXPECT_EQ(sp.values[0], 1.0);
    EXPECT_EQ(sp.discarded_weight, 0.0);
}

TEST(SchmidtSpectrum, MatchesOracleUntruncated) {
    auto p = random_circuit_state(9, 7, 4);
    for (int cut = 1; cut < 9; ++cut) {
        const auto mps = schmidt_spectrum(p.mps, cut).values;
        const auto dense = dense_schmidt(p.dense, cut);
        for (size_t a = 0; a < dense.size(); ++a) {
            const double v = a < mps.size() ? mps[a] : 0.0;
            EXPECT_NEAR(v, dense[a], 1e-10);
        }
    }
}

TEST(SchmidtSpectrum, TruncatedStateIsCapped) {
    auto p = random_circuit_state(8, 8, 9, 3);
    bool any_discarded = false;
    for (int cut = 1; cut < 8; ++cut) {
        const SchmidtSpectrum sp = schmidt_spectrum(p.mps, cut);
        EXPECT_LE(sp.values.size(), 3u);
        EXPECT_GE(sp.discarded_weight, 0.0);
        any_discarded = any_discarded || sp.discarded_weight > 0.0;
        EXPECT_TRUE(std::is_sorted(sp.values.rbegin(), sp.values.rend()));
        EXPECT_LE(schmidt_weight(p.mps, cut), 1.0 + 1e-10);
    }
    EXPECT_TRUE(any_discarded);
}

TEST(MostProbable, FindsDenseArgmax) {
    for (uint64_t seed = 0; seed < 5; ++seed) {
        auto p = random_circuit_state(9, 3, 40 + seed);
        Eigen::Index best = 0;
        p.dense.amplitudes().cwiseAbs2().maxCoeff(&best);
        const MostProbable mp = most_probable_bitstring(p.mps);
        EXPECT_TRUE(mp.exact);
        EXPECT_EQ(mp.bits, bits_of(static_cast<uint64_t>(best), 9));
        EXPECT_NEAR(mp.probability, std::norm(p.dense.amplitudes()(best)), 1e-10);
    }
}

TEST(MostProbable, BasisState) {
    const MostProbable mp = most_probable_bitstring(basis_state(30, std::string(15, '1') + std::string(15, '0'), 1));
    EXPECT_EQ(mp.bits, std::string(15, '1') + std::string(15, '0'));
    EXPECT_NEAR(mp.probability, 1.0, 1e-14);
}

}  // namespace
}  // namespace mpsim
