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

#ifndef MPSIM_MPS_STATE_H
#define MPSIM_MPS_STATE_H

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "mpsim/linalg.h"

namespace mpsim {

inline constexpr double kDefaultLambdaFloor = 1e-12;

/// Largest register that may be expanded into a dense amplitude vector.
inline constexpr int kMaxDenseExportQubits = 20;

/// Raised when a state loses (numerically) all of its norm.
class NumericalError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// The two physical slices Γ^0, Γ^1 of one site tensor, each (left bond) x (right bond).
using SiteTensor = std::array<Matrix, 2>;

struct SchmidtSpectrum {
    int cut = 0;
    std::vector<double> values;
    double discarded_weight = 0.0;
};

/// Open-boundary matrix product state in Vidal form.
///
/// Sites are numbered 1..n (site 1 is the leftmost character of a bitstring).
/// Cut a sits between sites a and a+1; cuts 0 and n are the trivial boundary
/// bonds and always carry the vector [1]. The amplitude of |i_1 ... i_n> is
///
///     Γ[1]^{i_1} λ[1] Γ[2]^{i_2} λ[2] ... λ[n-1] Γ[n]^{i_n}.
///
/// Gates mutate the state through set_site / set_bond, which check that bond
/// dimensions stay consistent and within chi_cap.
class MpsState {
   public:
    /// The basis state |0...0>.
    MpsState(int num_qubits, int chi_cap, double lambda_floor = kDefaultLambdaFloor);

    int num_qubits() const {
        return static_cast<int>(sites_.size());
    }
    int chi_cap() const {
        return chi_cap_;
    }
    double lambda_floor() const {
        return lambda_floor_;
    }

    /// Raises or lowers the cap applied by subsequent two-qubit updates.
    void set_chi_cap(int chi_cap);

    const SiteTensor &site(int site) const;
    const RealVector &lambda(int cut) const;
    int bond_dimension(int cut) const {
        return static_cast<int>(lambda(cut).size());
    }
    int max_bond_dimension() const;

    /// Discarded Schmidt weight accumulated at this cut over the state's lifetime.
    double discarded_weight(int cut) const;
    double total_discarded_weight() const;

    void set_site(int site, SiteTensor tensor);

    /// Replaces Γ[cut], λ[cut], Γ[cut+1] together and adds `discarded` to the cut's tally.
    void set_bond(int cut, SiteTensor left, RealVector lambda, SiteTensor right, double discarded);

   private:
    void check_site(int site) const;

    int chi_cap_;
    double lambda_floor_;
    std::vector<SiteTensor> sites_;
    std::vector<RealVector> lambdas_;  // n+1 entries; 0 and n are boundaries.
    std::vector<double> discarded_;    // n+1 entries, boundaries stay 0.
};

/// Throws std::invalid_argument unless bits has length n and contains only '0'/'1'.
void check_bitstring(std::string_view bits, int n);

MpsState basis_state(int n, std::string_view bits, int chi_cap, double lambda_floor = kDefaultLambdaFloor);

/// Uniform superposition |+>^n, the ground state of the transverse-field mixer.
MpsState plus_state(int n, int chi_cap, double lambda_floor = kDefaultLambdaFloor);

/// <bits|psi> by left-to-right contraction, O(n chi^2).
cplx amplitude(const MpsState &state, std::string_view bits);

/// <psi|psi> by full transfer-matrix contraction. Does not assume canonical form.
double norm_squared(const MpsState &state);

/// Σ_α λ_α^2 at the cut as stored (not normalized).
double schmidt_weight(const MpsState &state, int cut);

/// Von Neumann entropy in bits of the normalized stored spectrum at `cut`.
double entanglement_entropy(const MpsState &state, int cut);

SchmidtSpectrum schmidt_spectrum(const MpsState &state, int cut);

/// Dense amplitudes in lexicographic order (qubit 1 most significant). Entry b is
/// bit-identical to amplitude(state, b). Refuses n > kMaxDenseExportQubits.
ComplexVector to_statevector(const MpsState &state);

struct MostProbable {
    std::string bits;
    double probability = 0.0;      // normalized by norm_squared
    double raw_probability = 0.0;  // |<bits|psi>|^2
    bool exact = false;            // false if the search budget ran out
};

/// Branch-and-bound search for the bitstring of largest |amplitude|^2, pruning on
/// prefix marginals. Exact unless more than `node_budget` prefixes are expanded.
MostProbable most_probable_bitstring(const MpsState &state, int64_t node_budget = 1 << 20);

}  // namespace mpsim

#endif
