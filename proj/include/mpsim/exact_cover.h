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

#ifndef MPSIM_EXACT_COVER_H
#define MPSIM_EXACT_COVER_H

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace mpsim {

/// Three distinct 1-based qubit indices, stored sorted i < j < k. Satisfied iff
/// exactly one of the three bits is 1 (patterns 001, 010, 100).
class Clause {
   public:
    Clause(int a, int b, int c);

    int i() const {
        return q_[0];
    }
    int j() const {
        return q_[1];
    }
    int k() const {
        return q_[2];
    }
    const std::array<int, 3> &members() const {
        return q_;
    }
    bool contains(int qubit) const {
        return q_[0] == qubit || q_[1] == qubit || q_[2] == qubit;
    }
    int span() const {
        return q_[2] - q_[0];
    }

    friend bool operator==(const Clause &, const Clause &) = default;
    friend auto operator<=>(const Clause &, const Clause &) = default;

   private:
    std::array<int, 3> q_;
};

class ExactCoverInstance {
   public:
    ExactCoverInstance(int n, std::vector<Clause> clauses, std::optional<std::string> known_solution = std::nullopt);

    int num_qubits() const {
        return n_;
    }
    int num_clauses() const {
        return static_cast<int>(clauses_.size());
    }
    const std::vector<Clause> &clauses() const {
        return clauses_;
    }
    const std::optional<std::string> &known_solution() const {
        return known_solution_;
    }
    void set_known_solution(std::string bits);

    friend bool operator==(const ExactCoverInstance &, const ExactCoverInstance &) = default;

   private:
    int n_;
    std::vector<Clause> clauses_;
    std::optional<std::string> known_solution_;
};

/// Largest n for which solutions are counted exhaustively.
inline constexpr int kMaxExhaustiveQubits = 32;
inline constexpr int kMinGeneratorQubits = 6;

/// Σ_clauses (b_i + b_j + b_k - 1)^2.
int classical_energy(const ExactCoverInstance &instance, std::string_view bits);

/// Exact number of satisfying assignments (component-wise backtracking).
uint64_t count_solutions(const ExactCoverInstance &instance);

/// Up to `limit` satisfying assignments as bitstrings, in lexicographic order.
std::vector<std::string> find_solutions(const ExactCoverInstance &instance, size_t limit);

/// Number of clauses containing `qubit`.
int degree(const ExactCoverInstance &instance, int qubit);
std::vector<int> degrees(const ExactCoverInstance &instance);

struct GenerationTrace {
    std::vector<uint64_t> solution_counts;  // starts at 2^n, strictly decreasing, ends at 1
    int restarts = 0;
    int64_t rejected = 0;
};

/// Adds uniformly random unused clauses, keeping one only if it strictly lowers the
/// solution count without reaching zero, until exactly one assignment survives.
/// Deterministic for fixed (n, seed).
ExactCoverInstance generate_hard_instance(int n, uint64_t seed, GenerationTrace *trace = nullptr);

/// m distinct uniformly random clauses, no uniqueness guarantee.
ExactCoverInstance random_instance(int n, int m, uint64_t seed);

/// Text format: "n m", then m lines "i j k", then optional '#' comment lines;
/// "# solution <bits>" records the known solution.
ExactCoverInstance parse_instance(std::string_view text);
std::string serialize_instance(const ExactCoverInstance &instance);

}  // namespace mpsim

#endif
