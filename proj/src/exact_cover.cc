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

#include "mpsim/exact_cover.h"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

namespace mpsim {

Clause::Clause(int a, int b, int c) : q_{a, b, c} {
    std::sort(q_.begin(), q_.end());
    if (q_[0] == q_[1] || q_[1] == q_[2]) {
        throw std::invalid_argument("clause members must be distinct");
    }
}

namespace {

void check_solution_shape(const std::string &bits, int n) {
    if (static_cast<int>(bits.size()) != n ||
        bits.find_first_not_of("01") != std::string::npos) {
        throw std::invalid_argument("known solution must be a bitstring of length n");
    }
}

}  // namespace

ExactCoverInstance::ExactCoverInstance(int n, std::vector<Clause> clauses, std::optional<std::string> known_solution)
    : n_(n), clauses_(std::move(clauses)), known_solution_(std::move(known_solution)) {
    if (n < 1) {
        throw std::invalid_argument("instance needs at least one qubit");
    }
    for (const auto &c : clauses_) {
        if (c.i() < 1 || c.k() > n) {
            throw std::out_of_range("clause index outside [1, n]");
        }
    }
    if (known_solution_) {
        check_solution_shape(*known_solution_, n);
    }
}

void ExactCoverInstance::set_known_solution(std::string bits) {
    check_solution_shape(bits, n_);
    known_solution_ = std::move(bits);
}

int classical_energy(const ExactCoverInstance &instance, std::string_view bits) {
    if (static_cast<int>(bits.size()) != instance.num_qubits()) {
        throw std::invalid_argument("classical_energy: bitstring length mismatch");
    }
    int energy = 0;
    for (const auto &c : instance.clauses()) {
        int ones = -1;
        for (int q : c.members()) {
            ones += bits[static_cast<size_t>(q) - 1] == '1' ? 1 : 0;
        }
        energy += ones * ones;
    }
    return energy;
}

int degree(const ExactCoverInstance &instance, int qubit) {
    if (qubit < 1 || qubit > instance.num_qubits()) {
        throw std::out_of_range("degree: qubit out of range");
    }
    return static_cast<int>(std::count_if(
        instance.clauses().begin(), instance.clauses().end(), [&](const Clause &c) { return c.contains(qubit); }));
}

std::vector<int> degrees(const ExactCoverInstance &instance) {
    std::vector<int> d(static_cast<size_t>(instance.num_qubits()), 0);
    for (const auto &c : instance.clauses()) {
        for (int q : c.members()) {
            ++d[static_cast<size_t>(q) - 1];
        }
    }
    return d;
}

namespace {

// Backtracking over the variables of one connected component. Each clause keeps
// (ones assigned, members unassigned); a partial assignment dies as soon as a
// clause has two ones or is complete with none.
class ComponentSolver {
   public:
    ComponentSolver(const std::vector<Clause> &clauses, std::vector<int> vars, int n)
        : clauses_(clauses), vars_(std::move(vars)), touching_(static_cast<size_t>(n) + 1) {
        for (size_t c = 0; c < clauses_.size(); ++c) {
            for (int q : clauses_[c].members()) {
                touching_[static_cast<size_t>(q)].push_back(static_cast<int>(c));
            }
        }
        ones_.assign(clauses_.size(), 0);
        open_.assign(clauses_.size(), 3);
    }

    template <typename Leaf>
    void enumerate(Leaf &&leaf) {
        descend(0, 0, leaf);
    }

   private:
    template <typename Leaf>
    bool descend(size_t depth, uint64_t mask, Leaf &leaf) {
        if (depth == vars_.size()) {
            return leaf(mask);
        }
        const int q = vars_[depth];
        for (int bit = 0; bit < 2; ++bit) {
            bool ok = true;
            for (int c : touching_[static_cast<size_t>(q)]) {
                ones_[static_cast<size_t>(c)] += bit;
                --open_[static_cast<size_t>(c)];
                const int ones = ones_[static_cast<size_t>(c)];
                if (ones > 1 || (open_[static_cast<size_t>(c)] == 0 && ones != 1)) {
                    ok = false;
                }
            }
            bool keep_going = true;
            if (ok) {
                const uint64_t next = bit ? (mask | (uint64_t{1} << (q - 1))) : mask;
                keep_going = descend(depth + 1, next, leaf);
            }
            for (int c : touching_[static_cast<size_t>(q)]) {
                ones_[static_cast<size_t>(c)] -= bit;
                ++open_[static_cast<size_t>(c)];
            }
            if (!keep_going) {
                return false;
            }
        }
        return true;
    }

    const std::vector<Clause> &clauses_;
    std::vector<int> vars_;
    std::vector<std::vector<int>> touching_;
    std::vector<int> ones_;
    std::vector<int> open_;
};

// Connected components of the clause hypergraph, each listed in BFS order so that
// backtracking meets constrained variables early. Variables in no clause are omitted.
std::vector<std::vector<int>> components(const ExactCoverInstance &instance) {
    const int n = instance.num_qubits();
    std::vector<std::vector<int>> neighbours(static_cast<size_t>(n) + 1);
    for (const auto &c : instance.clauses()) {
        for (int a : c.members()) {
            for (int b : c.members()) {
                if (a != b) {
                    neighbours[static_cast<size_t>(a)].push_back(b);
                }
            }
        }
    }
    std::vector<char> seen(static_cast<size_t>(n) + 1, 0);
    std::vector<std::vector<int>> out;
    for (int start = 1; start <= n; ++start) {
        if (seen[static_cast<size_t>(start)] || neighbours[static_cast<size_t>(start)].empty()) {
            continue;
        }
        std::vector<int> order{start};
        seen[static_cast<size_t>(start)] = 1;
        for (size_t head = 0; head < order.size(); ++head) {
            for (int nb : neighbours[static_cast<size_t>(order[head])]) {
                if (!seen[static_cast<size_t>(nb)]) {
                    seen[static_cast<size_t>(nb)] = 1;
                    order.push_back(nb);
                }
            }
        }
        out.push_back(std::move(order));
    }
    return out;
}

void check_exhaustive(const ExactCoverInstance &instance) {
    if (instance.num_qubits() > kMaxExhaustiveQubits) {
        throw std::invalid_argument("exhaustive counting is limited to n <= " + std::to_string(kMaxExhaustiveQubits));
    }
}

std::string mask_to_bits(uint64_t mask, int n) {
    std::string bits(static_cast<size_t>(n), '0');
    for (int q = 1; q <= n; ++q) {
        if (mask >> (q - 1) & 1) {
            bits[static_cast<size_t>(q) - 1] = '1';
        }
    }
    return bits;
}

bool satisfies(const Clause &c, uint64_t mask) {
    int ones = 0;
    for (int q : c.members()) {
        ones += static_cast<int>(mask >> (q - 1) & 1);
    }
    return ones == 1;
}

}  // namespace

uint64_t count_solutions(const ExactCoverInstance &instance) {
    check_exhaustive(instance);
    const auto comps = components(instance);
    int constrained = 0;
    uint64_t total = 1;
    for (const auto &vars : comps) {
        constrained += static_cast<int>(vars.size());
        uint64_t count = 0;
        ComponentSolver solver(instance.clauses(), vars, instance.num_qubits());
        solver.enumerate([&](uint64_t) {
            ++count;
            return true;
        });
        if (count == 0) {
            return 0;
        }
        total *= count;
    }
    return total << (instance.num_qubits() - constrained);
}

std::vector<std::string> find_solutions(const ExactCoverInstance &instance, size_t limit) {
    check_exhaustive(instance);
    std::vector<int> order(static_cast<size_t>(instance.num_qubits()));
    std::iota(order.begin(), order.end(), 1);
    ComponentSolver solver(instance.clauses(), order, instance.num_qubits());
    std::vector<std::string> out;
    if (limit == 0) {
        return out;
    }
    solver.enumerate([&](uint64_t mask) {
        out.push_back(mask_to_bits(mask, instance.num_qubits()));
        return out.size() < limit;
    });
    return out;
}

namespace {

// Explicit survivor lists are kept once the count drops below this.
constexpr uint64_t kExplicitSetThreshold = uint64_t{1} << 16;
constexpr int kMaxRestarts = 16;

std::vector<uint64_t> enumerate_masks(const ExactCoverInstance &instance) {
    std::vector<int> order(static_cast<size_t>(instance.num_qubits()));
    std::iota(order.begin(), order.end(), 1);
    ComponentSolver solver(instance.clauses(), order, instance.num_qubits());
    std::vector<uint64_t> out;
    solver.enumerate([&](uint64_t mask) {
        out.push_back(mask);
        return true;
    });
    return out;
}

Clause random_clause(int n, std::mt19937_64 &rng) {
    std::uniform_int_distribution<int> pick(1, n);
    int a = pick(rng);
    int b = pick(rng);
    while (b == a) {
        b = pick(rng);
    }
    int c = pick(rng);
    while (c == a || c == b) {
        c = pick(rng);
    }
    return Clause(a, b, c);
}

}  // namespace

ExactCoverInstance generate_hard_instance(int n, uint64_t seed, GenerationTrace *trace) {
    if (n < kMinGeneratorQubits || n > kMaxExhaustiveQubits) {
        throw std::invalid_argument("generate_hard_instance: n must lie in [" + std::to_string(kMinGeneratorQubits) +
                                    ", " + std::to_string(kMaxExhaustiveQubits) + "]");
    }
    const int64_t triples = static_cast<int64_t>(n) * (n - 1) * (n - 2) / 6;
    const int64_t rejection_bound = std::max<int64_t>(2000, 20 * triples);
    GenerationTrace local;
    for (int attempt = 0; attempt <= kMaxRestarts; ++attempt) {
        std::seed_seq seq{static_cast<uint32_t>(seed), static_cast<uint32_t>(seed >> 32), static_cast<uint32_t>(attempt)};
        std::mt19937_64 rng(seq);
        std::vector<Clause> clauses;
        std::set<Clause> used;
        uint64_t current = uint64_t{1} << n;
        std::optional<std::vector<uint64_t>> survivors;
        local.solution_counts.assign(1, current);
        int64_t consecutive_rejections = 0;
        while (current > 1 && consecutive_rejections < rejection_bound) {
            const Clause candidate = random_clause(n, rng);
            uint64_t next = 0;
            if (!used.contains(candidate)) {
                if (survivors) {
                    next = static_cast<uint64_t>(std::count_if(survivors->begin(), survivors->end(),
                                                               [&](uint64_t m) { return satisfies(candidate, m); }));
                } else {
                    std::vector<Clause> trial = clauses;
                    trial.push_back(candidate);
                    next = count_solutions(ExactCoverInstance(n, std::move(trial)));
                }
            }
            if (next == 0 || next >= current) {
                ++consecutive_rejections;
                ++local.rejected;
                continue;
            }
            consecutive_rejections = 0;
            clauses.push_back(candidate);
            used.insert(candidate);
            current = next;
            local.solution_counts.push_back(current);
            if (survivors) {
                std::erase_if(*survivors, [&](uint64_t m) { return !satisfies(candidate, m); });
            } else if (current <= kExplicitSetThreshold) {
                survivors = enumerate_masks(ExactCoverInstance(n, clauses));
            }
        }
        if (current == 1 && survivors && survivors->size() == 1) {
            if (trace != nullptr) {
                *trace = local;
            }
            return ExactCoverInstance(n, std::move(clauses), mask_to_bits(survivors->front(), n));
        }
        ++local.restarts;
    }
    throw std::runtime_error("generate_hard_instance: no unique-solution instance after " +
                             std::to_string(kMaxRestarts) + " restarts (n=" + std::to_string(n) +
                             ", seed=" + std::to_string(seed) + ")");
}

ExactCoverInstance random_instance(int n, int m, uint64_t seed) {
    if (n < 3) {
        throw std::invalid_argument("random_instance: need n >= 3");
    }
    const int64_t triples = static_cast<int64_t>(n) * (n - 1) * (n - 2) / 6;
    if (m < 0 || m > triples) {
        throw std::invalid_argument("random_instance: m outside [0, C(n,3)]");
    }
    std::mt19937_64 rng(seed);
    std::set<Clause> used;
    std::vector<Clause> clauses;
    while (static_cast<int>(clauses.size()) < m) {
        Clause c = random_clause(n, rng);
        if (used.insert(c).second) {
            clauses.push_back(c);
        }
    }
    return ExactCoverInstance(n, std::move(clauses));
}

namespace {

std::vector<std::string> split_lines(std::string_view text) {
    std::vector<std::string> lines;
    size_t start = 0;
    while (start < text.size()) {
        size_t end = text.find('\n', start);
        if (end == std::string_view::npos) {
            end = text.size();
        }
        std::string line(text.substr(start, end - start));
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        lines.push_back(std::move(line));
        start = end + 1;
    }
    return lines;
}

std::vector<long long> parse_ints(const std::string &line, size_t expected, const char *what) {
    std::istringstream in(line);
    std::vector<long long> values;
    long long v;
    while (in >> v) {
        values.push_back(v);
    }
    in.clear();
    std::string rest;
    if (in >> rest || values.size() != expected) {
        throw std::invalid_argument(std::string("malformed ") + what + " line: '" + line + "'");
    }
    return values;
}

}  // namespace

ExactCoverInstance parse_instance(std::string_view text) {
    const auto lines = split_lines(text);
    if (lines.empty()) {
        throw std::invalid_argument("empty instance text");
    }
    const auto header = parse_ints(lines[0], 2, "header");
    const long long n = header[0];
    const long long m = header[1];
    if (n < 1 || m < 0) {
        throw std::invalid_argument("header must give n >= 1 and m >= 0");
    }
    if (static_cast<long long>(lines.size()) < 1 + m) {
        throw std::invalid_argument("instance declares " + std::to_string(m) + " clauses but has fewer lines");
    }
    std::vector<Clause> clauses;
    clauses.reserve(static_cast<size_t>(m));
    for (long long c = 0; c < m; ++c) {
        const auto v = parse_ints(lines[static_cast<size_t>(c) + 1], 3, "clause");
        for (long long q : v) {
            if (q < 1 || q > n) {
                throw std::out_of_range("clause " + std::to_string(c + 1) + ": index " + std::to_string(q) +
                                        " outside [1, " + std::to_string(n) + "]");
            }
        }
        if (v[0] == v[1] || v[0] == v[2] || v[1] == v[2]) {
            throw std::invalid_argument("clause " + std::to_string(c + 1) + ": indices must be distinct");
        }
        clauses.emplace_back(static_cast<int>(v[0]), static_cast<int>(v[1]), static_cast<int>(v[2]));
    }
    std::optional<std::string> solution;
    for (size_t l = static_cast<size_t>(m) + 1; l < lines.size(); ++l) {
        const std::string &line = lines[l];
        if (line.find_first_not_of(" \t") == std::string::npos) {
            continue;
        }
        if (line[0] != '#') {
            throw std::invalid_argument("unexpected content after clauses: '" + line + "'");
        }
        std::istringstream in(line.substr(1));
        std::string key, value;
        if (in >> key >> value && key == "solution") {
            solution = value;
        }
    }
    return ExactCoverInstance(static_cast<int>(n), std::move(clauses), std::move(solution));
}

std::string serialize_instance(const ExactCoverInstance &instance) {
    std::ostringstream out;
    out << instance.num_qubits() << ' ' << instance.num_clauses() << '\n';
    for (const auto &c : instance.clauses()) {
        out << c.i() << ' ' << c.j() << ' ' << c.k() << '\n';
    }
    if (instance.known_solution()) {
        out << "# solution " << *instance.known_solution() << '\n';
    }
    return out.str();
}

}  // namespace mpsim
