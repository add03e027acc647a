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

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace mpsim {

namespace {

using RowVector = Eigen::Matrix<cplx, 1, Eigen::Dynamic>;

// Shared by amplitude() and to_statevector() so that both produce bit-identical values.
void advance_row(const MpsState &state, RowVector &row, int site, int bit) {
    RowVector next = row * state.site(site)[bit];
    next.array() *= state.lambda(site).transpose().array().cast<cplx>();
    row = std::move(next);
}

RowVector unit_row() {
    RowVector r(1);
    r(0) = 1.0;
    return r;
}

Matrix weighted_slice(const MpsState &state, int site, int bit) {
    return state.site(site)[bit] * state.lambda(site).cast<cplx>().asDiagonal();
}

}  // namespace

MpsState::MpsState(int num_qubits, int chi_cap, double lambda_floor)
    : chi_cap_(chi_cap), lambda_floor_(lambda_floor) {
    if (num_qubits < 1) {
        throw std::invalid_argument("MpsState: need at least one qubit");
    }
    if (chi_cap < 1) {
        throw std::invalid_argument("MpsState: chi_cap must be >= 1");
    }
    if (!(lambda_floor > 0.0)) {
        throw std::invalid_argument("MpsState: lambda_floor must be positive");
    }
    SiteTensor zero_site{Matrix::Ones(1, 1), Matrix::Zero(1, 1)};
    sites_.assign(static_cast<size_t>(num_qubits), zero_site);
    lambdas_.assign(static_cast<size_t>(num_qubits) + 1, RealVector::Ones(1));
    discarded_.assign(static_cast<size_t>(num_qubits) + 1, 0.0);
}

void MpsState::set_chi_cap(int chi_cap) {
    if (chi_cap < 1) {
        throw std::invalid_argument("MpsState: chi_cap must be >= 1");
    }
    chi_cap_ = chi_cap;
}

void MpsState::check_site(int site) const {
    if (site < 1 || site > num_qubits()) {
        throw std::out_of_range("site " + std::to_string(site) + " outside [1, " + std::to_string(num_qubits()) + "]");
    }
}

const SiteTensor &MpsState::site(int site) const {
    check_site(site);
    return sites_[static_cast<size_t>(site) - 1];
}

const RealVector &MpsState::lambda(int cut) const {
    if (cut < 0 || cut > num_qubits()) {
        throw std::out_of_range("cut " + std::to_string(cut) + " outside [0, " + std::to_string(num_qubits()) + "]");
    }
    return lambdas_[static_cast<size_t>(cut)];
}

int MpsState::max_bond_dimension() const {
    int result = 1;
    for (const auto &l : lambdas_) {
        result = std::max(result, static_cast<int>(l.size()));
    }
    return result;
}

double MpsState::discarded_weight(int cut) const {
    lambda(cut);
    return discarded_[static_cast<size_t>(cut)];
}

double MpsState::total_discarded_weight() const {
    double total = 0.0;
    for (double d : discarded_) {
        total += d;
    }
    return total;
}

void MpsState::set_site(int site, SiteTensor tensor) {
    check_site(site);
    const auto rows = lambda(site - 1).size();
    const auto cols = lambda(site).size();
    for (const auto &slice : tensor) {
        if (slice.rows() != rows || slice.cols() != cols) {
            throw std::invalid_argument("set_site: tensor shape does not match neighbouring bonds");
        }
    }
    sites_[static_cast<size_t>(site) - 1] = std::move(tensor);
}

void MpsState::set_bond(int cut, SiteTensor left, RealVector lambda_new, SiteTensor right, double discarded) {
    if (cut < 1 || cut >= num_qubits()) {
        throw std::out_of_range("set_bond: cut " + std::to_string(cut) + " is not an internal bond");
    }
    const auto dim = lambda_new.size();
    if (dim < 1 || dim > chi_cap_) {
        throw std::invalid_argument("set_bond: bond dimension outside [1, chi_cap]");
    }
    const auto left_rows = lambda(cut - 1).size();
    const auto right_cols = lambda(cut + 1).size();
    for (int b = 0; b < 2; ++b) {
        if (left[b].rows() != left_rows || left[b].cols() != dim || right[b].rows() != dim ||
            right[b].cols() != right_cols) {
            throw std::invalid_argument("set_bond: tensor shapes inconsistent with bond dimension");
        }
    }
    if (discarded < 0.0) {
        throw std::invalid_argument("set_bond: negative discarded weight");
    }
    sites_[static_cast<size_t>(cut) - 1] = std::move(left);
    sites_[static_cast<size_t>(cut)] = std::move(right);
    lambdas_[static_cast<size_t>(cut)] = std::move(lambda_new);
    discarded_[static_cast<size_t>(cut)] += discarded;
}

void check_bitstring(std::string_view bits, int n) {
    if (static_cast<int>(bits.size()) != n) {
        throw std::invalid_argument(
            "bitstring length " + std::to_string(bits.size()) + " does not match " + std::to_string(n) + " qubits");
    }
    for (char c : bits) {
        if (c != '0' && c != '1') {
            throw std::invalid_argument("bitstring may only contain '0' and '1'");
        }
    }
}

MpsState basis_state(int n, std::string_view bits, int chi_cap, double lambda_floor) {
    MpsState state(n, chi_cap, lambda_floor);
    check_bitstring(bits, n);
    for (int site = 1; site <= n; ++site) {
        SiteTensor t{Matrix::Zero(1, 1), Matrix::Zero(1, 1)};
        t[bits[static_cast<size_t>(site) - 1] - '0'](0, 0) = 1.0;
        state.set_site(site, std::move(t));
    }
    return state;
}

MpsState plus_state(int n, int chi_cap, double lambda_floor) {
    MpsState state(n, chi_cap, lambda_floor);
    const double h = 1.0 / std::sqrt(2.0);
    for (int site = 1; site <= n; ++site) {
        state.set_site(site, SiteTensor{Matrix::Constant(1, 1, h), Matrix::Constant(1, 1, h)});
    }
    return state;
}

cplx amplitude(const MpsState &state, std::string_view bits) {
    check_bitstring(bits, state.num_qubits());
    RowVector row = unit_row();
    for (int site = 1; site <= state.num_qubits(); ++site) {
        advance_row(state, row, site, bits[static_cast<size_t>(site) - 1] - '0');
    }
    return row(0);
}

double norm_squared(const MpsState &state) {
    Matrix env = Matrix::Ones(1, 1);
    for (int site = 1; site <= state.num_qubits(); ++site) {
        Matrix next = Matrix::Zero(state.bond_dimension(site), state.bond_dimension(site));
        for (int b = 0; b < 2; ++b) {
            Matrix a = weighted_slice(state, site, b);
            next.noalias() += a.adjoint() * env * a;
        }
        env = std::move(next);
    }
    return env(0, 0).real();
}

double schmidt_weight(const MpsState &state, int cut) {
    if (cut < 1 || cut >= state.num_qubits()) {
        throw std::out_of_range("cut must lie in [1, n-1]");
    }
    return state.lambda(cut).squaredNorm();
}

double entanglement_entropy(const MpsState &state, int cut) {
    const double total = schmidt_weight(state, cut);
    if (total <= 0.0) {
        return 0.0;
    }
    double entropy = 0.0;
    for (double l : state.lambda(cut)) {
        const double p = l * l / total;
        if (p > 0.0) {
            entropy -= p * std::log2(p);
        }
    }
    return std::max(entropy, 0.0);
}

SchmidtSpectrum schmidt_spectrum(const MpsState &state, int cut) {
    if (cut < 1 || cut >= state.num_qubits()) {
        throw std::out_of_range("cut must lie in [1, n-1]");
    }
    const RealVector &l = state.lambda(cut);
    return SchmidtSpectrum{cut, std::vector<double>(l.begin(), l.end()), state.discarded_weight(cut)};
}

ComplexVector to_statevector(const MpsState &state) {
    const int n = state.num_qubits();
    if (n > kMaxDenseExportQubits) {
        throw std::invalid_argument("to_statevector: refusing to expand more than " +
                                    std::to_string(kMaxDenseExportQubits) + " qubits");
    }
    ComplexVector out(Eigen::Index{1} << n);
    std::vector<RowVector> rows(static_cast<size_t>(n) + 1);
    rows[0] = unit_row();
    // Depth-first over prefixes; rows[d] holds the contraction of the first d sites.
    auto visit = [&](auto &&self, int depth, Eigen::Index prefix) -> void {
        if (depth == n) {
            out(prefix) = rows[static_cast<size_t>(n)](0);
            return;
        }
        for (int b = 0; b < 2; ++b) {
            rows[static_cast<size_t>(depth) + 1] = rows[static_cast<size_t>(depth)];
            advance_row(state, rows[static_cast<size_t>(depth) + 1], depth + 1, b);
            self(self, depth + 1, (prefix << 1) | b);
        }
    };
    visit(visit, 0, 0);
    return out;
}

MostProbable most_probable_bitstring(const MpsState &state, int64_t node_budget) {
    const int n = state.num_qubits();
    // right[a] contracts sites a..n of <psi|psi>; right[n+1] is the trivial boundary.
    std::vector<Matrix> right(static_cast<size_t>(n) + 2);
    right[static_cast<size_t>(n) + 1] = Matrix::Ones(1, 1);
    for (int site = n; site >= 1; --site) {
        Matrix env = Matrix::Zero(state.bond_dimension(site - 1), state.bond_dimension(site - 1));
        for (int b = 0; b < 2; ++b) {
            Matrix a = weighted_slice(state, site, b);
            env.noalias() += a.conjugate() * right[static_cast<size_t>(site) + 1] * a.transpose();
        }
        right[static_cast<size_t>(site)] = std::move(env);
    }
    const double norm2 = right[1](0, 0).real();

    MostProbable best;
    best.bits.assign(static_cast<size_t>(n), '0');
    best.raw_probability = -1.0;
    std::string prefix(static_cast<size_t>(n), '0');
    int64_t expanded = 0;
    bool exhausted = false;

    auto marginal = [&](const RowVector &row, int depth) {
        return (row.conjugate() * right[static_cast<size_t>(depth) + 1] * row.transpose())(0, 0).real();
    };
    auto search = [&](auto &&self, const RowVector &row, int depth) -> void {
        if (depth == n) {
            const double p = std::norm(row(0));
            if (p > best.raw_probability) {
                best.raw_probability = p;
                best.bits = prefix;
            }
            return;
        }
        if (++expanded > node_budget) {
            exhausted = true;
            return;
        }
        std::array<RowVector, 2> child{row, row};
        std::array<double, 2> weight{};
        for (int b = 0; b < 2; ++b) {
            advance_row(state, child[b], depth + 1, b);
            weight[b] = marginal(child[b], depth + 1);
        }
        const int first = weight[1] > weight[0] ? 1 : 0;
        for (int b : {first, 1 - first}) {
            if (weight[b] <= best.raw_probability) {
                continue;
            }
            prefix[static_cast<size_t>(depth)] = static_cast<char>('0' + b);
            self(self, child[b], depth + 1);
            if (exhausted && best.raw_probability >= 0.0) {
                return;
            }
        }
    };
    search(search, unit_row(), 0);
    best.raw_probability = std::max(best.raw_probability, 0.0);
    best.probability = norm2 > 0.0 ? best.raw_probability / norm2 : 0.0;
    best.exact = !exhausted;
    return best;
}

}  // namespace mpsim
