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

#include "mpsim/gate_engine.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace mpsim {

GateCounters &GateCounters::operator+=(const GateCounters &o) {
    one_qubit += o.one_qubit;
    two_qubit += o.two_qubit;
    swaps += o.swaps;
    fused_swaps += o.fused_swaps;
    return *this;
}

void apply_one_qubit(MpsState &state, int site, const OneQubitGate &gate) {
    if (site < 1 || site > state.num_qubits()) {
        throw std::out_of_range("apply_one_qubit: site " + std::to_string(site) + " out of range");
    }
    const SiteTensor &old = state.site(site);
    const auto &u = gate.matrix();
    SiteTensor updated{u(0, 0) * old[0] + u(0, 1) * old[1], u(1, 0) * old[0] + u(1, 1) * old[1]};
    state.set_site(site, std::move(updated));
}

namespace {

// Eigenvalues of the reduced density matrix below this fraction of the largest are
// numerical noise (their square roots would masquerade as Schmidt values ~1e-7).
constexpr double kDensityMatrixCutoff = 1e-14;

// Schmidt decomposition of theta from the reduced density matrix of its smaller side.
SvdResult schmidt_by_density_matrix(const Matrix &theta) {
    const bool right_side = theta.cols() <= theta.rows();
    const Matrix rho = right_side ? Matrix((theta.adjoint() * theta).conjugate()) : Matrix(theta * theta.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> eig(rho);
    if (eig.info() != Eigen::Success) {
        throw std::runtime_error("reduced density matrix diagonalization failed");
    }
    const RealVector &ev = eig.eigenvalues();  // ascending
    const Eigen::Index dim = ev.size();
    const double top = std::max(ev(dim - 1), 0.0);
    Eigen::Index rank = 0;
    while (rank < dim && ev(dim - 1 - rank) > kDensityMatrixCutoff * top && ev(dim - 1 - rank) > 0.0) {
        ++rank;
    }
    rank = std::max<Eigen::Index>(rank, 1);
    SvdResult out;
    out.s.resize(rank);
    Matrix vecs(dim, rank);
    for (Eigen::Index k = 0; k < rank; ++k) {
        out.s(k) = std::sqrt(std::max(ev(dim - 1 - k), 0.0));
        vecs.col(k) = eig.eigenvectors().col(dim - 1 - k);
    }
    RealVector inv = out.s.unaryExpr([](double v) { return v > 0.0 ? 1.0 / v : 0.0; });
    if (right_side) {
        // rho_R = conj(V S^2 V^dagger), so V = conj(eigenvectors) and U = theta V / S.
        const Matrix v = vecs.conjugate();
        out.vh = v.adjoint();
        out.u = theta * v * inv.cast<cplx>().asDiagonal();
    } else {
        out.u = vecs;
        out.vh = inv.cast<cplx>().asDiagonal() * vecs.adjoint() * theta;
    }
    return out;
}

void check_bond(const MpsState &state, int left_site, const char *what) {
    if (left_site < 1 || left_site >= state.num_qubits()) {
        throw std::out_of_range(std::string(what) + ": left site " + std::to_string(left_site) +
                                " must lie in [1, n-1]");
    }
}

enum class GateShape { general, diagonal, swap };

TruncationReport two_site_update(MpsState &state,
                                 int left,
                                 const Eigen::Matrix4cd &u,
                                 GateShape shape,
                                 const TruncationOptions &options) {
    const RealVector &lam_l = state.lambda(left - 1);
    const RealVector &lam_m = state.lambda(left);
    const RealVector &lam_r = state.lambda(left + 1);
    const SiteTensor &ga = state.site(left);
    const SiteTensor &gb = state.site(left + 1);
    const Eigen::Index dl = lam_l.size();
    const Eigen::Index dr = lam_r.size();

    // p[i][j] = λ_l Γa^i λ_m Γb^j λ_r, the amplitude block with physical indices (i, j).
    std::array<std::array<Matrix, 2>, 2> p;
    for (int i = 0; i < 2; ++i) {
        const Matrix b = lam_l.cast<cplx>().asDiagonal() * ga[i] * lam_m.cast<cplx>().asDiagonal();
        for (int j = 0; j < 2; ++j) {
            p[i][j].noalias() = b * gb[j];
            p[i][j] *= lam_r.cast<cplx>().asDiagonal();
        }
    }

    // theta rows (i', α), columns (j', γ).
    Matrix theta(2 * dl, 2 * dr);
    for (int io = 0; io < 2; ++io) {
        for (int jo = 0; jo < 2; ++jo) {
            auto block = theta.block(io * dl, jo * dr, dl, dr);
            switch (shape) {
                case GateShape::swap:
                    block = p[jo][io];
                    break;
                case GateShape::diagonal:
                    block = u(2 * io + jo, 2 * io + jo) * p[io][jo];
                    break;
                case GateShape::general:
                    block.setZero();
                    for (int i = 0; i < 2; ++i) {
                        for (int j = 0; j < 2; ++j) {
                            const cplx w = u(2 * io + jo, 2 * i + j);
                            if (w != cplx(0.0)) {
                                block += w * p[i][j];
                            }
                        }
                    }
                    break;
            }
        }
    }

    SvdResult svd = options.solver == SchmidtSolver::svd ? thin_svd(theta) : schmidt_by_density_matrix(theta);

    // Stable ordering by decreasing weight; ties keep solver order.
    const Eigen::Index total = svd.s.size();
    std::vector<Eigen::Index> order(static_cast<size_t>(total));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) { return svd.s(a) > svd.s(b); });

    if (total == 0 || !(svd.s(order[0]) > 0.0)) {
        throw NumericalError("two-site update: state has zero norm");
    }
    const double floor = state.lambda_floor();
    Eigen::Index above_floor = 0;
    for (Eigen::Index k = 0; k < total; ++k) {
        above_floor += svd.s(k) > floor ? 1 : 0;
    }
    const Eigen::Index keep = std::max<Eigen::Index>(1, std::min<Eigen::Index>(above_floor, state.chi_cap()));

    TruncationReport report;
    report.cut = left;
    report.pre_rank = static_cast<int>(above_floor);
    report.post_rank = static_cast<int>(keep);
    for (Eigen::Index k = keep; k < total; ++k) {
        const double s = svd.s(order[static_cast<size_t>(k)]);
        report.discarded_weight += s * s;
    }

    RealVector lam_new(keep);
    Matrix x(2 * dl, keep);
    Matrix yh(keep, 2 * dr);
    for (Eigen::Index k = 0; k < keep; ++k) {
        const Eigen::Index src = order[static_cast<size_t>(k)];
        lam_new(k) = svd.s(src);
        x.col(k) = svd.u.col(src);
        yh.row(k) = svd.vh.row(src);
    }
    if (options.renormalize && report.discarded_weight > 0.0) {
        lam_new /= lam_new.norm();
    }

    const RealVector inv_l = lam_l.cwiseInverse();
    const RealVector inv_r = lam_r.cwiseInverse();
    SiteTensor left_new;
    SiteTensor right_new;
    for (int b = 0; b < 2; ++b) {
        left_new[b] = inv_l.cast<cplx>().asDiagonal() * x.middleRows(b * dl, dl);
        right_new[b] = yh.middleCols(b * dr, dr) * inv_r.cast<cplx>().asDiagonal();
    }
    state.set_bond(left, std::move(left_new), std::move(lam_new), std::move(right_new), report.discarded_weight);
    return report;
}

}  // namespace

TruncationReport apply_two_qubit_adjacent(
    MpsState &state, int left_site, const TwoQubitGate &gate, const TruncationOptions &options) {
    check_bond(state, left_site, "apply_two_qubit_adjacent");
    return two_site_update(
        state, left_site, gate.matrix(), gate.is_diagonal() ? GateShape::diagonal : GateShape::general, options);
}

TruncationReport apply_swap(MpsState &state, int left_site, const TruncationOptions &options) {
    check_bond(state, left_site, "apply_swap");
    return two_site_update(state, left_site, Eigen::Matrix4cd::Zero(), GateShape::swap, options);
}

std::vector<TruncationReport> apply_two_qubit(MpsState &state,
                                              int site_i,
                                              int site_j,
                                              const TwoQubitGate &gate,
                                              const TruncationOptions &options,
                                              GateCounters *counters) {
    const int n = state.num_qubits();
    if (site_i < 1 || site_i > n || site_j < 1 || site_j > n) {
        throw std::out_of_range("apply_two_qubit: site out of range");
    }
    if (site_i == site_j) {
        throw std::invalid_argument("apply_two_qubit: sites must differ");
    }
    std::vector<TruncationReport> reports;
    GateCounters local;
    const int step = site_j > site_i ? 1 : -1;
    int pos = site_i;
    while (pos + step != site_j) {
        reports.push_back(apply_swap(state, std::min(pos, pos + step), options));
        ++local.swaps;
        pos += step;
    }
    if (step > 0) {
        reports.push_back(apply_two_qubit_adjacent(state, pos, gate, options));
    } else {
        reports.push_back(apply_two_qubit_adjacent(state, site_j, gate.reversed(), options));
    }
    ++local.two_qubit;
    while (pos != site_i) {
        reports.push_back(apply_swap(state, std::min(pos, pos - step), options));
        ++local.swaps;
        pos -= step;
    }
    if (counters != nullptr) {
        *counters += local;
    }
    return reports;
}

QubitLayout::QubitLayout(int n) {
    if (n < 1) {
        throw std::invalid_argument("QubitLayout: need n >= 1");
    }
    physical_of_.resize(static_cast<size_t>(n) + 1);
    std::iota(physical_of_.begin(), physical_of_.end(), 0);
    logical_at_ = physical_of_;
}

int QubitLayout::physical(int logical) const {
    if (logical < 1 || logical > num_qubits()) {
        throw std::out_of_range("QubitLayout: logical qubit out of range");
    }
    return physical_of_[static_cast<size_t>(logical)];
}

int QubitLayout::logical(int physical) const {
    if (physical < 1 || physical > num_qubits()) {
        throw std::out_of_range("QubitLayout: position out of range");
    }
    return logical_at_[static_cast<size_t>(physical)];
}

void QubitLayout::swap_physical(int p) {
    if (p < 1 || p >= num_qubits()) {
        throw std::out_of_range("QubitLayout: swap position out of range");
    }
    const int a = logical_at_[static_cast<size_t>(p)];
    const int b = logical_at_[static_cast<size_t>(p) + 1];
    std::swap(logical_at_[static_cast<size_t>(p)], logical_at_[static_cast<size_t>(p) + 1]);
    physical_of_[static_cast<size_t>(a)] = p + 1;
    physical_of_[static_cast<size_t>(b)] = p;
}

bool QubitLayout::is_identity() const {
    for (size_t q = 1; q < physical_of_.size(); ++q) {
        if (physical_of_[q] != static_cast<int>(q)) {
            return false;
        }
    }
    return true;
}

ClauseRouter::ClauseRouter(int n, TruncationOptions options, ReturnMode mode)
    : layout_(n), options_(options), mode_(mode) {
}

void ClauseRouter::swap_at(MpsState &state, int p, std::vector<TruncationReport> &reports) {
    reports.push_back(apply_swap(state, p, options_));
    layout_.swap_physical(p);
    ++counters_.swaps;
}

void ClauseRouter::pair_gate(MpsState &state,
                             int logical_a,
                             int logical_b,
                             const TwoQubitGate &gate,
                             bool then_swap,
                             std::vector<TruncationReport> &reports) {
    const int pa = layout_.physical(logical_a);
    const int pb = layout_.physical(logical_b);
    if (std::abs(pa - pb) != 1) {
        throw std::logic_error("ClauseRouter: pair gate on non-adjacent qubits");
    }
    const int p = std::min(pa, pb);
    TwoQubitGate oriented = pa < pb ? gate : gate.reversed();
    if (then_swap) {
        oriented = oriented.followed_by_swap();
    }
    reports.push_back(apply_two_qubit_adjacent(state, p, oriented, options_));
    ++counters_.two_qubit;
    if (then_swap) {
        layout_.swap_physical(p);
        ++counters_.fused_swaps;
    }
}

std::vector<TruncationReport> ClauseRouter::apply_clause(MpsState &state,
                                                         const Clause &clause,
                                                         const ClauseGates &gates,
                                                         const std::optional<Clause> &next) {
    const int n = layout_.num_qubits();
    if (state.num_qubits() != n) {
        throw std::invalid_argument("ClauseRouter: state size does not match layout");
    }
    if (clause.k() > n) {
        throw std::out_of_range("ClauseRouter: clause index outside register");
    }
    std::vector<TruncationReport> reports;
    const auto &q = clause.members();

    for (int m = 0; m < 3; ++m) {
        apply_one_qubit(state, layout_.physical(q[static_cast<size_t>(m)]), gates.one_qubit[static_cast<size_t>(m)]);
        ++counters_.one_qubit;
    }

    std::array<int, 3> by_position = q;
    std::sort(by_position.begin(), by_position.end(),
              [&](int a, int b) { return layout_.physical(a) < layout_.physical(b); });
    const int left = by_position[0];
    const int mid = by_position[1];
    const int right = by_position[2];
    while (layout_.physical(left) < layout_.physical(mid) - 1) {
        swap_at(state, layout_.physical(left), reports);
    }
    while (layout_.physical(right) > layout_.physical(mid) + 1) {
        swap_at(state, layout_.physical(right) - 1, reports);
    }

    // Pair gate index for logical members a < b: (i,j) -> 0, (i,k) -> 1, (j,k) -> 2.
    auto pair_index = [&](int a, int b) {
        if (a > b) {
            std::swap(a, b);
        }
        if (a == q[0]) {
            return b == q[1] ? 0 : 1;
        }
        return 2;
    };
    auto gate_for = [&](int a, int b) -> std::pair<int, int> {
        return a < b ? std::pair{a, b} : std::pair{b, a};
    };
    {
        auto [a, b] = gate_for(left, mid);
        pair_gate(state, a, b, gates.two_qubit[static_cast<size_t>(pair_index(a, b))], false, reports);
    }
    {
        // Fused with the SWAP that brings the outer pair together: order becomes left, right, mid.
        auto [a, b] = gate_for(mid, right);
        pair_gate(state, a, b, gates.two_qubit[static_cast<size_t>(pair_index(a, b))], true, reports);
    }
    {
        auto [a, b] = gate_for(left, right);
        pair_gate(state, a, b, gates.two_qubit[static_cast<size_t>(pair_index(a, b))], false, reports);
    }

    std::vector<int> pinned;
    if (mode_ == ReturnMode::deferred && next) {
        for (int member : q) {
            if (next->contains(member)) {
                pinned.push_back(member);
            }
        }
    }
    auto restored = restore(state, pinned);
    reports.insert(reports.end(), restored.begin(), restored.end());
    return reports;
}

std::vector<TruncationReport> ClauseRouter::restore(MpsState &state, std::span<const int> pinned) {
    const int n = layout_.num_qubits();
    std::vector<int> target(static_cast<size_t>(n) + 1, 0);
    std::vector<char> taken(static_cast<size_t>(n) + 1, 0);
    for (int logical : pinned) {
        const int p = layout_.physical(logical);
        target[static_cast<size_t>(logical)] = p;
        taken[static_cast<size_t>(p)] = 1;
    }
    int slot = 1;
    for (int logical = 1; logical <= n; ++logical) {
        if (target[static_cast<size_t>(logical)] != 0) {
            continue;
        }
        while (taken[static_cast<size_t>(slot)]) {
            ++slot;
        }
        target[static_cast<size_t>(logical)] = slot++;
    }
    std::vector<TruncationReport> reports;
    bool changed = true;
    while (changed) {
        changed = false;
        for (int p = 1; p < n; ++p) {
            if (target[static_cast<size_t>(layout_.logical(p))] > target[static_cast<size_t>(layout_.logical(p + 1))]) {
                swap_at(state, p, reports);
                changed = true;
            }
        }
    }
    return reports;
}

int64_t naive_clause_swaps(const Clause &clause) {
    return 2 * (clause.j() - clause.i() - 1) + 2 * (clause.k() - clause.i() - 1) + 2 * (clause.k() - clause.j() - 1);
}

}  // namespace mpsim
