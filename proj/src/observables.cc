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

#include "mpsim/observables.h"

#include <stdexcept>
#include <string>

namespace mpsim {

namespace {

Matrix weighted_slice(const MpsState &state, int site, int bit) {
    return state.site(site)[bit] * state.lambda(site).cast<cplx>().asDiagonal();
}

// env is indexed (bra bond, ket bond). With op == nullptr the physical index is traced.
Matrix push_right(const MpsState &state, const Matrix &env, int site, const Op2 *op) {
    const auto dim = state.bond_dimension(site);
    Matrix out = Matrix::Zero(dim, dim);
    const Matrix a0 = weighted_slice(state, site, 0);
    const Matrix a1 = weighted_slice(state, site, 1);
    const Matrix *a[2] = {&a0, &a1};
    if (op == nullptr) {
        for (int b = 0; b < 2; ++b) {
            out.noalias() += a[b]->adjoint() * env * *a[b];
        }
        return out;
    }
    for (int bra = 0; bra < 2; ++bra) {
        Matrix half = a[bra]->adjoint() * env;
        for (int ket = 0; ket < 2; ++ket) {
            const cplx w = (*op)(bra, ket);
            if (w != cplx(0.0)) {
                out.noalias() += w * (half * *a[ket]);
            }
        }
    }
    return out;
}

}  // namespace

cplx expectation(const MpsState &state, std::span<const LocalOp> ops) {
    const int n = state.num_qubits();
    std::vector<const Op2 *> at(static_cast<size_t>(n) + 1, nullptr);
    for (const auto &lo : ops) {
        if (lo.site < 1 || lo.site > n) {
            throw std::out_of_range("expectation: site " + std::to_string(lo.site) + " out of range");
        }
        if (at[static_cast<size_t>(lo.site)] != nullptr) {
            throw std::invalid_argument("expectation: two operators on the same site");
        }
        at[static_cast<size_t>(lo.site)] = &lo.op;
    }
    Matrix env = Matrix::Ones(1, 1);
    for (int site = 1; site <= n; ++site) {
        env = push_right(state, env, site, at[static_cast<size_t>(site)]);
    }
    return env(0, 0);
}

CorrelationEvaluator::CorrelationEvaluator(const MpsState &state) : state_(state) {
    const int n = state.num_qubits();
    left_.resize(static_cast<size_t>(n) + 2);
    right_.resize(static_cast<size_t>(n) + 2);
    left_[1] = Matrix::Ones(1, 1);
    for (int site = 1; site <= n; ++site) {
        left_[static_cast<size_t>(site) + 1] = push_right(state, left_[static_cast<size_t>(site)], site, nullptr);
    }
    right_[static_cast<size_t>(n)] = Matrix::Ones(1, 1);
    for (int site = n; site >= 2; --site) {
        const auto dim = state.bond_dimension(site - 1);
        Matrix env = Matrix::Zero(dim, dim);
        for (int b = 0; b < 2; ++b) {
            Matrix a = weighted_slice(state, site, b);
            env.noalias() += a.conjugate() * right_[static_cast<size_t>(site)] * a.transpose();
        }
        right_[static_cast<size_t>(site) - 1] = std::move(env);
    }
    norm_squared_ = left_[static_cast<size_t>(n) + 1](0, 0).real();
}

Matrix CorrelationEvaluator::transfer(const Matrix &env, int site, const Op2 *op) const {
    return push_right(state_, env, site, op);
}

cplx CorrelationEvaluator::close(const Matrix &env, int site) const {
    return env.cwiseProduct(right_[static_cast<size_t>(site)]).sum();
}

cplx CorrelationEvaluator::one_point(int site, const Op2 &op) const {
    if (site < 1 || site > state_.num_qubits()) {
        throw std::out_of_range("one_point: site out of range");
    }
    return close(transfer(left_[static_cast<size_t>(site)], site, &op), site);
}

cplx CorrelationEvaluator::two_point(int site_a, const Op2 &op_a, int site_b, const Op2 &op_b) const {
    const int n = state_.num_qubits();
    if (site_a < 1 || site_a > n || site_b < 1 || site_b > n || site_a == site_b) {
        throw std::invalid_argument("two_point: need two distinct sites in range");
    }
    const Op2 *first = &op_a;
    const Op2 *second = &op_b;
    if (site_b < site_a) {
        std::swap(site_a, site_b);
        std::swap(first, second);
    }
    Matrix env = transfer(left_[static_cast<size_t>(site_a)], site_a, first);
    for (int site = site_a + 1; site < site_b; ++site) {
        env = transfer(env, site, nullptr);
    }
    env = transfer(env, site_b, second);
    return close(env, site_b);
}

}  // namespace mpsim
