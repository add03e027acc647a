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

#include "mpsim/gates.h"

#include <cmath>
#include <stdexcept>

namespace mpsim {

double unitarity_defect(const Matrix &u) {
    if (u.rows() != u.cols()) {
        return INFINITY;
    }
    return (u.adjoint() * u - Matrix::Identity(u.rows(), u.cols())).norm();
}

bool is_unitary(const Matrix &u, double tol) {
    return unitarity_defect(u) <= tol;
}

OneQubitGate::OneQubitGate(const Eigen::Matrix2cd &u) : u_(u) {
    if (!is_unitary(u_)) {
        throw std::invalid_argument("OneQubitGate: matrix is not unitary");
    }
}

bool OneQubitGate::is_identity() const {
    return u_ == Eigen::Matrix2cd::Identity();
}

TwoQubitGate::TwoQubitGate(const Eigen::Matrix4cd &u) : u_(u) {
    if (!is_unitary(u_)) {
        throw std::invalid_argument("TwoQubitGate: matrix is not unitary");
    }
    Eigen::Matrix4cd off = u_;
    off.diagonal().setZero();
    diagonal_ = off.isZero(0.0);
}

namespace {

Eigen::Matrix4cd swap_matrix() {
    Eigen::Matrix4cd s = Eigen::Matrix4cd::Zero();
    s(0, 0) = s(1, 2) = s(2, 1) = s(3, 3) = 1.0;
    return s;
}

}  // namespace

TwoQubitGate TwoQubitGate::reversed() const {
    const Eigen::Matrix4cd s = swap_matrix();
    return TwoQubitGate(s * u_ * s);
}

TwoQubitGate TwoQubitGate::followed_by_swap() const {
    return TwoQubitGate(swap_matrix() * u_);
}

namespace gates {

OneQubitGate identity() {
    return OneQubitGate(Eigen::Matrix2cd::Identity());
}

OneQubitGate pauli_x() {
    Eigen::Matrix2cd m;
    m << 0, 1, 1, 0;
    return OneQubitGate(m);
}

OneQubitGate hadamard() {
    Eigen::Matrix2cd m;
    const double h = 1.0 / std::sqrt(2.0);
    m << h, h, h, -h;
    return OneQubitGate(m);
}

OneQubitGate phase(double phi) {
    Eigen::Matrix2cd m = Eigen::Matrix2cd::Identity();
    m(1, 1) = std::polar(1.0, phi);
    return OneQubitGate(m);
}

TwoQubitGate identity2() {
    return TwoQubitGate(Eigen::Matrix4cd::Identity());
}

TwoQubitGate swap() {
    return TwoQubitGate(swap_matrix());
}

TwoQubitGate cnot() {
    Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
    m(0, 0) = m(1, 1) = m(2, 3) = m(3, 2) = 1.0;
    return TwoQubitGate(m);
}

TwoQubitGate controlled_phase(double phi) {
    Eigen::Matrix4cd m = Eigen::Matrix4cd::Identity();
    m(3, 3) = std::polar(1.0, phi);
    return TwoQubitGate(m);
}

TwoQubitGate bell_example() {
    const double h = 1.0 / std::sqrt(2.0);
    Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
    m(0, 0) = h;
    m(0, 3) = h;
    m(1, 1) = 1.0;
    m(2, 2) = 1.0;
    m(3, 0) = h;
    m(3, 3) = -h;
    return TwoQubitGate(m);
}

Matrix random_unitary(int dim, std::mt19937_64 &rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    Matrix g(dim, dim);
    for (int r = 0; r < dim; ++r) {
        for (int c = 0; c < dim; ++c) {
            g(r, c) = cplx(normal(rng), normal(rng));
        }
    }
    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q = qr.householderQ();
    const Matrix r = qr.matrixQR();
    for (int c = 0; c < dim; ++c) {
        const cplx d = r(c, c);
        q.col(c) *= std::abs(d) > 0.0 ? d / std::abs(d) : cplx(1.0);
    }
    return q;
}

OneQubitGate random_one_qubit(std::mt19937_64 &rng) {
    return OneQubitGate(Eigen::Matrix2cd(random_unitary(2, rng)));
}

TwoQubitGate random_two_qubit(std::mt19937_64 &rng) {
    return TwoQubitGate(Eigen::Matrix4cd(random_unitary(4, rng)));
}

}  // namespace gates

}  // namespace mpsim
