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
#include <stdexcept>
#include <string>

namespace mpsim {

namespace {

void check_oracle_size(int n, int cap, const char *what) {
    if (n < 1 || n > cap) {
        throw std::invalid_argument(std::string(what) + ": n must lie in [1, " + std::to_string(cap) + "]");
    }
}

Eigen::Index bit_of(int n, int site) {
    return Eigen::Index{1} << (n - site);
}

Eigen::Index index_of(std::string_view bits) {
    Eigen::Index idx = 0;
    for (char c : bits) {
        idx = (idx << 1) | (c == '1' ? 1 : 0);
    }
    return idx;
}

}  // namespace

DenseState::DenseState(int n) : n_(n) {
    check_oracle_size(n, kMaxDenseOracleQubits, "DenseState");
    amps_ = ComplexVector::Zero(Eigen::Index{1} << n);
    amps_(0) = 1.0;
}

DenseState::DenseState(int n, ComplexVector amplitudes) : n_(n), amps_(std::move(amplitudes)) {
    check_oracle_size(n, kMaxDenseOracleQubits, "DenseState");
    if (amps_.size() != (Eigen::Index{1} << n)) {
        throw std::invalid_argument("DenseState: amplitude vector must have length 2^n");
    }
}

DenseState DenseState::basis(int n, std::string_view bits) {
    check_bitstring(bits, n);
    DenseState st(n);
    st.amps_.setZero();
    st.amps_(index_of(bits)) = 1.0;
    return st;
}

DenseState DenseState::plus(int n) {
    DenseState st(n);
    st.amps_.setConstant(std::pow(2.0, -0.5 * n));
    return st;
}

cplx DenseState::amplitude(std::string_view bits) const {
    check_bitstring(bits, n_);
    return amps_(index_of(bits));
}

void dense_apply_gate(DenseState &state, int site, const Eigen::Matrix2cd &gate) {
    const int n = state.num_qubits();
    if (site < 1 || site > n) {
        throw std::out_of_range("dense_apply_gate: site out of range");
    }
    ComplexVector &a = state.amplitudes();
    const Eigen::Index mask = bit_of(n, site);
    for (Eigen::Index idx = 0; idx < a.size(); ++idx) {
        if (idx & mask) {
            continue;
        }
        const cplx v0 = a(idx);
        const cplx v1 = a(idx | mask);
        a(idx) = gate(0, 0) * v0 + gate(0, 1) * v1;
        a(idx | mask) = gate(1, 0) * v0 + gate(1, 1) * v1;
    }
}

void dense_apply_gate(DenseState &state, int site_a, int site_b, const Eigen::Matrix4cd &gate) {
    const int n = state.num_qubits();
    if (site_a < 1 || site_a > n || site_b < 1 || site_b > n || site_a == site_b) {
        throw std::invalid_argument("dense_apply_gate: need two distinct sites in range");
    }
    ComplexVector &a = state.amplitudes();
    const Eigen::Index ma = bit_of(n, site_a);
    const Eigen::Index mb = bit_of(n, site_b);
    for (Eigen::Index idx = 0; idx < a.size(); ++idx) {
        if (idx & (ma | mb)) {
            continue;
        }
        const Eigen::Index k[4] = {idx, idx | mb, idx | ma, idx | ma | mb};
        Eigen::Vector4cd v;
        for (int r = 0; r < 4; ++r) {
            v(r) = a(k[r]);
        }
        const Eigen::Vector4cd w = gate * v;
        for (int r = 0; r < 4; ++r) {
            a(k[r]) = w(r);
        }
    }
}

void dense_apply_gate(DenseState &state, std::span<const int> sites, const Matrix &gate) {
    if (sites.size() == 1 && gate.rows() == 2 && gate.cols() == 2) {
        dense_apply_gate(state, sites[0], Eigen::Matrix2cd(gate));
    } else if (sites.size() == 2 && gate.rows() == 4 && gate.cols() == 4) {
        dense_apply_gate(state, sites[0], sites[1], Eigen::Matrix4cd(gate));
    } else {
        throw std::invalid_argument("dense_apply_gate: need 1 site with a 2x2 or 2 sites with a 4x4 matrix");
    }
}

DenseHamiltonian dense_hamiltonian(const ExactCoverInstance &instance, double s) {
    const int n = instance.num_qubits();
    check_oracle_size(n, kMaxDenseOracleQubits, "dense_hamiltonian");
    DenseHamiltonian h;
    h.n = n;
    h.s = s;
    h.degrees = degrees(instance);
    const Eigen::Index dim = Eigen::Index{1} << n;
    h.problem_diagonal.assign(static_cast<size_t>(dim), 0.0);
    for (Eigen::Index idx = 0; idx < dim; ++idx) {
        double e = 0.0;
        for (const auto &c : instance.clauses()) {
            int ones = -1;
            for (int q : c.members()) {
                ones += (idx & bit_of(n, q)) ? 1 : 0;
            }
            e += ones * ones;
        }
        h.problem_diagonal[static_cast<size_t>(idx)] = e;
    }
    return h;
}

ComplexVector DenseHamiltonian::apply(const ComplexVector &v) const {
    ComplexVector out(v.size());
    for (Eigen::Index idx = 0; idx < v.size(); ++idx) {
        out(idx) = s * problem_diagonal[static_cast<size_t>(idx)] * v(idx);
    }
    // (1-s) Σ d_q (1 - σx_q) / 2
    for (int q = 1; q <= n; ++q) {
        const double w = 0.5 * (1.0 - s) * degrees[static_cast<size_t>(q) - 1];
        if (w == 0.0) {
            continue;
        }
        const Eigen::Index mask = bit_of(n, q);
        for (Eigen::Index idx = 0; idx < v.size(); ++idx) {
            out(idx) += w * (v(idx) - v(idx ^ mask));
        }
    }
    return out;
}

Eigen::MatrixXd DenseHamiltonian::to_matrix() const {
    check_oracle_size(n, kMaxDenseExponentialQubits, "DenseHamiltonian::to_matrix");
    const Eigen::Index dim = Eigen::Index{1} << n;
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(dim, dim);
    for (Eigen::Index idx = 0; idx < dim; ++idx) {
        m(idx, idx) = s * problem_diagonal[static_cast<size_t>(idx)];
    }
    for (int q = 1; q <= n; ++q) {
        const double w = 0.5 * (1.0 - s) * degrees[static_cast<size_t>(q) - 1];
        const Eigen::Index mask = bit_of(n, q);
        for (Eigen::Index idx = 0; idx < dim; ++idx) {
            m(idx, idx) += w;
            m(idx, idx ^ mask) -= w;
        }
    }
    return m;
}

void dense_exact_step(DenseState &state, const ExactCoverInstance &instance, double s, double delta, EvolutionSign sign) {
    check_oracle_size(state.num_qubits(), kMaxDenseExponentialQubits, "dense_exact_step");
    if (delta == 0.0) {
        return;
    }
    const Eigen::MatrixXd h = dense_hamiltonian(instance, s).to_matrix();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(h);
    if (eig.info() != Eigen::Success) {
        throw std::runtime_error("dense_exact_step: eigendecomposition failed");
    }
    const Eigen::MatrixXd &v = eig.eigenvectors();
    ComplexVector coeff = v.transpose().cast<cplx>() * state.amplitudes();
    for (Eigen::Index k = 0; k < coeff.size(); ++k) {
        coeff(k) *= std::polar(1.0, sign_value(sign) * delta * eig.eigenvalues()(k));
    }
    state.amplitudes() = v.cast<cplx>() * coeff;
}

void dense_trotter_step(
    DenseState &state, const ExactCoverInstance &instance, double s, const Schedule &schedule, EvolutionSign sign) {
    const int n = state.num_qubits();
    if (instance.num_qubits() != n) {
        throw std::invalid_argument("dense_trotter_step: size mismatch");
    }
    const double delta = schedule.inner_delta();
    const DenseHamiltonian h = dense_hamiltonian(instance, s);
    std::vector<Eigen::Matrix2cd> half_mixer;
    for (int q = 1; q <= n; ++q) {
        half_mixer.push_back(mixer_gate(h.degrees[static_cast<size_t>(q) - 1], s, delta, sign).matrix());
    }
    const double sg = sign_value(sign);
    for (int sub = 0; sub < schedule.substeps(); ++sub) {
        for (int q = 1; q <= n; ++q) {
            dense_apply_gate(state, q, half_mixer[static_cast<size_t>(q) - 1]);
        }
        ComplexVector &a = state.amplitudes();
        for (Eigen::Index idx = 0; idx < a.size(); ++idx) {
            a(idx) *= std::polar(1.0, sg * delta * s * h.problem_diagonal[static_cast<size_t>(idx)]);
        }
        for (int q = 1; q <= n; ++q) {
            dense_apply_gate(state, q, half_mixer[static_cast<size_t>(q) - 1]);
        }
    }
}

std::vector<double> dense_schmidt(const DenseState &state, int cut) {
    const int n = state.num_qubits();
    if (cut < 1 || cut >= n) {
        throw std::out_of_range("dense_schmidt: cut must lie in [1, n-1]");
    }
    const Eigen::Index rows = Eigen::Index{1} << cut;
    const Eigen::Index cols = Eigen::Index{1} << (n - cut);
    // Row-major reshape: row = first `cut` qubits, column = the rest.
    Matrix m(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r) {
        for (Eigen::Index c = 0; c < cols; ++c) {
            m(r, c) = state.amplitudes()(r * cols + c);
        }
    }
    Eigen::BDCSVD<Matrix> svd(m);
    const RealVector &sv = svd.singularValues();
    return std::vector<double>(sv.begin(), sv.end());
}

double dense_norm_squared(const DenseState &state) {
    return state.amplitudes().squaredNorm();
}

double dense_entropy(const DenseState &state, int cut) {
    const auto sv = dense_schmidt(state, cut);
    double total = 0.0;
    for (double v : sv) {
        total += v * v;
    }
    double entropy = 0.0;
    for (double v : sv) {
        const double p = v * v / total;
        if (p > 0.0) {
            entropy -= p * std::log2(p);
        }
    }
    return std::max(entropy, 0.0);
}

Measured dense_energy(const DenseState &state, const ExactCoverInstance &instance, double s) {
    const DenseHamiltonian h = dense_hamiltonian(instance, s);
    const double raw = state.amplitudes().dot(h.apply(state.amplitudes())).real();
    return Measured{raw / dense_norm_squared(state), raw};
}

Measured dense_success_probability(const DenseState &state, std::string_view solution) {
    const double p = std::norm(state.amplitude(solution));
    return Measured{p / dense_norm_squared(state), p};
}

std::vector<double> dense_gap_trace(const ExactCoverInstance &instance, std::span<const double> s_values) {
    std::vector<double> gaps;
    for (double s : s_values) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(dense_hamiltonian(instance, s).to_matrix(),
                                                           Eigen::EigenvaluesOnly);
        gaps.push_back(eig.eigenvalues()(1) - eig.eigenvalues()(0));
    }
    return gaps;
}

DenseRunResult dense_run(const ExactCoverInstance &instance,
                         const Schedule &schedule,
                         EvolutionSign sign,
                         int observable_stride) {
    const int n = instance.num_qubits();
    DenseRunResult out;
    DenseState state = DenseState::plus(n);
    auto sample = [&](double s) {
        out.s.push_back(s);
        out.energy.push_back(dense_energy(state, instance, s).normalized);
        out.success.push_back(instance.known_solution()
                                  ? dense_success_probability(state, *instance.known_solution()).normalized
                                  : std::nan(""));
    };
    for (int l = 0; l < schedule.steps(); ++l) {
        const double s = schedule.s_at(l);
        if (l % observable_stride == 0) {
            sample(s);
        }
        dense_trotter_step(state, instance, s, schedule, sign);
    }
    sample(1.0);
    out.final_state = std::move(state);
    return out;
}

}  // namespace mpsim
