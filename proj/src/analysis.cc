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

#include "mpsim/analysis.h"

#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

namespace mpsim {

namespace {

struct LeastSquares {
    Eigen::VectorXd coeff;
    double residual;
};

LeastSquares solve(const Eigen::MatrixXd &design, const Eigen::VectorXd &rhs) {
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
    if (qr.rank() < design.cols()) {
        throw std::invalid_argument("least squares: degenerate design matrix");
    }
    LeastSquares out{qr.solve(rhs), 0.0};
    out.residual = std::sqrt((design * out.coeff - rhs).squaredNorm() / static_cast<double>(rhs.size()));
    return out;
}

}  // namespace

FitResult fit_schmidt_decay(std::span<const double> lambdas) {
    if (lambdas.size() < 4) {
        throw std::invalid_argument("fit_schmidt_decay: need at least 4 Schmidt values");
    }
    const auto rows = static_cast<Eigen::Index>(lambdas.size());
    Eigen::MatrixXd design(rows, 3);
    Eigen::VectorXd rhs(rows);
    for (Eigen::Index r = 0; r < rows; ++r) {
        const double lam = lambdas[static_cast<size_t>(r)];
        if (!(lam > 0.0) || !std::isfinite(lam)) {
            throw std::invalid_argument("fit_schmidt_decay: Schmidt values must be positive and finite");
        }
        const double alpha = static_cast<double>(r + 1);
        design(r, 0) = 1.0;
        design(r, 1) = 1.0 / std::sqrt(alpha);
        design(r, 2) = std::sqrt(alpha);
        rhs(r) = std::log2(lam);
    }
    const LeastSquares ls = solve(design, rhs);
    return FitResult{ls.coeff(0), ls.coeff(1), ls.coeff(2), ls.residual};
}

SummaryStats summarize(std::span<const double> values) {
    SummaryStats st;
    st.count = static_cast<int>(values.size());
    if (values.empty()) {
        return st;
    }
    double sum = 0.0;
    st.worst = values[0];
    for (double v : values) {
        sum += v;
        st.worst = std::max(st.worst, v);
    }
    st.mean = sum / st.count;
    if (st.count > 1) {
        double var = 0.0;
        for (double v : values) {
            var += (v - st.mean) * (v - st.mean);
        }
        var /= st.count - 1;
        st.ci95_half_width = 1.96 * std::sqrt(var / st.count);
    }
    return st;
}

PolynomialFit polynomial_fit(std::span<const double> x, std::span<const double> y, int degree) {
    if (degree < 0 || x.size() != y.size() || x.size() < static_cast<size_t>(degree) + 1) {
        throw std::invalid_argument("polynomial_fit: need degree >= 0 and at least degree + 1 points");
    }
    const auto rows = static_cast<Eigen::Index>(x.size());
    Eigen::MatrixXd design(rows, degree + 1);
    Eigen::VectorXd rhs(rows);
    for (Eigen::Index r = 0; r < rows; ++r) {
        double p = 1.0;
        for (int c = 0; c <= degree; ++c) {
            design(r, c) = p;
            p *= x[static_cast<size_t>(r)];
        }
        rhs(r) = y[static_cast<size_t>(r)];
    }
    const LeastSquares ls = solve(design, rhs);
    return PolynomialFit{std::vector<double>(ls.coeff.begin(), ls.coeff.end()), ls.residual};
}

}  // namespace mpsim
