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

#ifndef MPSIM_LINALG_H
#define MPSIM_LINALG_H

#include <complex>

#include <Eigen/Dense>

namespace mpsim {

using cplx = std::complex<double>;
using Matrix = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic>;
using RealVector = Eigen::VectorXd;
using ComplexVector = Eigen::VectorXcd;

/// Thin SVD m = u * diag(s) * vh with s sorted non-increasing.
struct SvdResult {
    Matrix u;
    RealVector s;
    Matrix vh;
};

/// LAPACK divide-and-conquer SVD with a QR-iteration fallback if it fails to converge.
SvdResult thin_svd(const Matrix &m);

}  // namespace mpsim

#endif
