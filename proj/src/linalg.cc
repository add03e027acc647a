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

#include "mpsim/linalg.h"

#include <algorithm>
#include <stdexcept>
#include <vector>

#include <lapacke.h>

namespace mpsim {

namespace {

bool lapack_svd(Matrix a, SvdResult &out, bool divide_and_conquer) {
    const lapack_int rows = static_cast<lapack_int>(a.rows());
    const lapack_int cols = static_cast<lapack_int>(a.cols());
    const lapack_int k = std::min(rows, cols);
    out.u.resize(rows, k);
    out.s.resize(k);
    out.vh.resize(k, cols);
    auto *pa = reinterpret_cast<lapack_complex_double *>(a.data());
    auto *pu = reinterpret_cast<lapack_complex_double *>(out.u.data());
    auto *pvh = reinterpret_cast<lapack_complex_double *>(out.vh.data());
    lapack_int info;
    if (divide_and_conquer) {
        info = LAPACKE_zgesdd(LAPACK_COL_MAJOR, 'S', rows, cols, pa, rows, out.s.data(), pu, rows, pvh, k);
    } else {
        std::vector<double> superb(static_cast<size_t>(std::max<lapack_int>(k - 1, 1)));
        info = LAPACKE_zgesvd(
            LAPACK_COL_MAJOR, 'S', 'S', rows, cols, pa, rows, out.s.data(), pu, rows, pvh, k, superb.data());
    }
    return info == 0;
}

}  // namespace

SvdResult thin_svd(const Matrix &m) {
    if (m.rows() == 0 || m.cols() == 0) {
        throw std::invalid_argument("thin_svd: empty matrix");
    }
    if (!m.allFinite()) {
        throw std::runtime_error("thin_svd: matrix has inf or nan entries");
    }
    SvdResult result;
    if (lapack_svd(m, result, true) || lapack_svd(m, result, false)) {
        return result;
    }
    Eigen::BDCSVD<Matrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    result.u = svd.matrixU();
    result.s = svd.singularValues();
    result.vh = svd.matrixV().adjoint();
    return result;
}

}  // namespace mpsim
