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

#ifndef MPSIM_OBSERVABLES_H
#define MPSIM_OBSERVABLES_H

#include <span>
#include <vector>

#include "mpsim/mps_state.h"

namespace mpsim {

using Op2 = Eigen::Matrix2cd;

struct LocalOp {
    int site;
    Op2 op;
};

/// Unnormalized <psi| Π op_k |psi> for operators on distinct sites, by one full
/// transfer contraction (O(n chi^3)).
cplx expectation(const MpsState &state, std::span<const LocalOp> ops);

/// Caches left and right transfer environments so that many one- and two-point
/// functions of a fixed state cost O(chi^3) per site spanned rather than O(n chi^3).
/// All values are unnormalized; divide by norm_squared() for <O>.
class CorrelationEvaluator {
   public:
    explicit CorrelationEvaluator(const MpsState &state);

    double norm_squared() const {
        return norm_squared_;
    }
    cplx one_point(int site, const Op2 &op) const;
    cplx two_point(int site_a, const Op2 &op_a, int site_b, const Op2 &op_b) const;

   private:
    Matrix transfer(const Matrix &env, int site, const Op2 *op) const;
    cplx close(const Matrix &env, int site) const;

    const MpsState &state_;
    std::vector<Matrix> left_;   // left_[a]: sites 1..a-1 contracted, at bond a-1
    std::vector<Matrix> right_;  // right_[a]: sites a+1..n contracted, at bond a
    double norm_squared_;
};

}  // namespace mpsim

#endif
