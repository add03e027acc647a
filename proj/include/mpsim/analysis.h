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

#ifndef MPSIM_ANALYSIS_H
#define MPSIM_ANALYSIS_H

#include <span>
#include <vector>

namespace mpsim {

/// log2(lambda_alpha) ~ b + c / sqrt(alpha) + d sqrt(alpha), alpha = 1, 2, ...
struct FitResult {
    double b = 0.0;
    double c = 0.0;
    double d = 0.0;
    double residual = 0.0;  // RMS error in log2 units
};

/// Least-squares fit of a Schmidt spectrum. Needs at least 4 positive values.
FitResult fit_schmidt_decay(std::span<const double> lambdas);

struct SummaryStats {
    int count = 0;
    double mean = 0.0;
    double worst = 0.0;            // maximum
    double ci95_half_width = 0.0;  // 1.96 * stddev / sqrt(count)
};

SummaryStats summarize(std::span<const double> values);

/// Coefficients c_0..c_degree of the least-squares polynomial and its RMS residual.
struct PolynomialFit {
    std::vector<double> coefficients;
    double residual = 0.0;
};

PolynomialFit polynomial_fit(std::span<const double> x, std::span<const double> y, int degree);

}  // namespace mpsim

#endif
