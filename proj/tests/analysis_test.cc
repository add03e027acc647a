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

#include <gtest/gtest.h>

namespace mpsim {
namespace {

TEST(SchmidtFit, RecoversSyntheticLaw) {
    std::vector<double> lambdas;
    for (int a = 1; a <= 16; ++a) {
        lambdas.push_back(std::exp2(-1.0 + 0.5 / std::sqrt(a) - 0.3 * std::sqrt(a)));
    }
    const FitResult f = fit_schmidt_decay(lambdas);
    EXPECT_NEAR(f.b, -1.0, 1e-9);
    EXPECT_NEAR(f.c, 0.5, 1e-9);
    EXPECT_NEAR(f.d, -0.3, 1e-9);
    EXPECT_NEAR(f.residual, 0.0, 1e-10);
}

TEST(SchmidtFit, FlatSpectrum) {
    const int chi = 8;
    const std::vector<double> lambdas(chi, 1.0 / std::sqrt(chi));
    const FitResult f = fit_schmidt_decay(lambdas);
    EXPECT_NEAR(f.c, 0.0, 1e-9);
    EXPECT_NEAR(f.d, 0.0, 1e-9);
    EXPECT_NEAR(f.b, -0.5 * std::log2(chi), 1e-9);
}

TEST(SchmidtFit, Errors) {
    EXPECT_THROW(fit_schmidt_decay(std::vector<double>{0.5, 0.4, 0.3}), std::invalid_argument);
    EXPECT_THROW(fit_schmidt_decay(std::vector<double>{0.5, 0.4, 0.0, 0.1}), std::invalid_argument);
}

TEST(SchmidtFit, ResidualPositiveForNoisyData) {
    std::vector<double> lambdas{0.8, 0.5, 0.2, 0.19, 0.05, 0.049};
    EXPECT_GT(fit_schmidt_decay(lambdas).residual, 0.0);
}

TEST(Summary, MeanWorstInterval) {
    const std::vector<double> v{100, 200, 200, 400};
    const SummaryStats s = summarize(v);
    EXPECT_EQ(s.count, 4);
    EXPECT_DOUBLE_EQ(s.mean, 225.0);
    EXPECT_DOUBLE_EQ(s.worst, 400.0);
    const double sd = std::sqrt((125.0 * 125 + 25 * 25 * 2 + 175.0 * 175) / 3.0);
    EXPECT_NEAR(s.ci95_half_width, 1.96 * sd / 2.0, 1e-12);
    EXPECT_EQ(summarize(std::vector<double>{}).count, 0);
    EXPECT_EQ(summarize(std::vector<double>{5.0}).ci95_half_width, 0.0);
}

TEST(PolynomialFit, ExactQuadratic) {
    std::vector<double> x, y;
    for (int k = 0; k < 6; ++k) {
        x.push_back(k);
        y.push_back(1.0 - 2.0 * k + 0.5 * k * k);
    }
    const PolynomialFit f = polynomial_fit(x, y, 2);
    ASSERT_EQ(f.coefficients.size(), 3u);
    EXPECT_NEAR(f.coefficients[0], 1.0, 1e-10);
    EXPECT_NEAR(f.coefficients[1], -2.0, 1e-10);
    EXPECT_NEAR(f.coefficients[2], 0.5, 1e-10);
    EXPECT_NEAR(f.residual, 0.0, 1e-10);
    EXPECT_GT(polynomial_fit(x, y, 1).residual, 0.1);
    EXPECT_THROW(polynomial_fit(x, y, 6), std::invalid_argument);
}

}  // namespace
}  // namespace mpsim
