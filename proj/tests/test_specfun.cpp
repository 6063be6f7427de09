// Copyright 2026 The homtomo Authors
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

#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "homtomo/errors.hpp"
#include "homtomo/quadrature.hpp"
#include "homtomo/specfun.hpp"

using namespace homtomo;

namespace {
const double kPi = std::numbers::pi;
}

TEST(Hermite, ExplicitPolynomials) {
    for (double x : {-2.5, -0.3, 0.0, 0.7, 3.1}) {
        EXPECT_NEAR(hermite_poly(0, x), 1.0, 0);
        EXPECT_NEAR(hermite_poly(3, x), 8 * x * x * x - 12 * x, 1e-12 * (1 + std::pow(std::abs(x), 3) * 8));
        const double x2 = x * x;
        EXPECT_NEAR(hermite_poly(5, x), 32 * x2 * x2 * x - 160 * x2 * x + 120 * x, 1e-11 * (1 + 32 * std::pow(std::abs(x), 5)));
    }
}

TEST(Hermite, FunctionsOrthonormal) {
    // Gauss-Hermite with the weight divided out: int h_m h_n = sum w e^{x^2} h_m h_n.
    const Rule gh = gauss_hermite(80);
    for (int m = 0; m <= 12; ++m) {
        for (int n = 0; n <= 12; ++n) {
            double s = 0;
            for (std::size_t i = 0; i < gh.x.size(); ++i) {
                const auto h = hermite_functions(12, gh.x[i]);
                s += gh.w[i] * std::exp(gh.x[i] * gh.x[i]) * h[m] * h[n];
            }
            EXPECT_NEAR(s, m == n ? 1.0 : 0.0, 1e-12) << m << "," << n;
        }
    }
}

TEST(Hermite, ScaledMatchesDefinition) {
    for (int n : {0, 1, 4, 9}) {
        for (double x : {-1.3, 0.2, 2.0}) {
            const double ref = hermite_poly(n, x) / std::sqrt(std::pow(2.0, n) * factorial(n));
            EXPECT_NEAR(hermite_scaled(n, x), ref, 1e-13 * std::max(1.0, std::abs(ref)));
            EXPECT_NEAR(hermite_function(n, x), std::pow(kPi, -0.25) * std::exp(-x * x / 2) * ref, 1e-14);
        }
    }
}

TEST(Hermite, DerivativeLadder) {
    for (int n = 0; n <= 8; ++n) {
        for (double x : {-1.7, 0.4, 2.2}) {
            const double fd = central_diff([n](double t) { return hermite_function(n, t); }, x);
            EXPECT_NEAR(hermite_function_deriv(n, x), fd, 1e-8);
        }
    }
}

TEST(Dawson, ReferenceValues) {
    // 20-digit values of sqrt(pi)/2 e^{-x^2} erfi(x).
    const std::pair<double, double> ref[] = {{0.5, 0.42443638350202229593},
                                             {1.0, 0.53807950691276841914},
                                             {2.0, 0.30134038892379196603},
                                             {5.0, 0.10213407442427683544},
                                             {10.0, 0.050253847187598528033}};
    for (auto [x, v] : ref) {
        EXPECT_NEAR(dawson(x), v, 2e-15) << x;
        EXPECT_NEAR(dawson(-x), -v, 2e-15) << x;
    }
    EXPECT_EQ(dawson(0.0), 0.0);
}

TEST(Dawson, LargeArgumentAsymptotics) {
    // F(x) ~ (1/2x) sum_k (2k-1)!! / (2x^2)^k; at x >= 30 the first ten terms are far below rounding.
    for (double x : {30.0, 100.0, 1e4}) {
        const double y = 1 / (2 * x * x);
        double term = 1, sum = 0;
        for (int k = 0; k < 10; ++k) {
            sum += term;
            term *= (2 * k + 1) * y;
        }
        EXPECT_NEAR(dawson(x), sum / (2 * x), 2e-16 * sum / (2 * x));
    }
}

TEST(Dawson, ScaledDerivativesSatisfyOde) {
    for (int n : {0, 1, 3, 6}) {
        for (double x : {-2.0, 0.3, 1.5, 4.0}) {
            auto d = [n](double t) { return dawson_scaled_pair(n, t).d_n; };
            const double h = 1e-3;
            const double f2 = d(x + 2 * h), f1 = d(x + h), f0 = d(x), fm1 = d(x - h), fm2 = d(x - 2 * h);
            const double d1 = (fm2 - 8 * fm1 + 8 * f1 - f2) / (12 * h);
            const double d2 = (-fm2 + 16 * fm1 - 30 * f0 + 16 * f1 - f2) / (12 * h * h);
            EXPECT_NEAR(d2 + 2 * x * d1 + 2 * (n + 1) * f0, 0.0, 1e-7);
            EXPECT_NEAR(d1, -std::sqrt(2.0 * (n + 1)) * dawson_scaled_pair(n, x).d_n1, 1e-10);
        }
    }
}

TEST(GFunction, ExplicitFormAgrees) {
    for (int n = 0; n <= 5; ++n) {
        for (double x : {-1.2, -0.4, 0.5, 1.1}) {
            const double a = g_function(n, x);
            EXPECT_NEAR(a, g_function_explicit(n, x), 1e-9 * std::max(1.0, std::abs(a))) << n << " " << x;
        }
    }
}

TEST(GFunction, ParityAndWronskian) {
    for (int n = 0; n <= 6; ++n) {
        const double sign = (n + 1) % 2 == 0 ? 1.0 : -1.0;
        for (double x : {0.3, 1.4}) {
            EXPECT_NEAR(g_function(n, -x), sign * g_function(n, x), 1e-12 * std::max(1.0, std::abs(g_function(n, x))));
        }
        // h_n g_n' - h_n' g_n does not depend on x.
        const double w0 = wronskian(hermite_function(n, 0.1), hermite_function_deriv(n, 0.1), g_function(n, 0.1), g_function_deriv(n, 0.1));
        for (double x : {-1.5, 0.8, 2.3}) {
            const double w = wronskian(hermite_function(n, x), hermite_function_deriv(n, x), g_function(n, x), g_function_deriv(n, x));
            EXPECT_NEAR(w, w0, 1e-11 * std::max(1.0, std::abs(w0)));
        }
    }
}

TEST(GFunction, OverflowIsRangeError) { EXPECT_THROW(g_function(2, 40.0), RangeError); }

TEST(Mehler, ConvergedSeriesMatchesClosedForm) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-2, 2);
    for (double z : {-0.9, -0.3, 0.6, 0.9}) {
        for (int t = 0; t < 10; ++t) {
            const double x = u(rng), y = u(rng);
            EXPECT_NEAR(mehler_series(x, y, z, 400), mehler_closed(x, y, z), 1e-10 * std::max(1.0, mehler_closed(x, y, z)));
        }
    }
    const std::complex<double> z(0.2, 0.5);
    EXPECT_LT(std::abs(mehler_series(0.4, -0.7, z, 200) - mehler_closed(0.4, -0.7, z)), 1e-12);
}

TEST(Laguerre, ExplicitLowOrder) {
    for (double x : {0.0, 0.5, 2.5, 7.0}) {
        EXPECT_NEAR(laguerre_assoc(0, 3, x), 1.0, 1e-15);
        EXPECT_NEAR(laguerre_assoc(1, 2, x), 3 - x, 1e-13);
        EXPECT_NEAR(laguerre_assoc(2, 1, x), (x * x - 6 * x + 6) / 2, 1e-12);
    }
}

TEST(Quadrature, GaussHermiteMoments) {
    for (int n : {10, 60, 200}) {
        const Rule r = gauss_hermite(n);
        double s0 = 0, s2 = 0, s4 = 0;
        for (std::size_t i = 0; i < r.x.size(); ++i) {
            const double x2 = r.x[i] * r.x[i];
            s0 += r.w[i];
            s2 += r.w[i] * x2;
            s4 += r.w[i] * x2 * x2;
        }
        EXPECT_NEAR(s0, std::sqrt(kPi), 1e-13);
        EXPECT_NEAR(s2, std::sqrt(kPi) / 2, 1e-13);
        EXPECT_NEAR(s4, 3 * std::sqrt(kPi) / 4, 1e-12);
    }
}

TEST(Quadrature, GaussLegendreExactness) {
    const Rule &g = gauss_legendre(16);
    for (int k = 0; k <= 31; ++k) {
        const double got = integrate(g, [k](double x) { return std::pow(x, k); });
        EXPECT_NEAR(got, k % 2 ? 0.0 : 2.0 / (k + 1), 1e-14) << k;
    }
    EXPECT_NEAR(integrate_gl([](double x) { return std::exp(-x * x); }, -10, 10, 40), std::sqrt(kPi), 1e-14);
}

TEST(EvalGridTest, UniformAndValidation) {
    const EvalGrid g = EvalGrid::uniform(-1, 1, 5);
    ASSERT_EQ(g.points.size(), 5u);
    EXPECT_DOUBLE_EQ(g.points[2], 0.0);
    EvalGrid bad;
    bad.points = {0, 1};
    bad.weights = {1};
    EXPECT_THROW(bad.validate(), DomainError);
}
