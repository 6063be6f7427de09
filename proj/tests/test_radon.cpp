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

#include <gtest/gtest.h>

#include "homtomo/errors.hpp"
#include "homtomo/radon.hpp"

using namespace homtomo;

namespace {
const double kPi = std::numbers::pi;
}

TEST(Functionals, InverseSquareOfGaussian) {
    EXPECT_NEAR(reg_inv_square_functional([](double x) { return std::exp(-x * x); }), -2 * std::sqrt(kPi), 1e-9);
}

TEST(Functionals, InverseSquareOfShiftedGaussian) {
    // phi = x^2 e^{-x^2}: integrand 2 e^{-x^2}, integral sqrt(pi).
    EXPECT_NEAR(reg_inv_square_functional([](double x) { return x * x * std::exp(-x * x); }), std::sqrt(kPi), 1e-9);
}

TEST(Functionals, PrincipalValue) {
    // phi = x e^{-x^2}: integrand 2 e^{-x^2}.
    EXPECT_NEAR(pv_functional([](double x) { return x * std::exp(-x * x); }), std::sqrt(kPi), 1e-9);
    // Even functions give zero.
    EXPECT_NEAR(pv_functional([](double x) { return std::exp(-x * x); }), 0.0, 1e-15);
}

TEST(Radon, NumericMatchesGaussianClosedForm) {
    const GaussianState s{0.5, -0.3, {0.3, 0.2}, 1};
    const PlaneField f = PlaneField::analytic([&](double q, double p) { return wigner_gaussian(s, q, p); }, 9);
    for (double phi : {0.0, 0.8, 2.2}) {
        for (double c : {-1.0, 0.1, 1.3}) {
            EXPECT_NEAR(radon_numeric(f, std::cos(phi), std::sin(phi), c), radon_gaussian(s, std::cos(phi), std::sin(phi), c), 1e-10);
        }
    }
}

TEST(Radon, Homogeneity) {
    const GaussianState s{0.2, 0.4, {-0.2, 0.1}, 1};
    for (double lam : {0.5, 2.0, -1.5}) {
        EXPECT_NEAR(radon_gaussian(s, lam * 0.6, lam * 0.8, lam * 0.3), radon_gaussian(s, 0.6, 0.8, 0.3) / std::abs(lam), 1e-14);
    }
}

TEST(Radon, FourierFromRadon) {
    const GaussianState s{0.7, 0.2, {0.25, 0}, 1};
    const RadonFn w = gaussian_source(s);
    for (auto [u, v] : {std::pair{0.5, 0.3}, {-1.0, 0.4}}) {
        EXPECT_LT(std::abs(fourier_from_radon(w, u, v, 1.0, 10) - fourier_gaussian(s, u, v)), 1e-10);
    }
}

TEST(Radon, FromFourierInversion) {
    const GaussianState s{0.1, -0.4, {0.2, 0.2}, 1};
    auto wt = [&](double u, double v) { return fourier_gaussian(s, u, v); };
    const double phi = 0.6;
    for (double c : {-0.8, 0.0, 0.9}) {
        EXPECT_NEAR(radon_from_fourier(wt, std::cos(phi), std::sin(phi), c, 20), radon_gaussian(s, std::cos(phi), std::sin(phi), c), 1e-9);
    }
}

TEST(BackProjectionTest, VacuumOrigin) {
    const Tomogram t = gaussian_tomogram(GaussianState::vacuum());
    EXPECT_NEAR(wigner_from_tomogram(t, 0, 0), 1 / kPi, 1e-3);
    const BackProjection bp(t);
    EXPECT_TRUE(bp.warnings().empty());
    EXPECT_NEAR(bp(0.5, -0.5), std::exp(-0.5) / kPi, 1e-3);
}

TEST(BackProjectionTest, SqueezedProbes) {
    const GaussianState s{0, 0, {0.4, 0}, 1};
    const BackProjection bp(gaussian_tomogram(s));
    for (double q : {-0.5, 0.0, 0.5}) {
        for (double p : {-0.5, 0.0, 0.5}) {
            EXPECT_NEAR(bp(q, p), wigner_gaussian(s, q, p), 5e-3);
        }
    }
}

TEST(BackProjectionTest, CoarseAnglesWarn) {
    TomogramGrid g;
    g.n_angles = 16;
    const BackProjection bp(gaussian_tomogram(GaussianState::vacuum(), g));
    EXPECT_FALSE(bp.warnings().empty());
}

TEST(PlaneFieldTest, TailCheck) {
    const PlaneField wide = PlaneField::analytic([](double q, double p) { return std::exp(-(q * q + p * p) / 50); }, 3);
    EXPECT_THROW(wide.validate(), ConsistencyError);
}
