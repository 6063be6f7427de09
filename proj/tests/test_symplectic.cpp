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
#include "homtomo/symplectic.hpp"

using namespace homtomo;

TEST(Symplectic, RotationIsUnimodular) {
    for (double phi : {0.0, 0.3, 2.0, -1.1}) {
        const SymplecticMap r = SymplecticMap::rotation(phi);
        EXPECT_NEAR(r.det(), 1.0, 1e-15);
        EXPECT_NEAR(r.alpha, std::cos(phi), 1e-15);
        EXPECT_NEAR(r.beta, -std::sin(phi), 1e-15);
    }
    const SymplecticMap c = compose(SymplecticMap::rotation(0.4), SymplecticMap::rotation(0.5));
    const SymplecticMap r = SymplecticMap::rotation(0.9);
    EXPECT_NEAR(c.alpha, r.alpha, 1e-15);
    EXPECT_NEAR(c.gamma, r.gamma, 1e-15);
}

TEST(Symplectic, ValidateRejectsNonUnimodular) {
    SymplecticMap m{2, 0, 0, 1};
    EXPECT_THROW(m.validate(), ConsistencyError);
}

TEST(Symplectic, RadonArgumentsAreContragredient) {
    // u' (alpha q + gamma p) + v' (beta q + delta p) = u q + v p
    const SymplecticMap m = unitary_squeeze_matrices({0.35, -0.2}).first;
    for (double u : {0.3, -1.0}) {
        for (double v : {0.7, 2.0}) {
            const auto [u2, v2] = transform_radon_args(u, v, m);
            const auto [q2, p2] = transform_phase_args(1.3, -0.4, m);
            EXPECT_NEAR(u2 * q2 + v2 * p2, u * 1.3 + v * -0.4, 1e-14);
        }
    }
}

TEST(Symplectic, SqueezeRoundTrip) {
    for (cplx zp : {cplx(0.2, 0.1), cplx(-0.5, 0.3), cplx(0.9, -0.7)}) {
        const SqueezeParams p = SqueezeParams::unitary_family(zp);
        const SymplecticMap m = matrix_from_squeeze(p);
        EXPECT_NEAR(m.det(), 1.0, 1e-13);
        const SqueezeInversion inv = squeeze_from_matrix(m);
        EXPECT_FALSE(inv.branch_ambiguous);
        EXPECT_LT(std::abs(inv.params.zeta - p.zeta), 1e-12);
        EXPECT_LT(std::abs(inv.params.xi - p.xi), 1e-12);
    }
}

TEST(Symplectic, ComplexRealBijection) {
    const SymplecticMap m = unitary_squeeze_matrices({0.4, 0.25}).first;
    const ComplexSqueezeMap c = complex_from_real(m);
    EXPECT_LT(std::abs(c.det() - 1.0), 1e-13);
    const SymplecticMap back = real_from_complex(c).to_real();
    EXPECT_NEAR(back.alpha, m.alpha, 1e-13);
    EXPECT_NEAR(back.beta, m.beta, 1e-13);
    EXPECT_NEAR(back.gamma, m.gamma, 1e-13);
    EXPECT_NEAR(back.delta, m.delta, 1e-13);
    // Unitary squeezes have nu = conj(kappa), mu = conj(lambda).
    EXPECT_LT(std::abs(c.nu - std::conj(c.kappa)), 1e-13);
    EXPECT_LT(std::abs(c.mu - std::conj(c.lambda)), 1e-13);
}

TEST(Symplectic, ZetaPrimeRoundTrip) {
    for (cplx z : {cplx(0.1, 0), cplx(0.3, -0.6), cplx(-0.95, 0.1)}) {
        EXPECT_LT(std::abs(zeta_from_prime(zeta_prime_from_zeta(z)) - z), 1e-13);
    }
    // zeta = tanh|zeta'| zeta'/|zeta'|
    const cplx zp(0.6, 0.8);
    EXPECT_LT(std::abs(zeta_from_prime(zp) - std::tanh(1.0) * zp), 1e-15);
    EXPECT_THROW(zeta_prime_from_zeta(1.0), DomainError);
}

TEST(Symplectic, SmallEpsilonBranch) {
    for (cplx e : {cplx(1e-6, 0), cplx(3e-5, 2e-5), cplx(2e-4, 0)}) {
        EXPECT_LT(std::abs(cosh_even(e) - std::cosh(e)), 1e-15);
        EXPECT_LT(std::abs(sinhc(e) - std::sinh(e) / e), 1e-15);
    }
    EXPECT_EQ(sinhc(0.0), cplx(1.0));
}

TEST(Symplectic, BranchPointIsDomainError) {
    const SymplecticMap minus_id{-1, 0, 0, -1};
    EXPECT_THROW(squeeze_from_matrix(minus_id), DomainError);
}

TEST(Symplectic, UnitaryFlagValidation) {
    SqueezeParams p;
    p.unitary = true;
    p.zeta = {0.2, 0.1};
    p.xi = {0.2, 0.1};  // should be the conjugate
    EXPECT_THROW(p.validate(), ConsistencyError);
}
