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
#include "homtomo/reconstruct.hpp"
#include "homtomo/specfun.hpp"

using namespace homtomo;

namespace {

const double kPi = std::numbers::pi;

cplx coherent_element(cplx a, int m, int n) {
    return std::exp(-std::norm(a)) * std::pow(a, m) * std::pow(std::conj(a), n) / std::sqrt(factorial(m) * factorial(n));
}

ProjectionSource analytic_gaussian(const GaussianState &s, double half_width = 12) {
    ProjectionSource::AnalyticOptions o;
    o.half_width = half_width;
    return ProjectionSource::analytic(gaussian_source(s), s.hbar, o);
}

}  // namespace

TEST(Reconstruct, VacuumFromSampledTomogram) {
    const Tomogram t = gaussian_tomogram(GaussianState::vacuum());
    EXPECT_NEAR(fock_element_from_tomogram(t, 0, 0).real(), 1.0, 1e-12);
    EXPECT_LT(std::abs(fock_element_from_tomogram(t, 1, 0)), 1e-12);
    EXPECT_NEAR(qfunction_from_tomogram(t, 0), 1 / kPi, 1e-12);
    EXPECT_NEAR(qfunction_from_tomogram(t, {0.5, -0.4}), std::exp(-0.41) / kPi, 1e-12);
}

TEST(Reconstruct, CoherentFockElementsAnalytic) {
    const cplx a(0.5, 0.3);
    const ProjectionSource src = analytic_gaussian(GaussianState::coherent(a));
    for (int m = 0; m <= 5; ++m) {
        for (int n = 0; n <= 5; ++n) {
            EXPECT_LT(std::abs(fock_element(src, m, n).value - coherent_element(a, m, n)), 1e-10) << m << "," << n;
        }
    }
}

TEST(Reconstruct, RepresentationsGiveTheSameElements) {
    const GaussianState s{0.3, -0.6, {0.2, 0.1}, 1};
    const ProjectionSource src = analytic_gaussian(s);
    for (PatternRep r : {PatternRep::HermiteSeries, PatternRep::DerivProduct, PatternRep::DerivProductSwapped}) {
        for (auto [m, n] : {std::pair{0, 0}, {2, 1}, {1, 4}, {3, 3}}) {
            EXPECT_LT(std::abs(fock_element(src, m, n, r).value - fock_element(src, m, n).value), 1e-10) << to_string(r);
        }
    }
}

TEST(Reconstruct, DensityIsHermitianWithUnitTrace) {
    const GaussianState s{0.4, 0.2, {0.15, -0.1}, 1};
    const DensityReconstruction r = reconstruct_density(analytic_gaussian(s), 12);
    EXPECT_LT(r.hermitian_defect, 1e-10);
    EXPECT_NEAR(r.rho.trace().real(), 1.0, 1e-6);
    // Agrees with the moment-based route on the low corner.
    const MomentDensity md = density_from_moments(gaussian_moments(s, 40), 3);
    for (int m = 0; m < 3; ++m) {
        for (int n = 0; n < 3; ++n) {
            EXPECT_LT(std::abs(r.rho(m, n) - md.rho(m, n)), 1e-6);
        }
    }
}

TEST(Reconstruct, MomentRoutesAgreeWithClosedForm) {
    const GaussianState s{1.0, -0.5, {0.3, 0}, 1};
    const ProjectionSource src = analytic_gaussian(s, 14);
    const MomentSet ref = gaussian_moments(s, 4);
    const MomentSet avg = moments_angle_average(src, 4);
    for (int k = 0; k <= 4; ++k) {
        for (int l = 0; k + l <= 4; ++l) {
            EXPECT_LT(std::abs(avg.get(k, l) - ref.get(k, l)), 1e-9) << k << "," << l;
            if (k + l > 0) {
                const auto d = AngleDivision::harmonic(k + l, 0.37);
                EXPECT_LT(std::abs(moment_discrete_angles(src, k, l, d).value - ref.get(k, l)), 1e-9);
            }
        }
    }
    for (const MomentSet &p : {moments_preset_quarter(src), moments_preset_thirds(src), moments_low_order_custom(src, {0.1, 0.9, 2.0})}) {
        EXPECT_LT(std::abs(p.get(0, 1) - ref.get(0, 1)), 1e-9);
        EXPECT_LT(std::abs(p.get(0, 2) - ref.get(0, 2)), 1e-9);
        EXPECT_LT(std::abs(p.get(1, 1) - ref.get(1, 1)), 1e-9);
    }
    const auto mu = moments_linear_solve(src, 3, {0.0, 0.5, 1.3, 2.4});
    for (int j = 0; j <= 3; ++j) {
        EXPECT_LT(std::abs(mu[j] - ref.get(j, 3 - j)), 1e-8);
    }
}

TEST(Reconstruct, FirstMomentIsDisplacement) {
    const double hbar = 0.5;
    const GaussianState s{0.8, -0.3, {0.1, 0.2}, hbar};
    const MomentSet ms = moments_angle_average(analytic_gaussian(s, 8), 1);
    EXPECT_LT(std::abs(ms.get(0, 1) - cplx(0.8, -0.3) / std::sqrt(2 * hbar)), 1e-10);
}

TEST(Reconstruct, ArityAndDegeneracyErrors) {
    const ProjectionSource src = analytic_gaussian(GaussianState::vacuum());
    EXPECT_THROW(moments_low_order_custom(src, {0.1, 0.5, 0.9, 1.2}), ArityError);
    EXPECT_THROW(moments_low_order_custom(src, {0.3, 0.3 + kPi}), DomainError);
    EXPECT_THROW(moment_discrete_angles(src, 1, 1, AngleDivision::harmonic(3)), ArityError);
    EXPECT_THROW(moment_discrete_angles(src, 1, 1, AngleDivision::explicit_angles({0, 1, 2})), ArityError);
    EXPECT_THROW(density_from_moments(gaussian_moments(GaussianState::vacuum(), 3), 3), RangeError);
}

TEST(Reconstruct, NarrowSampledWindowRaisesTailError) {
    TomogramGrid g;
    g.q_half_width = 4;
    const Tomogram t = gaussian_tomogram(GaussianState::vacuum(), g);
    EXPECT_THROW(moment_angle_average(t, 5, 5), AccuracyError);
}

TEST(Reconstruct, CoarseGridFailsTheGate) {
    TomogramGrid g;
    g.n_angles = 33;
    g.n_q = 17;
    g.q_half_width = 8;
    const Tomogram t = gaussian_tomogram(GaussianState{1.0, 0.5, {0.5, 0}, 1}, g);
    EXPECT_THROW(fock_element_from_tomogram(t, 3, 1), AccuracyError);
    QuadratureSpec off;
    off.gate = false;
    EXPECT_NO_THROW(fock_element_from_tomogram(t, 3, 1, PatternRep::Canonical, off));
}

TEST(Reconstruct, OffGridAnglesAreInterpolated) {
    const GaussianState s{0.5, 0.2, {0.2, 0}, 1};
    const ProjectionSource src = ProjectionSource::sampled(gaussian_tomogram(s));
    bool interp = true;
    hermite_projection(src, 1, src.angles()[10], &interp);
    EXPECT_FALSE(interp);
    hermite_projection(src, 1, src.angles()[10] + 0.003, &interp);
    EXPECT_TRUE(interp);
}

TEST(Reconstruct, CircleDivision) {
    for (int n = 0; n <= 12; ++n) {
        for (int s = -30; s <= 30; ++s) {
            EXPECT_EQ(circle_division_sum(n, s), s % (n + 1) == 0 ? n + 1 : 0) << n << "," << s;
        }
    }
}

TEST(Reconstruct, ProjectionIdentity) {
    const GaussianState s{0.2, 0.7, {-0.2, 0.1}, 1};
    const ProjectionSource src = analytic_gaussian(s, 12);
    const MomentSet ms = gaussian_moments(s, 4);
    for (double phi : {0.0, 0.6, 2.9}) {
        const auto [lhs, rhs] = projection_identity_check(src, ms, 4, phi);
        EXPECT_LT(std::abs(lhs - rhs), 1e-9);
    }
}

TEST(Reconstruct, AngleDivisionValidation) {
    const AngleDivision h = AngleDivision::harmonic(3, 0.2);
    ASSERT_EQ(h.angles.size(), 4u);
    EXPECT_NEAR(h.angles[1] - h.angles[0], kPi / 4, 1e-15);
    EXPECT_THROW(AngleDivision::explicit_angles({0.1, 0.1 + kPi}), DomainError);
}
