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
#include <cstdio>
#include <filesystem>
#include <numbers>

#include <gtest/gtest.h>

#include "homtomo/errors.hpp"
#include "homtomo/io.hpp"
#include "homtomo/states.hpp"

using namespace homtomo;

namespace {
const double kPi = std::numbers::pi;

std::string temp_path(const std::string &name) {
    return (std::filesystem::temp_directory_path() / ("homtomo_test_" + name)).string();
}
}  // namespace

TEST(Gaussian, VacuumWignerAndRadon) {
    for (double hbar : {1.0, 0.5, 2.0}) {
        const GaussianState v = GaussianState::vacuum(hbar);
        EXPECT_NEAR(wigner_gaussian(v, 0, 0), 1 / (kPi * hbar), 1e-15);
        for (double phi : {0.0, 0.7, 2.5}) {
            for (double c : {-1.0, 0.0, 0.4}) {
                EXPECT_NEAR(radon_gaussian(v, std::cos(phi), std::sin(phi), c), std::exp(-c * c / hbar) / std::sqrt(kPi * hbar), 1e-15);
            }
        }
    }
}

TEST(Gaussian, CoherentMeanAndWidth) {
    const GaussianState s{1.2, -0.7, 0, 1};
    const double phi = 0.9;
    const double mean = 1.2 * std::cos(phi) - 0.7 * std::sin(phi);
    for (double c : {mean - 1, mean, mean + 0.3}) {
        EXPECT_NEAR(radon_gaussian(s, std::cos(phi), std::sin(phi), c), std::exp(-(c - mean) * (c - mean)) / std::sqrt(kPi), 1e-15);
    }
}

TEST(Gaussian, ZetaDomain) {
    GaussianState s;
    s.zeta = {0.8, 0.7};
    EXPECT_THROW(s.validate(), DomainError);
    EXPECT_THROW(radon_gaussian(GaussianState::vacuum(), 0, 0, 1), DomainError);
}

TEST(Gaussian, SqueezedVariancesAreUncertaintyLimited) {
    const GaussianState s{0, 0, {0.4, 0.2}, 1};
    const GaussianStatistics st = gaussian_statistics(s);
    EXPECT_NEAR(st.sigma_max * st.sigma_min, 0.5, 1e-13);
    EXPECT_NEAR(st.varQ * st.varP - st.symCorr * st.symCorr, 0.25, 1e-13);
}

TEST(Gaussian, FourierNormalization) {
    const GaussianState s{0.3, 0.1, {0.2, -0.1}, 1};
    EXPECT_LT(std::abs(fourier_gaussian(s, 0, 0) - 1.0), 1e-15);
}

TEST(Density, FockOneTomogram) {
    // pi^{-1/2} e^{-x^2} 2 x^2 for |1><1| with hbar = 1
    const DensityMatrix rho = DensityMatrix::fock(1, 2);
    for (double phi : {0.0, 1.0}) {
        for (double x : {-1.5, 0.0, 0.6}) {
            EXPECT_NEAR(radon_from_density(rho, phi, x), std::exp(-x * x) * 2 * x * x / std::sqrt(kPi), 1e-14);
        }
    }
    TomogramGrid g;
    g.n_angles = 8;
    g.n_q = 257;
    g.q_half_width = 9;
    const Tomogram t = density_tomogram(rho, g);
    for (std::size_t i = 0; i < t.n_angles(); ++i) {
        EXPECT_NEAR(t.row_integral(i), 1.0, 1e-12);
        const double x = t.qs[100];
        EXPECT_NEAR(t.at(i, 100), std::exp(-x * x) * 2 * x * x / std::sqrt(kPi), 1e-14);
    }
}

TEST(Density, CoherentMatchesGaussianRadon) {
    const cplx alpha(0.5, 0.3);
    const DensityMatrix rho = DensityMatrix::coherent(alpha, 30);
    const GaussianState s = GaussianState::coherent(alpha);
    for (double phi : {0.2, 1.9}) {
        for (double c : {-0.5, 0.7, 1.4}) {
            EXPECT_NEAR(radon_from_density(rho, phi, c), radon_gaussian(s, std::cos(phi), std::sin(phi), c), 1e-13);
        }
    }
}

TEST(Density, ValidateAndSymmetrize) {
    DensityMatrix rho(2);
    rho(0, 0) = 0.5;
    rho(1, 1) = 0.5;
    rho(0, 1) = {0.1, 0.2};
    rho(1, 0) = {0.1, 0.2};
    EXPECT_THROW(rho.validate(), ConsistencyError);
    EXPECT_NEAR(rho.symmetrize(), std::abs(cplx(0.1, 0.2) - cplx(0.1, -0.2)), 1e-15);
    EXPECT_NO_THROW(rho.validate());
}

TEST(Moments, GaussianClosedForms) {
    const cplx alpha(0.4, -0.6);
    const MomentSet ms = gaussian_moments(GaussianState::coherent(alpha), 5);
    for (int k = 0; k <= 5; ++k) {
        for (int l = 0; k + l <= 5; ++l) {
            const cplx ref = std::pow(std::conj(alpha), k) * std::pow(alpha, l);
            EXPECT_LT(std::abs(ms.get(k, l) - ref), 1e-14) << k << "," << l;
        }
    }
    const MomentSet v = gaussian_moments(GaussianState::vacuum(), 4);
    EXPECT_LT(std::abs(v.get(1, 1)), 1e-16);
}

TEST(Moments, FromDensityAgreesWithClosedForm) {
    const GaussianState s{0.6, -0.2, {0.3, 0}, 1};
    const MomentSet g = gaussian_moments(s, 4);
    // Squeezed vacuum displaced: <a^dagger a> = |alpha|^2 + sinh^2 r. Check the photon number only.
    const double r = std::atanh(0.3);
    const cplx alpha = cplx(0.6, -0.2) / std::sqrt(2.0);
    EXPECT_NEAR(g.get(1, 1).real(), std::norm(alpha) + std::sinh(r) * std::sinh(r), 1e-14);
    const MomentSet m = moments_from_density(DensityMatrix::coherent({0.3, 0.2}, 40), 4);
    const MomentSet c = gaussian_moments(GaussianState::coherent({0.3, 0.2}), 4);
    for (int k = 0; k <= 4; ++k) {
        for (int l = 0; k + l <= 4; ++l) {
            EXPECT_LT(std::abs(m.get(k, l) - c.get(k, l)), 1e-13);
        }
    }
}

TEST(Tomogram, ValidateRejectsBadShapes) {
    Tomogram t;
    t.phis = {0, 1};
    t.qs = {-1, 0, 1};
    t.values = {1, 2};
    EXPECT_ANY_THROW(t.validate());
}

TEST(Tomogram, SourceInterpolatesAndIsHomogeneous) {
    const GaussianState s{0.4, 0.1, {0.2, 0.1}, 1};
    const Tomogram t = gaussian_tomogram(s);
    const RadonFn f = tomogram_source(t);
    const double phi = 0.37, c = 0.21;
    EXPECT_NEAR(f(std::cos(phi), std::sin(phi), c), radon_gaussian(s, std::cos(phi), std::sin(phi), c), 1e-6);
    EXPECT_NEAR(f(2 * std::cos(phi), 2 * std::sin(phi), 2 * c), f(std::cos(phi), std::sin(phi), c) / 2, 1e-12);
}

TEST(Io, FormatDoubleRoundTrips) {
    for (double v : {0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23, 1.0 + 1e-15}) {
        EXPECT_EQ(std::stod(format_double(v)), v);
    }
    EXPECT_EQ(format_double(-0.0), "0");
}

TEST(Io, TomogramCsvAndJsonRoundTripExactly) {
    GaussianState s{1.5, -0.5, {0.4, 0.2}, 1};
    TomogramGrid g;
    g.n_angles = 7;
    g.n_q = 65;
    g.q_half_width = 7;
    Tomogram t = gaussian_tomogram(s, g);
    t.meta["state"] = "test";
    for (const std::string ext : {".csv", ".json"}) {
        const std::string p = temp_path("rt" + ext);
        ext == ".csv" ? write_tomogram_csv(p, t) : write_tomogram_json(p, t);
        const Tomogram r = read_tomogram(p);
        EXPECT_EQ(r.phis, t.phis);
        EXPECT_EQ(r.qs, t.qs);
        EXPECT_EQ(r.values, t.values);
        EXPECT_EQ(r.hbar, t.hbar);
        EXPECT_EQ(r.meta, t.meta);
        std::remove(p.c_str());
    }
}

TEST(Io, DensityJsonRoundTrip) {
    const DensityMatrix rho = DensityMatrix::coherent({0.3, -0.1}, 4);
    const DensityMatrix r = density_from_json(nlohmann::json::parse(dump_json(density_to_json(rho))));
    for (int m = 0; m < 4; ++m) {
        for (int n = 0; n < 4; ++n) {
            EXPECT_EQ(r(m, n), rho(m, n));
        }
    }
}

TEST(Io, Errors) {
    EXPECT_THROW(read_tomogram("/nonexistent/x.csv"), IoError);
    const std::string p = temp_path("bad.csv");
    write_text_file(p, "# hbar=1\n# phis=0\n# qs=0,1,2\n1,2\n");
    EXPECT_THROW(read_tomogram_csv(p), IoError);
    std::remove(p.c_str());
    EXPECT_THROW(complex_from_json(nlohmann::json("x")), IoError);
}

TEST(Io, DumpJsonCompactAndPretty) {
    nlohmann::json j{{"a", 0.1}, {"b", {1.0 / 3.0, 2}}, {"c", "s"}};
    EXPECT_EQ(dump_json(j, -1), R"({"a": 0.10000000000000001, "b": [0.33333333333333331, 2], "c": "s"})");
    EXPECT_EQ(nlohmann::json::parse(dump_json(j)), j);
}
