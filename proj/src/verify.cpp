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

#include "homtomo/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>

#include "homtomo/errors.hpp"
#include "homtomo/io.hpp"
#include "homtomo/kernels.hpp"
#include "homtomo/pattern.hpp"
#include "homtomo/quadrature.hpp"
#include "homtomo/radon.hpp"
#include "homtomo/reconstruct.hpp"
#include "homtomo/specfun.hpp"
#include "homtomo/states.hpp"
#include "homtomo/symplectic.hpp"

namespace homtomo {

namespace {

constexpr double kPi = std::numbers::pi;

class Suite {
  public:
    Suite(VerifyReport &r, std::string prefix) : r_(r), prefix_(std::move(prefix)) {}

    // Runs f, which returns the measured defect; an exception fails the check with its message.
    void check(const std::string &name, double tol, const std::function<double()> &f) {
        CheckResult c;
        c.name = prefix_ + "." + name;
        c.tol = tol;
        try {
            c.value = f();
            c.passed = std::isfinite(c.value) && c.value <= tol;
        } catch (const std::exception &e) {
            c.passed = false;
            c.value = std::numeric_limits<double>::quiet_NaN();
            c.detail = e.what();
        }
        r_.checks.push_back(std::move(c));
    }

  private:
    VerifyReport &r_;
    std::string prefix_;
};

double second_diff(const std::function<double(double)> &f, double x, double h = 1e-3) {
    return (-f(x - 2 * h) + 16 * f(x - h) - 30 * f(x) + 16 * f(x + h) - f(x + 2 * h)) / (12 * h * h);
}

double first_diff(const std::function<double(double)> &f, double x, double h = 1e-3) {
    return (f(x - 2 * h) - 8 * f(x - h) + 8 * f(x + h) - f(x + 2 * h)) / (12 * h);
}

GaussianState random_state(std::mt19937_64 &g, double zmax) {
    std::uniform_real_distribution<double> U(-1, 1);
    cplx z;
    do {
        z = cplx(U(g), U(g)) * zmax;
    } while (std::abs(z) > zmax);
    return {U(g), U(g), z, 1.0};
}

// Two-peak non-Gaussian field for the plane Radon checks.
PlaneField two_peaks() {
    return PlaneField::analytic(
        [](double q, double p) {
            return 0.6 / kPi * std::exp(-(q - 0.5) * (q - 0.5) - (p + 0.3) * (p + 0.3)) +
                   0.4 / (kPi * 0.5) * std::exp(-((q + 0.7) * (q + 0.7) + (p - 0.4) * (p - 0.4)) / 0.5);
        },
        8.0);
}

void suite_specfun(VerifyReport &rep, std::mt19937_64 &rng) {
    Suite s(rep, "specfun");
    s.check("orthonormality", 1e-8, [] {
        const Rule r = gauss_hermite(200);
        double worst = 0;
        for (int m = 0; m <= 15; ++m) {
            for (int n = 0; n <= 15; ++n) {
                double acc = 0;
                for (std::size_t i = 0; i < r.x.size(); ++i) {
                    acc += r.w[i] * hermite_scaled(m, r.x[i]) * hermite_scaled(n, r.x[i]);
                }
                worst = std::max(worst, std::abs(acc / std::sqrt(kPi) - (m == n ? 1.0 : 0.0)));
            }
        }
        return worst;
    });
    s.check("wronskian", 1e-7, [] {
        double worst = 0;
        for (int n = 0; n <= 10; ++n) {
            for (double x = -4; x <= 4.0001; x += 0.5) {
                const double w = wronskian(hermite_function(n, x), hermite_function_deriv(n, x), g_function(n, x), g_function_deriv(n, x));
                worst = std::max(worst, std::abs(w - 2));
                const double wf = wronskian([n](double t) { return hermite_function(n, t); },
                                            [n](double t) { return g_function(n, t); }, x);
                worst = std::max(worst, std::abs(wf - 2) * 1e-2);  // finite differences: looser by 100
            }
        }
        return worst;
    });
    s.check("oscillator_ode", 1e-5, [] {
        double worst = 0;
        for (int n = 0; n <= 10; ++n) {
            for (int kind = 0; kind < 2; ++kind) {
                std::function<double(double)> f = [n, kind](double x) { return kind == 0 ? hermite_function(n, x) : g_function(n, x); };
                double res = 0, scale = 0;
                for (double x = -3; x <= 3.0001; x += 0.25) {
                    const double d2 = second_diff(f, x), v = f(x);
                    scale = std::max(scale, std::abs(d2) + x * x * std::abs(v) + (2 * n + 1) * std::abs(v));
                    res = std::max(res, std::abs(d2 - x * x * v + (2 * n + 1) * v));
                }
                worst = std::max(worst, res / scale);
            }
        }
        return worst;
    });
    s.check("parity", 1e-14, [] {
        double worst = 0;
        for (int n = 0; n <= 12; ++n) {
            const double sh = (n % 2 == 0) ? 1.0 : -1.0;
            for (double x = 0.1; x < 4; x += 0.37) {
                const double h = hermite_function(n, x), g = g_function(n, x);
                worst = std::max(worst, std::abs(hermite_function(n, -x) - sh * h) / std::max(1e-300, std::abs(h)));
                worst = std::max(worst, std::abs(g_function(n, -x) + sh * g) / std::max(1e-300, std::abs(g)));
            }
        }
        return worst;
    });
    s.check("hermite_product", 1e-9, [] {
        double worst = 0;
        for (double x : {-2.3, -0.7, 0.4, 1.9, 3.1}) {
            for (int m = 0; m <= 8; ++m) {
                for (int n = 0; n <= 8; ++n) {
                    double rhs = 0, mag = 0;
                    for (int j = 0; j <= std::min(m, n); ++j) {
                        const double c = factorial(m) * factorial(n) / (factorial(j) * factorial(m - j) * factorial(n - j));
                        const double t = c * std::pow(2.0, j) * hermite_poly(m + n - 2 * j, x);
                        rhs += t;
                        mag += std::abs(t);
                    }
                    worst = std::max(worst, std::abs(hermite_poly(m, x) * hermite_poly(n, x) - rhs) / std::max(1.0, mag));
                }
            }
        }
        return worst;
    });
    s.check("ladder", 1e-5, [] {
        double worst = 0;
        for (double x = -3; x <= 3.0001; x += 0.5) {
            for (int n = 0; n <= 8; ++n) {
                std::function<double(double)> h = [n](double t) { return hermite_function(n, t); };
                const double up = (x * h(x) - first_diff(h, x)) / std::sqrt(2.0 * (n + 1));
                worst = std::max(worst, std::abs(up - hermite_function(n + 1, x)));
            }
            std::function<double(double)> g0 = [](double t) { return g_function(0, t); };
            std::function<double(double)> gm = [](double t) { return g_function(-1, t); };
            const double scale = std::max(1.0, std::abs(gm(x)));
            worst = std::max(worst, std::abs((x * g0(x) + first_diff(g0, x)) / std::sqrt(2.0) - gm(x)) / scale);
            worst = std::max(worst, std::abs(x * gm(x) - first_diff(gm, x)) / scale);
        }
        return worst;
    });
    s.check("dawson_reference", 1e-12, [] {
        // F(1) to 18 digits and a direct quadrature of exp(t^2 - x^2) at x = 2.5.
        const double e1 = std::abs(dawson(1.0) - 0.538079506912768419) / 0.538079506912768419;
        const double x = 2.5;
        const double direct = integrate_gl([x](double t) { return std::exp(t * t - x * x); }, 0.0, x, 40);
        return std::max(e1, std::abs(dawson(x) - direct) / direct);
    });
    s.check("dawson_asymptotic", 1e-3, [] { return std::abs(dawson(6.0) - (1 / 12.0 + 1 / (4 * 216.0))); });
    s.check("dawson_switch_continuity", 1e-12, [] {
        double worst = 0;
        for (double sw : {4.0, 8.0}) {
            worst = std::max(worst, std::abs(dawson(sw - 1e-12) - dawson(sw + 1e-12)));
        }
        return worst;
    });
    s.check("dawson_odd", 0.0, [] {
        double worst = 0;
        for (double x = 0.05; x < 12; x += 0.61) {
            worst = std::max(worst, std::abs(dawson(-x) + dawson(x)));
        }
        return worst;
    });
    s.check("mehler_converged_series", 1e-10, [&rng] {
        std::uniform_real_distribution<double> U(-2, 2);
        double worst = 0;
        for (double z : {0.3, -0.3, 0.6, -0.6, 0.9, -0.9}) {
            const int N = int(std::ceil(std::log(1e-18) / std::log(std::abs(z)))) + 60;
            for (int i = 0; i < 30; ++i) {
                const double x = U(rng), y = U(rng);
                const double c = mehler_closed(x, y, z);
                worst = std::max(worst, std::abs(mehler_series(x, y, z, N) - c) / std::max(1.0, std::abs(c)));
            }
        }
        return worst;
    });
    s.check("laguerre_explicit", 1e-10, [] {
        double worst = 0;
        for (int n = 0; n <= 8; ++n) {
            for (int k = -n; k <= 4; ++k) {
                for (double x : {0.3, 1.7, 4.2}) {
                    // sum_j (-1)^j C(n+k, n-j) x^j / j!, with C for negative top taken as a falling product.
                    double s = 0;
                    for (int j = 0; j <= n; ++j) {
                        if (n + k < n - j && n + k >= 0) {
                            continue;
                        }
                        double c = 1;
                        for (int t = 0; t < n - j; ++t) {
                            c *= double(n + k - t) / (t + 1);
                        }
                        s += ((j % 2 == 0) ? 1 : -1) * c * std::pow(x, j) / factorial(j);
                    }
                    worst = std::max(worst, std::abs(laguerre_assoc(n, k, x) - s) / std::max(1.0, std::abs(s)));
                }
            }
        }
        return worst;
    });
    s.check("g_explicit_form", 1e-8, [] {
        double worst = 0;
        for (int n = 0; n <= 4; ++n) {
            for (double x = -2; x <= 2.0001; x += 0.25) {
                const double a = g_function(n, x), b = g_function_explicit(n, x);
                worst = std::max(worst, std::abs(a - b) / std::max(1.0, std::abs(a)));
            }
        }
        return worst;
    });
    s.check("simd_equivalence", 1e-12, [] {
        const kernels::KernelTable *v = kernels::avx2_kernels();
        if (!v) {
            return 0.0;
        }
        const kernels::KernelTable &r = kernels::scalar_kernels();
        const std::size_t n = 1031;
        std::vector<double> a(n), b(n), w(n), seed(n), A(7 * n), o1(7), o2(7);
        for (std::size_t i = 0; i < n; ++i) {
            a[i] = std::sin(0.37 * i);
            b[i] = std::cos(0.11 * i) - 0.2;
            w[i] = 1.0 / (1 + i);
            seed[i] = std::exp(-0.5 * a[i] * a[i]);
        }
        for (std::size_t i = 0; i < A.size(); ++i) {
            A[i] = std::sin(0.013 * i);
        }
        double worst = std::abs(r.dot(a.data(), b.data(), n) - v->dot(a.data(), b.data(), n));
        worst = std::max(worst, std::abs(r.dot3(w.data(), a.data(), b.data(), n) - v->dot3(w.data(), a.data(), b.data(), n)));
        r.gemv(A.data(), 7, n, b.data(), o1.data());
        v->gemv(A.data(), 7, n, b.data(), o2.data());
        for (int i = 0; i < 7; ++i) {
            worst = std::max(worst, std::abs(o1[i] - o2[i]));
        }
        std::vector<double> h1(21 * n), h2(21 * n);
        r.hermite_rows(20, a.data(), seed.data(), n, h1.data());
        v->hermite_rows(20, a.data(), seed.data(), n, h2.data());
        for (std::size_t i = 0; i < h1.size(); ++i) {
            worst = std::max(worst, std::abs(h1[i] - h2[i]));
        }
        return worst;
    });
}

SymplecticMap random_map(std::mt19937_64 &g) {
    std::uniform_real_distribution<double> U(-1, 1);
    const SymplecticMap sq = unitary_squeeze_matrices(cplx(U(g), U(g)) * 0.5).first;
    const SymplecticMap shear{1, 0, 0.8 * U(g), 1};
    return compose(compose(SymplecticMap::rotation(kPi * U(g)), sq), shear);
}

double map_distance(const SymplecticMap &a, const SymplecticMap &b) {
    return std::max({std::abs(a.alpha - b.alpha), std::abs(a.beta - b.beta), std::abs(a.gamma - b.gamma), std::abs(a.delta - b.delta)});
}

void suite_symplectic(VerifyReport &rep, std::mt19937_64 &rng) {
    Suite s(rep, "symplectic");
    s.check("unimodular_composition", 1e-11, [&rng] {
        double worst = 0;
        for (int t = 0; t < 10; ++t) {
            SymplecticMap m = SymplecticMap::identity();
            for (int k = 0; k < 20; ++k) {
                m = compose(m, random_map(rng));
            }
            worst = std::max(worst, std::abs(m.det() - 1) / std::max(1.0, std::abs(m.alpha * m.delta)));
        }
        return worst;
    });
    s.check("squeeze_roundtrip", 1e-9, [&rng] {
        double worst = 0;
        int used = 0;
        while (used < 50) {
            const SymplecticMap m = random_map(rng);
            if ((m.alpha + m.delta) / 2 <= -1) {
                continue;
            }
            ++used;
            const SqueezeInversion inv = squeeze_from_matrix(m);
            worst = std::max(worst, map_distance(matrix_from_squeeze(inv.params), m));
        }
        return worst;
    });
    s.check("complex_real_bijection", 1e-13, [&rng] {
        double worst = 0;
        for (int t = 0; t < 50; ++t) {
            const SymplecticMap m = random_map(rng);
            const ComplexEntriesMap back = real_from_complex(complex_from_real(m));
            worst = std::max(worst, map_distance(back.to_real(1e-12), m));
            const ComplexSqueezeMap c = complex_from_real(m);
            worst = std::max(worst, std::abs(c.det() - 1.0) * 0.01);
        }
        return worst;
    });
    s.check("unitary_structure", 1e-12, [&rng] {
        std::uniform_real_distribution<double> U(-0.6, 0.6);
        double worst = 0;
        for (int t = 0; t < 50; ++t) {
            const auto [real, cpx] = unitary_squeeze_matrices(cplx(U(rng), U(rng)));
            worst = std::max({worst, std::abs(real.det() - 1), std::abs(cpx.nu - std::conj(cpx.kappa)),
                              std::abs(cpx.lambda - std::conj(cpx.mu)), std::abs(cpx.det() - 1.0)});
        }
        return worst;
    });
    s.check("small_eps_branch", 1e-13, [] {
        double worst = 0;
        for (double ang = 0; ang < 2 * kPi; ang += 0.7) {
            const cplx below = std::polar(1e-4 * (1 - 1e-9), ang), above = std::polar(1e-4 * (1 + 1e-9), ang);
            worst = std::max(worst, std::abs(sinhc(below) - std::sinh(below) / below));
            worst = std::max(worst, std::abs(sinhc(below) - sinhc(above)));
            worst = std::max(worst, std::abs(cosh_even(below) - std::cosh(below)));
        }
        return worst;
    });
    s.check("zeta_prime_roundtrip", 1e-12, [&rng] {
        std::uniform_real_distribution<double> U(-0.65, 0.65);
        double worst = 0;
        for (int t = 0; t < 50; ++t) {
            const cplx z(U(rng), U(rng));
            worst = std::max(worst, std::abs(zeta_from_prime(zeta_prime_from_zeta(z)) - z));
        }
        return worst;
    });
    s.check("contragredient_args", 1e-12, [&rng] {
        std::uniform_real_distribution<double> U(-2, 2);
        double worst = 0;
        for (int t = 0; t < 50; ++t) {
            const SymplecticMap m = random_map(rng);
            const double q = U(rng), p = U(rng), u = U(rng), v = U(rng);
            const auto [u2, v2] = transform_radon_args(u, v, m);
            const auto [q2, p2] = transform_phase_args(q, p, m);
            worst = std::max(worst, std::abs(u * q + v * p - (u2 * q2 + v2 * p2)) / (1 + std::abs(u * q) + std::abs(v * p)));
        }
        return worst;
    });
}

void suite_radon(VerifyReport &rep, std::mt19937_64 &rng) {
    Suite s(rep, "radon");
    s.check("tomogram_normalization", 1e-6, [&rng] {
        double worst = 0;
        for (int t = 0; t < 3; ++t) {
            const Tomogram tm = gaussian_tomogram(random_state(rng, 0.7));
            for (std::size_t i = 0; i < tm.n_angles(); ++i) {
                worst = std::max(worst, std::abs(tm.row_integral(i) - 1));
            }
        }
        return worst;
    });
    s.check("density_radon_nonnegative", 1e-12, [&rng] {
        std::normal_distribution<double> N(0, 1);
        const int dim = 6;
        std::vector<cplx> A(dim * dim);
        for (auto &a : A) {
            a = cplx(N(rng), N(rng));
        }
        DensityMatrix rho(dim);
        for (int m = 0; m < dim; ++m) {
            for (int n = 0; n < dim; ++n) {
                cplx acc = 0;
                for (int k = 0; k < dim; ++k) {
                    acc += A[m * dim + k] * std::conj(A[n * dim + k]);
                }
                rho(m, n) = acc;
            }
        }
        const cplx tr = rho.trace();
        for (int m = 0; m < dim; ++m) {
            for (int n = 0; n < dim; ++n) {
                rho(m, n) /= tr;
            }
        }
        double lowest = 0;
        for (double phi = 0; phi < kPi; phi += 0.1) {
            for (double q = -6; q <= 6; q += 0.05) {
                lowest = std::min(lowest, radon_from_density(rho, phi, q));
            }
        }
        return -lowest;
    });
    s.check("covariance_law", 1e-9, [&rng] {
        double worst = 0;
        const RadonFn vac = gaussian_source(GaussianState::vacuum());
        for (int t = 0; t < 5; ++t) {
            const GaussianState st = random_state(rng, 0.7);
            const RadonFn tr = transform_tomogram(vac, {st.qbar, st.pbar}, unitary_squeeze_matrices(st.zeta).first);
            const TomogramGrid g = default_grid(st);
            for (double phi : uniform_angles(45)) {
                for (double q : uniform_positions(g.q_half_width, 257)) {
                    const double c = std::cos(phi), sn = std::sin(phi);
                    worst = std::max(worst, std::abs(tr(c, sn, q) - radon_gaussian(st, c, sn, q)));
                }
            }
        }
        return worst;
    });
    s.check("fourier_radon", 1e-7, [&rng] {
        std::uniform_real_distribution<double> U(-1, 1);
        double worst = 0;
        const GaussianState st = random_state(rng, 0.5);
        const RadonFn f = gaussian_source(st);
        for (double b : {0.5, 1.0, 2.0}) {
            for (int t = 0; t < 4; ++t) {
                const double u = U(rng), v = U(rng);
                const cplx num = fourier_from_radon(f, b * u, b * v, b, 14.0);
                worst = std::max(worst, std::abs(num - fourier_gaussian(st, b * u, b * v)));
            }
        }
        return worst;
    });
    s.check("radon_from_fourier", 1e-7, [&rng] {
        const GaussianState st = random_state(rng, 0.5);
        double worst = 0;
        for (double phi : {0.0, 0.9, 2.2}) {
            for (double c : {-1.0, 0.2, 1.3}) {
                const double w = radon_from_fourier([&](double u, double v) { return fourier_gaussian(st, u, v); },
                                                    std::cos(phi), std::sin(phi), c, 40.0);
                worst = std::max(worst, std::abs(w - radon_gaussian(st, std::cos(phi), std::sin(phi), c)));
            }
        }
        return worst;
    });
    s.check("homogeneity", 1e-8, [] {
        const PlaneField f = two_peaks();
        double worst = 0;
        for (double mu : {-3.0, -1.0, 0.5, 2.0}) {
            for (auto [u, v, c] : {std::tuple{0.8, 0.3, 0.4}, std::tuple{-0.2, 1.1, -0.5}}) {
                const double base = radon_numeric(f, u, v, c);
                worst = std::max(worst, std::abs(radon_numeric(f, mu * u, mu * v, mu * c) - base / std::abs(mu)) / std::abs(base));
            }
        }
        return worst;
    });
    s.check("normalization", 1e-7, [] {
        const PlaneField f = two_peaks();
        double worst = 0;
        for (auto [u, v] : {std::pair{1.0, 0.0}, std::pair{0.6, -1.3}}) {
            const double r = std::hypot(u, v);
            const double tot = integrate_gl([&](double c) { return radon_numeric(f, u, v, c); }, -8 * r, 8 * r, 64);
            worst = std::max(worst, std::abs(tot - 1));
        }
        return worst;
    });
    s.check("backprojection_vacuum", 1e-3, [] {
        const Tomogram t = gaussian_tomogram(GaussianState::vacuum());
        return std::abs(wigner_from_tomogram(t, 0, 0) - 1 / kPi);
    });
    s.check("backprojection_squeezed", 5e-3, [] {
        const GaussianState st{0, 0, 0.4, 1.0};
        const BackProjection bp(gaussian_tomogram(st));
        double worst = 0;
        for (double q : {-0.8, 0.0, 0.8}) {
            for (double p : {-0.8, 0.0, 0.8}) {
                worst = std::max(worst, std::abs(bp(q, p) - wigner_gaussian(st, q, p)));
            }
        }
        return worst;
    });
    s.check("backprojection_roundtrip", 5e-3, [] {
        const GaussianState st{0.3, -0.2, cplx(0.2, 0.1), 1.0};
        const BackProjection bp(gaussian_tomogram(st));
        PlaneField f = bp.field();
        double worst = 0;
        for (double phi : {0.3, 1.4}) {
            for (double c : {-0.6, 0.1, 0.9}) {
                worst = std::max(worst, std::abs(radon_numeric(f, std::cos(phi), std::sin(phi), c) -
                                                 radon_gaussian(st, std::cos(phi), std::sin(phi), c)));
            }
        }
        return worst;
    });
    s.check("reg_inv_square_gaussian", 1e-9, [] {
        return std::abs(reg_inv_square_functional([](double x) { return std::exp(-x * x); }) + 2 * std::sqrt(kPi));
    });
    s.check("reg_inv_square_negative", 0.0, [] {
        return std::max(0.0, reg_inv_square_functional([](double x) { return std::exp(-x * x); }));
    });
    s.check("pv_odd_gaussian", 1e-9, [] {
        return std::abs(pv_functional([](double x) { return x * std::exp(-x * x); }) - std::sqrt(kPi));
    });
    s.check("scalar_product_fock_sum", 1e-8, [] {
        double worst = 0;
        for (double d : {0.3, 1.0, 2.0, 2.8}) {
            for (auto [x, y] : {std::pair{0.4, -0.3}, std::pair{1.2, 0.7}}) {
                // Abel-summed Fock expansion sum_n e^{-i n d} h_n(x) h_n(y).
                const cplx z = std::polar(1 - 1e-11, -d);
                const cplx fock = std::exp(-(x * x + y * y) / 2) / std::sqrt(kPi) * mehler_closed(x, y, z);
                worst = std::max(worst, std::abs(scalar_product_rotated(x, d, y, 0.0) - fock));
            }
        }
        return worst;
    });
    s.check("gaussian_statistics", 1e-8, [&rng] {
        const GaussianState st = random_state(rng, 0.6);
        const GaussianStatistics g = gaussian_statistics(st);
        double worst = 0;
        for (double phi : {0.0, 0.7, kPi / 2}) {
            auto row = [&](double c) { return radon_gaussian(st, std::cos(phi), std::sin(phi), c); };
            const double m1 = integrate_gl([&](double c) { return c * row(c); }, -15, 15, 120);
            const double m2 = integrate_gl([&](double c) { return c * c * row(c); }, -15, 15, 120);
            worst = std::max(worst, std::abs(m2 - m1 * m1 - g.varQ_at(phi)));
        }
        return worst;
    });
}

void suite_pattern(VerifyReport &rep, std::mt19937_64 &) {
    Suite s(rep, "pattern");
    const EvalGrid grid601 = EvalGrid::uniform(-6, 6, 601);
    s.check("cross_representation", 1e-8, [&] {
        double worst = 0;
        for (int m = 0; m <= 8; ++m) {
            for (int n = 0; n <= 8; ++n) {
                for (double x : grid601.points) {
                    const double a = pattern_hermite_series(m, n, x, SeriesOptions{.switch_large_x = false});
                    const double b = 0.5 * (pattern_deriv_product(m, n, x) + pattern_deriv_product(n, m, x));
                    worst = std::max(worst, std::abs(a - b));
                }
            }
        }
        return worst;
    });
    s.check("region_identity", 1e-9, [&] {
        double worst = 0;
        for (int n = 0; n <= 8; ++n) {
            for (int m = 0; m <= n + 1 && m <= 8; ++m) {
                for (double x : grid601.points) {
                    worst = std::max(worst, std::abs(pattern_deriv_product(m, n, x) - pattern_canonical_series(m, n, x)));
                }
            }
        }
        return worst;
    });
    s.check("table_parity_symmetry", 1e-12, [] {
        const EvalGrid g = EvalGrid::uniform(-5, 5, 201);
        double worst = 0;
        for (auto [m, n] : {std::pair{0, 0}, std::pair{3, 1}, std::pair{4, 4}, std::pair{5, 2}, std::pair{2, 7}}) {
            for (PatternRep r : {PatternRep::Canonical, PatternRep::HermiteSeries, PatternRep::DerivProductSymmetric}) {
                const PatternTable a = pattern_table(m, n, r, g), b = pattern_table(n, m, r, g);
                double scale = 1;
                for (double v : a.values) {
                    scale = std::max(scale, std::abs(v));
                }
                worst = std::max(worst, a.parity_defect() / scale);
                for (std::size_t i = 0; i < a.values.size(); ++i) {
                    worst = std::max(worst, std::abs(a.values[i] - b.values[i]) / scale);
                }
            }
        }
        return worst;
    });
    s.check("zero_values", 1e-10, [] {
        double worst = 0;
        for (int n = 0; n <= 12; ++n) {
            const double s1 = (n % 2 == 0) ? 1.0 : -1.0;
            worst = std::max(worst, std::abs(pattern_hermite_series(n, n, 0) - 2 * s1));
            const double want = -s1 * (2 * n + 3) / std::sqrt((n + 2.0) * (n + 1.0));
            worst = std::max(worst, std::abs(pattern_hermite_series(n + 2, n, 0) - want));
        }
        return worst;
    });
    s.check("series_truncation", 1e-12, [] {
        double worst = 0;
        SeriesOptions a{.switch_large_x = false}, b{.rel_tol = 1e-15, .switch_large_x = false};
        for (int m = 0; m <= 6; ++m) {
            for (int n = 0; n <= 6; ++n) {
                for (double x = -5; x <= 5.0001; x += 0.5) {
                    worst = std::max(worst, std::abs(pattern_hermite_series(m, n, x, a) - pattern_hermite_series(m, n, x, b)));
                }
            }
        }
        return worst;
    });
    s.check("adjacent_index_forms", 1e-9, [&] {
        double worst = 0;
        for (int n = 0; n <= 8; ++n) {
            for (double x : grid601.points) {
                worst = std::max(worst, std::abs(pattern_canonical(n + 1, n, x) - pattern_hermite_series(n + 1, n, x)));
            }
        }
        return worst;
    });
    s.check("orthogonality", 1e-6, [] {
        double worst = 0;
        for (int k = 0; k <= 6; ++k) {
            for (int m = 0; m <= 6; ++m) {
                for (int j = 0; j <= 4; ++j) {
                    worst = std::max(worst, std::abs(orthogonality_check(k, m, j).value - (k == m ? 1.0 : 0.0)));
                }
            }
        }
        return worst;
    });
    s.check("product_ode", 1e-5, [] {
        const EvalGrid g = EvalGrid::uniform(-3, 3, 31);
        double worst = 0;
        for (int m = 0; m <= 4; ++m) {
            for (int n = 0; n <= 4; ++n) {
                for (ProductChoice p : {ProductChoice::HH, ProductChoice::HG, ProductChoice::GH, ProductChoice::GG}) {
                    worst = std::max(worst, ode_residual(m, n, p, g));
                }
            }
        }
        for (int n = 0; n <= 4; ++n) {
            worst = std::max(worst, ode3_residual([n](double x) { return eigen_product(ProductChoice::HH, n, n, x); }, n, n, g));
        }
        return worst;
    });
    s.check("nonuniqueness_span", 1e-8, [] {
        const EvalGrid g = EvalGrid::uniform(-4, 4, 161);
        double worst = 0;
        for (auto [m, n] : {std::pair{5, 2}, std::pair{6, 0}, std::pair{1, 7}}) {
            worst = std::max(worst, pattern_nonuniqueness_residual(PatternRep::Canonical, PatternRep::HermiteSeries, m, n, g).residual);
            worst = std::max(worst, pattern_nonuniqueness_residual(PatternRep::DerivProduct, PatternRep::DerivProductSwapped, m, n, g).residual);
        }
        return worst;
    });
    s.check("f00_forms", 1e-10, [] {
        double worst = 0;
        for (double x = -4; x <= 4.0001; x += 0.1) {
            worst = std::max(worst, std::abs(pattern_f00_closed(x) - pattern_hermite_series(0, 0, x)));
            if (std::abs(x) <= 1) {
                worst = std::max(worst, std::abs(pattern_f00_closed(x) - pattern_f00_taylor(x, 60)));
            }
        }
        return worst;
    });
    s.check("asymptotic_resummation", 1e-9, [] {
        double worst = 0;
        for (int m = 0; m <= 3; ++m) {
            for (int n = 0; n <= 3; ++n) {
                // The direct sum cancels like exp(2x^2), so it is a usable reference only for moderate x.
                for (double x : {1.5, 2.5, -3.0}) {
                    const double a = pattern_asymptotic(m, n, x).value, b = pattern_asymptotic_series(m, n, x);
                    worst = std::max(worst, std::abs(a - b) / std::max(1e-300, std::abs(b)));
                }
            }
        }
        return worst;
    });
}

void suite_reconstruct(VerifyReport &rep, std::mt19937_64 &rng) {
    Suite s(rep, "reconstruct");
    const Tomogram vac = gaussian_tomogram(GaussianState::vacuum());
    const ProjectionSource vs = ProjectionSource::sampled(vac);
    s.check("vacuum_fock", 1e-6, [&] {
        return std::max(std::abs(fock_element(vs, 0, 0).value - 1.0), std::abs(fock_element(vs, 1, 1).value));
    });
    s.check("vacuum_qfunction", 1e-10, [&] {
        return std::max(std::abs(qfunction(vs, 0).value.real() - 1 / kPi),
                        std::abs(qfunction(vs, cplx(1.2, -1.6)).value.real() - std::exp(-4) / kPi));
    });
    s.check("qfunction_nonnegative", 1e-10, [&] {
        const GaussianState st{0.4, -0.2, 0.3, 1.0};
        const ProjectionSource src = ProjectionSource::sampled(gaussian_tomogram(st));
        double lowest = 0;
        for (double r = 0; r <= 2.5; r += 0.5) {
            for (double a = 0; a < 2 * kPi; a += kPi / 4) {
                lowest = std::min(lowest, qfunction(src, std::polar(r, a)).value.real());
            }
        }
        return -lowest;
    });
    s.check("density_trace_hermitian", 1e-5, [&] {
        const GaussianState st{0.5, -0.3, 0.3, 1.0};
        const ProjectionSource src = ProjectionSource::analytic(gaussian_source(st), 1.0, {default_grid(st).q_half_width});
        const DensityReconstruction d = reconstruct_density(src, 20);
        return std::max(std::abs(d.rho.trace() - 1.0), d.hermitian_defect * 1e3);
    });
    s.check("diagonal_angle_shift", 1e-9, [&] {
        const GaussianState st{0.3, 0.2, cplx(0.25, -0.1), 1.0};
        const TomogramGrid g = default_grid(st);
        const auto qs = uniform_positions(g.q_half_width, g.n_q);
        auto phis = uniform_angles(g.n_angles);
        const Tomogram a = sample_tomogram(gaussian_source(st), phis, qs, 1.0);
        for (double &p : phis) {
            p += 0.0123;
        }
        const Tomogram b = sample_tomogram(gaussian_source(st), phis, qs, 1.0);
        const ProjectionSource sa = ProjectionSource::sampled(a), sb = ProjectionSource::sampled(b);
        double worst = 0;
        for (int n = 0; n <= 5; ++n) {
            worst = std::max(worst, std::abs(fock_element(sa, n, n).value - fock_element(sb, n, n).value));
        }
        return worst;
    });
    s.check("circle_division", 0.0, [] {
        double worst = 0;
        for (int n = 0; n <= 12; ++n) {
            for (int sv = -2 * (n + 1); sv <= 2 * (n + 1); ++sv) {
                const long want = (sv % (n + 1) == 0) ? n + 1 : 0;
                worst = std::max(worst, double(std::labs(circle_division_sum(n, sv) - want)));
            }
        }
        return worst;
    });
    s.check("displacement_covariance", 1e-5, [] {
        const Displacement d{1.0, 0.5};
        const RadonFn f = transform_tomogram(gaussian_source(GaussianState::vacuum()), d, SymplecticMap::identity());
        const ProjectionSource src = ProjectionSource::analytic(f, 1.0, {std::hypot(d.qbar, d.pbar) + 8});
        const DensityReconstruction r = reconstruct_density(src, 16);
        const cplx a = moments_from_density(r.rho, 1).get(0, 1);
        return std::abs(a - cplx(d.qbar, d.pbar) / std::sqrt(2.0));
    });
    s.check("moment_routes", 1e-8, [] {
        const GaussianState st{1.0, -0.5, 0.3, 1.0};
        const ProjectionSource src = ProjectionSource::analytic(gaussian_source(st), 1.0, {default_grid(st).q_half_width});
        const MomentSet pq = moments_preset_quarter(src), pt = moments_preset_thirds(src);
        double worst = 0;
        for (int n = 0; n <= 4; ++n) {
            for (int k = 0; k <= n; ++k) {
                const int l = n - k;
                const cplx a = moment_angle_average(src, k, l).value;
                const cplx b = moment_discrete_angles(src, k, l, AngleDivision::harmonic(n, 0.37)).value;
                const cplx c = moment_discrete_angles(src, k, l, AngleDivision::harmonic(n, 2.05)).value;
                worst = std::max({worst, std::abs(a - b), std::abs(b - c), std::abs(a - c)});
                if (n <= 2) {
                    worst = std::max({worst, std::abs(a - pq.get(k, l)), std::abs(a - pt.get(k, l))});
                }
            }
        }
        return worst;
    });
    s.check("first_moment_displacement", 1e-6, [] {
        const GaussianState st{1.0, -0.5, 0.3, 1.0};
        const ProjectionSource src = ProjectionSource::analytic(gaussian_source(st), 1.0, {default_grid(st).q_half_width});
        return std::abs(moment_angle_average(src, 0, 1).value - cplx(1.0, -0.5) / std::sqrt(2.0));
    });
    s.check("vacuum_moments_vanish", 1e-8, [&] {
        // Hermite weights need the window widened by sqrt(order).
        TomogramGrid g = default_grid(GaussianState::vacuum());
        g.q_half_width *= std::sqrt(6.0);
        const ProjectionSource wide = ProjectionSource::sampled(gaussian_tomogram(GaussianState::vacuum(), g));
        double worst = 0;
        for (int n = 1; n <= 6; ++n) {
            for (int k = 0; k <= n; ++k) {
                worst = std::max(worst, std::abs(moment_angle_average(wide, k, n - k).value));
            }
        }
        return worst;
    });
    s.check("moment_conjugation", 1e-12, [] {
        const GaussianState st{0.2, 0.7, cplx(0.1, 0.3), 1.0};
        const ProjectionSource src = ProjectionSource::analytic(gaussian_source(st), 1.0, {default_grid(st).q_half_width});
        double worst = 0;
        for (int k = 0; k <= 3; ++k) {
            for (int l = 0; l <= 3; ++l) {
                worst = std::max(worst, std::abs(moment_angle_average(src, k, l).value - std::conj(moment_angle_average(src, l, k).value)));
            }
        }
        return worst;
    });
    s.check("density_from_coherent_moments", 1e-8, [] {
        const cplx a = 0.4;
        const MomentDensity d = density_from_moments(gaussian_moments(GaussianState::coherent(a), 48), 5, 20);
        double worst = 0;
        for (int m = 0; m < 5; ++m) {
            for (int n = 0; n < 5; ++n) {
                const cplx want = std::exp(-std::norm(a)) * std::pow(a, m) * std::pow(std::conj(a), n) / std::sqrt(factorial(m) * factorial(n));
                worst = std::max(worst, std::abs(d.rho(m, n) - want));
            }
        }
        return worst;
    });
    s.check("projection_identity", 1e-8, [] {
        double worst = 0;
        const GaussianState sq{0, 0, 0.2, 1.0};
        const ProjectionSource src = ProjectionSource::analytic(gaussian_source(sq), 1.0, {default_grid(sq).q_half_width});
        const auto [l1, r1] = projection_identity_check(src, gaussian_moments(sq, 4), 4, 0.7);
        worst = std::max(worst, std::abs(l1 - r1));
        const GaussianState coh = GaussianState::coherent(0.6);
        const ProjectionSource cs = ProjectionSource::analytic(gaussian_source(coh), 1.0, {default_grid(coh).q_half_width});
        const auto [l2, r2] = projection_identity_check(cs, gaussian_moments(coh, 1), 1, 0.0);
        worst = std::max({worst, std::abs(l2 - 1.2), std::abs(r2 - 1.2)});
        return worst;
    });
    s.check("moment_pipeline", 1e-4, [] {
        const GaussianState sq{0, 0, 0.2, 1.0};
        const ProjectionSource src = ProjectionSource::analytic(gaussian_source(sq), 1.0, {default_grid(sq).q_half_width});
        const MomentDensity d = density_from_moments(moments_angle_average(src, 16), 3);
        double worst = 0;
        for (int m = 0; m < 3; ++m) {
            for (int n = 0; n < 3; ++n) {
                worst = std::max(worst, std::abs(d.rho(m, n) - fock_element(src, m, n).value));
            }
        }
        return worst;
    });
    s.check("representation_invariance", 1e-8, [&rng] {
        const GaussianState st = random_state(rng, 0.3);
        const ProjectionSource src = ProjectionSource::sampled(gaussian_tomogram(st));
        double worst = 0;
        for (int m = 0; m <= 5; ++m) {
            for (int n = 0; n <= 5; ++n) {
                const cplx a = fock_element(src, m, n, PatternRep::Canonical).value;
                worst = std::max(worst, std::abs(a - fock_element(src, m, n, PatternRep::HermiteSeries).value));
                worst = std::max(worst, std::abs(a - fock_element(src, m, n, PatternRep::DerivProductSymmetric).value));
            }
        }
        return worst;
    });
    s.check("coherent_end_to_end", 1e-4, [] {
        const cplx a(0.5, 0.3);
        const GaussianState cs = GaussianState::coherent(a);
        const RadonFn f = transform_tomogram(gaussian_source(GaussianState::vacuum()), {cs.qbar, cs.pbar}, SymplecticMap::identity());
        const TomogramGrid g = default_grid(cs);
        const Tomogram t = sample_tomogram(f, uniform_angles(g.n_angles), uniform_positions(g.q_half_width, g.n_q), 1.0);
        const DensityReconstruction d = reconstruct_density(ProjectionSource::sampled(t), 7);
        const DensityMatrix ref = DensityMatrix::coherent(a, 7);
        double worst = 0;
        for (int m = 0; m < 7; ++m) {
            for (int n = 0; n < 7; ++n) {
                worst = std::max(worst, std::abs(d.rho(m, n) - ref(m, n)));
            }
        }
        return worst;
    });
}

}  // namespace

bool VerifyReport::passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult &c) { return c.passed; });
}

nlohmann::json VerifyReport::to_json() const {
    nlohmann::json j;
    j["suite"] = suite;
    j["passed"] = passed();
    j["checks"] = nlohmann::json::array();
    for (const auto &c : checks) {
        nlohmann::json e{{"name", c.name}, {"passed", c.passed}, {"tol", c.tol}};
        e["value"] = std::isfinite(c.value) ? nlohmann::json(c.value) : nlohmann::json(nullptr);
        if (!c.detail.empty()) {
            e["detail"] = c.detail;
        }
        j["checks"].push_back(std::move(e));
    }
    return j;
}

std::string VerifyReport::summary() const {
    std::ostringstream os;
    int npass = 0;
    for (const auto &c : checks) {
        npass += c.passed;
        os << (c.passed ? "PASS " : "FAIL ") << c.name << "  " << format_double(c.value) << " <= " << format_double(c.tol);
        if (!c.detail.empty()) {
            os << "  (" << c.detail << ")";
        }
        os << "\n";
    }
    os << suite << ": " << npass << "/" << checks.size() << " passed\n";
    return os.str();
}

const std::vector<std::string> &verify_suites() {
    static const std::vector<std::string> s{"specfun", "symplectic", "radon", "pattern", "reconstruct", "all"};
    return s;
}

VerifyReport run_verify(const std::string &suite, std::uint64_t seed) {
    const auto &names = verify_suites();
    if (std::find(names.begin(), names.end(), suite) == names.end()) {
        throw DomainError("unknown verify suite '" + suite + "'");
    }
    VerifyReport rep;
    rep.suite = suite;
    std::mt19937_64 rng(seed);
    const bool all = suite == "all";
    if (all || suite == "specfun") {
        suite_specfun(rep, rng);
    }
    if (all || suite == "symplectic") {
        suite_symplectic(rep, rng);
    }
    if (all || suite == "radon") {
        suite_radon(rep, rng);
    }
    if (all || suite == "pattern") {
        suite_pattern(rep, rng);
    }
    if (all || suite == "reconstruct") {
        suite_reconstruct(rep, rng);
    }
    return rep;
}

}  // namespace homtomo
