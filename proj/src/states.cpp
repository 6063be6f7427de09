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

#include "homtomo/states.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "homtomo/errors.hpp"
#include "homtomo/kernels.hpp"
#include "homtomo/specfun.hpp"

namespace homtomo {

namespace {

constexpr double kPi = std::numbers::pi;

// |zeta| < 1 pieces shared by the closed forms.
struct ZetaTerms {
    double one_minus_r2;
    double a_plus;   // |1 + zeta|^2
    double a_minus;  // |1 - zeta|^2
    double im;
};

ZetaTerms zeta_terms(const GaussianState &s) {
    s.validate();
    return {1 - std::norm(s.zeta), std::norm(1.0 + s.zeta), std::norm(1.0 - s.zeta), s.zeta.imag()};
}

// |1 - zeta|^2 u^2 + |1 + zeta|^2 v^2 - 4 Im(zeta) u v
double width_form(const ZetaTerms &z, double u, double v) {
    return z.a_minus * u * u + z.a_plus * v * v - 4 * z.im * u * v;
}

// Four-point Lagrange weights at fraction f on nodes -1, 0, 1, 2.
void cubic_weights(double f, double w[4]) {
    w[0] = -f * (f - 1) * (f - 2) / 6;
    w[1] = (f + 1) * (f - 1) * (f - 2) / 2;
    w[2] = -(f + 1) * f * (f - 2) / 2;
    w[3] = (f + 1) * f * (f - 1) / 6;
}

double row_interp(const Tomogram &t, std::size_t i, double q) {
    const std::size_t n = t.n_q();
    const double h = t.dq();
    const double s = (q - t.qs.front()) / h;
    if (s < 0 || s > double(n - 1)) {
        return 0;
    }
    long j = long(std::floor(s));
    j = std::clamp(j, 1L, long(n) - 3);
    const double f = s - double(j);
    double w[4];
    cubic_weights(f, w);
    const double *r = t.row(i);
    double acc = 0;
    for (int k = 0; k < 4; ++k) {
        acc += w[k] * r[j - 1 + k];
    }
    return acc;
}

}  // namespace

void GaussianState::validate() const {
    if (!(std::abs(zeta) < 1)) {
        throw DomainError("GaussianState: |zeta| must be below 1");
    }
    if (!(hbar > 0)) {
        throw DomainError("GaussianState: hbar must be positive");
    }
}

GaussianState GaussianState::coherent(cplx alpha, double hbar) {
    const double s = std::sqrt(2 * hbar);
    return {s * alpha.real(), s * alpha.imag(), 0, hbar};
}

DensityMatrix::DensityMatrix(int dim) : dim_(dim), e_(std::size_t(dim) * dim) {
    if (dim < 1) {
        throw DomainError("DensityMatrix: dimension must be positive");
    }
}

cplx DensityMatrix::trace() const {
    cplx t = 0;
    for (int m = 0; m < dim_; ++m) {
        t += (*this)(m, m);
    }
    return t;
}

double DensityMatrix::hermitian_defect() const {
    double d = 0;
    for (int m = 0; m < dim_; ++m) {
        for (int n = m; n < dim_; ++n) {
            d = std::max(d, std::abs((*this)(m, n) - std::conj((*this)(n, m))));
        }
    }
    return d;
}

double DensityMatrix::symmetrize() {
    const double d = hermitian_defect();
    for (int m = 0; m < dim_; ++m) {
        for (int n = m; n < dim_; ++n) {
            const cplx a = ((*this)(m, n) + std::conj((*this)(n, m))) / 2.0;
            (*this)(m, n) = a;
            (*this)(n, m) = std::conj(a);
        }
    }
    return d;
}

void DensityMatrix::validate(double trace_tol) const {
    if (dim_ < 1) {
        throw DomainError("DensityMatrix: empty");
    }
    if (hermitian_defect() > 1e-10) {
        throw ConsistencyError("DensityMatrix: not Hermitian");
    }
    for (int m = 0; m < dim_; ++m) {
        if ((*this)(m, m).real() < -1e-10) {
            throw ConsistencyError("DensityMatrix: negative diagonal entry");
        }
    }
    if (std::abs(trace() - 1.0) > trace_tol) {
        throw ConsistencyError("DensityMatrix: trace differs from 1");
    }
}

DensityMatrix DensityMatrix::fock(int n, int dim) {
    if (n < 0 || n >= dim) {
        throw DomainError("DensityMatrix::fock: index outside truncation");
    }
    DensityMatrix r(dim);
    r(n, n) = 1;
    return r;
}

DensityMatrix DensityMatrix::coherent(cplx alpha, int dim) {
    DensityMatrix r(dim);
    std::vector<cplx> c(dim);
    c[0] = std::exp(-std::norm(alpha) / 2);
    for (int n = 1; n < dim; ++n) {
        c[n] = c[n - 1] * alpha / std::sqrt(double(n));
    }
    for (int m = 0; m < dim; ++m) {
        for (int n = 0; n < dim; ++n) {
            r(m, n) = c[m] * std::conj(c[n]);
        }
    }
    return r;
}

MomentSet::MomentSet(int s_max) : s_max_(s_max), t_(std::size_t(s_max + 1) * (s_max + 1)) {
    if (s_max < 0) {
        throw DomainError("MomentSet: negative order cap");
    }
}

cplx MomentSet::get(int k, int l) const {
    if (!has(k, l)) {
        throw DomainError("MomentSet: index outside k + l <= s_max");
    }
    return t_[std::size_t(k) * (s_max_ + 1) + l];
}

void MomentSet::set(int k, int l, cplx v) {
    if (!has(k, l)) {
        throw DomainError("MomentSet: index outside k + l <= s_max");
    }
    t_[std::size_t(k) * (s_max_ + 1) + l] = v;
}

void MomentSet::validate(double tol) const {
    if (std::abs(get(0, 0) - 1.0) > tol) {
        throw ConsistencyError("MomentSet: <1> differs from 1");
    }
    for (int k = 0; k <= s_max_; ++k) {
        for (int l = 0; k + l <= s_max_; ++l) {
            const cplx a = get(k, l), b = std::conj(get(l, k));
            if (std::abs(a - b) > tol * std::max(1.0, std::abs(a))) {
                throw ConsistencyError("MomentSet: conjugation symmetry violated");
            }
        }
    }
}

double GaussianStatistics::varQ_at(double phi) const {
    const double c = std::cos(phi), s = std::sin(phi);
    return c * c * varQ + s * s * varP + 2 * c * s * symCorr;
}

double GaussianStatistics::varP_at(double phi) const {
    const double c = std::cos(phi), s = std::sin(phi);
    return s * s * varQ + c * c * varP - 2 * c * s * symCorr;
}

double GaussianStatistics::corr_at(double phi) const {
    const double c = std::cos(phi), s = std::sin(phi);
    return c * s * (varP - varQ) + (c * c - s * s) * symCorr;
}

double wigner_gaussian(const GaussianState &s, double q, double p) {
    const ZetaTerms z = zeta_terms(s);
    const double dq = q - s.qbar, dp = p - s.pbar;
    const double e = z.a_plus * dq * dq + z.a_minus * dp * dp + 4 * z.im * dq * dp;
    return std::exp(-e / (s.hbar * z.one_minus_r2)) / (s.hbar * kPi);
}

double radon_gaussian(const GaussianState &s, double u, double v, double c) {
    if (u == 0 && v == 0) {
        throw DomainError("radon_gaussian: (u, v) = (0, 0)");
    }
    const ZetaTerms z = zeta_terms(s);
    const double dn = width_form(z, u, v);
    if (!(dn > 0)) {
        throw ConsistencyError("radon_gaussian: nonpositive width");
    }
    const double a = c - u * s.qbar - v * s.pbar;
    return std::sqrt(z.one_minus_r2 / (s.hbar * kPi * dn)) * std::exp(-z.one_minus_r2 * a * a / (s.hbar * dn));
}

cplx fourier_gaussian(const GaussianState &s, double u, double v) {
    const ZetaTerms z = zeta_terms(s);
    const double dn = width_form(z, u, v);
    const double phase = -(u * s.qbar + v * s.pbar);
    return std::polar(std::exp(-s.hbar * dn / (4 * z.one_minus_r2)), phase);
}

GaussianStatistics gaussian_statistics(const GaussianState &s) {
    const ZetaTerms z = zeta_terms(s);
    GaussianStatistics g;
    g.qmean = s.qbar;
    g.pmean = s.pbar;
    g.varQ = s.hbar / 2 * z.a_minus / z.one_minus_r2;
    g.varP = s.hbar / 2 * z.a_plus / z.one_minus_r2;
    g.symCorr = -s.hbar * z.im / z.one_minus_r2;
    const double r = std::abs(s.zeta);
    g.sigma_max = std::sqrt(s.hbar / 2 * (1 + r) / (1 - r));
    g.sigma_min = std::sqrt(s.hbar / 2 * (1 - r) / (1 + r));
    double phi = 0.5 * std::atan2(2 * g.symCorr, g.varQ - g.varP);
    if (phi < 0) {
        phi += kPi;
    }
    g.phi_max = phi;
    g.phi_min = phi < kPi / 2 ? phi + kPi / 2 : phi - kPi / 2;
    return g;
}

double radon_from_density(const DensityMatrix &rho, double phi, double q, double hbar) {
    const int N = rho.dim();
    const std::vector<double> h = hermite_functions(N - 1, q / std::sqrt(hbar));
    std::vector<cplx> v(N);
    for (int n = 0; n < N; ++n) {
        v[n] = std::polar(h[n], n * phi);
    }
    cplx acc = 0;
    double scale = 0;
    for (int m = 0; m < N; ++m) {
        cplx row = 0;
        for (int n = 0; n < N; ++n) {
            row += rho(m, n) * v[n];
            scale += std::abs(rho(m, n)) * std::abs(h[m] * h[n]);
        }
        acc += std::conj(v[m]) * row;
    }
    if (std::abs(acc.imag()) > 1e-10 * std::max(1.0, scale)) {
        throw ConsistencyError("radon_from_density: imaginary residue, density matrix not Hermitian");
    }
    return acc.real() / std::sqrt(hbar);
}

cplx scalar_product_rotated(double q, double phi, double q2, double phi2, double hbar) {
    const double d = phi - phi2;
    const double sd = std::sin(d);
    if (std::abs(sd) < 1e-12) {
        throw DomainError("scalar_product_rotated: coincident angles (delta-function limit)");
    }
    const cplx pref = 1.0 / std::sqrt(cplx(hbar * kPi) * (1.0 - std::polar(1.0, -2 * d)));
    const double arg = ((q * q + q2 * q2) * std::cos(d) - 2 * q * q2) / (2 * hbar * sd);
    return pref * std::polar(1.0, arg);
}

MomentSet gaussian_moments(const GaussianState &s, int s_max) {
    const ZetaTerms z = zeta_terms(s);
    const cplx A = cplx(s.qbar, s.pbar) / std::sqrt(2 * s.hbar);
    const double N = std::norm(s.zeta) / z.one_minus_r2;
    const cplx M = -s.zeta / z.one_minus_r2;
    const cplx Ab = std::conj(A), Mb = std::conj(M);
    MomentSet ms(s_max);
    // Column k = 0 first, then raise k with the l-shift and k-shift terms.
    ms.set(0, 0, 1.0);
    for (int l = 0; l + 1 <= s_max; ++l) {
        cplx v = A * ms.get(0, l);
        if (l > 0) {
            v += M * double(l) * ms.get(0, l - 1);
        }
        ms.set(0, l + 1, v);
    }
    for (int k = 0; k + 1 <= s_max; ++k) {
        for (int l = 0; k + 1 + l <= s_max; ++l) {
            cplx v = Ab * ms.get(k, l);
            if (l > 0) {
                v += N * double(l) * ms.get(k, l - 1);
            }
            if (k > 0) {
                v += Mb * double(k) * ms.get(k - 1, l);
            }
            ms.set(k + 1, l, v);
        }
    }
    return ms;
}

MomentSet moments_from_density(const DensityMatrix &rho, int s_max) {
    const int N = rho.dim();
    // sqrt(n!) table in log form avoids overflow for large truncations.
    std::vector<double> lf(N + 1, 0.0);
    for (int n = 1; n <= N; ++n) {
        lf[n] = lf[n - 1] + 0.5 * std::log(double(n));
    }
    MomentSet ms(s_max);
    for (int k = 0; k <= s_max; ++k) {
        for (int l = 0; k + l <= s_max; ++l) {
            cplx acc = 0;
            for (int j = 0; j + std::max(k, l) < N; ++j) {
                const double w = std::exp(lf[j + k] + lf[j + l] - 2 * lf[j]);
                acc += rho(j + l, j + k) * w;
            }
            ms.set(k, l, acc);
        }
    }
    return ms;
}

RadonFn gaussian_source(const GaussianState &s) {
    s.validate();
    return [s](double u, double v, double c) { return radon_gaussian(s, u, v, c); };
}

RadonFn density_source(const DensityMatrix &rho, double hbar) {
    return [rho, hbar](double u, double v, double c) {
        const double r = std::hypot(u, v);
        if (r == 0) {
            throw DomainError("density_source: (u, v) = (0, 0)");
        }
        return radon_from_density(rho, std::atan2(v, u), c / r, hbar) / r;
    };
}

double Tomogram::row_integral(std::size_t i) const {
    const double *r = row(i);
    const std::size_t n = n_q();
    double acc = 0;
    for (std::size_t j = 0; j < n; ++j) {
        acc += (j == 0 || j + 1 == n) ? 0.5 * r[j] : r[j];
    }
    return acc * dq();
}

bool Tomogram::angles_uniform(double tol) const {
    const std::size_t n = n_angles();
    if (n < 2) {
        return false;
    }
    const double step = kPi / double(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (std::abs(phis[i] - (phis[0] + double(i) * step)) > tol * std::max(1.0, kPi)) {
            return false;
        }
    }
    return true;
}

void Tomogram::validate(double norm_tol) const {
    if (phis.empty() || qs.size() < 4) {
        throw DomainError("Tomogram: needs at least one angle and four positions");
    }
    if (values.size() != phis.size() * qs.size()) {
        throw DomainError("Tomogram: value count does not match grid");
    }
    if (!(hbar > 0)) {
        throw DomainError("Tomogram: hbar must be positive");
    }
    for (double p : phis) {
        if (!(p >= 0 && p < kPi)) {
            throw DomainError("Tomogram: angles must lie in [0, pi)");
        }
    }
    const double h = dq();
    for (std::size_t j = 1; j < qs.size(); ++j) {
        if (!(std::abs(qs[j] - qs[j - 1] - h) <= 1e-9 * std::max(1.0, std::abs(h)) && h > 0)) {
            throw DomainError("Tomogram: position grid must be uniform and increasing");
        }
    }
    for (double v : values) {
        if (!(v >= -1e-12)) {
            throw ConsistencyError("Tomogram: negative or non-finite probability density");
        }
    }
    if (norm_tol > 0) {
        for (std::size_t i = 0; i < n_angles(); ++i) {
            if (std::abs(row_integral(i) - 1) > norm_tol) {
                throw ConsistencyError("Tomogram: row " + std::to_string(i) + " does not integrate to 1");
            }
        }
    }
}

std::vector<double> uniform_angles(int n) {
    if (n < 1) {
        throw DomainError("uniform_angles: need at least one angle");
    }
    std::vector<double> a(n);
    for (int i = 0; i < n; ++i) {
        a[i] = kPi * i / n;
    }
    return a;
}

std::vector<double> uniform_positions(double half_width, int n) {
    if (n < 2 || !(half_width > 0)) {
        throw DomainError("uniform_positions: need n >= 2 and a positive half width");
    }
    std::vector<double> q(n);
    for (int j = 0; j < n; ++j) {
        q[j] = -half_width + 2 * half_width * j / (n - 1);
    }
    return q;
}

TomogramGrid default_grid(const GaussianState &s) {
    const GaussianStatistics g = gaussian_statistics(s);
    TomogramGrid out;
    out.q_half_width = std::hypot(s.qbar, s.pbar) + 8 * g.sigma_max;
    return out;
}

TomogramGrid default_grid_fock(int nmax, double hbar) {
    TomogramGrid out;
    out.q_half_width = std::sqrt(hbar) * (std::sqrt(2.0 * nmax + 1) + 8);
    return out;
}

Tomogram sample_tomogram(const RadonFn &f, const std::vector<double> &phis, const std::vector<double> &qs, double hbar) {
    Tomogram t;
    t.phis = phis;
    t.qs = qs;
    t.hbar = hbar;
    t.values.resize(phis.size() * qs.size());
    for (std::size_t i = 0; i < phis.size(); ++i) {
        const double u = std::cos(phis[i]), v = std::sin(phis[i]);
        for (std::size_t j = 0; j < qs.size(); ++j) {
            t.values[i * qs.size() + j] = f(u, v, qs[j]);
        }
    }
    return t;
}

Tomogram gaussian_tomogram(const GaussianState &s, const TomogramGrid &g) {
    Tomogram t = sample_tomogram(gaussian_source(s), uniform_angles(g.n_angles), uniform_positions(g.q_half_width, g.n_q), s.hbar);
    t.meta["source"] = "gaussian";
    return t;
}

Tomogram gaussian_tomogram(const GaussianState &s) { return gaussian_tomogram(s, default_grid(s)); }

Tomogram density_tomogram(const DensityMatrix &rho, const TomogramGrid &g, double hbar) {
    const int N = rho.dim();
    Tomogram t;
    t.phis = uniform_angles(g.n_angles);
    t.qs = uniform_positions(g.q_half_width, g.n_q);
    t.hbar = hbar;
    t.meta["source"] = "density";
    const std::size_t nq = t.qs.size();
    t.values.resize(t.phis.size() * nq);
    // For fixed q, W(phi) = sum_k S_k e^{i k phi} with S_k the k-th superdiagonal sum of rho_mn h_m h_n.
    std::vector<cplx> S(2 * N - 1);
    const double rs = 1 / std::sqrt(hbar);
    std::vector<double> xs(nq), seed(nq), h(std::size_t(N) * nq);
    for (std::size_t j = 0; j < nq; ++j) {
        xs[j] = t.qs[j] * rs;
        seed[j] = std::pow(kPi, -0.25) * std::exp(-0.5 * xs[j] * xs[j]);
    }
    kernels::active().hermite_rows(N - 1, xs.data(), seed.data(), nq, h.data());
    for (std::size_t j = 0; j < nq; ++j) {
        std::fill(S.begin(), S.end(), cplx(0));
        for (int m = 0; m < N; ++m) {
            for (int n = 0; n < N; ++n) {
                S[n - m + N - 1] += rho(m, n) * (h[m * nq + j] * h[n * nq + j]);
            }
        }
        for (std::size_t i = 0; i < t.phis.size(); ++i) {
            cplx acc = 0;
            for (int k = -(N - 1); k <= N - 1; ++k) {
                acc += S[k + N - 1] * std::polar(1.0, k * t.phis[i]);
            }
            t.values[i * nq + j] = acc.real() * rs;
        }
    }
    return t;
}

RadonFn tomogram_source(const Tomogram &t) {
    t.validate(0);
    if (!t.angles_uniform(1e-9)) {
        throw DomainError("tomogram_source: angles must be uniform over the half circle");
    }
    auto tp = std::make_shared<const Tomogram>(t);
    return [tp](double u, double v, double c) {
        const Tomogram &T = *tp;
        const double r = std::hypot(u, v);
        if (r == 0) {
            throw DomainError("tomogram_source: (u, v) = (0, 0)");
        }
        const long n = long(T.n_angles());
        const double step = kPi / double(n);
        const double q = c / r;
        const double s = (std::atan2(v, u) - T.phis[0]) / step;
        const long i0 = long(std::floor(s));
        double w[4];
        cubic_weights(s - double(i0), w);
        double acc = 0;
        for (int k = 0; k < 4; ++k) {
            // Row index outside [0, n) wraps by pi, which reverses q.
            const long idx = i0 - 1 + k;
            const long wraps = (idx >= 0) ? idx / n : -((-idx + n - 1) / n);
            const long kk = idx - wraps * n;
            const double qq = (wraps % 2 == 0) ? q : -q;
            acc += w[k] * row_interp(T, std::size_t(kk), qq);
        }
        return acc / r;
    };
}

RadonFn transform_tomogram(RadonFn source, const Displacement &d, const SymplecticMap &m) {
    m.validate(1e-9);
    return [source = std::move(source), d, m](double u, double v, double c) {
        const auto [u0, v0] = transform_radon_args(u, v, m);
        return source(u0, v0, c - u * d.qbar - v * d.pbar);
    };
}

}  // namespace homtomo
