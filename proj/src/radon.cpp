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

#include "homtomo/radon.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <mutex>
#include <numbers>

#include <fftw3.h>

#include "homtomo/errors.hpp"
#include "homtomo/quadrature.hpp"

namespace homtomo {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kPatch = 1e-3;

// FFTW planning is not thread safe; execution is.
std::mutex &fftw_mutex() {
    static std::mutex m;
    return m;
}

double cubic_at(const double *r, std::size_t n, double s) {
    if (s < 0 || s > double(n - 1)) {
        return 0;
    }
    long j = std::clamp(long(std::floor(s)), 1L, long(n) - 3);
    const double f = s - double(j);
    const double w0 = -f * (f - 1) * (f - 2) / 6;
    const double w1 = (f + 1) * (f - 1) * (f - 2) / 2;
    const double w2 = -(f + 1) * f * (f - 2) / 2;
    const double w3 = (f + 1) * f * (f - 1) / 6;
    return w0 * r[j - 1] + w1 * r[j] + w2 * r[j + 1] + w3 * r[j + 2];
}

// Cutoff where |phi(+-x)| has fallen below 1e-17 of its size near the origin.
double auto_cutoff(const std::function<double(double)> &phi) {
    double s = 0;
    for (double x : {0.0, 0.5, -0.5, 1.0, -1.0}) {
        s = std::max(s, std::abs(phi(x)));
    }
    if (s == 0) {
        s = 1;
    }
    double X = 4;
    while (X < 4096 && std::abs(phi(X)) + std::abs(phi(-X)) + std::abs(phi(0.75 * X)) + std::abs(phi(-0.75 * X)) > 1e-17 * s) {
        X *= 2;
    }
    return X;
}

// int_0^X g(x) dx where g is replaced by a + b x^2 below kPatch.
double integrate_patched(const std::function<double(double)> &g, double X) {
    const double x1 = kPatch, x2 = 2 * kPatch;
    const double g1 = g(x1), g2 = g(x2);
    const double b = (g2 - g1) / (x2 * x2 - x1 * x1);
    const double a = g1 - b * x1 * x1;
    // The patch is integrated exactly; the rest uses panels of width <= 1/8.
    const double head = a * x1 + b * x1 * x1 * x1 / 3;
    const int panels = std::max(8, int(std::ceil((X - x1) * 8)));
    return head + integrate_gl(g, x1, X, panels);
}

}  // namespace

void PlaneField::validate() const {
    if (!eval || !(radius > 0)) {
        throw DomainError("PlaneField: missing evaluator or nonpositive radius");
    }
    for (int k = 0; k < 256; ++k) {
        const double a = 2 * kPi * k / 256;
        if (std::abs(eval(radius * std::cos(a), radius * std::sin(a))) > tail_eps) {
            throw ConsistencyError("PlaneField: field exceeds tail_eps at the declared radius");
        }
    }
}

PlaneField PlaneField::analytic(std::function<double(double, double)> f, double radius, double tail_eps) {
    return {std::move(f), radius, tail_eps};
}

PlaneField PlaneField::sampled(std::vector<double> qs, std::vector<double> ps, std::vector<double> values, double tail_eps) {
    if (qs.size() < 2 || ps.size() < 2 || values.size() != qs.size() * ps.size()) {
        throw DomainError("PlaneField::sampled: grid and value sizes do not match");
    }
    double radius = 0;
    for (double q : {qs.front(), qs.back()}) {
        for (double p : {ps.front(), ps.back()}) {
            radius = std::max(radius, std::hypot(q, p));
        }
    }
    auto eval = [qs = std::move(qs), ps = std::move(ps), v = std::move(values)](double q, double p) {
        if (q < qs.front() || q > qs.back() || p < ps.front() || p > ps.back()) {
            return 0.0;
        }
        const std::size_t i = std::min<std::size_t>(std::upper_bound(qs.begin(), qs.end(), q) - qs.begin(), qs.size() - 1) - 1;
        const std::size_t j = std::min<std::size_t>(std::upper_bound(ps.begin(), ps.end(), p) - ps.begin(), ps.size() - 1) - 1;
        const double a = (q - qs[i]) / (qs[i + 1] - qs[i]);
        const double b = (p - ps[j]) / (ps[j + 1] - ps[j]);
        const std::size_t n = ps.size();
        return (1 - a) * (1 - b) * v[i * n + j] + a * (1 - b) * v[(i + 1) * n + j] + (1 - a) * b * v[i * n + j + 1] +
               a * b * v[(i + 1) * n + j + 1];
    };
    return {std::move(eval), radius, tail_eps};
}

double radon_numeric(const PlaneField &f, double u, double v, double c) {
    const double r = std::hypot(u, v);
    if (r == 0) {
        throw DomainError("radon_numeric: (u, v) = (0, 0)");
    }
    const double d = c / r;
    const double q0 = d * u / r, p0 = d * v / r;
    const double eq = -v / r, ep = u / r;
    const double L = f.radius;
    const int panels = std::max(16, int(std::ceil(2 * L * 16)));
    const double s = integrate_gl([&](double t) { return f(q0 + t * eq, p0 + t * ep); }, -L, L, panels);
    return s / r;
}

cplx fourier_from_radon(const std::function<double(double)> &row, double b, double half_width) {
    if (b == 0) {
        throw DomainError("fourier_from_radon: b must be nonzero");
    }
    const double w = std::min(half_width / 64, 1 / std::abs(b));
    const int panels = std::max(16, int(std::ceil(2 * half_width / w)));
    const double re = integrate_gl([&](double c) { return std::cos(b * c) * row(c); }, -half_width, half_width, panels);
    const double im = integrate_gl([&](double c) { return -std::sin(b * c) * row(c); }, -half_width, half_width, panels);
    return {re, im};
}

cplx fourier_from_radon(const RadonFn &w, double u, double v, double b, double radius) {
    if (u == 0 && v == 0) {
        const int panels = std::max(16, int(std::ceil(2 * radius * 16)));
        return integrate_gl([&](double c) { return w(1, 0, c); }, -radius, radius, panels);
    }
    if (b == 0) {
        throw DomainError("fourier_from_radon: b must be nonzero");
    }
    const double half = radius * std::hypot(u, v) / std::abs(b);
    return fourier_from_radon([&](double c) { return w(u / b, v / b, c); }, b, half);
}

double radon_from_fourier(const std::function<cplx(double, double)> &wt, double u, double v, double c, double b_max) {
    const double w = std::min(b_max / 64, 1 / std::max(1.0, std::abs(c)));
    const int panels = std::max(16, int(std::ceil(2 * b_max / w)));
    const double s = integrate_gl([&](double b) { return (std::polar(1.0, b * c) * wt(b * u, b * v)).real(); }, -b_max, b_max, panels);
    return s / (2 * kPi);
}

BackProjection::BackProjection(const Tomogram &t, BackProjectionOptions opt) {
    t.validate(0);
    if (!t.angles_uniform(1e-9)) {
        throw DomainError("BackProjection: angles must be uniform over [0, pi)");
    }
    if (t.n_angles() < 64) {
        warnings_.push_back("angle grid has " + std::to_string(t.n_angles()) + " directions; at least 64 are needed for 1e-3 accuracy");
    }
    const std::size_t na = t.n_angles();
    nq_ = t.n_q();
    q0_ = t.qs.front();
    dq_ = t.dq();
    radius_ = std::max(std::abs(t.qs.front()), std::abs(t.qs.back()));
    const double tau = dq_;
    for (double phi : t.phis) {
        cos_.push_back(std::cos(phi));
        sin_.push_back(std::sin(phi));
    }

    std::size_t L = 1;
    while (L < std::size_t(std::max(2, opt.pad_factor)) * nq_) {
        L <<= 1;
    }
    const std::size_t nc = L / 2 + 1;
    double *buf = fftw_alloc_real(L);
    fftw_complex *spec = fftw_alloc_complex(nc);
    fftw_complex *kern = fftw_alloc_complex(nc);
    fftw_plan fwd, inv;
    {
        std::lock_guard<std::mutex> lock(fftw_mutex());
        fwd = fftw_plan_dft_r2c_1d(int(L), buf, spec, FFTW_ESTIMATE);
        inv = fftw_plan_dft_c2r_1d(int(L), spec, buf, FFTW_ESTIMATE);
    }

    // Band-limited ramp kernel sampled at lags n tau (Ramachandran-Lakshminarayanan).
    for (std::size_t k = 0; k < L; ++k) {
        const long n = k < L / 2 ? long(k) : long(k) - long(L);
        if (n == 0) {
            buf[k] = 1 / (4 * tau * tau);
        } else if (n % 2 == 0) {
            buf[k] = 0;
        } else {
            buf[k] = -1 / (kPi * kPi * double(n) * double(n) * tau * tau);
        }
    }
    fftw_execute(fwd);
    std::memcpy(kern, spec, sizeof(fftw_complex) * nc);

    const std::size_t nt = std::max<std::size_t>(1, std::size_t(std::lround(opt.taper_fraction * double(nq_))));
    std::vector<double> taper(nq_, 1.0);
    for (std::size_t k = 0; k < nt && k < nq_; ++k) {
        const double w = 0.5 * (1 - std::cos(kPi * double(k) / double(nt)));
        taper[k] = std::min(taper[k], w);
        taper[nq_ - 1 - k] = std::min(taper[nq_ - 1 - k], w);
    }

    // W(q, p) = (pi / N) sum_i tau (h * P_i)(q cos + p sin)
    const double scale = kPi / double(na) * tau / double(L);
    filtered_.assign(na * nq_, 0.0);
    for (std::size_t i = 0; i < na; ++i) {
        std::fill(buf, buf + L, 0.0);
        const double *row = t.row(i);
        for (std::size_t j = 0; j < nq_; ++j) {
            buf[j] = row[j] * taper[j];
        }
        fftw_execute(fwd);
        for (std::size_t k = 0; k < nc; ++k) {
            const double a = spec[k][0], b = spec[k][1];
            const double c = kern[k][0], d = kern[k][1];
            spec[k][0] = a * c - b * d;
            spec[k][1] = a * d + b * c;
        }
        fftw_execute(inv);
        for (std::size_t j = 0; j < nq_; ++j) {
            filtered_[i * nq_ + j] = buf[j] * scale;
        }
    }

    {
        std::lock_guard<std::mutex> lock(fftw_mutex());
        fftw_destroy_plan(fwd);
        fftw_destroy_plan(inv);
    }
    fftw_free(buf);
    fftw_free(spec);
    fftw_free(kern);
}

double BackProjection::operator()(double q, double p) const {
    double acc = 0;
    for (std::size_t i = 0; i < cos_.size(); ++i) {
        const double s = (q * cos_[i] + p * sin_[i] - q0_) / dq_;
        acc += cubic_at(filtered_.data() + i * nq_, nq_, s);
    }
    return acc;
}

std::vector<double> BackProjection::grid(const std::vector<double> &qs, const std::vector<double> &ps) const {
    std::vector<double> out(qs.size() * ps.size());
    for (std::size_t i = 0; i < qs.size(); ++i) {
        for (std::size_t j = 0; j < ps.size(); ++j) {
            out[i * ps.size() + j] = (*this)(qs[i], ps[j]);
        }
    }
    return out;
}

PlaneField BackProjection::field() const {
    auto self = std::make_shared<const BackProjection>(*this);
    return PlaneField::analytic([self](double q, double p) { return (*self)(q, p); }, radius_, 1e-2);
}

double wigner_from_tomogram(const Tomogram &t, double q, double p) { return BackProjection(t)(q, p); }

double pv_functional(const std::function<double(double)> &phi, double x_max) {
    const double X = x_max > 0 ? x_max : auto_cutoff(phi);
    return integrate_patched([&](double x) { return (phi(x) - phi(-x)) / x; }, X);
}

double reg_inv_square_functional(const std::function<double(double)> &phi, double x_max) {
    const double X = x_max > 0 ? x_max : auto_cutoff(phi);
    const double p0 = phi(0);
    const double body = integrate_patched([&](double x) { return (phi(x) + phi(-x) - 2 * p0) / (x * x); }, X);
    // Beyond X the numerator is taken as constant: exact for decayed or flat tails.
    return body + (phi(X) + phi(-X) - 2 * p0) / X;
}

}  // namespace homtomo
