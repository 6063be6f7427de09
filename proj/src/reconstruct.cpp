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

#include "homtomo/reconstruct.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <cmath>
#include <exception>
#include <mutex>
#include <numbers>
#include <numeric>
#include <thread>

#include "homtomo/errors.hpp"
#include "homtomo/kernels.hpp"
#include "homtomo/specfun.hpp"

namespace homtomo {

namespace {

constexpr double kPi = std::numbers::pi;
const cplx kI(0, 1);

double reduce_angle(double phi) {
    double r = std::fmod(phi, kPi);
    if (r < 0) {
        r += kPi;
    }
    if (r >= kPi) {
        r = 0;
    }
    return r;
}

double log_fact(int n) { return std::lgamma(n + 1.0); }

std::string sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", v);
    return buf;
}

// w_j * k(x_j / sqrt(hbar)) at the source nodes.
template <class K>
std::vector<double> weighted_kernel(const ProjectionSource &src, K &&k) {
    const Rule &r = src.nodes();
    const double s = 1 / std::sqrt(src.hbar());
    std::vector<double> out(r.x.size());
    for (std::size_t j = 0; j < r.x.size(); ++j) {
        out[j] = r.w[j] * k(r.x[j] * s);
    }
    return out;
}

double dot(const double *a, const std::vector<double> &b) { return kernels::active().dot(a, b.data(), b.size()); }

// (1/N) sum_i e^{i freq phi_i} int dq W(phi_i; q) k(q)
cplx angle_average(const ProjectionSource &src, int freq, const std::vector<double> &wk) {
    const auto &phis = src.angles();
    std::vector<double> proj(phis.size());
    kernels::active().gemv(src.row(0), phis.size(), wk.size(), wk.data(), proj.data());
    cplx acc = 0;
    for (std::size_t i = 0; i < phis.size(); ++i) {
        acc += std::polar(1.0, freq * phis[i]) * proj[i];
    }
    return acc / double(phis.size());
}

void gate(const char *what, ReconResult &r, const QuadratureSpec &spec) {
    r.error_estimate = std::abs(r.value - r.coarse);
    if (spec.gate && r.error_estimate > spec.gate_tol * std::max(1.0, std::abs(r.value))) {
        throw AccuracyError(std::string(what) + ": half-resolution check differs by " + sci(r.error_estimate));
    }
}

void check_moment_indices(int k, int l) {
    if (k < 0 || l < 0) {
        throw DomainError("moment indices must be nonnegative");
    }
}

ProjectionSource moment_source(const ProjectionSource &src, int n, const QuadratureSpec &spec) {
    if (spec.widen_window && n > 1 && !src.is_sampled()) {
        return src.widened(std::sqrt(double(n)));
    }
    return src;
}

std::vector<double> hermite_kernel(const ProjectionSource &src, int n) {
    const double norm = std::pow(2.0, -0.5 * n);
    return weighted_kernel(src, [&](double x) { return norm * hermite_poly(n, x); });
}

double hermite_tail(const ProjectionSource &src, int n) {
    const Rule &r = src.nodes();
    const double s = 1 / std::sqrt(src.hbar());
    const double norm = std::pow(2.0, -0.5 * n);
    std::vector<double> k(r.x.size());
    for (std::size_t j = 0; j < k.size(); ++j) {
        k[j] = norm * std::abs(hermite_poly(n, r.x[j] * s));
    }
    return src.edge_weight(k);
}

cplx moment_avg_value(const ProjectionSource &src, int k, int l) {
    const int n = k + l;
    const double c = std::exp(log_fact(k) + log_fact(l) - log_fact(n));
    return c * angle_average(src, l - k, hermite_kernel(src, n));
}

cplx moment_discrete_value(const ProjectionSource &src, int k, int l, const AngleDivision &div, bool &interp) {
    const int n = k + l;
    const double c = std::exp(log_fact(k) + log_fact(l) - log_fact(n + 1));
    cplx acc = 0;
    for (double phi : div.angles) {
        bool ip = false;
        acc += std::polar(1.0, (l - k) * phi) * hermite_projection(src, n, phi, &ip);
        interp = interp || ip;
    }
    return c * acc;
}

double sin_checked(double a, double b) {
    const double s = std::sin(a - b);
    if (std::abs(s) < 1e-12) {
        throw DomainError("degenerate angle pair: directions coincide modulo pi");
    }
    return s;
}

// Kahan-compensated complex accumulator.
struct CompensatedSum {
    double re = 0, im = 0, cre = 0, cim = 0;
    void add(cplx v) {
        double y = v.real() - cre;
        double t = re + y;
        cre = (t - re) - y;
        re = t;
        y = v.imag() - cim;
        t = im + y;
        cim = (t - im) - y;
        im = t;
    }
    cplx value() const { return {re, im}; }
};

template <class F>
void parallel_for(std::size_t count, F &&body) {
    const std::size_t nt = std::max<std::size_t>(1, std::min<std::size_t>(count, std::thread::hardware_concurrency()));
    std::atomic<std::size_t> next{0};
    std::exception_ptr err;
    std::mutex mu;
    auto work = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= count) {
                return;
            }
            try {
                body(i);
            } catch (...) {
                std::lock_guard<std::mutex> lk(mu);
                if (!err) {
                    err = std::current_exception();
                }
                next = count;
            }
        }
    };
    std::vector<std::thread> pool;
    for (std::size_t t = 1; t < nt; ++t) {
        pool.emplace_back(work);
    }
    work();
    for (auto &th : pool) {
        th.join();
    }
    if (err) {
        std::rethrow_exception(err);
    }
}

}  // namespace

AngleDivision AngleDivision::harmonic(int s, double phi0) {
    if (s < 0) {
        throw DomainError("AngleDivision::harmonic: negative order");
    }
    AngleDivision d;
    d.kind = Kind::Harmonic;
    d.order = s;
    d.phi0 = phi0;
    for (int m = 0; m <= s; ++m) {
        d.angles.push_back(reduce_angle(phi0 + m * kPi / (s + 1)));
    }
    return d;
}

AngleDivision AngleDivision::explicit_angles(std::vector<double> angles) {
    AngleDivision d;
    d.kind = Kind::Explicit;
    d.order = int(angles.size()) - 1;
    d.phi0 = angles.empty() ? 0.0 : angles[0];
    d.angles = std::move(angles);
    d.validate();
    return d;
}

void AngleDivision::validate() const {
    if (angles.empty()) {
        throw DomainError("AngleDivision: no angles");
    }
    for (std::size_t i = 0; i < angles.size(); ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            sin_checked(angles[i], angles[j]);
        }
    }
}

ProjectionSource ProjectionSource::sampled(const Tomogram &t) {
    t.validate(0);
    if (t.n_q() < 3) {
        throw DomainError("ProjectionSource: need at least 3 q samples");
    }
    if (!t.angles_uniform(1e-9)) {
        throw DomainError("ProjectionSource: tomogram angles must be uniform over [0, pi)");
    }
    ProjectionSource s;
    s.sampled_ = true;
    s.hbar_ = t.hbar;
    s.phis_ = t.phis;
    s.nodes_.x = t.qs;
    s.nodes_.w = trapezoid_weights(t.n_q(), t.dq());
    s.half_width_ = std::max(std::abs(t.qs.front()), std::abs(t.qs.back()));
    auto tp = std::make_shared<const Tomogram>(t);
    s.table_ = std::shared_ptr<const std::vector<double>>(tp, &tp->values);
    s.tomo_ = tp;
    s.f_ = tomogram_source(t);
    return s;
}

ProjectionSource ProjectionSource::analytic(RadonFn f, double hbar, const AnalyticOptions &opt) {
    if (!(hbar > 0)) {
        throw DomainError("ProjectionSource: hbar must be positive");
    }
    if (!(opt.half_width > 0) || opt.n_angles < 2 || !(opt.panels_per_unit > 0)) {
        throw DomainError("ProjectionSource: invalid analytic options");
    }
    ProjectionSource s;
    s.sampled_ = false;
    s.hbar_ = hbar;
    s.f_ = std::move(f);
    s.aopt_ = opt;
    s.build_analytic();
    return s;
}

void ProjectionSource::build_analytic() {
    half_width_ = aopt_.half_width;
    phis_ = uniform_angles(aopt_.n_angles);
    const int panels = std::max(8, int(std::ceil(2 * half_width_ * aopt_.panels_per_unit / std::sqrt(hbar_))));
    nodes_ = composite_gauss_legendre(-half_width_, half_width_, panels, aopt_.order);
    auto tab = std::make_shared<std::vector<double>>(phis_.size() * nodes_.x.size());
    for (std::size_t i = 0; i < phis_.size(); ++i) {
        const double c = std::cos(phis_[i]), s = std::sin(phis_[i]);
        for (std::size_t j = 0; j < nodes_.x.size(); ++j) {
            (*tab)[i * nodes_.x.size() + j] = f_(c, s, nodes_.x[j]);
        }
    }
    table_ = tab;
}

std::vector<double> ProjectionSource::row_at(double phi, bool *interpolated) const {
    const std::size_t nq = nodes_.x.size();
    if (interpolated) {
        *interpolated = false;
    }
    if (sampled_) {
        const long n = long(phis_.size());
        const double step = kPi / double(n);
        const double s = (phi - phis_[0]) / step;
        const double rs = std::round(s);
        if (std::abs(s - rs) < 1e-9) {
            const long idx = long(rs);
            const long wraps = (idx >= 0) ? idx / n : -((-idx + n - 1) / n);
            const std::size_t i = std::size_t(idx - wraps * n);
            std::vector<double> out(row(i), row(i) + nq);
            if (wraps % 2 == 0) {
                return out;
            }
            const auto &q = nodes_.x;
            bool symmetric = true;
            for (std::size_t j = 0; j < nq && symmetric; ++j) {
                symmetric = std::abs(q[j] + q[nq - 1 - j]) <= 1e-9 * std::max(1.0, std::abs(q[j]));
            }
            if (symmetric) {
                std::reverse(out.begin(), out.end());
                return out;
            }
        }
        if (interpolated) {
            *interpolated = true;
        }
    }
    std::vector<double> out(nq);
    const double c = std::cos(phi), sn = std::sin(phi);
    for (std::size_t j = 0; j < nq; ++j) {
        out[j] = f_(c, sn, nodes_.x[j]);
    }
    return out;
}

ProjectionSource ProjectionSource::coarsened() const {
    if (sampled_) {
        const Tomogram &t = *tomo_;
        Tomogram c;
        c.hbar = t.hbar;
        const std::size_t astep = (t.n_angles() % 2 == 0 && t.n_angles() >= 16) ? 2 : 1;
        for (std::size_t i = 0; i < t.n_angles(); i += astep) {
            c.phis.push_back(t.phis[i]);
        }
        for (std::size_t j = 0; j < t.n_q(); j += 2) {
            c.qs.push_back(t.qs[j]);
        }
        c.values.reserve(c.phis.size() * c.qs.size());
        for (std::size_t i = 0; i < t.n_angles(); i += astep) {
            for (std::size_t j = 0; j < t.n_q(); j += 2) {
                c.values.push_back(t.at(i, j));
            }
        }
        return sampled(c);
    }
    ProjectionSource s = *this;
    s.aopt_.panels_per_unit = aopt_.panels_per_unit / 2;
    s.aopt_.n_angles = std::max(8, aopt_.n_angles / 2);
    s.build_analytic();
    return s;
}

ProjectionSource ProjectionSource::widened(double factor) const {
    if (sampled_ || factor <= 1) {
        return *this;
    }
    ProjectionSource s = *this;
    s.aopt_.half_width = aopt_.half_width * factor;
    s.build_analytic();
    return s;
}

double ProjectionSource::edge_weight(const std::vector<double> &kernel) const {
    const std::size_t nq = nodes_.x.size();
    double worst = 0;
    for (std::size_t i = 0; i < phis_.size(); ++i) {
        double lo, hi;
        if (sampled_) {
            lo = row(i)[0];
            hi = row(i)[nq - 1];
        } else {
            lo = f_(std::cos(phis_[i]), std::sin(phis_[i]), -half_width_);
            hi = f_(std::cos(phis_[i]), std::sin(phis_[i]), half_width_);
        }
        worst = std::max({worst, std::abs(lo * kernel.front()), std::abs(hi * kernel.back())});
    }
    return worst * std::sqrt(hbar_);
}

ReconResult fock_element(const ProjectionSource &src, int m, int n, PatternRep rep, const QuadratureSpec &spec) {
    if (m < 0 || n < 0) {
        throw DomainError("fock_element: negative index");
    }
    auto eval = [&](const ProjectionSource &s) {
        return angle_average(s, m - n, weighted_kernel(s, [&](double x) { return pattern_value(rep, m, n, x); }));
    };
    ReconResult r;
    r.value = eval(src);
    r.coarse = eval(src.coarsened());
    std::vector<double> k(src.nodes().x.size());
    const double sc = 1 / std::sqrt(src.hbar());
    for (std::size_t j = 0; j < k.size(); ++j) {
        k[j] = std::abs(pattern_value(rep, m, n, src.nodes().x[j] * sc));
    }
    r.tail = src.edge_weight(k);
    gate("fock_element", r, spec);
    return r;
}

cplx fock_element_from_tomogram(const Tomogram &t, int m, int n, PatternRep rep, const QuadratureSpec &spec) {
    return fock_element(ProjectionSource::sampled(t), m, n, rep, spec).value;
}

ReconResult qfunction(const ProjectionSource &src, cplx alpha, const QuadratureSpec &spec) {
    auto eval = [&](const ProjectionSource &s) {
        const Rule &r = s.nodes();
        const double sc = 1 / std::sqrt(s.hbar());
        const auto &phis = s.angles();
        double acc = 0;
        for (std::size_t i = 0; i < phis.size(); ++i) {
            const double shift = std::sqrt(2.0) * std::real(alpha * std::polar(1.0, -phis[i]));
            const double *w = s.row(i);
            double row = 0;
            for (std::size_t j = 0; j < r.x.size(); ++j) {
                const double z = r.x[j] * sc - shift;
                row += r.w[j] * w[j] * (1 - 2 * z * dawson(z));
            }
            acc += row;
        }
        return 2 / kPi * acc / double(phis.size());
    };
    ReconResult r;
    r.value = eval(src);
    r.coarse = eval(src.coarsened());
    gate("qfunction", r, spec);
    return r;
}

double qfunction_from_tomogram(const Tomogram &t, cplx alpha, const QuadratureSpec &spec) {
    return qfunction(ProjectionSource::sampled(t), alpha, spec).value.real();
}

cplx hermite_projection(const ProjectionSource &src, int n, double phi, bool *interpolated) {
    if (n < 0) {
        throw DomainError("hermite_projection: negative order");
    }
    const std::vector<double> w = src.row_at(phi, interpolated);
    return dot(w.data(), hermite_kernel(src, n));
}

ReconResult moment_angle_average(const ProjectionSource &src, int k, int l, const QuadratureSpec &spec) {
    check_moment_indices(k, l);
    const ProjectionSource s = moment_source(src, k + l, spec);
    ReconResult r;
    r.tail = hermite_tail(s, k + l);
    if (r.tail > spec.tail_tol) {
        throw AccuracyError("moment_angle_average: Hermite-weighted tail " + sci(r.tail) +
                            " outside the q window");
    }
    r.value = moment_avg_value(s, k, l);
    r.coarse = moment_avg_value(s.coarsened(), k, l);
    gate("moment_angle_average", r, spec);
    return r;
}

cplx moment_angle_average(const Tomogram &t, int k, int l, const QuadratureSpec &spec) {
    return moment_angle_average(ProjectionSource::sampled(t), k, l, spec).value;
}

ReconResult moment_discrete_angles(const ProjectionSource &src, int k, int l, const AngleDivision &div,
                                   const QuadratureSpec &spec) {
    check_moment_indices(k, l);
    if (div.kind != AngleDivision::Kind::Harmonic || div.order != k + l ||
        div.angles.size() != std::size_t(k + l + 1)) {
        throw ArityError("moment_discrete_angles: need a harmonic division of order " + std::to_string(k + l));
    }
    const ProjectionSource s = moment_source(src, k + l, spec);
    ReconResult r;
    r.tail = hermite_tail(s, k + l);
    if (r.tail > spec.tail_tol) {
        throw AccuracyError("moment_discrete_angles: Hermite-weighted tail outside the q window");
    }
    bool interp = false;
    r.value = moment_discrete_value(s, k, l, div, interp);
    r.coarse = moment_discrete_value(s.coarsened(), k, l, div, interp);
    r.interpolated = interp;
    gate("moment_discrete_angles", r, spec);
    return r;
}

MomentSet moments_angle_average(const ProjectionSource &src, int s_max, const QuadratureSpec &spec) {
    MomentSet ms(s_max);
    std::vector<std::pair<int, int>> targets;
    for (int n = 0; n <= s_max; ++n) {
        for (int k = 0; k <= n; ++k) {
            targets.emplace_back(k, n - k);
        }
    }
    std::vector<cplx> vals(targets.size());
    parallel_for(targets.size(), [&](std::size_t i) {
        vals[i] = moment_angle_average(src, targets[i].first, targets[i].second, spec).value;
    });
    for (std::size_t i = 0; i < targets.size(); ++i) {
        ms.set(targets[i].first, targets[i].second, vals[i]);
    }
    return ms;
}

namespace {

cplx first_order(double f0, double f1, cplx p0, cplx p1) {
    const double s10 = sin_checked(f1, f0);
    return 0.5 * (std::polar(1.0, f1) * p0 - std::polar(1.0, f0) * p1) / (kI * s10);
}

void fill_first_order(MomentSet &ms, cplx a) {
    ms.set(0, 1, a);
    ms.set(1, 0, std::conj(a));
}

void fill_second_order(MomentSet &ms, cplx a2, double ada) {
    ms.set(0, 2, a2);
    ms.set(2, 0, std::conj(a2));
    ms.set(1, 1, ada);
}

}  // namespace

MomentSet moments_low_order_custom(const ProjectionSource &src, const std::vector<double> &angles) {
    if (angles.size() != 2 && angles.size() != 3) {
        throw ArityError("moments_low_order_custom: need 2 or 3 angles");
    }
    AngleDivision::explicit_angles(angles);
    const int order = int(angles.size()) - 1;
    const ProjectionSource s = src.widened(order > 1 ? std::sqrt(double(order)) : 1.0);
    MomentSet ms(order);
    ms.set(0, 0, hermite_projection(s, 0, angles[0]));
    const double f0 = angles[0], f1 = angles[1];
    fill_first_order(ms, first_order(f0, f1, hermite_projection(s, 1, f0), hermite_projection(s, 1, f1)));
    if (order == 2) {
        const double f2 = angles[2];
        const cplx p0 = hermite_projection(s, 2, f0), p1 = hermite_projection(s, 2, f1), p2 = hermite_projection(s, 2, f2);
        const double s10 = sin_checked(f1, f0), s02 = sin_checked(f0, f2), s21 = sin_checked(f2, f1);
        const cplx a2 = 0.25 * (std::polar(1.0, f1 + f2) * p0 / (s10 * s02) + std::polar(1.0, f2 + f0) * p1 / (s10 * s21) +
                                std::polar(1.0, f0 + f1) * p2 / (s21 * s02));
        const cplx ada = -0.25 * (std::cos(f2 - f1) * p0 / (s10 * s02) + std::cos(f0 - f2) * p1 / (s10 * s21) +
                                  std::cos(f1 - f0) * p2 / (s21 * s02));
        fill_second_order(ms, a2, ada.real());
    }
    return ms;
}

MomentSet moments_preset_quarter(const ProjectionSource &src) {
    const ProjectionSource s = src.widened(std::sqrt(2.0));
    const double f1 = kPi / 4, f2 = kPi / 2;
    MomentSet ms(2);
    ms.set(0, 0, hermite_projection(s, 0, 0));
    fill_first_order(ms, first_order(0, f1, hermite_projection(s, 1, 0), hermite_projection(s, 1, f1)));
    const cplx p0 = hermite_projection(s, 2, 0), p1 = hermite_projection(s, 2, f1), p2 = hermite_projection(s, 2, f2);
    // (1/8) int {(1-i) W(1,0) + 2i W(s,s) - (1+i) W(0,1)} H_2 with p = (1/2) int W H_2
    const cplx a2 = 0.25 * (cplx(1, -1) * p0 + cplx(0, 2) * p1 - cplx(1, 1) * p2);
    fill_second_order(ms, a2, (0.25 * (p0 + p2)).real());
    return ms;
}

MomentSet moments_preset_thirds(const ProjectionSource &src) {
    const ProjectionSource s = src.widened(std::sqrt(2.0));
    const double f1 = kPi / 3, f2 = 2 * kPi / 3;
    MomentSet ms(2);
    ms.set(0, 0, hermite_projection(s, 0, 0));
    fill_first_order(ms, first_order(0, f1, hermite_projection(s, 1, 0), hermite_projection(s, 1, f1)));
    const cplx p0 = hermite_projection(s, 2, 0), p1 = hermite_projection(s, 2, f1), p2 = hermite_projection(s, 2, f2);
    const double r3 = std::sqrt(3.0);
    const cplx a2 = (p0 - cplx(0.5, -0.5 * r3) * p1 - cplx(0.5, 0.5 * r3) * p2) / 3.0;
    fill_second_order(ms, a2, ((p0 + p1 + p2) / 6.0).real());
    return ms;
}

std::vector<cplx> moments_linear_solve(const ProjectionSource &src, int n, const std::vector<double> &angles) {
    if (n < 0) {
        throw DomainError("moments_linear_solve: negative order");
    }
    if (angles.size() != std::size_t(n + 1)) {
        throw ArityError("moments_linear_solve: need n + 1 angles");
    }
    AngleDivision::explicit_angles(angles);
    const ProjectionSource s = src.widened(n > 1 ? std::sqrt(double(n)) : 1.0);
    const std::size_t N = n + 1;
    std::vector<std::vector<cplx>> a(N, std::vector<cplx>(N + 1));
    for (std::size_t i = 0; i < N; ++i) {
        for (int j = 0; j <= n; ++j) {
            const double binom = std::exp(log_fact(n) - log_fact(j) - log_fact(n - j));
            a[i][j] = binom * std::polar(1.0, (2 * j - n) * angles[i]);
        }
        a[i][N] = hermite_projection(s, n, angles[i]);
    }
    for (std::size_t c = 0; c < N; ++c) {
        std::size_t p = c;
        for (std::size_t i = c + 1; i < N; ++i) {
            if (std::abs(a[i][c]) > std::abs(a[p][c])) {
                p = i;
            }
        }
        if (std::abs(a[p][c]) < 1e-12) {
            throw DomainError("moments_linear_solve: singular angle set");
        }
        std::swap(a[p], a[c]);
        for (std::size_t i = c + 1; i < N; ++i) {
            const cplx f = a[i][c] / a[c][c];
            for (std::size_t j = c; j <= N; ++j) {
                a[i][j] -= f * a[c][j];
            }
        }
    }
    std::vector<cplx> x(N);
    for (std::size_t i = N; i-- > 0;) {
        cplx v = a[i][N];
        for (std::size_t j = i + 1; j < N; ++j) {
            v -= a[i][j] * x[j];
        }
        x[i] = v / a[i][i];
    }
    return x;
}

MomentDensity density_from_moments(const MomentSet &ms, int dim, int j_max) {
    if (dim < 1 || j_max < 1) {
        throw DomainError("density_from_moments: dim and j_max must be positive");
    }
    if (2 * (dim - 1) > ms.s_max()) {
        throw RangeError("density_from_moments: moments up to order " + std::to_string(2 * (dim - 1)) + " required");
    }
    MomentDensity out;
    out.rho = DensityMatrix(dim);
    out.min_terms = j_max;
    int undecayed = 0;
    for (int m = 0; m < dim; ++m) {
        for (int n = 0; n < dim; ++n) {
            const int terms = std::min(j_max, (ms.s_max() - m - n) / 2 + 1);
            out.min_terms = std::min(out.min_terms, terms);
            CompensatedSum acc;
            double last = 0;
            for (int j = 0; j < terms; ++j) {
                const double c = std::exp(-log_fact(j) - 0.5 * (log_fact(m) + log_fact(n)));
                const cplx t = ((j % 2 == 0) ? c : -c) * ms.get(n + j, m + j);
                acc.add(t);
                last = std::abs(t);
            }
            out.rho(m, n) = acc.value();
            out.last_term = std::max(out.last_term, last);
            if (last > 1e-8 * std::max(1.0, std::abs(acc.value()))) {
                ++undecayed;
            }
        }
    }
    if (undecayed > 0) {
        out.warnings.push_back("moment series not decayed for " + std::to_string(undecayed) +
                               " elements; largest last term " + sci(out.last_term));
    }
    return out;
}

DensityReconstruction reconstruct_density(const ProjectionSource &src, int dim, PatternRep rep, const QuadratureSpec &spec) {
    if (dim < 1) {
        throw DomainError("reconstruct_density: dim must be positive");
    }
    DensityReconstruction out;
    out.rho = DensityMatrix(dim);
    std::vector<double> err(std::size_t(dim) * dim, 0.0);
    const ProjectionSource coarse = src.coarsened();
    parallel_for(std::size_t(dim) * dim, [&](std::size_t idx) {
        const int m = int(idx / dim), n = int(idx % dim);
        auto kernel = [&](const ProjectionSource &s) {
            return weighted_kernel(s, [&](double x) { return pattern_value(rep, m, n, x); });
        };
        ReconResult r;
        r.value = angle_average(src, m - n, kernel(src));
        r.coarse = angle_average(coarse, m - n, kernel(coarse));
        gate("reconstruct_density", r, spec);
        out.rho(m, n) = r.value;
        err[idx] = r.error_estimate;
    });
    out.max_error_estimate = *std::max_element(err.begin(), err.end());
    out.hermitian_defect = out.rho.hermitian_defect();
    if (out.hermitian_defect > 1e-8) {
        throw ConsistencyError("reconstruct_density: result not Hermitian, defect " + sci(out.hermitian_defect));
    }
    out.rho.symmetrize();
    return out;
}

std::pair<cplx, cplx> projection_identity_check(const ProjectionSource &src, const MomentSet &ms, int n, double phi) {
    if (n < 0 || n > ms.s_max()) {
        throw DomainError("projection_identity_check: order outside the moment set");
    }
    const ProjectionSource s = src.widened(n > 1 ? std::sqrt(double(n)) : 1.0);
    const cplx lhs = hermite_projection(s, n, phi);
    cplx rhs = 0;
    for (int k = 0; k <= n; ++k) {
        const double binom = std::exp(log_fact(n) - log_fact(k) - log_fact(n - k));
        rhs += binom * std::polar(1.0, (2 * k - n) * phi) * ms.get(k, n - k);
    }
    return {lhs, rhs};
}

long circle_division_sum(int n, int s) {
    if (n < 0) {
        throw DomainError("circle_division_sum: negative order");
    }
    const long N = n + 1;
    const long r = ((long(s) % N) + N) % N;
    std::vector<long> count(N, 0);
    for (long m = 0; m < N; ++m) {
        ++count[(m * r) % N];
    }
    if (count[0] == N) {
        return N;
    }
    // Residues cover the subgroup gZ_N uniformly, g times each; the subgroup has N/g > 1 elements and
    // the sum over all its roots of unity vanishes.
    const long g = std::gcd(r, N);
    for (long k = 0; k < N; ++k) {
        const long expect = (k % g == 0) ? g : 0;
        if (count[k] != expect) {
            throw ConsistencyError("circle_division_sum: residues not uniform on a subgroup");
        }
    }
    return 0;
}

}  // namespace homtomo
