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

#include "homtomo/pattern.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "homtomo/errors.hpp"
#include "homtomo/quadrature.hpp"

namespace homtomo {

namespace {

constexpr double kSeriesLimit = 5.0;

// H~_0 .. H~_kmax at x in long double, H~_k = H_k / sqrt(2^k k!).
std::vector<long double> hermite_scaled_ld(int kmax, long double x) {
    std::vector<long double> h(kmax + 1);
    h[0] = 1;
    if (kmax >= 1) {
        h[1] = std::sqrt(2.0L) * x;
    }
    for (int k = 1; k < kmax; ++k) {
        h[k + 1] = x * std::sqrt(2.0L / (k + 1)) * h[k] - std::sqrt((long double)k / (k + 1)) * h[k - 1];
    }
    return h;
}

void check_indices(int m, int n, const char *what) {
    if (m < 0 || n < 0) {
        throw DomainError(std::string(what) + ": negative Fock index");
    }
}

// Modified Gram-Schmidt least squares; returns coefficients of min ||A c - y||.
std::vector<double> least_squares(const std::vector<std::vector<double>> &cols, const std::vector<double> &y) {
    const std::size_t k = cols.size();
    std::vector<std::vector<double>> q = cols;
    std::vector<std::vector<double>> r(k, std::vector<double>(k, 0.0));
    for (std::size_t j = 0; j < k; ++j) {
        for (std::size_t i = 0; i < j; ++i) {
            double d = 0;
            for (std::size_t t = 0; t < y.size(); ++t) {
                d += q[i][t] * q[j][t];
            }
            r[i][j] = d;
            for (std::size_t t = 0; t < y.size(); ++t) {
                q[j][t] -= d * q[i][t];
            }
        }
        double nrm = 0;
        for (double v : q[j]) {
            nrm += v * v;
        }
        nrm = std::sqrt(nrm);
        if (nrm == 0) {
            throw ConsistencyError("least_squares: rank-deficient basis");
        }
        r[j][j] = nrm;
        for (double &v : q[j]) {
            v /= nrm;
        }
    }
    std::vector<double> b(k, 0.0);
    for (std::size_t j = 0; j < k; ++j) {
        for (std::size_t t = 0; t < y.size(); ++t) {
            b[j] += q[j][t] * y[t];
        }
    }
    std::vector<double> c(k, 0.0);
    for (std::size_t j = k; j-- > 0;) {
        double s = b[j];
        for (std::size_t i = j + 1; i < k; ++i) {
            s -= r[j][i] * c[i];
        }
        c[j] = s / r[j][j];
    }
    return c;
}

struct Derivs {
    double d1, d2, d3, d4;
};

// Five-point central differences; the third and fourth derivatives are Richardson-extrapolated from h and 2h.
Derivs differences(const std::function<double(double)> &f, double x, double h) {
    const double fm2 = f(x - 2 * h), fm1 = f(x - h), f0 = f(x), fp1 = f(x + h), fp2 = f(x + 2 * h);
    Derivs d;
    d.d1 = (fm2 - 8 * fm1 + 8 * fp1 - fp2) / (12 * h);
    d.d2 = (-fm2 + 16 * fm1 - 30 * f0 + 16 * fp1 - fp2) / (12 * h * h);
    const double fm4 = f(x - 4 * h), fp4 = f(x + 4 * h);
    const double H = 2 * h;
    const double d3h = (-fm2 + 2 * fm1 - 2 * fp1 + fp2) / (2 * h * h * h);
    const double d32h = (-fm4 + 2 * fm2 - 2 * fp2 + fp4) / (2 * H * H * H);
    d.d3 = (4 * d3h - d32h) / 3;
    const double d4h = (fm2 - 4 * fm1 + 6 * f0 - 4 * fp1 + fp2) / (h * h * h * h);
    const double d42h = (fm4 - 4 * fm2 + 6 * f0 - 4 * fp2 + fp4) / (H * H * H * H);
    d.d4 = (4 * d4h - d42h) / 3;
    return d;
}

}  // namespace

std::string to_string(PatternRep r) {
    switch (r) {
    case PatternRep::Canonical:
        return "canonical";
    case PatternRep::HermiteSeries:
        return "hermite-series";
    case PatternRep::DerivProduct:
        return "deriv-product";
    case PatternRep::DerivProductSwapped:
        return "deriv-swapped";
    case PatternRep::DerivProductSymmetric:
        return "deriv-sym";
    }
    return "?";
}

PatternRep parse_pattern_rep(const std::string &s) {
    for (PatternRep r : {PatternRep::Canonical, PatternRep::HermiteSeries, PatternRep::DerivProduct,
                         PatternRep::DerivProductSwapped, PatternRep::DerivProductSymmetric}) {
        if (s == to_string(r)) {
            return r;
        }
    }
    throw DomainError("unknown pattern representation '" + s + "'");
}

SeriesResult pattern_hermite_series_ex(int m, int n, double x, const SeriesOptions &opt) {
    check_indices(m, n, "pattern_hermite_series");
    SeriesResult res;
    if (opt.adaptive && opt.switch_large_x && std::abs(x) >= kSeriesLimit) {
        res.value = 0.5 * (pattern_deriv_product(m, n, x) + pattern_deriv_product(n, m, x));
        res.switched = true;
        return res;
    }
    const int s = m + n;
    const int jmax = opt.adaptive ? opt.max_terms : opt.terms;
    // H~_k advanced in place: (hk1, hk) = (H~_{k-1}, H~_k), starting at k = s.
    const std::vector<long double> h0 = hermite_scaled_ld(std::max(s, 1), x);
    long double hk = h0[s], hk1 = s > 0 ? h0[s - 1] : 0.0L;
    int k = s;
    auto advance = [&] {
        const long double next = x * std::sqrt(2.0L / (k + 1)) * hk - std::sqrt((long double)k / (k + 1)) * hk1;
        hk1 = hk;
        hk = next;
        ++k;
    };
    // b_0 = 1/sqrt(C(s, m)), b_{j+1}/b_j = -(m+j+1)(n+j+1)/((j+1) sqrt((s+2j+1)(s+2j+2)))
    long double b = std::exp(0.5L * (std::lgamma((long double)m + 1) + std::lgamma((long double)n + 1) - std::lgamma((long double)s + 1)));
    long double sum = 0;
    long double last = 0;
    int quiet = 0;
    int j = 0;
    for (; j < jmax; ++j) {
        const long double term = b * hk;
        sum += term;
        last = term;
        if (opt.adaptive) {
            if (std::abs(term) < opt.rel_tol * std::abs(sum) || term == 0) {
                if (++quiet >= opt.quiet_run) {
                    ++j;
                    break;
                }
            } else {
                quiet = 0;
            }
        }
        b *= -(long double)(m + j + 1) * (n + j + 1) / ((j + 1) * std::sqrt((long double)(s + 2 * j + 1) * (s + 2 * j + 2)));
        advance();
        advance();
    }
    res.terms = j;
    res.value = double(sum);
    if (opt.adaptive) {
        res.converged = quiet >= opt.quiet_run;
    } else {
        // A fixed truncation is accepted only if the last retained term is negligible.
        res.converged = std::abs(last) <= 1e-10 * std::max<long double>(1, std::abs(sum));
    }
    return res;
}

double pattern_hermite_series(int m, int n, double x, const SeriesOptions &opt) {
    const SeriesResult r = pattern_hermite_series_ex(m, n, x, opt);
    if (!r.converged) {
        throw AccuracyError("pattern_hermite_series: series not converged at x = " + std::to_string(x));
    }
    return r.value;
}

double pattern_deriv_product(int m, int n, double x) {
    check_indices(m, n, "pattern_deriv_product");
    const DawsonPair d = dawson_scaled_pair(n, x);
    const double hm = hermite_scaled(m, x);
    const double hm1 = m > 0 ? hermite_scaled(m - 1, x) : 0.0;
    return 2 * (std::sqrt(2.0 * m) * hm1 * d.d_n - std::sqrt(2.0 * (n + 1)) * hm * d.d_n1);
}

double pattern_deriv_product_swapped(int m, int n, double x) { return pattern_deriv_product(n, m, x); }

double pattern_canonical(int m, int n, double x) {
    check_indices(m, n, "pattern_canonical");
    return pattern_deriv_product(std::min(m, n), std::max(m, n), x);
}

double pattern_correction(int m, int n, double x) {
    check_indices(m, n, "pattern_correction");
    const int d = std::abs(m - n);
    const int mu = std::min(m, n);
    if (d < 2) {
        return 0;
    }
    // (2^d m! n!)^{-1/2} sum_k (mu+k-1)!(d-k)!/((k-1)!(d-2k)!) (-2)^k H_{d-2k}(x)
    const double lnorm = -0.5 * (d * std::log(2.0) + std::lgamma(m + 1.0) + std::lgamma(n + 1.0));
    double acc = 0;
    for (int k = 1; 2 * k <= d; ++k) {
        const double lc = std::lgamma(mu + k + 0.0) + std::lgamma(d - k + 1.0) - std::lgamma(k + 0.0) - std::lgamma(d - 2 * k + 1.0);
        const double sign = (k % 2 == 0) ? 1.0 : -1.0;
        acc += sign * std::exp(lc + k * std::log(2.0) + lnorm) * hermite_poly(d - 2 * k, x);
    }
    return acc;
}

double pattern_canonical_series(int m, int n, double x, const SeriesOptions &opt) {
    SeriesOptions o = opt;
    o.switch_large_x = false;
    return pattern_hermite_series(m, n, x, o) + pattern_correction(m, n, x);
}

double pattern_f00_closed(double x) { return 2 * (1 - 2 * x * dawson(x)); }

double pattern_f00_taylor(double x, int terms) {
    // t_k = (-1)^k k! (2x)^{2k} / (2k)!, t_{k+1}/t_k = -(k+1) (2x)^2 / ((2k+1)(2k+2))
    long double t = 1, s = 0;
    const long double y = 4.0L * x * x;
    for (int k = 0; k < terms; ++k) {
        s += t;
        t *= -(k + 1) * y / ((2.0L * k + 1) * (2.0L * k + 2));
    }
    return double(2 * s);
}

AsymptoticResult pattern_asymptotic(int m, int n, double x) {
    check_indices(m, n, "pattern_asymptotic");
    AsymptoticResult r;
    r.reliable = std::abs(x) >= 4;
    const int s = m + n;
    if (x == 0) {
        // Only the j = 0 term with s = 0 survives.
        r.value = s == 0 ? 1.0 : 0.0;
        return r;
    }
    // sum_j (m+j)!(n+j)!/(j!(s+2j)!) (-y)^j = int_0^1 t^m (1-t)^n (s+1 - 2 y t(1-t)) e^{-y t(1-t)} dt, y = 2x^2
    const double y = 2 * x * x;
    std::vector<double> breaks{0.0};
    for (double t = 0.25 / y; t < 0.5; t *= 2) {
        if (t > breaks.back() + 1e-12) {
            breaks.push_back(t);
        }
    }
    for (int k = 1; k <= 32; ++k) {
        breaks.push_back(0.5 * k / 32.0);
    }
    std::sort(breaks.begin(), breaks.end());
    breaks.erase(std::unique(breaks.begin(), breaks.end(), [](double a, double b) { return std::abs(a - b) < 1e-15; }), breaks.end());
    const std::size_t nh = breaks.size();
    for (std::size_t i = nh - 1; i-- > 0;) {
        breaks.push_back(1 - breaks[i]);
    }
    const Rule rule = panel_gauss_legendre(breaks, 16);
    const double integral = integrate(rule, [&](double t) {
        const double tau = t * (1 - t);
        return std::pow(t, m) * std::pow(1 - t, n) * (s + 1 - 2 * y * tau) * std::exp(-y * tau);
    });
    const double lpref = s * std::log(std::sqrt(2.0) * std::abs(x)) - 0.5 * (std::lgamma(m + 1.0) + std::lgamma(n + 1.0));
    const double sign = (x < 0 && s % 2 == 1) ? -1.0 : 1.0;
    r.value = sign * std::exp(lpref) * integral;
    return r;
}

double pattern_asymptotic_series(int m, int n, double x) {
    check_indices(m, n, "pattern_asymptotic_series");
    const int s = m + n;
    // c_0 = m! n! / s!, c_{j+1}/c_j = (m+j+1)(n+j+1) / ((j+1)(s+2j+1)(s+2j+2)) times (-2x^2)
    long double c = std::exp(std::lgamma((long double)m + 1) + std::lgamma((long double)n + 1) - std::lgamma((long double)s + 1));
    const long double y = -2.0L * x * x;
    long double sum = 0;
    for (int j = 0; j < 4000; ++j) {
        sum += c;
        c *= (long double)(m + j + 1) * (n + j + 1) / ((j + 1.0L) * (s + 2 * j + 1) * (s + 2 * j + 2)) * y;
        if (j > 2 * std::abs(y) && std::abs(c) < 1e-22L * std::abs(sum)) {
            break;
        }
    }
    const long double pref = std::pow(std::sqrt(2.0L) * x, s) / std::sqrt(std::exp(std::lgamma((long double)m + 1) + std::lgamma((long double)n + 1)));
    return double(pref * sum);
}

double pattern_value(PatternRep rep, int m, int n, double x) {
    switch (rep) {
    case PatternRep::Canonical:
        return pattern_canonical(m, n, x);
    case PatternRep::HermiteSeries:
        return pattern_hermite_series(m, n, x);
    case PatternRep::DerivProduct:
        return pattern_deriv_product(m, n, x);
    case PatternRep::DerivProductSwapped:
        return pattern_deriv_product_swapped(m, n, x);
    case PatternRep::DerivProductSymmetric:
        return 0.5 * (pattern_deriv_product(m, n, x) + pattern_deriv_product(n, m, x));
    }
    throw DomainError("pattern_value: unknown representation");
}

double PatternTable::parity_defect() const {
    const auto &x = grid.points;
    const std::size_t N = x.size();
    const double sign = ((m + n) % 2 == 0) ? 1.0 : -1.0;
    double d = 0;
    for (std::size_t i = 0; i < N; ++i) {
        if (std::abs(x[i] + x[N - 1 - i]) > 1e-12 * std::max(1.0, std::abs(x[i]))) {
            throw DomainError("PatternTable::parity_defect: grid is not symmetric");
        }
        d = std::max(d, std::abs(values[N - 1 - i] - sign * values[i]));
    }
    return d;
}

PatternTable pattern_table(int m, int n, PatternRep rep, const EvalGrid &grid) {
    grid.validate();
    PatternTable t{m, n, rep, grid, {}};
    t.values.reserve(grid.points.size());
    for (double x : grid.points) {
        t.values.push_back(pattern_value(rep, m, n, x));
    }
    return t;
}

NonuniquenessFit pattern_nonuniqueness_residual(PatternRep a, PatternRep b, int m, int n, const EvalGrid &grid, double threshold) {
    check_indices(m, n, "pattern_nonuniqueness_residual");
    grid.validate();
    const int d = std::abs(m - n);
    std::vector<double> diff;
    diff.reserve(grid.points.size());
    for (double x : grid.points) {
        diff.push_back(pattern_value(a, m, n, x) - pattern_value(b, m, n, x));
    }
    NonuniquenessFit fit;
    std::vector<std::vector<double>> cols;
    for (int k = 1; 2 * k <= d; ++k) {
        std::vector<double> col;
        col.reserve(grid.points.size());
        for (double x : grid.points) {
            col.push_back(hermite_poly(d - 2 * k, x));
        }
        cols.push_back(std::move(col));
    }
    if (!cols.empty()) {
        fit.coeffs = least_squares(cols, diff);
    }
    for (std::size_t t = 0; t < diff.size(); ++t) {
        double r = diff[t];
        for (std::size_t k = 0; k < cols.size(); ++k) {
            r -= fit.coeffs[k] * cols[k][t];
        }
        fit.residual = std::max(fit.residual, std::abs(r));
    }
    if (fit.residual > threshold) {
        throw ConsistencyError("pattern_nonuniqueness_residual: " + to_string(a) + " and " + to_string(b) +
                               " differ outside the low-order Hermite span");
    }
    return fit;
}

std::string to_string(ProductChoice p) {
    switch (p) {
    case ProductChoice::HH:
        return "hh";
    case ProductChoice::HG:
        return "hg";
    case ProductChoice::GH:
        return "gh";
    case ProductChoice::GG:
        return "gg";
    }
    return "?";
}

ProductChoice parse_product_choice(const std::string &s) {
    for (ProductChoice p : {ProductChoice::HH, ProductChoice::HG, ProductChoice::GH, ProductChoice::GG}) {
        if (s == to_string(p)) {
            return p;
        }
    }
    throw DomainError("unknown product choice '" + s + "'");
}

double eigen_product(ProductChoice p, int m, int n, double x) {
    check_indices(m, n, "eigen_product");
    switch (p) {
    case ProductChoice::HH:
        return std::exp(-x * x) / std::sqrt(std::numbers::pi) * hermite_scaled(m, x) * hermite_scaled(n, x);
    case ProductChoice::HG:
        return 2 * hermite_scaled(m, x) * dawson_scaled_pair(n, x).d_n;
    case ProductChoice::GH:
        return 2 * dawson_scaled_pair(m, x).d_n * hermite_scaled(n, x);
    case ProductChoice::GG:
        return 4 * std::sqrt(std::numbers::pi) * std::exp(x * x) * dawson_scaled_pair(m, x).d_n * dawson_scaled_pair(n, x).d_n;
    }
    throw DomainError("eigen_product: unknown product");
}

double ode_residual(const std::function<double(double)> &f, int m, int n, const EvalGrid &grid, double h) {
    grid.validate();
    const double c = m + n + 1;
    const double dd = double(m - n) * double(m - n);
    double worst = 0, top = 0;
    for (double x : grid.points) {
        const Derivs d = differences(f, x, h);
        const double f0 = f(x);
        const double t1 = d.d4, t2 = -4 * (x * x - c) * d.d2, t3 = -12 * x * d.d1, t4 = -4 * f0, t5 = 4 * dd * f0;
        const double scale = std::abs(t1) + std::abs(t2) + std::abs(t3) + std::abs(t4) + std::abs(t5);
        worst = std::max(worst, std::abs(t1 + t2 + t3 + t4 + t5));
        top = std::max(top, scale);
    }
    return top > 0 ? worst / top : 0.0;
}

double ode_residual(int m, int n, ProductChoice p, const EvalGrid &grid, double h) {
    return ode_residual([&](double x) { return eigen_product(p, m, n, x); }, m, n, grid, h);
}

double ode3_residual(const std::function<double(double)> &f, int m, int n, const EvalGrid &grid, double h) {
    grid.validate();
    const double c = m + n + 1;
    double worst = 0, top = 0;
    for (double x : grid.points) {
        const Derivs d = differences(f, x, h);
        const double f0 = f(x);
        const double t1 = d.d3, t2 = -4 * (x * x - c) * d.d1, t3 = -4 * x * f0;
        const double scale = std::abs(t1) + std::abs(t2) + std::abs(t3);
        worst = std::max(worst, std::abs(t1 + t2 + t3));
        top = std::max(top, scale);
    }
    return top > 0 ? worst / top : 0.0;
}

OrthogonalityResult orthogonality_check(int k, int m, int j, const OrthogonalityQuad &q) {
    if (k < 0 || m < 0 || j < 0) {
        throw DomainError("orthogonality_check: negative index");
    }
    const double W = q.half_width > 0 ? q.half_width : std::sqrt(2.0 * (m + j) + 1) + 9;
    const int panels = std::max(8, int(std::ceil(2 * W * q.panels_per_unit)));
    auto hh = [&](double x) {
        const auto h = hermite_functions(m + j, x);
        return h[m] * h[m + j];
    };
    OrthogonalityResult r;
    r.value = integrate_gl([&](double x) { return pattern_deriv_product(k, k + j, x) * hh(x); }, -W, W, panels, q.order);
    r.tail_mass = 2 * integrate_gl([&](double x) { return std::abs(hh(x)); }, W, W + 10, 40, q.order);
    r.window_warning = r.tail_mass > 1e-12;
    return r;
}

}  // namespace homtomo
