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

#include "homtomo/specfun.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "homtomo/errors.hpp"

namespace homtomo {

namespace {

constexpr double kPi = std::numbers::pi;

// Power series below this |x|, asymptotic expansion above.
constexpr double kDawsonSwitch = 8.0;

// The scaled Dawson derivatives use the asymptotic expansion only beyond this point.
constexpr double kDawsonDerivAsymptotic = 8.0;

double pi_quarter() {
    static const double v = std::pow(kPi, 0.25);
    return v;
}

void check_finite(double v, const char *what) {
    if (!std::isfinite(v)) {
        throw RangeError(std::string(what) + ": result outside the double range");
    }
}

}  // namespace

EvalGrid EvalGrid::uniform(double a, double b, std::size_t n) {
    EvalGrid g;
    g.points.resize(n);
    for (std::size_t i = 0; i < n; i++) {
        g.points[i] = n == 1 ? a : a + (b - a) * double(i) / double(n - 1);
    }
    return g;
}

void EvalGrid::validate() const {
    for (std::size_t i = 1; i < points.size(); i++) {
        if (!(points[i] > points[i - 1])) {
            throw DomainError("EvalGrid: points must be strictly increasing");
        }
    }
    if (!weights.empty()) {
        if (weights.size() != points.size()) {
            throw DomainError("EvalGrid: weights and points differ in length");
        }
        for (double w : weights) {
            if (!std::isfinite(w)) {
                throw DomainError("EvalGrid: non-finite weight");
            }
        }
    }
}

double factorial(int n) {
    if (n < 0) {
        throw DomainError("factorial: negative argument");
    }
    double f = 1;
    for (int k = 2; k <= n; k++) {
        f *= k;
    }
    return f;
}

double binomial(int n, int k) {
    if (k < 0 || k > n) {
        return 0;
    }
    k = std::min(k, n - k);
    double b = 1;
    for (int j = 1; j <= k; j++) {
        b = b * (n - k + j) / j;
    }
    return b < 9e15 ? std::round(b) : b;
}

double hermite_poly(int n, double x) {
    if (n < 0) {
        throw DomainError("hermite_poly: negative order");
    }
    double hm = 0, h = 1;
    for (int k = 0; k < n; k++) {
        const double hp = 2 * x * h - 2 * k * hm;
        hm = h;
        h = hp;
    }
    check_finite(h, "hermite_poly");
    return h;
}

double hermite_scaled(int n, double x) {
    if (n < 0) {
        throw DomainError("hermite_scaled: negative order");
    }
    double hm = 0, h = 1;
    for (int k = 0; k < n; k++) {
        const double hp = x * std::sqrt(2.0 / (k + 1)) * h - std::sqrt(double(k) / (k + 1)) * hm;
        hm = h;
        h = hp;
    }
    check_finite(h, "hermite_scaled");
    return h;
}

std::vector<double> hermite_functions(int nmax, double x) {
    if (nmax < 0) {
        throw DomainError("hermite_functions: negative order");
    }
    std::vector<double> h(nmax + 1);
    h[0] = std::exp(-0.5 * x * x) / pi_quarter();
    if (nmax >= 1) {
        h[1] = std::sqrt(2.0) * x * h[0];
    }
    for (int k = 1; k < nmax; k++) {
        h[k + 1] = x * std::sqrt(2.0 / (k + 1)) * h[k] - std::sqrt(double(k) / (k + 1)) * h[k - 1];
    }
    return h;
}

double hermite_function(int n, double x) {
    return hermite_functions(n, x)[n];
}

double hermite_function_deriv(int n, double x) {
    if (n < 0) {
        throw DomainError("hermite_function_deriv: negative order");
    }
    const auto h = hermite_functions(n + 1, x);
    const double lower = n > 0 ? std::sqrt(double(n)) * h[n - 1] : 0.0;
    return (lower - std::sqrt(double(n + 1)) * h[n + 1]) / std::sqrt(2.0);
}

double dawson(double x) {
    const double ax = std::abs(x);
    if (ax == 0) {
        return 0.0;
    }
    double result;
    if (ax < kDawsonSwitch) {
        // exp(-x^2) * sum_k x^{2k+1} / (k! (2k+1)): all terms positive.
        const long double x2 = (long double)ax * ax;
        long double t = ax;
        long double s = 0;
        for (int k = 0; k < 1000; k++) {
            const long double term = t / (2 * k + 1);
            s += term;
            if (k > x2 && term < 1e-19L * s) {
                break;
            }
            t *= x2 / (k + 1);
        }
        result = double(std::exp(-x2) * s);
    } else {
        // 1/(2x) sum_k (2k-1)!! / (2x^2)^k
        const double y = 2 * ax * ax;
        double t = 1, s = 1;
        for (int k = 0; k < 200; k++) {
            const double tn = t * (2 * k + 1) / y;
            if (tn > t) {
                break;
            }
            t = tn;
            s += t;
            if (t < 1e-18 * s) {
                break;
            }
        }
        result = s / (2 * ax);
    }
    return x < 0 ? -result : result;
}

namespace {

// d_k(0) for k = 0 .. n+1.
std::vector<double> dawson_scaled_at_zero(int n) {
    std::vector<double> z(n + 2, 0.0);
    if (n + 1 >= 1) {
        z[1] = -1 / std::sqrt(2.0);
    }
    for (int k = 1; k + 1 <= n + 1; k++) {
        z[k + 1] = -std::sqrt(double(k) / (k + 1)) * z[k - 1];
    }
    return z;
}

// March d'' + 2x d' + 2(n+1) d = 0 from 0 to ax >= 0 by local Taylor expansions.
// d_n is the dominant solution for x -> infinity, so forward marching is stable.
DawsonPair dawson_pair_ode(int n, double ax) {
    const auto z = dawson_scaled_at_zero(n);
    const double c = std::sqrt(2.0 * (n + 1));
    double y = z[n];
    double yp = -c * z[n + 1];
    const double hmax = 0.25 / std::max(1.0, std::sqrt(2.0 * n + 1) / 4);
    double x0 = 0;
    double a[400];
    while (x0 < ax) {
        const double h = std::min(hmax, ax - x0);
        a[0] = y;
        a[1] = yp;
        double ys = a[0] + a[1] * h;
        double yps = a[1];
        double hk = h;  // h^(k-1) for the derivative sum at index k
        int quiet = 0;
        for (int k = 0; k + 2 < 400; k++) {
            a[k + 2] = -(2 * x0 * (k + 1) * a[k + 1] + 2.0 * (k + n + 1) * a[k]) / ((k + 2.0) * (k + 1.0));
            const double dterm = (k + 2) * a[k + 2] * hk;
            hk *= h;
            const double term = a[k + 2] * hk;
            ys += term;
            yps += dterm;
            const double scale = std::abs(ys) + std::abs(yps) * h;
            if (std::abs(term) + std::abs(dterm) * h <= 1e-18 * scale) {
                if (++quiet >= 2) {
                    break;
                }
            } else {
                quiet = 0;
            }
        }
        y = ys;
        yp = yps;
        x0 += h;
    }
    return {y, -yp / c};
}

// Asymptotic expansion d_n(x) ~ sum_k (2k-1)!!/2^{k+1} (2k+n)!/(2k)! x^{-2k-1-n} / sqrt(2^n n!).
bool dawson_scaled_asymptotic(int n, double x, double &out) {
    double t = 1 / (2 * x);
    for (int k = 1; k <= n; k++) {
        t *= std::sqrt(double(k)) / (std::sqrt(2.0) * x);
    }
    double s = t;
    for (int k = 0; k < 2000; k++) {
        const double ratio = (2.0 * k + n + 1) * (2.0 * k + n + 2) / (4.0 * (k + 1) * x * x);
        if (ratio >= 1) {
            return false;
        }
        t *= ratio;
        s += t;
        if (t <= 1e-18 * s) {
            out = s;
            return true;
        }
    }
    return false;
}

}  // namespace

DawsonPair dawson_scaled_pair(int n, double x) {
    if (n < 0) {
        throw DomainError("dawson_scaled_pair: negative order");
    }
    const double ax = std::abs(x);
    DawsonPair p{};
    bool done = false;
    if (ax >= kDawsonDerivAsymptotic) {
        done = dawson_scaled_asymptotic(n, ax, p.d_n) && dawson_scaled_asymptotic(n + 1, ax, p.d_n1);
    }
    if (!done) {
        p = dawson_pair_ode(n, ax);
    }
    if (x < 0) {
        // d_n has parity (-1)^{n+1}.
        if (n % 2 == 0) {
            p.d_n = -p.d_n;
        } else {
            p.d_n1 = -p.d_n1;
        }
    }
    return p;
}

std::vector<double> dawson_scaled_all(int nmax, double x) {
    if (nmax < 0) {
        throw DomainError("dawson_scaled_all: negative order");
    }
    std::vector<double> d(nmax + 2);
    const DawsonPair top = dawson_scaled_pair(nmax, x);
    d[nmax] = top.d_n;
    d[nmax + 1] = top.d_n1;
    // Backward recurrence d_{k-1} = (2x d_k - sqrt(2(k+1)) d_{k+1}) / sqrt(2k); stable for the
    // solution that decreases with k.
    for (int k = nmax; k >= 1; k--) {
        d[k - 1] = (2 * x * d[k] - std::sqrt(2.0 * (k + 1)) * d[k + 1]) / std::sqrt(2.0 * k);
    }
    return d;
}

double g_function(int n, double x) {
    if (n < -1) {
        throw DomainError("g_function: order below -1 is not supported");
    }
    const double half = 0.5 * x * x;
    if (n == -1) {
        const double v = pi_quarter() * std::sqrt(2.0) * std::exp(half);
        check_finite(v, "g_function");
        return v;
    }
    const double d = dawson_scaled_pair(n, x).d_n;
    if (d == 0) {
        return 0.0;
    }
    const double v = std::copysign(std::exp(half + std::log(2 * pi_quarter() * std::abs(d))), d);
    check_finite(v, "g_function");
    return v;
}

double g_function_explicit(int n, double x) {
    if (n < 0) {
        throw DomainError("g_function_explicit: order must be nonnegative");
    }
    // P_m(x) = i^m H_m(ix) is a real polynomial: P_{m+1} = -2x P_m + 2m P_{m-1}.
    std::vector<double> P(std::max(n, 1));
    std::vector<double> H(n + 1);
    P[0] = 1;
    if (n >= 2) {
        P[1] = -2 * x;
    }
    for (int m = 1; m + 1 < n; m++) {
        P[m + 1] = -2 * x * P[m] + 2 * m * P[m - 1];
    }
    H[0] = 1;
    if (n >= 1) {
        H[1] = 2 * x;
    }
    for (int k = 1; k < n; k++) {
        H[k + 1] = 2 * x * H[k] - 2 * k * H[k - 1];
    }
    double bracket = H[n] * dawson(x);
    for (int k = 0; k <= n - 1; k++) {
        bracket -= binomial(n, k) * H[k] * P[n - 1 - k];
    }
    const double norm = 2 * pi_quarter() / std::sqrt(std::pow(2.0, n) * factorial(n));
    const double v = norm * std::exp(0.5 * x * x) * bracket;
    check_finite(v, "g_function_explicit");
    return v;
}

double g_function_deriv(int n, double x) {
    if (n == -1) {
        return x * g_function(-1, x);
    }
    return x * g_function(n, x) - std::sqrt(2.0 * (n + 1)) * g_function(n + 1, x);
}

double central_diff(const std::function<double(double)> &f, double x) {
    const double h = 1e-5 * std::max(1.0, std::abs(x));
    return (f(x + h) - f(x - h)) / (2 * h);
}

double wronskian(const std::function<double(double)> &f, const std::function<double(double)> &g, double x) {
    return wronskian(f(x), central_diff(f, x), g(x), central_diff(g, x));
}

double wronskian(double f, double df, double g, double dg) {
    return f * dg - df * g;
}

double mehler_closed(double x, double y, double z) {
    if (!(std::abs(z) < 1)) {
        throw DomainError("mehler_closed: |z| must be below 1");
    }
    const double d = 1 - z * z;
    return std::exp((2 * x * y * z - (x * x + y * y) * z * z) / d) / std::sqrt(d);
}

std::complex<double> mehler_closed(double x, double y, std::complex<double> z) {
    if (!(std::abs(z) < 1)) {
        throw DomainError("mehler_closed: |z| must be below 1");
    }
    const std::complex<double> d = 1.0 - z * z;
    return std::exp((2 * x * y * z - (x * x + y * y) * z * z) / d) / std::sqrt(d);
}

namespace {

template <class T>
T mehler_series_impl(double x, double y, T z, int N) {
    if (N < 0) {
        throw DomainError("mehler_series: negative truncation");
    }
    if (!(std::abs(z) < 1)) {
        throw DomainError("mehler_series: |z| must be below 1");
    }
    double ax = 1, ay = 1, bx = 0, by = 0;
    T zp = 1;
    T s = 0;
    for (int n = 0; n <= N; n++) {
        s += zp * (ax * ay);
        const double nx = x * std::sqrt(2.0 / (n + 1)) * ax - std::sqrt(double(n) / (n + 1)) * bx;
        const double ny = y * std::sqrt(2.0 / (n + 1)) * ay - std::sqrt(double(n) / (n + 1)) * by;
        bx = ax;
        by = ay;
        ax = nx;
        ay = ny;
        zp *= z;
    }
    return s;
}

}  // namespace

double mehler_series(double x, double y, double z, int N) {
    return mehler_series_impl<double>(x, y, z, N);
}

std::complex<double> mehler_series(double x, double y, std::complex<double> z, int N) {
    return mehler_series_impl<std::complex<double>>(x, y, z, N);
}

double mehler_kernel(double x, double y, double z, std::optional<int> series_terms) {
    return series_terms ? mehler_series(x, y, z, *series_terms) : mehler_closed(x, y, z);
}

double laguerre_assoc(int n, int k, double x) {
    if (n < 0 || n + k < 0) {
        throw DomainError("laguerre_assoc: need n >= 0 and n + k >= 0");
    }
    double lm = 0, l = 1;
    for (int j = 0; j < n; j++) {
        const double lp = ((2.0 * j + 1 + k - x) * l - (j + k) * lm) / (j + 1);
        lm = l;
        l = lp;
    }
    return l;
}

}  // namespace homtomo
