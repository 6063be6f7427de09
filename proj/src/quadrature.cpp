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

#include "homtomo/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace homtomo {

namespace {

Rule make_gauss_legendre(int n) {
    Rule r;
    r.x.resize(n);
    r.w.resize(n);
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; i++) {
        double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double pp = 0;
        for (int it = 0; it < 100; it++) {
            double p1 = 1, p2 = 0;
            for (int j = 0; j < n; j++) {
                const double p3 = p2;
                p2 = p1;
                p1 = ((2.0 * j + 1) * z * p2 - j * p3) / (j + 1);
            }
            pp = n * (z * p1 - p2) / (z * z - 1);
            const double z1 = z;
            z = z1 - p1 / pp;
            if (std::abs(z - z1) <= 1e-15) {
                break;
            }
        }
        r.x[i] = -z;
        r.x[n - 1 - i] = z;
        r.w[i] = r.w[n - 1 - i] = 2 / ((1 - z * z) * pp * pp);
    }
    return r;
}

}  // namespace

const Rule &gauss_legendre(int n) {
    if (n < 1) {
        throw std::invalid_argument("gauss_legendre: n must be positive");
    }
    static std::mutex mu;
    static std::map<int, std::unique_ptr<Rule>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto &slot = cache[n];
    if (!slot) {
        slot = std::make_unique<Rule>(make_gauss_legendre(n));
    }
    return *slot;
}

Rule gauss_hermite(int n) {
    if (n < 1) {
        throw std::invalid_argument("gauss_hermite: n must be positive");
    }
    // Nodes are the eigenvalues of the Jacobi matrix (zero diagonal, off-diagonal sqrt(k/2)), located by
    // Sturm-count bisection and polished by Newton on the normalized Hermite functions.
    auto count_below = [n](double t) {
        int c = 0;
        double q = -t;
        for (int k = 1; k <= n; k++) {
            if (q < 0) {
                c++;
            }
            if (k == n) {
                break;
            }
            const double b2 = 0.5 * k;
            q = -t - b2 / (q != 0 ? q : 1e-300);
        }
        return c;
    };
    const double pim4 = 1 / std::pow(std::numbers::pi, 0.25);
    auto eval = [n, pim4](double z, double &pp) {
        double p1 = pim4 * std::exp(-0.5 * z * z), p2 = 0;
        for (int j = 0; j < n; j++) {
            const double p3 = p2;
            p2 = p1;
            p1 = z * std::sqrt(2.0 / (j + 1)) * p2 - std::sqrt(double(j) / (j + 1)) * p3;
        }
        pp = std::sqrt(2.0 * n) * p2;
        return p1;
    };
    const double bound = std::sqrt(2.0 * n + 1) + 1;
    std::vector<double> x(n), w(n);
    for (int i = 0; i < n / 2 + n % 2; i++) {
        double lo = -bound, hi = 0.0;
        if (2 * i + 1 == n) {
            lo = hi = 0.0;
        }
        for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, std::abs(lo)); it++) {
            const double mid = 0.5 * (lo + hi);
            if (count_below(mid) > i) {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        double z = 0.5 * (lo + hi), pp = 0;
        for (int it = 0; it < 3; it++) {
            const double p = eval(z, pp);
            if (pp != 0) {
                z -= p / pp;
            }
        }
        eval(z, pp);
        x[i] = z;
        x[n - 1 - i] = -z;
        w[i] = w[n - 1 - i] = 2 * std::exp(-z * z) / (pp * pp);
    }
    return Rule{std::move(x), std::move(w)};
}

Rule panel_gauss_legendre(const std::vector<double> &breaks, int order) {
    const Rule &g = gauss_legendre(order);
    Rule r;
    for (std::size_t p = 0; p + 1 < breaks.size(); p++) {
        const double a = breaks[p], b = breaks[p + 1];
        const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
        for (std::size_t i = 0; i < g.x.size(); i++) {
            r.x.push_back(mid + half * g.x[i]);
            r.w.push_back(half * g.w[i]);
        }
    }
    return r;
}

Rule composite_gauss_legendre(double a, double b, int panels, int order) {
    std::vector<double> breaks(panels + 1);
    for (int p = 0; p <= panels; p++) {
        breaks[p] = a + (b - a) * p / panels;
    }
    return panel_gauss_legendre(breaks, order);
}

std::vector<double> trapezoid_weights(std::size_t n, double h) {
    std::vector<double> w(n, h);
    if (n > 0) {
        w.front() = 0.5 * h;
        w.back() = 0.5 * h;
    }
    return w;
}

}  // namespace homtomo
