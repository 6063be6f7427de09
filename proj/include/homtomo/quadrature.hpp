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

#pragma once

#include <cstddef>
#include <vector>

namespace homtomo {

// Nodes and weights of an interpolatory rule.
struct Rule {
    std::vector<double> x;
    std::vector<double> w;
};

// n-point Gauss-Legendre rule on [-1, 1].
const Rule &gauss_legendre(int n);

// n-point Gauss-Hermite rule for the weight exp(-x^2) on the real line.
Rule gauss_hermite(int n);

// Composite rule: `panels` equal panels on [a, b], each with an `order`-point Gauss-Legendre rule.
Rule composite_gauss_legendre(double a, double b, int panels, int order = 16);

// Composite Gauss-Legendre on panels bounded by the given breakpoints (increasing).
Rule panel_gauss_legendre(const std::vector<double> &breaks, int order = 16);

template <class F>
double integrate(const Rule &r, F &&f) {
    double s = 0;
    for (std::size_t i = 0; i < r.x.size(); i++) {
        s += r.w[i] * f(r.x[i]);
    }
    return s;
}

template <class F>
double integrate_gl(F &&f, double a, double b, int panels, int order = 16) {
    const Rule &g = gauss_legendre(order);
    const double h = (b - a) / panels;
    double s = 0;
    for (int p = 0; p < panels; p++) {
        const double mid = a + (p + 0.5) * h;
        double ps = 0;
        for (std::size_t i = 0; i < g.x.size(); i++) {
            ps += g.w[i] * f(mid + 0.5 * h * g.x[i]);
        }
        s += 0.5 * h * ps;
    }
    return s;
}

// Trapezoid weights for a uniform grid with n points and spacing h.
std::vector<double> trapezoid_weights(std::size_t n, double h);

}  // namespace homtomo
