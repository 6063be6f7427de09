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

#include <functional>
#include <string>
#include <vector>

#include "homtomo/specfun.hpp"

// Pattern functions F_{m,n}: the weights that turn a tomogram into Fock matrix elements.
//   canonical      F      vanishes at infinity, F_{m,n} = F_{n,m}
//   hermite-series F'     sum over H_{m+n+2j}, differs from F by low-order Hermite polynomials
//   deriv-product  F''    d/dx [h_m g_n]
//   deriv-swapped  F'''   d/dx [h_n g_m]
//   deriv-sym      (F'' + F''')/2, equal to F'

namespace homtomo {

enum class PatternRep { Canonical, HermiteSeries, DerivProduct, DerivProductSwapped, DerivProductSymmetric };

std::string to_string(PatternRep r);
// Accepts the names listed above; DomainError otherwise.
PatternRep parse_pattern_rep(const std::string &s);

struct SeriesOptions {
    bool adaptive = true;
    int terms = 50;          // fixed truncation when !adaptive
    double rel_tol = 1e-14;  // adaptive stop: `quiet_run` consecutive terms below rel_tol * |sum|
    int quiet_run = 20;
    int max_terms = 4000;
    // Beyond |x| >= 5 use the exact (F'' + F''')/2 form instead of the series.
    bool switch_large_x = true;
};

struct SeriesResult {
    double value = 0;
    int terms = 0;
    bool converged = true;
    bool switched = false;  // value came from the closed derivative-product form
};

SeriesResult pattern_hermite_series_ex(int m, int n, double x, const SeriesOptions &opt = {});
// Throws AccuracyError when the series has not converged.
double pattern_hermite_series(int m, int n, double x, const SeriesOptions &opt = {});

// F''_{m,n}(x) = 2 [sqrt(2m) H~_{m-1} d_n - sqrt(2(n+1)) H~_m d_{n+1}] with H~ = H / sqrt(2^k k!).
double pattern_deriv_product(int m, int n, double x);
double pattern_deriv_product_swapped(int m, int n, double x);

// F_{m,n} = F''_{min(m,n), max(m,n)}.
double pattern_canonical(int m, int n, double x);

// F - F': finite sum over H_{|m-n|-2k}, k >= 1 (zero when |m-n| <= 1).
double pattern_correction(int m, int n, double x);

// F' + (F - F') with the series forced; a second route to F used as a cross-check.
double pattern_canonical_series(int m, int n, double x, const SeriesOptions &opt = {});

// 2 (1 - 2 x F(x)) with the Dawson integral.
double pattern_f00_closed(double x);
// 2 sum_{k < terms} (-1)^k k! (2x)^{2k} / (2k)!
double pattern_f00_taylor(double x, int terms);

struct AsymptoticResult {
    double value = 0;
    bool reliable = true;  // false for |x| < 4
};

// The Hermite series with every H_k replaced by (2x)^k, i.e.
//   (sqrt2 x)^{m+n} / sqrt(m! n!) sum_j (m+j)!(n+j)!/(j!(m+n+2j)!) (-2x^2)^j,
// resummed as a Beta-type integral so that no cancellation occurs.
AsymptoticResult pattern_asymptotic(int m, int n, double x);
// The same sum evaluated term by term in long double (for moderate |x| only).
double pattern_asymptotic_series(int m, int n, double x);

double pattern_value(PatternRep rep, int m, int n, double x);

struct PatternTable {
    int m = 0, n = 0;
    PatternRep rep = PatternRep::Canonical;
    EvalGrid grid;
    std::vector<double> values;

    // max |F(-x) - (-1)^{m+n} F(x)| over mirrored grid pairs (grid must be symmetric).
    double parity_defect() const;
};

PatternTable pattern_table(int m, int n, PatternRep rep, const EvalGrid &grid);

struct NonuniquenessFit {
    std::vector<double> coeffs;  // coeffs[k-1] multiplies H_{|m-n|-2k}, k >= 1
    double residual = 0;         // max |A - B - fit| on the grid
};

// Least-squares fit of A - B onto span{H_{|m-n|-2k}}; ConsistencyError if the residual exceeds `threshold`.
NonuniquenessFit pattern_nonuniqueness_residual(PatternRep a, PatternRep b, int m, int n, const EvalGrid &grid,
                                                double threshold = 1e-8);

enum class ProductChoice { HH, HG, GH, GG };
std::string to_string(ProductChoice p);
ProductChoice parse_product_choice(const std::string &s);

// f_m g_n products: h_m h_n, h_m g_n, g_m h_n, g_m g_n.
double eigen_product(ProductChoice p, int m, int n, double x);

// Fourth-order operator f'''' - 4(x^2 - (m+n+1)) f'' - 12 x f' - 4 f + 4 (m-n)^2 f applied with
// five-point differences (Richardson-extrapolated third and fourth derivatives). Returns sup |L f| over the
// grid divided by the sup of the summed magnitudes of its terms.
double ode_residual(const std::function<double(double)> &f, int m, int n, const EvalGrid &grid, double h = 0.02);
double ode_residual(int m, int n, ProductChoice p, const EvalGrid &grid, double h = 0.02);

// Third-order operator f''' - 4(x^2 - (m+n+1)) f' - 4 x f (homogeneous only when m = n).
double ode3_residual(const std::function<double(double)> &f, int m, int n, const EvalGrid &grid, double h = 0.02);

struct OrthogonalityQuad {
    double half_width = 0;  // 0: sqrt(2(m+j)+1) + 9
    int panels_per_unit = 4;
    int order = 16;
};

struct OrthogonalityResult {
    double value = 0;
    double tail_mass = 0;  // int |h_m h_{m+j}| outside the window
    bool window_warning = false;
};

// int dx F''_{k,k+j}(x) h_m(x) h_{m+j}(x), which equals delta_{k,m}.
OrthogonalityResult orthogonality_check(int k, int m, int j, const OrthogonalityQuad &q = {});

}  // namespace homtomo
