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

#include <complex>
#include <functional>
#include <optional>
#include <vector>

// Hermite polynomials, oscillator eigenfunctions h_n and their nonnormalizable
// partners g_n, the Dawson integral, the Mehler kernel and Laguerre polynomials.
// All abscissas are dimensionless (x = q / sqrt(hbar)).

namespace homtomo {

// Abscissas with optional matching quadrature weights.
struct EvalGrid {
    std::vector<double> points;
    std::vector<double> weights;  // empty or same length as points

    static EvalGrid uniform(double a, double b, std::size_t n);
    void validate() const;
};

double factorial(int n);
double binomial(int n, int k);

// H_n(x) by the three-term recurrence. Throws RangeError on overflow.
double hermite_poly(int n, double x);

// H_n(x) / sqrt(2^n n!), i.e. the oscillator eigenfunction without its Gaussian factor.
double hermite_scaled(int n, double x);

// h_n(x) = pi^{-1/4} exp(-x^2/2) H_n(x) / sqrt(2^n n!).
double hermite_function(int n, double x);

// h_0(x) .. h_nmax(x).
std::vector<double> hermite_functions(int nmax, double x);

// h_n'(x) = (sqrt(n) h_{n-1} - sqrt(n+1) h_{n+1}) / sqrt(2).
double hermite_function_deriv(int n, double x);

// Dawson integral F(x) = exp(-x^2) int_0^x exp(t^2) dt.
double dawson(double x);

// Scaled Dawson derivatives d_n(x) = (-1)^n F^{(n)}(x) / sqrt(2^n n!).
// They satisfy d'' + 2x d' + 2(n+1) d = 0, d_n' = -sqrt(2(n+1)) d_{n+1}, and
// g_n(x) = 2 pi^{1/4} exp(x^2/2) d_n(x).
struct DawsonPair {
    double d_n;
    double d_n1;  // d_{n+1}
};
DawsonPair dawson_scaled_pair(int n, double x);

// d_0(x) .. d_{nmax+1}(x).
std::vector<double> dawson_scaled_all(int nmax, double x);

// Nonnormalizable eigenfunction g_n for n >= -1 (parity (-1)^{n+1}).
// Throws RangeError when exp(x^2/2) overflows.
double g_function(int n, double x);

// g_n from the explicit Dawson/Hermite combination
//   2 pi^{1/4} / sqrt(2^n n!) e^{x^2/2} [H_n F - sum_k C(n,k) i^{n-1-k} H_k(x) H_{n-1-k}(ix)].
// Loses roughly x^{2n} relative accuracy to cancellation; kept as a cross-check.
double g_function_explicit(int n, double x);

// g_n' from the ladder relation g_n' = x g_n - sqrt(2(n+1)) g_{n+1} (g_{-1}' = x g_{-1}).
double g_function_deriv(int n, double x);

// Central finite difference with step 1e-5 max(1, |x|).
double central_diff(const std::function<double(double)> &f, double x);

// f(x) g'(x) - f'(x) g(x) with derivatives by central differences.
double wronskian(const std::function<double(double)> &f, const std::function<double(double)> &g, double x);

// Same with caller-supplied derivatives.
double wronskian(double f, double df, double g, double dg);

// Closed form (1 - z^2)^{-1/2} exp{(2xyz - (x^2+y^2) z^2) / (1 - z^2)}, |z| < 1.
double mehler_closed(double x, double y, double z);
std::complex<double> mehler_closed(double x, double y, std::complex<double> z);

// sum_{n <= N} z^n H_n(x) H_n(y) / (2^n n!).
double mehler_series(double x, double y, double z, int N);
std::complex<double> mehler_series(double x, double y, std::complex<double> z, int N);

// Closed form when series_terms is empty, truncated series otherwise.
double mehler_kernel(double x, double y, double z, std::optional<int> series_terms = std::nullopt);

// Associated Laguerre L_n^k(x), n >= 0, n + k >= 0.
double laguerre_assoc(int n, int k, double x);

}  // namespace homtomo
