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
#include <string>
#include <vector>

#include "homtomo/states.hpp"

// Plane Radon transform W(u, v; c) = int dq dp delta(c - u q - v p) W(q, p), its link to the
// Fourier transform, filtered back-projection, and the regularized 1/x and 1/x^2 functionals.

namespace homtomo {

// Real function on the (q, p) plane with |W| <= tail_eps outside the disc of the given radius.
struct PlaneField {
    std::function<double(double, double)> eval;
    double radius = 8;
    double tail_eps = 1e-10;

    double operator()(double q, double p) const { return eval(q, p); }
    // Samples 256 points on the circle of `radius`; ConsistencyError if any exceeds tail_eps.
    void validate() const;

    static PlaneField analytic(std::function<double(double, double)> f, double radius, double tail_eps = 1e-10);
    // Bilinear interpolation of values[i * ps.size() + j] = W(qs[i], ps[j]); zero outside the grid.
    static PlaneField sampled(std::vector<double> qs, std::vector<double> ps, std::vector<double> values, double tail_eps = 1e-10);
};

// Integral of W along u q + v p = c divided by |(u, v)|, Gauss-Legendre panels of width <= 1/16 out to the radius.
double radon_numeric(const PlaneField &f, double u, double v, double c);

// int dc exp(-i b c) row(c) over [-half_width, half_width].
cplx fourier_from_radon(const std::function<double(double)> &row, double b, double half_width);

// W~(u, v) from a Radon evaluator through the row c -> W(u/b, v/b; c). The c window is
// radius * |(u, v)| / |b|. (u, v) = (0, 0) returns the normalization int dc W(1, 0; c).
cplx fourier_from_radon(const RadonFn &w, double u, double v, double b, double radius);

// W(u, v; c) = (1/2pi) int db exp(i b c) W~(b u, b v) over |b| <= b_max.
double radon_from_fourier(const std::function<cplx(double, double)> &wt, double u, double v, double c, double b_max);

struct BackProjectionOptions {
    int pad_factor = 4;
    double taper_fraction = 0.05;  // raised-cosine roll-off on each end of the q window
};

// Filtered back-projection of a sampled tomogram with uniform angles over [0, pi).
class BackProjection {
  public:
    explicit BackProjection(const Tomogram &t, BackProjectionOptions opt = {});

    double operator()(double q, double p) const;
    // values[i * ps.size() + j] = W(qs[i], ps[j])
    std::vector<double> grid(const std::vector<double> &qs, const std::vector<double> &ps) const;
    PlaneField field() const;

    // Filled when the angle sampling is coarser than 64 directions.
    const std::vector<std::string> &warnings() const { return warnings_; }

  private:
    std::vector<double> cos_, sin_;
    std::vector<double> filtered_;  // n_angles x n_q
    double q0_ = 0, dq_ = 0;
    std::size_t nq_ = 0;
    double radius_ = 0;
    std::vector<std::string> warnings_;
};

double wigner_from_tomogram(const Tomogram &t, double q, double p);

// int_0^inf (phi(x) - phi(-x)) / x dx. x_max = 0 picks the cutoff from the decay of phi.
double pv_functional(const std::function<double(double)> &phi, double x_max = 0);

// int_0^inf (phi(x) + phi(-x) - 2 phi(0)) / x^2 dx; the tail beyond the cutoff is added in closed form.
double reg_inv_square_functional(const std::function<double(double)> &phi, double x_max = 0);

}  // namespace homtomo
