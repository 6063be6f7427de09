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
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "homtomo/symplectic.hpp"

// Reference states and their phase-space, Radon and Fourier representations.

namespace homtomo {

// Squeezed coherent state: vacuum squeezed by zeta (|zeta| < 1), then displaced by (qbar, pbar).
struct GaussianState {
    double qbar = 0, pbar = 0;
    cplx zeta = 0;
    double hbar = 1;

    void validate() const;
    static GaussianState vacuum(double hbar = 1) { return {0, 0, 0, hbar}; }
    // Coherent state with amplitude alpha = (q + i p) / sqrt(2 hbar).
    static GaussianState coherent(cplx alpha, double hbar = 1);
};

// Truncated Fock-basis density matrix, entries rho(m, n) = <m|rho|n>, 0 <= m, n < dim.
class DensityMatrix {
  public:
    DensityMatrix() = default;
    explicit DensityMatrix(int dim);

    int dim() const { return dim_; }
    cplx &operator()(int m, int n) { return e_[std::size_t(m) * dim_ + n]; }
    const cplx &operator()(int m, int n) const { return e_[std::size_t(m) * dim_ + n]; }

    cplx trace() const;
    // max |rho(m,n) - conj(rho(n,m))|
    double hermitian_defect() const;
    // Replaces rho by (rho + rho^dagger)/2 and returns the defect measured before.
    double symmetrize();
    // Hermitian within 1e-10, diagonal >= -1e-10, |trace - 1| <= trace_tol.
    void validate(double trace_tol = 1e-6) const;

    static DensityMatrix fock(int n, int dim);
    // Coherent state truncated at dim (trace slightly below one).
    static DensityMatrix coherent(cplx alpha, int dim);

  private:
    int dim_ = 0;
    std::vector<cplx> e_;
};

// Normally ordered moments <a^dagger^k a^l rho> for k + l <= s_max.
class MomentSet {
  public:
    MomentSet() = default;
    explicit MomentSet(int s_max);

    int s_max() const { return s_max_; }
    cplx get(int k, int l) const;
    void set(int k, int l, cplx v);
    bool has(int k, int l) const { return k >= 0 && l >= 0 && k + l <= s_max_; }
    // Conjugation symmetry and unit trace within tol; ConsistencyError otherwise.
    void validate(double tol = 1e-8) const;

  private:
    int s_max_ = -1;
    std::vector<cplx> t_;
};

struct GaussianStatistics {
    double qmean = 0, pmean = 0;
    double varQ = 0, varP = 0;
    double symCorr = 0;  // (1/2)<dQ dP + dP dQ>
    double sigma_max = 0, sigma_min = 0;  // extremal standard deviations of the rotated quadrature
    double phi_max = 0, phi_min = 0;      // angles in [0, pi) where they occur

    // Moments of the rotated quadratures Q(phi) = Q cos + P sin, P(phi) = -Q sin + P cos.
    double varQ_at(double phi) const;
    double varP_at(double phi) const;
    double corr_at(double phi) const;
};

double wigner_gaussian(const GaussianState &s, double q, double p);

// Throws DomainError for (u, v) = (0, 0) and ConsistencyError if the width is not positive.
double radon_gaussian(const GaussianState &s, double u, double v, double c);

cplx fourier_gaussian(const GaussianState &s, double u, double v);

GaussianStatistics gaussian_statistics(const GaussianState &s);

// W(cos phi, sin phi; q) from a density matrix; ConsistencyError on imaginary residue > 1e-10.
double radon_from_density(const DensityMatrix &rho, double phi, double q, double hbar = 1);

// <q; phi | q'; phi'> for rotated quadrature eigenstates; DomainError when sin(phi - phi') = 0.
cplx scalar_product_rotated(double q, double phi, double q2, double phi2, double hbar = 1);

// Closed-form normally ordered moments of a Gaussian state.
MomentSet gaussian_moments(const GaussianState &s, int s_max);

// Tr(a^dagger^k a^l rho) from a truncated density matrix.
MomentSet moments_from_density(const DensityMatrix &rho, int s_max);

// Evaluator of W(u, v; c).
using RadonFn = std::function<double(double u, double v, double c)>;

RadonFn gaussian_source(const GaussianState &s);
RadonFn density_source(const DensityMatrix &rho, double hbar = 1);

// Sampled Radon transform on a uniform (phi, q) grid, phi in [0, pi).
struct Tomogram {
    std::vector<double> phis;
    std::vector<double> qs;
    std::vector<double> values;  // row-major: values[i * qs.size() + j] = W(cos phi_i, sin phi_i; q_j)
    double hbar = 1;
    std::map<std::string, std::string> meta;

    std::size_t n_angles() const { return phis.size(); }
    std::size_t n_q() const { return qs.size(); }
    double at(std::size_t i, std::size_t j) const { return values[i * qs.size() + j]; }
    const double *row(std::size_t i) const { return values.data() + i * qs.size(); }
    double dq() const { return qs.size() > 1 ? qs[1] - qs[0] : 0.0; }

    // Trapezoid integral of row i over q.
    double row_integral(std::size_t i) const;
    // Shapes, uniform increasing q grid, values >= -1e-12 and, when norm_tol > 0, unit row integrals.
    void validate(double norm_tol = 1e-6) const;
    bool angles_uniform(double tol = 1e-12) const;
};

struct TomogramGrid {
    int n_angles = 181;
    int n_q = 1025;
    double q_half_width = 8;  // in units of q (already scaled by sqrt(hbar))
};

std::vector<double> uniform_angles(int n);
std::vector<double> uniform_positions(double half_width, int n);

// 181 angles, 1025 points over the displacement plus 8 standard deviations of the widest quadrature.
TomogramGrid default_grid(const GaussianState &s);
// Window for Fock-basis states up to index nmax.
TomogramGrid default_grid_fock(int nmax, double hbar);

Tomogram sample_tomogram(const RadonFn &f, const std::vector<double> &phis, const std::vector<double> &qs, double hbar);
Tomogram gaussian_tomogram(const GaussianState &s, const TomogramGrid &g);
Tomogram gaussian_tomogram(const GaussianState &s);
Tomogram density_tomogram(const DensityMatrix &rho, const TomogramGrid &g, double hbar = 1);

// Interpolating evaluator of sampled data (cubic in phi and q, homogeneity for |(u,v)| != 1).
RadonFn tomogram_source(const Tomogram &t);

// W(u, v; c) = W0(delta u - beta v, -gamma u + alpha v; c - u qbar - v pbar): squeeze by m, then displace.
RadonFn transform_tomogram(RadonFn source, const Displacement &d, const SymplecticMap &m);

}  // namespace homtomo
