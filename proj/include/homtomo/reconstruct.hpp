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
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "homtomo/pattern.hpp"
#include "homtomo/quadrature.hpp"
#include "homtomo/states.hpp"

// Fock matrix elements, Q-function values and normally ordered moments from tomograms.

namespace homtomo {

// Directions used by the discrete-angle moment solvers.
struct AngleDivision {
    enum class Kind { Harmonic, Explicit };
    Kind kind = Kind::Explicit;
    int order = -1;  // s for harmonic(s): s + 1 angles
    double phi0 = 0;
    std::vector<double> angles;

    // phi0 + m pi / (s + 1), m = 0..s, reduced to [0, pi).
    static AngleDivision harmonic(int s, double phi0 = 0);
    static AngleDivision explicit_angles(std::vector<double> angles);

    // DomainError when two angles coincide modulo pi.
    void validate() const;
};

// Projections W(cos phi, sin phi; q) on a fixed set of q nodes with quadrature weights, for a uniform
// set of angles over [0, pi). Built either from sampled data (trapezoid in q) or from an evaluator
// (composite Gauss-Legendre in q).
class ProjectionSource {
  public:
    struct AnalyticOptions {
        double half_width = 0;  // required: q window [-half_width, half_width]
        int n_angles = 96;
        double panels_per_unit = 4;  // panels per sqrt(hbar)
        int order = 16;
    };

    static ProjectionSource sampled(const Tomogram &t);
    static ProjectionSource analytic(RadonFn f, double hbar, const AnalyticOptions &opt);

    bool is_sampled() const { return sampled_; }
    double hbar() const { return hbar_; }
    double half_width() const { return half_width_; }
    const std::vector<double> &angles() const { return phis_; }
    const Rule &nodes() const { return nodes_; }
    const double *row(std::size_t i) const { return table_->data() + i * nodes_.x.size(); }

    // Row at an arbitrary angle. Sampled data: exact on grid angles (either orientation), cubic
    // interpolation in phi otherwise, with `interpolated` set.
    std::vector<double> row_at(double phi, bool *interpolated = nullptr) const;

    // Same source at half resolution: every other q sample (and angle, for even counts) when
    // sampled; half the panels and angles when analytic.
    ProjectionSource coarsened() const;
    // Analytic sources only: the window scaled by `factor`, panel density kept. Sampled: unchanged.
    ProjectionSource widened(double factor) const;

    // max over angles of |W k| at the two window edges times sqrt(hbar); a proxy for the mass outside.
    double edge_weight(const std::vector<double> &kernel) const;

  private:
    bool sampled_ = false;
    double hbar_ = 1;
    double half_width_ = 0;
    std::vector<double> phis_;
    Rule nodes_;
    std::shared_ptr<const std::vector<double>> table_;
    std::shared_ptr<const Tomogram> tomo_;
    RadonFn f_;
    AnalyticOptions aopt_;

    void build_analytic();
};

struct QuadratureSpec {
    bool gate = true;
    double gate_tol = 1e-6;   // allowed |full - half resolution|
    double tail_tol = 1e-10;  // allowed weighted mass outside the q window
    bool widen_window = true; // analytic sources: window scaled by sqrt(k + l) for moments
};

struct ReconResult {
    cplx value = 0;
    cplx coarse = 0;           // same quantity at half resolution
    double error_estimate = 0; // |value - coarse|
    double tail = 0;
    bool interpolated = false; // some projection needed interpolation in phi
};

// (1/pi) int_0^pi dphi int dq W e^{i(m-n)phi} F_{m,n}(q/sqrt(hbar)). AccuracyError when the
// half-resolution estimate differs by more than gate_tol.
ReconResult fock_element(const ProjectionSource &src, int m, int n, PatternRep rep = PatternRep::Canonical,
                         const QuadratureSpec &spec = {});
cplx fock_element_from_tomogram(const Tomogram &t, int m, int n, PatternRep rep = PatternRep::Canonical,
                                const QuadratureSpec &spec = {});

// Q(alpha) = (1/pi) int dphi int dq W (2/pi) (1 - 2 z F(z)), z = q/sqrt(hbar) - sqrt2 Re(alpha e^{-i phi}).
ReconResult qfunction(const ProjectionSource &src, cplx alpha, const QuadratureSpec &spec = {});
double qfunction_from_tomogram(const Tomogram &t, cplx alpha, const QuadratureSpec &spec = {});

// 2^{-n/2} int dq W(cos phi, sin phi; q) H_n(q/sqrt(hbar)) at a single angle.
cplx hermite_projection(const ProjectionSource &src, int n, double phi, bool *interpolated = nullptr);

// <a^dagger^k a^l> from the angle average of Hermite projections. AccuracyError when the
// Hermite-weighted tail exceeds tail_tol or the gate fails.
ReconResult moment_angle_average(const ProjectionSource &src, int k, int l, const QuadratureSpec &spec = {});
cplx moment_angle_average(const Tomogram &t, int k, int l, const QuadratureSpec &spec = {});

// Finite sum over a harmonic division of order k + l; ArityError for any other division.
ReconResult moment_discrete_angles(const ProjectionSource &src, int k, int l, const AngleDivision &div,
                                   const QuadratureSpec &spec = {});

// All moments with k + l <= s_max from the angle average.
MomentSet moments_angle_average(const ProjectionSource &src, int s_max, const QuadratureSpec &spec = {});

// First-order moments from two angles, or first- and second-order moments from three angles (the first
// two also give <a>). Returns a MomentSet with s_max = angles - 1. DomainError on a degenerate pair.
MomentSet moments_low_order_custom(const ProjectionSource &src, const std::vector<double> &angles);
// Angles (0, pi/4, pi/2) with the specialized weights.
MomentSet moments_preset_quarter(const ProjectionSource &src);
// Angles (0, pi/3, 2pi/3) with the specialized weights.
MomentSet moments_preset_thirds(const ProjectionSource &src);

// Experimental: the order-n moments <a^dagger^j a^{n-j}>, j = 0..n, from n + 1 arbitrary inequivalent
// angles by solving the linear system of projections directly.
std::vector<cplx> moments_linear_solve(const ProjectionSource &src, int n, const std::vector<double> &angles);

struct MomentDensity {
    DensityMatrix rho;
    double last_term = 0;  // largest |last retained term| over all elements
    int min_terms = 0;     // smallest number of terms available to any element
    std::vector<std::string> warnings;
};

// rho_mn = (m! n!)^{-1/2} sum_j (-1)^j / j! <a^dagger^{n+j} a^{m+j}>, j < j_max and limited by s_max.
MomentDensity density_from_moments(const MomentSet &ms, int dim, int j_max = 24);

struct DensityReconstruction {
    DensityMatrix rho;              // symmetrized
    double hermitian_defect = 0;    // before symmetrization
    double max_error_estimate = 0;  // worst half-resolution difference
};

// All rho_mn for m, n < dim; ConsistencyError if the raw result is not Hermitian within 1e-8.
DensityReconstruction reconstruct_density(const ProjectionSource &src, int dim, PatternRep rep = PatternRep::Canonical,
                                          const QuadratureSpec &spec = {});

// (lhs, rhs) with lhs = 2^{-n/2} int dq W H_n and rhs = sum_k C(n,k) e^{i(2k-n)phi} <a^dagger^k a^{n-k}>.
std::pair<cplx, cplx> projection_identity_check(const ProjectionSource &src, const MomentSet &ms, int n, double phi);

// sum_{m=0}^{n} exp(i m s 2pi/(n+1)) evaluated exactly by counting phase residues.
long circle_division_sum(int n, int s);

}  // namespace homtomo
