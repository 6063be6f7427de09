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
#include <utility>

// Squeeze, rotation and displacement algebra of the (Q, P) and (a, a^dagger) pairs.

namespace homtomo {

using cplx = std::complex<double>;

// Real 2x2 map acting on the row vector (Q, P): (Q, P) -> (alpha Q + gamma P, beta Q + delta P),
// alpha delta - beta gamma = 1. A Wigner function transforms as W(q, p) = W0(alpha q + gamma p, beta q + delta p).
struct SymplecticMap {
    double alpha = 1, beta = 0, gamma = 0, delta = 1;

    double det() const { return alpha * delta - beta * gamma; }
    // Throws ConsistencyError when |det - 1| > tol.
    void validate(double tol = 1e-12) const;

    static SymplecticMap identity() { return {}; }
    // [[cos, -sin], [sin, cos]]
    static SymplecticMap rotation(double phi);
};

// (alpha, beta, gamma, delta) for the general, possibly nonunitary squeeze; entries may be complex.
struct ComplexEntriesMap {
    cplx alpha = 1, beta = 0, gamma = 0, delta = 1;

    cplx det() const { return alpha * delta - beta * gamma; }
    // Throws ConsistencyError when any imaginary part exceeds tol.
    SymplecticMap to_real(double tol = 1e-9) const;
    static ComplexEntriesMap from_real(const SymplecticMap &m) { return {m.alpha, m.beta, m.gamma, m.delta}; }
};

// a' = kappa a + lambda a^dagger, a^dagger' = mu a + nu a^dagger with kappa nu - lambda mu = 1.
struct ComplexSqueezeMap {
    cplx kappa = 1, lambda = 0, mu = 0, nu = 1;

    cplx det() const { return kappa * nu - lambda * mu; }
};

// Parameters (xi, eta, zeta) of the general squeeze operator. The unitary subfamily has
// xi = conj(zeta'), eta real, zeta = zeta'.
struct SqueezeParams {
    cplx xi = 0, eta = 0, zeta = 0;
    bool unitary = false;

    static SqueezeParams unitary_family(cplx zeta_prime, double eta_prime = 0);
    // Throws ConsistencyError if the unitary flag is set but xi != conj(zeta) or eta is not real.
    void validate(double tol = 1e-12) const;
};

struct Displacement {
    double qbar = 0, pbar = 0;
};

// ch(eps) and sh(eps)/eps with a Taylor branch for |eps| < 1e-4.
cplx cosh_even(cplx eps);
cplx sinhc(cplx eps);

// General complex entries from squeeze parameters.
ComplexEntriesMap squeeze_entries(const SqueezeParams &p);

// Real map from squeeze parameters; ConsistencyError if the entries are not real
// (always the case for a genuinely nonunitary squeeze).
SymplecticMap matrix_from_squeeze(const SqueezeParams &p);

struct SqueezeInversion {
    SqueezeParams params;
    // Set when (alpha + delta)/2 <= -1: the principal branch was used and the
    // parameters are not unique.
    bool branch_ambiguous = false;
};

// Inverse correspondence through Arsh(theta)/theta, theta = sqrt(((alpha+delta)/2)^2 - 1), with
// theta = +sh(eps). DomainError at the branch point (alpha + delta)/2 = -1.
SqueezeInversion squeeze_from_matrix(const ComplexEntriesMap &m);
SqueezeInversion squeeze_from_matrix(const SymplecticMap &m);

ComplexSqueezeMap complex_from_real(const ComplexEntriesMap &m);
ComplexSqueezeMap complex_from_real(const SymplecticMap &m);
ComplexEntriesMap real_from_complex(const ComplexSqueezeMap &c);

// Complex representation straight from the squeeze parameters.
ComplexSqueezeMap complex_squeeze_map(const SqueezeParams &p);

// zeta = zeta' th|zeta'| / |zeta'|.
cplx zeta_from_prime(cplx zeta_prime);
// Inverse; DomainError for |zeta| >= 1.
cplx zeta_prime_from_zeta(cplx zeta);

// Real and complex matrices of the unitary squeeze written through zeta, |zeta| < 1.
std::pair<SymplecticMap, ComplexSqueezeMap> unitary_squeeze_matrices(cplx zeta);

// Contragredient action on Radon arguments: (u', v') = (delta u - beta v, -gamma u + alpha v).
std::pair<double, double> transform_radon_args(double u, double v, const SymplecticMap &m);

// Phase-space argument action: (q', p') = (alpha q + gamma p, beta q + delta p).
std::pair<double, double> transform_phase_args(double q, double p, const SymplecticMap &m);

// 2x2 matrix product a * b.
SymplecticMap compose(const SymplecticMap &a, const SymplecticMap &b);

}  // namespace homtomo
