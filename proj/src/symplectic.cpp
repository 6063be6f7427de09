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

#include "homtomo/symplectic.hpp"

#include <cmath>

#include "homtomo/errors.hpp"

namespace homtomo {

namespace {

constexpr double kSmallEps = 1e-4;
const cplx I(0, 1);

}  // namespace

void SymplecticMap::validate(double tol) const {
    if (!(std::abs(det() - 1) <= tol)) {
        throw ConsistencyError("SymplecticMap: determinant differs from 1");
    }
}

SymplecticMap SymplecticMap::rotation(double phi) {
    const double c = std::cos(phi), s = std::sin(phi);
    return {c, -s, s, c};
}

SymplecticMap ComplexEntriesMap::to_real(double tol) const {
    for (cplx e : {alpha, beta, gamma, delta}) {
        if (std::abs(e.imag()) > tol) {
            throw ConsistencyError("symplectic map has non-real entries");
        }
    }
    return {alpha.real(), beta.real(), gamma.real(), delta.real()};
}

SqueezeParams SqueezeParams::unitary_family(cplx zeta_prime, double eta_prime) {
    return {std::conj(zeta_prime), eta_prime, zeta_prime, true};
}

void SqueezeParams::validate(double tol) const {
    if (!unitary) {
        return;
    }
    if (std::abs(xi - std::conj(zeta)) > tol || std::abs(eta.imag()) > tol) {
        throw ConsistencyError("SqueezeParams: unitary flag set on nonunitary parameters");
    }
}

cplx cosh_even(cplx eps) {
    if (std::abs(eps) < kSmallEps) {
        const cplx e2 = eps * eps;
        return 1.0 + e2 / 2.0 + e2 * e2 / 24.0 + e2 * e2 * e2 / 720.0;
    }
    return std::cosh(eps);
}

cplx sinhc(cplx eps) {
    if (std::abs(eps) < kSmallEps) {
        const cplx e2 = eps * eps;
        return 1.0 + e2 / 6.0 + e2 * e2 / 120.0 + e2 * e2 * e2 / 5040.0;
    }
    return std::sinh(eps) / eps;
}

ComplexEntriesMap squeeze_entries(const SqueezeParams &p) {
    const cplx eps = std::sqrt(p.xi * p.zeta - p.eta * p.eta);
    const cplx ch = cosh_even(eps);
    const cplx s = sinhc(eps);
    const cplx sum = (p.xi + p.zeta) / 2.0 * s;
    return {
        ch + sum,
        (I * (p.xi - p.zeta) - 2.0 * p.eta) / 2.0 * s,
        (I * (p.xi - p.zeta) + 2.0 * p.eta) / 2.0 * s,
        ch - sum,
    };
}

SymplecticMap matrix_from_squeeze(const SqueezeParams &p) {
    p.validate(1e-9);
    return squeeze_entries(p).to_real(1e-9);
}

SqueezeInversion squeeze_from_matrix(const ComplexEntriesMap &m) {
    const cplx t = (m.alpha + m.delta) / 2.0;
    if (t == cplx(-1, 0)) {
        throw DomainError("squeeze_from_matrix: (alpha + delta)/2 = -1 is a branch point");
    }
    SqueezeInversion out;
    out.branch_ambiguous = std::abs(t.imag()) <= 1e-15 && t.real() <= -1;
    // eps = Arcosh(t), so that ch(eps) reproduces t exactly and theta = sh(eps).
    const cplx eps = std::acosh(t);
    const cplx ratio = 1.0 / sinhc(eps);  // Arsh(theta)/theta with theta = sh(eps)
    out.params.xi = (m.alpha - I * m.beta - I * m.gamma - m.delta) / 2.0 * ratio;
    out.params.eta = -(m.beta - m.gamma) / 2.0 * ratio;
    out.params.zeta = (m.alpha + I * m.beta + I * m.gamma - m.delta) / 2.0 * ratio;
    const bool real = m.alpha.imag() == 0 && m.beta.imag() == 0 && m.gamma.imag() == 0 && m.delta.imag() == 0;
    out.params.unitary = real && !out.branch_ambiguous;
    if (out.params.unitary) {
        out.params.eta = out.params.eta.real();
        out.params.xi = std::conj(out.params.zeta);
    }
    return out;
}

SqueezeInversion squeeze_from_matrix(const SymplecticMap &m) {
    return squeeze_from_matrix(ComplexEntriesMap::from_real(m));
}

ComplexSqueezeMap complex_from_real(const ComplexEntriesMap &m) {
    return {
        (m.alpha + I * m.beta - I * m.gamma + m.delta) / 2.0,
        (m.alpha - I * m.beta - I * m.gamma - m.delta) / 2.0,
        (m.alpha + I * m.beta + I * m.gamma - m.delta) / 2.0,
        (m.alpha - I * m.beta + I * m.gamma + m.delta) / 2.0,
    };
}

ComplexSqueezeMap complex_from_real(const SymplecticMap &m) {
    return complex_from_real(ComplexEntriesMap::from_real(m));
}

ComplexEntriesMap real_from_complex(const ComplexSqueezeMap &c) {
    return {
        (c.kappa + c.lambda + c.mu + c.nu) / 2.0,
        -I * (c.kappa - c.lambda + c.mu - c.nu) / 2.0,
        I * (c.kappa + c.lambda - c.mu - c.nu) / 2.0,
        (c.kappa - c.lambda - c.mu + c.nu) / 2.0,
    };
}

ComplexSqueezeMap complex_squeeze_map(const SqueezeParams &p) {
    const cplx eps = std::sqrt(p.xi * p.zeta - p.eta * p.eta);
    const cplx ch = cosh_even(eps);
    const cplx s = sinhc(eps);
    return {ch - I * p.eta * s, p.xi * s, p.zeta * s, ch + I * p.eta * s};
}

cplx zeta_from_prime(cplx zeta_prime) {
    const double r = std::abs(zeta_prime);
    if (r == 0) {
        return 0;
    }
    return zeta_prime * (std::tanh(r) / r);
}

cplx zeta_prime_from_zeta(cplx zeta) {
    const double r = std::abs(zeta);
    if (!(r < 1)) {
        throw DomainError("zeta_prime_from_zeta: |zeta| must be below 1");
    }
    if (r == 0) {
        return 0;
    }
    return zeta * (std::atanh(r) / r);
}

std::pair<SymplecticMap, ComplexSqueezeMap> unitary_squeeze_matrices(cplx zeta) {
    const double r2 = std::norm(zeta);
    if (!(r2 < 1)) {
        throw DomainError("unitary_squeeze_matrices: |zeta| must be below 1");
    }
    const double s = 1 / std::sqrt(1 - r2);
    const SymplecticMap real{(1 + zeta.real()) * s, zeta.imag() * s, zeta.imag() * s, (1 - zeta.real()) * s};
    const ComplexSqueezeMap cx{s, std::conj(zeta) * s, zeta * s, s};
    return {real, cx};
}

std::pair<double, double> transform_radon_args(double u, double v, const SymplecticMap &m) {
    return {m.delta * u - m.beta * v, -m.gamma * u + m.alpha * v};
}

std::pair<double, double> transform_phase_args(double q, double p, const SymplecticMap &m) {
    return {m.alpha * q + m.gamma * p, m.beta * q + m.delta * p};
}

SymplecticMap compose(const SymplecticMap &a, const SymplecticMap &b) {
    return {
        a.alpha * b.alpha + a.beta * b.gamma,
        a.alpha * b.beta + a.beta * b.delta,
        a.gamma * b.alpha + a.delta * b.gamma,
        a.gamma * b.beta + a.delta * b.delta,
    };
}

}  // namespace homtomo
