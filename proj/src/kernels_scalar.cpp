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

#include "kernels_impl.hpp"

#include <cmath>

namespace homtomo::kernels::detail {

double dot_scalar(const double *a, const double *b, std::size_t n) {
    double s = 0;
    for (std::size_t i = 0; i < n; i++) {
        s += a[i] * b[i];
    }
    return s;
}

double dot3_scalar(const double *w, const double *a, const double *b, std::size_t n) {
    double s = 0;
    for (std::size_t i = 0; i < n; i++) {
        s += w[i] * a[i] * b[i];
    }
    return s;
}

void gemv_scalar(const double *A, std::size_t rows, std::size_t cols, const double *v, double *out) {
    for (std::size_t r = 0; r < rows; r++) {
        out[r] = dot_scalar(A + r * cols, v, cols);
    }
}

void hermite_rows_scalar(int nmax, const double *x, const double *seed, std::size_t nx, double *out) {
    if (nmax < 0) {
        return;
    }
    for (std::size_t i = 0; i < nx; i++) {
        out[i] = seed[i];
    }
    if (nmax == 0) {
        return;
    }
    const double r2 = std::sqrt(2.0);
    for (std::size_t i = 0; i < nx; i++) {
        out[nx + i] = r2 * x[i] * seed[i];
    }
    for (int k = 1; k < nmax; k++) {
        const double a = std::sqrt(2.0 / (k + 1));
        const double b = std::sqrt(double(k) / (k + 1));
        const double *hk = out + std::size_t(k) * nx;
        const double *hkm = hk - nx;
        double *hkp = out + std::size_t(k + 1) * nx;
        for (std::size_t i = 0; i < nx; i++) {
            hkp[i] = x[i] * a * hk[i] - b * hkm[i];
        }
    }
}

}  // namespace homtomo::kernels::detail
