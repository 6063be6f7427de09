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

// Compiled with -mavx2 -mfma; only reached after a runtime CPU check.
#include "kernels_impl.hpp"

#include <immintrin.h>

#include <cmath>

namespace homtomo::kernels::detail {

namespace {

inline double hsum(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    __m128d sh = _mm_unpackhi_pd(lo, lo);
    return _mm_cvtsd_f64(_mm_add_sd(lo, sh));
}

}  // namespace

double dot_avx2(const double *a, const double *b, std::size_t n) {
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
        acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4), acc1);
    }
    for (; i + 4 <= n; i += 4) {
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
    }
    double s = hsum(_mm256_add_pd(acc0, acc1));
    for (; i < n; i++) {
        s += a[i] * b[i];
    }
    return s;
}

double dot3_avx2(const double *w, const double *a, const double *b, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d wa = _mm256_mul_pd(_mm256_loadu_pd(w + i), _mm256_loadu_pd(a + i));
        acc = _mm256_fmadd_pd(wa, _mm256_loadu_pd(b + i), acc);
    }
    double s = hsum(acc);
    for (; i < n; i++) {
        s += w[i] * a[i] * b[i];
    }
    return s;
}

void gemv_avx2(const double *A, std::size_t rows, std::size_t cols, const double *v, double *out) {
    for (std::size_t r = 0; r < rows; r++) {
        out[r] = dot_avx2(A + r * cols, v, cols);
    }
}

void hermite_rows_avx2(int nmax, const double *x, const double *seed, std::size_t nx, double *out) {
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
        const __m256d va = _mm256_set1_pd(a);
        const __m256d vb = _mm256_set1_pd(b);
        const double *hk = out + std::size_t(k) * nx;
        const double *hkm = hk - nx;
        double *hkp = out + std::size_t(k + 1) * nx;
        std::size_t i = 0;
        for (; i + 4 <= nx; i += 4) {
            __m256d xa = _mm256_mul_pd(_mm256_loadu_pd(x + i), va);
            __m256d t = _mm256_mul_pd(vb, _mm256_loadu_pd(hkm + i));
            _mm256_storeu_pd(hkp + i, _mm256_fmsub_pd(xa, _mm256_loadu_pd(hk + i), t));
        }
        for (; i < nx; i++) {
            hkp[i] = x[i] * a * hk[i] - b * hkm[i];
        }
    }
}

}  // namespace homtomo::kernels::detail
