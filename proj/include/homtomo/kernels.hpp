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

// Hot inner loops with a portable scalar reference and an AVX2+FMA variant.
// The variant is chosen once at first use from the CPU feature flags; setting
// HOMTOMO_SIMD=scalar in the environment forces the reference path.

namespace homtomo::kernels {

struct KernelTable {
    const char *name;

    // sum_i a[i] * b[i]
    double (*dot)(const double *a, const double *b, std::size_t n);

    // sum_i w[i] * a[i] * b[i]
    double (*dot3)(const double *w, const double *a, const double *b, std::size_t n);

    // out[r] = sum_c A[r * cols + c] * v[c] for r < rows
    void (*gemv)(const double *A, std::size_t rows, std::size_t cols, const double *v, double *out);

    // Rows of the normalized Hermite recurrence over a batch of abscissas:
    //   out[0][i] = seed[i], out[1][i] = sqrt(2) x[i] seed[i],
    //   out[k+1][i] = x[i] sqrt(2/(k+1)) out[k][i] - sqrt(k/(k+1)) out[k-1][i].
    // With seed = pi^{-1/4} exp(-x^2/2) the rows are the oscillator eigenfunctions,
    // with seed = 1 they are H_k(x) / sqrt(2^k k!). out is row-major (nmax+1) x nx.
    void (*hermite_rows)(int nmax, const double *x, const double *seed, std::size_t nx, double *out);
};

const KernelTable &scalar_kernels();

// nullptr when the CPU or the build lacks AVX2/FMA.
const KernelTable *avx2_kernels();

// The table used by the library.
const KernelTable &active();

}  // namespace homtomo::kernels
