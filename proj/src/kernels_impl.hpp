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

namespace homtomo::kernels::detail {

double dot_scalar(const double *a, const double *b, std::size_t n);
double dot3_scalar(const double *w, const double *a, const double *b, std::size_t n);
void gemv_scalar(const double *A, std::size_t rows, std::size_t cols, const double *v, double *out);
void hermite_rows_scalar(int nmax, const double *x, const double *seed, std::size_t nx, double *out);

#if defined(HOMTOMO_HAVE_AVX2)
double dot_avx2(const double *a, const double *b, std::size_t n);
double dot3_avx2(const double *w, const double *a, const double *b, std::size_t n);
void gemv_avx2(const double *A, std::size_t rows, std::size_t cols, const double *v, double *out);
void hermite_rows_avx2(int nmax, const double *x, const double *seed, std::size_t nx, double *out);
#endif

}  // namespace homtomo::kernels::detail
