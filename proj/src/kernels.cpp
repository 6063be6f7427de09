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

#include "homtomo/kernels.hpp"

#include <cstdlib>
#include <cstring>

#include "kernels_impl.hpp"

namespace homtomo::kernels {

namespace {

bool cpu_has_avx2() {
#if defined(HOMTOMO_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

const KernelTable kScalar{
    "scalar",
    detail::dot_scalar,
    detail::dot3_scalar,
    detail::gemv_scalar,
    detail::hermite_rows_scalar,
};

#if defined(HOMTOMO_HAVE_AVX2)
const KernelTable kAvx2{
    "avx2",
    detail::dot_avx2,
    detail::dot3_avx2,
    detail::gemv_avx2,
    detail::hermite_rows_avx2,
};
#endif

const KernelTable &choose() {
    const char *force = std::getenv("HOMTOMO_SIMD");
    if (force != nullptr && std::strcmp(force, "scalar") == 0) {
        return kScalar;
    }
    if (const KernelTable *t = avx2_kernels()) {
        return *t;
    }
    return kScalar;
}

}  // namespace

const KernelTable &scalar_kernels() {
    return kScalar;
}

const KernelTable *avx2_kernels() {
#if defined(HOMTOMO_HAVE_AVX2)
    static const bool ok = cpu_has_avx2();
    return ok ? &kAvx2 : nullptr;
#else
    return nullptr;
#endif
}

const KernelTable &active() {
    static const KernelTable &t = choose();
    return t;
}

}  // namespace homtomo::kernels
