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

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "homtomo/kernels.hpp"

using namespace homtomo;

namespace {

std::vector<double> random_vec(std::size_t n, std::uint64_t seed, double lo = -1, double hi = 1) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(lo, hi);
    std::vector<double> v(n);
    for (double &x : v) {
        x = u(rng);
    }
    return v;
}

long double naive_dot(const std::vector<double> &a, const std::vector<double> &b) {
    long double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        s += (long double)a[i] * b[i];
    }
    return s;
}

}  // namespace

TEST(ScalarKernels, DotAgainstLongDouble) {
    const auto &k = kernels::scalar_kernels();
    for (std::size_t n : {0u, 1u, 3u, 7u, 64u, 1025u}) {
        const auto a = random_vec(n, 1 + n), b = random_vec(n, 2 + n);
        EXPECT_NEAR(k.dot(a.data(), b.data(), n), double(naive_dot(a, b)), 1e-13 * (1 + n));
    }
}

TEST(ScalarKernels, HermiteRowsMatchRecurrence) {
    const auto &k = kernels::scalar_kernels();
    const auto x = random_vec(37, 5, -4, 4);
    std::vector<double> seed(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        seed[i] = std::pow(std::numbers::pi, -0.25) * std::exp(-x[i] * x[i] / 2);
    }
    const int nmax = 20;
    std::vector<double> out((nmax + 1) * x.size());
    k.hermite_rows(nmax, x.data(), seed.data(), x.size(), out.data());
    // h_2 and h_3 in closed form.
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double xi = x[i];
        EXPECT_NEAR(out[2 * x.size() + i], seed[i] * (4 * xi * xi - 2) / std::sqrt(8.0), 1e-14);
        EXPECT_NEAR(out[3 * x.size() + i], seed[i] * (8 * xi * xi * xi - 12 * xi) / std::sqrt(48.0), 1e-13);
    }
}

class Avx2Equivalence : public ::testing::Test {
  protected:
    void SetUp() override {
        v_ = kernels::avx2_kernels();
        if (!v_) {
            GTEST_SKIP() << "AVX2 variant not available on this CPU/build";
        }
    }
    const kernels::KernelTable *v_ = nullptr;
    const kernels::KernelTable &s_ = kernels::scalar_kernels();
};

TEST_F(Avx2Equivalence, Dot) {
    for (std::size_t n : {0u, 1u, 2u, 3u, 4u, 5u, 8u, 15u, 16u, 17u, 1000u, 1025u}) {
        const auto a = random_vec(n, 11 + n), b = random_vec(n, 12 + n);
        EXPECT_NEAR(v_->dot(a.data(), b.data(), n), s_.dot(a.data(), b.data(), n), 1e-14 * (1 + n)) << n;
    }
}

TEST_F(Avx2Equivalence, Dot3) {
    for (std::size_t n : {0u, 3u, 9u, 33u, 1025u}) {
        const auto w = random_vec(n, 21 + n), a = random_vec(n, 22 + n), b = random_vec(n, 23 + n);
        EXPECT_NEAR(v_->dot3(w.data(), a.data(), b.data(), n), s_.dot3(w.data(), a.data(), b.data(), n), 1e-14 * (1 + n)) << n;
    }
}

TEST_F(Avx2Equivalence, Gemv) {
    for (auto [rows, cols] : {std::pair<std::size_t, std::size_t>{1, 1}, {3, 5}, {181, 1025}, {7, 16}}) {
        const auto A = random_vec(rows * cols, rows + 100 * cols), v = random_vec(cols, 31);
        std::vector<double> o1(rows), o2(rows);
        s_.gemv(A.data(), rows, cols, v.data(), o1.data());
        v_->gemv(A.data(), rows, cols, v.data(), o2.data());
        for (std::size_t r = 0; r < rows; ++r) {
            EXPECT_NEAR(o1[r], o2[r], 1e-14 * (1 + cols));
        }
    }
}

TEST_F(Avx2Equivalence, HermiteRows) {
    for (std::size_t nx : {1u, 3u, 4u, 13u, 1025u}) {
        const auto x = random_vec(nx, 41 + nx, -6, 6);
        std::vector<double> seed(nx);
        for (std::size_t i = 0; i < nx; ++i) {
            seed[i] = std::exp(-x[i] * x[i] / 2);
        }
        const int nmax = 30;
        std::vector<double> o1((nmax + 1) * nx), o2((nmax + 1) * nx);
        s_.hermite_rows(nmax, x.data(), seed.data(), nx, o1.data());
        v_->hermite_rows(nmax, x.data(), seed.data(), nx, o2.data());
        for (std::size_t i = 0; i < o1.size(); ++i) {
            EXPECT_NEAR(o1[i], o2[i], 1e-13 * std::max(1.0, std::abs(o1[i])));
        }
    }
}

TEST(KernelSelection, ActiveIsOneOfTheTables) {
    const auto &a = kernels::active();
    const bool known = &a == &kernels::scalar_kernels() || &a == kernels::avx2_kernels();
    EXPECT_TRUE(known) << a.name;
}
