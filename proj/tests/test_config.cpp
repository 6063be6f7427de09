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

#include <gtest/gtest.h>

#include "homtomo/config.hpp"
#include "homtomo/errors.hpp"

using namespace homtomo;

TEST(ParseComplex, Forms) {
    EXPECT_EQ(parse_complex("0.4+0.2i"), cplx(0.4, 0.2));
    EXPECT_EQ(parse_complex("-1.5-2i"), cplx(-1.5, -2));
    EXPECT_EQ(parse_complex("0.3,-0.7"), cplx(0.3, -0.7));
    EXPECT_EQ(parse_complex("2"), cplx(2, 0));
    EXPECT_EQ(parse_complex("-0.5i"), cplx(0, -0.5));
    EXPECT_EQ(parse_complex("i"), cplx(0, 1));
    EXPECT_EQ(parse_complex("1e-3-2e-2i"), cplx(1e-3, -2e-2));
    EXPECT_EQ(parse_complex(" 1 + 2i "), cplx(1, 2));
    EXPECT_THROW(parse_complex("abc"), DomainError);
    EXPECT_THROW(parse_complex("1,2,3"), DomainError);
}

TEST(ParseGaussian, ThreeAndFourFields) {
    const GaussianState a = parse_gaussian_spec("1.5,-0.5,0.4+0.2i");
    EXPECT_EQ(a.qbar, 1.5);
    EXPECT_EQ(a.pbar, -0.5);
    EXPECT_EQ(a.zeta, cplx(0.4, 0.2));
    const GaussianState b = parse_gaussian_spec("0,0,0.1,0.3", 2.0);
    EXPECT_EQ(b.zeta, cplx(0.1, 0.3));
    EXPECT_EQ(b.hbar, 2.0);
    EXPECT_THROW(parse_gaussian_spec("0,0,1.0"), DomainError);
    EXPECT_THROW(parse_gaussian_spec("0,0"), DomainError);
}

TEST(ParseList, Reals) {
    EXPECT_EQ(parse_real_list("0,0.5, 1"), (std::vector<double>{0, 0.5, 1}));
    EXPECT_THROW(parse_real_list("0,,1"), DomainError);
}

TEST(RunConfigTest, DefaultsAreValid) {
    RunConfig c;
    EXPECT_NO_THROW(c.validate());
    EXPECT_EQ(c.to_json()["grid"]["n_angles"], 181);
}

TEST(RunConfigTest, ApplyJsonOverrides) {
    RunConfig c;
    c.apply_json(nlohmann::json::parse(R"({"hbar": 0.5, "grid": {"n_q": 513}, "tol": 1e-4, "seed": 9})"));
    EXPECT_EQ(c.hbar, 0.5);
    EXPECT_EQ(c.n_q, 513);
    EXPECT_EQ(c.n_angles, 181);
    EXPECT_EQ(c.tol, 1e-4);
    EXPECT_EQ(c.seed, 9u);
    EXPECT_THROW(c.apply_json(nlohmann::json::parse(R"({"colour": 1})")), DomainError);
    EXPECT_THROW(c.apply_json(nlohmann::json::parse(R"({"hbar": "x"})")), DomainError);
}

TEST(RunConfigTest, Invariants) {
    RunConfig c;
    c.tol = 0.05;
    EXPECT_THROW(c.validate(), DomainError);
    c.tol = 0;
    EXPECT_THROW(c.validate(), DomainError);
    c = RunConfig{};
    c.hbar = -1;
    EXPECT_THROW(c.validate(), DomainError);
    c = RunConfig{};
    c.n_q = 2;
    EXPECT_THROW(c.validate(), DomainError);
}
