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

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "homtomo/states.hpp"

// Run configuration shared by the command-line tools, plus the argument parsers they use.

namespace homtomo {

struct RunConfig {
    double hbar = 1;
    int nmax = 6;
    int n_angles = 181;
    int n_q = 1025;
    double half_width = 0;  // 0: chosen from the state
    double tol = 1e-6;
    std::uint64_t seed = 20260101;
    std::map<std::string, std::string> outputs;

    // DomainError unless hbar > 0, nmax >= 0, n_angles >= 2, n_q >= 3, half_width >= 0, tol in (0, 1e-2].
    void validate() const;
    nlohmann::json to_json() const;
    // Overrides the fields present in j; DomainError on unknown keys or wrong types.
    void apply_json(const nlohmann::json &j);
};

// Environment variable naming the default config file.
inline constexpr const char *kConfigEnv = "HOMTOMO_CONFIG";

// "re+imi", "re-imi", "imi", "re" or "re,im".
cplx parse_complex(const std::string &s);
// Comma-separated reals.
std::vector<double> parse_real_list(const std::string &s);
// "q,p,zeta" where zeta is "re+imi" or a real, or "q,p,re,im".
GaussianState parse_gaussian_spec(const std::string &s, double hbar = 1);

}  // namespace homtomo
