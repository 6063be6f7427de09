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
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

// Self-check suites over the library's identities; each check records the measured defect and its bound.

namespace homtomo {

struct CheckResult {
    std::string name;
    bool passed = false;
    double value = 0;  // measured defect
    double tol = 0;
    std::string detail;
};

struct VerifyReport {
    std::string suite;
    std::vector<CheckResult> checks;

    bool passed() const;
    nlohmann::json to_json() const;
    // One line per check plus a totals line.
    std::string summary() const;
};

// suite in {specfun, symplectic, radon, pattern, reconstruct, all}; DomainError otherwise.
VerifyReport run_verify(const std::string &suite, std::uint64_t seed = 20260101);

const std::vector<std::string> &verify_suites();

}  // namespace homtomo
