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

#include <stdexcept>
#include <string>

namespace homtomo {

// Argument outside the mathematical domain of an operation (|z| >= 1, coincident angles, ...).
struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

// Result would leave the double range.
struct RangeError : std::range_error {
    using std::range_error::range_error;
};

// Internal identity that must hold did not (non-real output of a real map, non-Hermitian input, ...).
struct ConsistencyError : std::logic_error {
    using std::logic_error::logic_error;
};

// A numerical gate (grid resolution, series convergence, residual threshold) was not met.
struct AccuracyError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Wrong number of angles or similar structural misuse.
struct ArityError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace homtomo
