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

#include <string>

#include <nlohmann/json.hpp>

#include "homtomo/states.hpp"

// Tomogram and density-matrix files. Doubles are written with 17 significant digits
// so that a write/read cycle reproduces every value bit for bit.

namespace homtomo {

// 17 significant digits, locale independent.
std::string format_double(double v);

// JSON with every double in format_double form. indent >= 0: pretty-printed, ends with a newline;
// indent < 0: one line.
std::string dump_json(const nlohmann::json &j, int indent = 2);

nlohmann::json complex_to_json(cplx z);
// Accepts [re, im] or a bare number.
cplx complex_from_json(const nlohmann::json &j);

// CSV layout:
//   # hbar=<v>
//   # phis=<v>,<v>,...
//   # qs=<v>,<v>,...
//   # <key>=<value>        (metadata, optional)
//   one line per angle with the values across q
void write_tomogram_csv(const std::string &path, const Tomogram &t);
Tomogram read_tomogram_csv(const std::string &path);

nlohmann::json tomogram_to_json(const Tomogram &t);
Tomogram tomogram_from_json(const nlohmann::json &j);
void write_tomogram_json(const std::string &path, const Tomogram &t);
Tomogram read_tomogram_json(const std::string &path);

// Dispatch on the extension (.csv or .json).
Tomogram read_tomogram(const std::string &path);

// {"rho": [[[re, im], ...], ...]}; real entries may be bare numbers.
nlohmann::json density_to_json(const DensityMatrix &rho);
DensityMatrix density_from_json(const nlohmann::json &j);
DensityMatrix read_density(const std::string &path);

nlohmann::json read_json_file(const std::string &path);
void write_text_file(const std::string &path, const std::string &text);

}  // namespace homtomo
