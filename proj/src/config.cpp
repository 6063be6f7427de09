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

#include "homtomo/config.hpp"

#include <charconv>

#include "homtomo/errors.hpp"

namespace homtomo {

namespace {

double parse_real(std::string s, const std::string &what) {
    if (!s.empty() && s[0] == '+') {
        s.erase(0, 1);
    }
    double v = 0;
    const char *end = s.data() + s.size();
    auto [p, ec] = std::from_chars(s.data(), end, v);
    if (s.empty() || ec != std::errc() || p != end) {
        throw DomainError("cannot parse '" + s + "' as a number in " + what);
    }
    return v;
}

std::vector<std::string> split(const std::string &s, char sep) {
    std::vector<std::string> out;
    std::size_t a = 0;
    for (;;) {
        const std::size_t b = s.find(sep, a);
        out.push_back(s.substr(a, b == std::string::npos ? std::string::npos : b - a));
        if (b == std::string::npos) {
            return out;
        }
        a = b + 1;
    }
}

std::string strip(const std::string &s) {
    std::string out;
    for (char c : s) {
        if (c != ' ' && c != '\t') {
            out += c;
        }
    }
    return out;
}

template <class T>
T get_field(const nlohmann::json &j, const char *key) {
    try {
        return j.at(key).get<T>();
    } catch (const nlohmann::json::exception &) {
        throw DomainError(std::string("config: bad value for '") + key + "'");
    }
}

}  // namespace

void RunConfig::validate() const {
    if (!(hbar > 0)) {
        throw DomainError("config: hbar must be positive");
    }
    if (nmax < 0) {
        throw DomainError("config: nmax must be non-negative");
    }
    if (n_angles < 2 || n_q < 3) {
        throw DomainError("config: grid needs at least 2 angles and 3 positions");
    }
    if (!(half_width >= 0)) {
        throw DomainError("config: half_width must be non-negative");
    }
    if (!(tol > 0 && tol <= 1e-2)) {
        throw DomainError("config: tol must lie in (0, 1e-2]");
    }
}

nlohmann::json RunConfig::to_json() const {
    nlohmann::json j;
    j["hbar"] = hbar;
    j["nmax"] = nmax;
    j["grid"] = {{"n_angles", n_angles}, {"n_q", n_q}, {"half_width", half_width}};
    j["tol"] = tol;
    j["seed"] = seed;
    j["outputs"] = outputs;
    return j;
}

void RunConfig::apply_json(const nlohmann::json &j) {
    if (!j.is_object()) {
        throw DomainError("config: top level must be an object");
    }
    for (auto it = j.begin(); it != j.end(); ++it) {
        const std::string &k = it.key();
        if (k == "hbar") {
            hbar = get_field<double>(j, "hbar");
        } else if (k == "nmax") {
            nmax = get_field<int>(j, "nmax");
        } else if (k == "tol") {
            tol = get_field<double>(j, "tol");
        } else if (k == "seed") {
            seed = get_field<std::uint64_t>(j, "seed");
        } else if (k == "grid") {
            const auto &g = it.value();
            if (!g.is_object()) {
                throw DomainError("config: grid must be an object");
            }
            for (auto gt = g.begin(); gt != g.end(); ++gt) {
                if (gt.key() == "n_angles") {
                    n_angles = get_field<int>(g, "n_angles");
                } else if (gt.key() == "n_q") {
                    n_q = get_field<int>(g, "n_q");
                } else if (gt.key() == "half_width") {
                    half_width = get_field<double>(g, "half_width");
                } else {
                    throw DomainError("config: unknown grid key '" + gt.key() + "'");
                }
            }
        } else if (k == "outputs") {
            outputs = get_field<std::map<std::string, std::string>>(j, "outputs");
        } else {
            throw DomainError("config: unknown key '" + k + "'");
        }
    }
}

cplx parse_complex(const std::string &raw) {
    const std::string s = strip(raw);
    if (s.find(',') != std::string::npos) {
        const auto parts = split(s, ',');
        if (parts.size() != 2) {
            throw DomainError("complex number '" + raw + "' needs exactly re,im");
        }
        return {parse_real(parts[0], "complex"), parse_real(parts[1], "complex")};
    }
    if (s.empty() || (s.back() != 'i' && s.back() != 'j')) {
        return parse_real(s, "complex");
    }
    const std::string body = s.substr(0, s.size() - 1);
    // Split at the last sign that does not belong to an exponent.
    std::size_t k = std::string::npos;
    for (std::size_t i = body.size(); i-- > 1;) {
        if ((body[i] == '+' || body[i] == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') {
            k = i;
            break;
        }
    }
    const std::string re = k == std::string::npos ? "" : body.substr(0, k);
    std::string im = k == std::string::npos ? body : body.substr(k);
    if (im.empty() || im == "+" || im == "-") {
        im += "1";
    }
    return {re.empty() ? 0.0 : parse_real(re, "complex"), parse_real(im, "complex")};
}

std::vector<double> parse_real_list(const std::string &s) {
    std::vector<double> out;
    for (const auto &p : split(strip(s), ',')) {
        out.push_back(parse_real(p, "list '" + s + "'"));
    }
    return out;
}

GaussianState parse_gaussian_spec(const std::string &raw, double hbar) {
    const auto parts = split(strip(raw), ',');
    GaussianState g;
    g.hbar = hbar;
    if (parts.size() == 3) {
        g.zeta = parse_complex(parts[2]);
    } else if (parts.size() == 4) {
        g.zeta = {parse_real(parts[2], "gaussian spec"), parse_real(parts[3], "gaussian spec")};
    } else {
        throw DomainError("gaussian spec '" + raw + "' must be q,p,zeta or q,p,re,im");
    }
    g.qbar = parse_real(parts[0], "gaussian spec");
    g.pbar = parse_real(parts[1], "gaussian spec");
    g.validate();
    return g;
}

}  // namespace homtomo
