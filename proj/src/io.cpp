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

#include "homtomo/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "homtomo/errors.hpp"

namespace homtomo {

namespace {

std::vector<double> parse_list(const std::string &s, const std::string &path) {
    std::vector<double> out;
    const char *p = s.data();
    const char *end = s.data() + s.size();
    while (p < end) {
        while (p < end && (*p == ' ' || *p == ',' || *p == '\t' || *p == '\r')) {
            ++p;
        }
        if (p >= end) {
            break;
        }
        double v;
        auto [q, ec] = std::from_chars(p, end, v);
        if (ec != std::errc()) {
            throw IoError("malformed number in " + path);
        }
        out.push_back(v);
        p = q;
    }
    return out;
}

std::string join(const std::vector<double> &v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) {
            s += ',';
        }
        s += format_double(v[i]);
    }
    return s;
}

bool ends_with(const std::string &s, const std::string &suf) {
    return s.size() >= suf.size() && s.compare(s.size() - suf.size(), suf.size(), suf) == 0;
}

}  // namespace

std::string format_double(double v) {
    if (v == 0) {
        return "0";  // no negative zero
    }
    char buf[64];
    auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    return std::string(buf, p);
}

namespace {

bool is_flat(const nlohmann::json &j) {
    for (const auto &e : j) {
        if (e.is_structured()) {
            return false;
        }
    }
    return true;
}

void dump_into(std::string &out, const nlohmann::json &j, int indent, int depth) {
    const std::size_t w = indent < 0 ? 0 : std::size_t(indent);
    const std::string pad(w * (depth + 1), ' ');
    const std::string close(w * depth, ' ');
    switch (j.type()) {
    case nlohmann::json::value_t::number_float: {
        const double v = j.get<double>();
        out += std::isfinite(v) ? format_double(v) : "null";
        return;
    }
    case nlohmann::json::value_t::array: {
        if (j.empty()) {
            out += "[]";
            return;
        }
        // Numeric rows stay on one line.
        const bool flat = indent < 0 || is_flat(j);
        out += '[';
        bool first = true;
        for (const auto &e : j) {
            if (!first) {
                out += flat ? ", " : ",";
            }
            first = false;
            if (!flat) {
                out += '\n' + pad;
            }
            dump_into(out, e, indent, depth + 1);
        }
        if (!flat) {
            out += '\n' + close;
        }
        out += ']';
        return;
    }
    case nlohmann::json::value_t::object: {
        if (j.empty()) {
            out += "{}";
            return;
        }
        out += '{';
        bool first = true;
        for (auto it = j.begin(); it != j.end(); ++it) {
            if (indent < 0) {
                out += first ? "" : ", ";
            } else {
                out += first ? "\n" : ",\n";
                out += pad;
            }
            first = false;
            out += nlohmann::json(it.key()).dump() + ": ";
            dump_into(out, it.value(), indent, depth + 1);
        }
        if (indent >= 0) {
            out += '\n' + close;
        }
        out += '}';
        return;
    }
    default:
        out += j.dump();
    }
}

}  // namespace

std::string dump_json(const nlohmann::json &j, int indent) {
    std::string out;
    dump_into(out, j, indent, 0);
    if (indent >= 0) {
        out += '\n';
    }
    return out;
}

nlohmann::json complex_to_json(cplx z) { return nlohmann::json::array({z.real(), z.imag()}); }

cplx complex_from_json(const nlohmann::json &j) {
    if (j.is_number()) {
        return j.get<double>();
    }
    if (j.is_array() && j.size() == 2) {
        return {j[0].get<double>(), j[1].get<double>()};
    }
    throw IoError("expected a number or an [re, im] pair");
}

void write_tomogram_csv(const std::string &path, const Tomogram &t) {
    std::ostringstream os;
    os << "# hbar=" << format_double(t.hbar) << '\n';
    os << "# phis=" << join(t.phis) << '\n';
    os << "# qs=" << join(t.qs) << '\n';
    for (const auto &[k, v] : t.meta) {
        os << "# " << k << '=' << v << '\n';
    }
    for (std::size_t i = 0; i < t.n_angles(); ++i) {
        for (std::size_t j = 0; j < t.n_q(); ++j) {
            if (j) {
                os << ',';
            }
            os << format_double(t.at(i, j));
        }
        os << '\n';
    }
    write_text_file(path, os.str());
}

Tomogram read_tomogram_csv(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open " + path);
    }
    Tomogram t;
    bool have_hbar = false, have_phis = false, have_qs = false;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty()) {
            continue;
        }
        if (line[0] == '#') {
            const std::size_t s = line.find_first_not_of(" ", 1);
            const std::size_t eq = line.find('=');
            if (s == std::string::npos || eq == std::string::npos) {
                continue;
            }
            const std::string key = line.substr(s, eq - s);
            const std::string val = line.substr(eq + 1);
            if (key == "hbar") {
                const auto v = parse_list(val, path);
                if (v.size() != 1) {
                    throw IoError("bad hbar header in " + path);
                }
                t.hbar = v[0];
                have_hbar = true;
            } else if (key == "phis") {
                t.phis = parse_list(val, path);
                have_phis = true;
            } else if (key == "qs") {
                t.qs = parse_list(val, path);
                have_qs = true;
            } else {
                t.meta[key] = val;
            }
            continue;
        }
        const auto row = parse_list(line, path);
        if (row.size() != t.qs.size()) {
            throw IoError("row length does not match the q grid in " + path);
        }
        t.values.insert(t.values.end(), row.begin(), row.end());
    }
    if (!have_hbar || !have_phis || !have_qs) {
        throw IoError("missing hbar/phis/qs header in " + path);
    }
    if (t.values.size() != t.phis.size() * t.qs.size()) {
        throw IoError("row count does not match the angle list in " + path);
    }
    return t;
}

nlohmann::json tomogram_to_json(const Tomogram &t) {
    nlohmann::json j;
    j["hbar"] = t.hbar;
    j["phis"] = t.phis;
    j["qs"] = t.qs;
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t i = 0; i < t.n_angles(); ++i) {
        rows.push_back(std::vector<double>(t.row(i), t.row(i) + t.n_q()));
    }
    j["values"] = std::move(rows);
    j["meta"] = t.meta;
    return j;
}

Tomogram tomogram_from_json(const nlohmann::json &j) {
    try {
        Tomogram t;
        t.hbar = j.at("hbar").get<double>();
        t.phis = j.at("phis").get<std::vector<double>>();
        t.qs = j.at("qs").get<std::vector<double>>();
        for (const auto &r : j.at("values")) {
            const auto row = r.get<std::vector<double>>();
            if (row.size() != t.qs.size()) {
                throw IoError("tomogram JSON: row length does not match the q grid");
            }
            t.values.insert(t.values.end(), row.begin(), row.end());
        }
        if (t.values.size() != t.phis.size() * t.qs.size()) {
            throw IoError("tomogram JSON: row count does not match the angle list");
        }
        if (j.contains("meta")) {
            t.meta = j["meta"].get<std::map<std::string, std::string>>();
        }
        return t;
    } catch (const nlohmann::json::exception &e) {
        throw IoError(std::string("tomogram JSON: ") + e.what());
    }
}

void write_tomogram_json(const std::string &path, const Tomogram &t) {
    write_text_file(path, dump_json(tomogram_to_json(t)));
}

Tomogram read_tomogram_json(const std::string &path) { return tomogram_from_json(read_json_file(path)); }

Tomogram read_tomogram(const std::string &path) {
    if (ends_with(path, ".json")) {
        return read_tomogram_json(path);
    }
    return read_tomogram_csv(path);
}

nlohmann::json density_to_json(const DensityMatrix &rho) {
    nlohmann::json rows = nlohmann::json::array();
    for (int m = 0; m < rho.dim(); ++m) {
        nlohmann::json row = nlohmann::json::array();
        for (int n = 0; n < rho.dim(); ++n) {
            row.push_back(complex_to_json(rho(m, n)));
        }
        rows.push_back(std::move(row));
    }
    return {{"rho", rows}};
}

DensityMatrix density_from_json(const nlohmann::json &j) {
    try {
        const auto &rows = j.at("rho");
        const int dim = int(rows.size());
        DensityMatrix rho(dim);
        for (int m = 0; m < dim; ++m) {
            if (int(rows[m].size()) != dim) {
                throw IoError("density JSON: matrix is not square");
            }
            for (int n = 0; n < dim; ++n) {
                rho(m, n) = complex_from_json(rows[m][n]);
            }
        }
        return rho;
    } catch (const nlohmann::json::exception &e) {
        throw IoError(std::string("density JSON: ") + e.what());
    }
}

DensityMatrix read_density(const std::string &path) { return density_from_json(read_json_file(path)); }

nlohmann::json read_json_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open " + path);
    }
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception &e) {
        throw IoError(path + ": " + e.what());
    }
}

void write_text_file(const std::string &path, const std::string &text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot write " + path);
    }
    out << text;
    if (!out) {
        throw IoError("write failed for " + path);
    }
}

}  // namespace homtomo
