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

// homtomo: generate tomograms, reconstruct from them, emit pattern tables and run the self-checks.
//
// Exit codes: 0 success, 1 accuracy gate or numerical failure, 2 usage, 3 I/O.

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <iostream>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "homtomo/config.hpp"
#include "homtomo/errors.hpp"
#include "homtomo/io.hpp"
#include "homtomo/pattern.hpp"
#include "homtomo/radon.hpp"
#include "homtomo/reconstruct.hpp"
#include "homtomo/states.hpp"
#include "homtomo/verify.hpp"

using namespace homtomo;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Input validation failures are usage errors, not accuracy failures.
template <class F>
auto as_usage(F &&f) -> decltype(f()) {
    try {
        return f();
    } catch (const DomainError &e) {
        throw UsageError(e.what());
    } catch (const ConsistencyError &e) {
        throw UsageError(e.what());
    } catch (const ArityError &e) {
        throw UsageError(e.what());
    }
}

std::string config_line(const RunConfig &cfg) { return dump_json(cfg.to_json(), -1); }

void emit(const std::string &path, const std::string &text) {
    if (path.empty() || path == "-") {
        std::cout << text;
    } else {
        write_text_file(path, text);
    }
}

std::string strip_extension(const std::string &path) {
    for (const char *ext : {".csv", ".json"}) {
        const std::string e(ext);
        if (path.size() > e.size() && path.compare(path.size() - e.size(), e.size(), e) == 0) {
            return path.substr(0, path.size() - e.size());
        }
    }
    return path;
}

Tomogram load_tomogram(const std::string &path, const RunConfig &cfg) {
    Tomogram t = read_tomogram(path);
    as_usage([&] {
        t.validate(std::max(cfg.tol, 1e-6));
        return 0;
    });
    return t;
}

// ---- gen-tomogram

struct GenArgs {
    std::string gaussian;
    std::string fock_matrix;
    std::string out;
};

int cmd_gen_tomogram(RunConfig cfg, const GenArgs &a) {
    if (a.gaussian.empty() == a.fock_matrix.empty()) {
        throw UsageError("gen-tomogram needs exactly one of --gaussian or --fock-matrix");
    }
    if (a.out.empty()) {
        throw UsageError("gen-tomogram needs --out");
    }
    const std::string base = strip_extension(a.out);
    cfg.outputs["csv"] = base + ".csv";
    cfg.outputs["json"] = base + ".json";

    Tomogram t;
    std::string state;
    if (!a.gaussian.empty()) {
        const GaussianState g = as_usage([&] { return parse_gaussian_spec(a.gaussian, cfg.hbar); });
        TomogramGrid grid = default_grid(g);
        grid.n_angles = cfg.n_angles;
        grid.n_q = cfg.n_q;
        if (cfg.half_width > 0) {
            grid.q_half_width = cfg.half_width;
        }
        t = gaussian_tomogram(g, grid);
        state = "gaussian " + format_double(g.qbar) + "," + format_double(g.pbar) + "," + format_double(g.zeta.real()) + "," +
                format_double(g.zeta.imag());
    } else {
        DensityMatrix rho = read_density(a.fock_matrix);
        as_usage([&] {
            if (rho.dim() < 1) {
                throw DomainError("density matrix is empty");
            }
            rho.validate(cfg.tol);
            return 0;
        });
        TomogramGrid grid = default_grid_fock(rho.dim() - 1, cfg.hbar);
        grid.n_angles = cfg.n_angles;
        grid.n_q = cfg.n_q;
        if (cfg.half_width > 0) {
            grid.q_half_width = cfg.half_width;
        }
        t = density_tomogram(rho, grid, cfg.hbar);
        state = "fock-matrix dim=" + std::to_string(rho.dim());
    }
    t.meta["state"] = state;
    t.meta["config"] = config_line(cfg);
    write_tomogram_csv(cfg.outputs["csv"], t);
    write_tomogram_json(cfg.outputs["json"], t);

    std::ostringstream os;
    os << "# per-angle normalization\nphi,row_integral,defect\n";
    double worst = 0;
    for (std::size_t i = 0; i < t.n_angles(); ++i) {
        const double r = t.row_integral(i);
        worst = std::max(worst, std::abs(r - 1));
        os << format_double(t.phis[i]) << ',' << format_double(r) << ',' << format_double(r - 1) << '\n';
    }
    os << "# max_defect=" << format_double(worst) << '\n';
    std::cout << os.str();
    if (worst > cfg.tol) {
        throw AccuracyError("row integrals deviate from 1 by " + format_double(worst) + " > tol");
    }
    return 0;
}

// ---- reconstruct / moments / qfunc

struct ReconArgs {
    std::string tomogram;
    std::string mode = "fock";
    std::string rep = "canonical";
    int dim = 0;
    int order = 2;
    std::string angles;
    std::vector<std::string> alphas;
    std::string out;
    std::string csv;
};

bool same_angles(const std::vector<double> &a, const std::vector<double> &b) {
    if (a.size() != b.size()) {
        return false;
    }
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (std::abs(a[i] - b[i]) > 1e-9) {
            return false;
        }
    }
    return true;
}

// phi0 when the angles are phi0 + m pi / n (any order, modulo pi); negative when not.
double harmonic_offset(std::vector<double> phis) {
    const double pi = std::numbers::pi;
    const std::size_t n = phis.size();
    for (double &p : phis) {
        p = std::fmod(p, pi);
        if (p < 0) {
            p += pi;
        }
    }
    std::sort(phis.begin(), phis.end());
    const double step = pi / double(n);
    const double phi0 = phis[0];
    for (std::size_t m = 0; m < n; ++m) {
        if (std::abs(phis[m] - (phi0 + m * step)) > 1e-9) {
            return -1;
        }
    }
    return phi0;
}

nlohmann::json moments_json(const MomentSet &ms, int min_order) {
    nlohmann::json arr = nlohmann::json::array();
    for (int s = min_order; s <= ms.s_max(); ++s) {
        for (int k = 0; k <= s; ++k) {
            arr.push_back({{"k", k}, {"l", s - k}, {"value", complex_to_json(ms.get(k, s - k))}});
        }
    }
    return arr;
}

std::string density_csv(const DensityMatrix &rho, const RunConfig &cfg) {
    std::ostringstream os;
    os << "# config=" << config_line(cfg) << '\n';
    for (int n = 0; n < rho.dim(); ++n) {
        os << (n ? "," : "") << "re(" << n << "),im(" << n << ")";
    }
    os << '\n';
    for (int m = 0; m < rho.dim(); ++m) {
        for (int n = 0; n < rho.dim(); ++n) {
            os << (n ? "," : "") << format_double(rho(m, n).real()) << ',' << format_double(rho(m, n).imag());
        }
        os << '\n';
    }
    return os.str();
}

int cmd_reconstruct(RunConfig cfg, const ReconArgs &a) {
    if (a.tomogram.empty()) {
        throw UsageError("missing --tomogram");
    }
    if (!a.out.empty()) {
        cfg.outputs["json"] = a.out;
    }
    if (!a.csv.empty()) {
        cfg.outputs["csv"] = a.csv;
    }
    const Tomogram t = load_tomogram(a.tomogram, cfg);
    const ProjectionSource src = ProjectionSource::sampled(t);
    QuadratureSpec spec;
    spec.gate_tol = cfg.tol;

    nlohmann::json j;
    j["config"] = cfg.to_json();
    j["input"] = a.tomogram;
    j["mode"] = a.mode;
    j["tomogram_hbar"] = t.hbar;
    nlohmann::json diag;

    if (a.mode == "fock") {
        const int dim = a.dim > 0 ? a.dim : cfg.nmax + 1;
        const PatternRep rep = as_usage([&] { return parse_pattern_rep(a.rep); });
        const DensityReconstruction r = reconstruct_density(src, dim, rep, spec);
        j["rho"] = density_to_json(r.rho)["rho"];
        diag["rep"] = to_string(rep);
        diag["hermitian_defect"] = r.hermitian_defect;
        diag["max_error_estimate"] = r.max_error_estimate;
        diag["trace"] = complex_to_json(r.rho.trace());
        if (!a.csv.empty()) {
            write_text_file(a.csv, density_csv(r.rho, cfg));
        }
    } else if (a.mode == "moments") {
        if (a.order < 1) {
            throw UsageError("--order must be at least 1");
        }
        MomentSet ms;
        std::string route;
        int min_order = 0;
        if (a.angles.empty()) {
            ms = moments_angle_average(src, a.order, spec);
            route = "angle-average";
        } else {
            const std::vector<double> phis = as_usage([&] { return parse_real_list(a.angles); });
            if (int(phis.size()) != a.order + 1) {
                throw UsageError("order " + std::to_string(a.order) + " needs " + std::to_string(a.order + 1) + " angles");
            }
            const double pi = std::numbers::pi;
            if (same_angles(phis, {0, pi / 4, pi / 2})) {
                ms = as_usage([&] { return moments_preset_quarter(src); });
                route = "preset-quarter";
            } else if (same_angles(phis, {0, pi / 3, 2 * pi / 3})) {
                ms = as_usage([&] { return moments_preset_thirds(src); });
                route = "preset-thirds";
            } else if (phis.size() <= 3) {
                ms = as_usage([&] { return moments_low_order_custom(src, phis); });
                route = "low-order";
            } else {
                min_order = a.order;
                ms = MomentSet(a.order);
                const double phi0 = harmonic_offset(phis);
                if (phi0 >= 0) {
                    const AngleDivision div = AngleDivision::harmonic(a.order, phi0);
                    for (int k = 0; k <= a.order; ++k) {
                        ms.set(k, a.order - k, moment_discrete_angles(src, k, a.order - k, div, spec).value);
                    }
                    route = "harmonic-division";
                } else {
                    const auto mu = as_usage([&] { return moments_linear_solve(src, a.order, phis); });
                    for (int k = 0; k <= a.order; ++k) {
                        ms.set(k, a.order - k, mu[k]);
                    }
                    route = "linear-solve";
                    diag["experimental"] = true;
                }
            }
        }
        j["moments"] = moments_json(ms, min_order);
        diag["route"] = route;
        diag["s_max"] = ms.s_max();
        if (a.dim > 0) {
            const MomentDensity md = as_usage([&] { return density_from_moments(ms, a.dim); });
            j["rho_from_moments"] = density_to_json(md.rho)["rho"];
            diag["last_term"] = md.last_term;
            diag["warnings"] = md.warnings;
            if (!a.csv.empty()) {
                write_text_file(a.csv, density_csv(md.rho, cfg));
            }
        }
    } else if (a.mode == "qfunc") {
        const std::vector<std::string> alphas = a.alphas.empty() ? std::vector<std::string>{"0,0"} : a.alphas;
        nlohmann::json arr = nlohmann::json::array();
        double worst = 0;
        for (const auto &s : alphas) {
            const cplx alpha = as_usage([&] { return parse_complex(s); });
            const ReconResult r = qfunction(src, alpha, spec);
            worst = std::max(worst, r.error_estimate);
            arr.push_back({{"alpha", complex_to_json(alpha)}, {"q", r.value.real()}, {"error_estimate", r.error_estimate}});
        }
        j["qfunction"] = arr;
        diag["max_error_estimate"] = worst;
    } else {
        throw UsageError("unknown mode '" + a.mode + "' (fock, moments or qfunc)");
    }
    j["diagnostics"] = diag;
    emit(a.out, dump_json(j));
    return 0;
}

// ---- pattern-table

struct TableArgs {
    int m = 0, n = 0;
    std::string rep = "canonical";
    double xmin = -5, xmax = 5;
    int points = 101;
    int trunc = 0;  // 0: adaptive
    std::string out;
};

int cmd_pattern_table(RunConfig cfg, const TableArgs &a) {
    if (a.points < 2 || !(a.xmax > a.xmin)) {
        throw UsageError("pattern-table needs --points >= 2 and xmax > xmin");
    }
    if (!a.out.empty()) {
        cfg.outputs["csv"] = a.out;
    }
    const EvalGrid grid = EvalGrid::uniform(a.xmin, a.xmax, std::size_t(a.points));
    std::vector<PatternRep> reps;
    if (a.rep == "all") {
        reps = {PatternRep::Canonical, PatternRep::HermiteSeries, PatternRep::DerivProduct, PatternRep::DerivProductSwapped,
                PatternRep::DerivProductSymmetric};
    } else {
        reps = {as_usage([&] { return parse_pattern_rep(a.rep); })};
    }
    if (a.m < 0 || a.n < 0 || a.trunc < 0) {
        throw UsageError("indices and --trunc must be non-negative");
    }
    SeriesOptions so;
    if (a.trunc > 0) {
        so.adaptive = false;
        so.terms = a.trunc;
    }
    auto value = [&](PatternRep r, double x) {
        if (r == PatternRep::HermiteSeries) {
            return pattern_hermite_series(a.m, a.n, x, so);
        }
        return pattern_value(r, a.m, a.n, x);
    };

    std::ostringstream os;
    os << "# m=" << a.m << "\n# n=" << a.n << "\n# rep=" << a.rep << "\n# trunc=" << (a.trunc > 0 ? std::to_string(a.trunc) : "adaptive")
       << "\n# config=" << config_line(cfg) << '\n';
    if (reps.size() > 1) {
        // Differences from the canonical form, fitted by H_{d-2k}, k >= 1.
        for (std::size_t r = 1; r < reps.size(); ++r) {
            const NonuniquenessFit fit = pattern_nonuniqueness_residual(reps[r], PatternRep::Canonical, a.m, a.n, grid, 1e-6);
            os << "# residual " << to_string(reps[r]) << "-canonical=" << format_double(fit.residual) << " coeffs=";
            for (std::size_t k = 0; k < fit.coeffs.size(); ++k) {
                os << (k ? ";" : "") << format_double(fit.coeffs[k]);
            }
            os << '\n';
        }
        os << 'x';
        for (PatternRep r : reps) {
            os << ',' << to_string(r);
        }
        os << '\n';
    } else {
        os << "x,value\n";
    }
    for (double x : grid.points) {
        os << format_double(x);
        for (PatternRep r : reps) {
            os << ',' << format_double(value(r, x));
        }
        os << '\n';
    }
    emit(a.out, os.str());
    return 0;
}

// ---- invert-radon

struct InvertArgs {
    std::string tomogram;
    int points = 65;
    double extent = 0;  // 0: half the q window
    std::string out;
};

int cmd_invert_radon(RunConfig cfg, const InvertArgs &a) {
    if (a.tomogram.empty()) {
        throw UsageError("missing --tomogram");
    }
    if (a.points < 2 || a.extent < 0) {
        throw UsageError("invert-radon needs --points >= 2 and a non-negative --extent");
    }
    if (!a.out.empty()) {
        cfg.outputs["csv"] = a.out;
    }
    const Tomogram t = load_tomogram(a.tomogram, cfg);
    if (!t.angles_uniform()) {
        throw UsageError("back-projection needs uniform angles over [0, pi)");
    }
    const BackProjection bp(t);
    const double L = a.extent > 0 ? a.extent : 0.5 * t.qs.back();
    const std::vector<double> xs = uniform_positions(L, a.points);
    const std::vector<double> w = bp.grid(xs, xs);

    std::ostringstream os;
    os << "# input=" << a.tomogram << "\n# config=" << config_line(cfg) << '\n';
    for (const auto &msg : bp.warnings()) {
        os << "# warning=" << msg << '\n';
    }
    os << "q\\p";
    for (double p : xs) {
        os << ',' << format_double(p);
    }
    os << '\n';
    for (std::size_t i = 0; i < xs.size(); ++i) {
        os << format_double(xs[i]);
        for (std::size_t k = 0; k < xs.size(); ++k) {
            os << ',' << format_double(w[i * xs.size() + k]);
        }
        os << '\n';
    }
    emit(a.out, os.str());
    return 0;
}

// ---- verify

int cmd_verify(RunConfig cfg, const std::string &suite, const std::string &out) {
    if (!out.empty()) {
        cfg.outputs["json"] = out;
    }
    const VerifyReport rep = as_usage([&] { return run_verify(suite, cfg.seed); });
    std::cout << rep.summary();
    if (!out.empty()) {
        nlohmann::json j = rep.to_json();
        j["config"] = cfg.to_json();
        write_text_file(out, dump_json(j));
    }
    return rep.passed() ? 0 : 1;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Homodyne tomograms: synthesis, reconstruction and pattern functions"};
    app.require_subcommand(1);
    app.fallthrough();

    RunConfig flags;
    std::string config_path;
    auto *o_config = app.add_option("--config", config_path, "JSON config file (default: $HOMTOMO_CONFIG)");
    auto *o_hbar = app.add_option("--hbar", flags.hbar, "Planck constant");
    auto *o_nmax = app.add_option("--nmax", flags.nmax, "Fock truncation index");
    auto *o_nang = app.add_option("--n-angles", flags.n_angles, "Tomogram angles over [0, pi)");
    auto *o_nq = app.add_option("--n-q", flags.n_q, "Tomogram positions");
    auto *o_hw = app.add_option("--half-width", flags.half_width, "Tomogram q half-width (0: from the state)");
    auto *o_tol = app.add_option("--tol", flags.tol, "Accuracy target in (0, 1e-2]");
    auto *o_seed = app.add_option("--seed", flags.seed, "Seed for randomized probe sets");

    GenArgs gen;
    auto *c_gen = app.add_subcommand("gen-tomogram", "Synthesize a tomogram (writes .csv and .json)");
    c_gen->add_option("--gaussian", gen.gaussian, "q,p,zeta with zeta as re+imi or re,im");
    c_gen->add_option("--fock-matrix", gen.fock_matrix, "JSON density matrix {\"rho\": [[[re, im], ...], ...]}");
    c_gen->add_option("-o,--out", gen.out, "Output path; the .csv/.json extension is replaced")->required();

    ReconArgs rec;
    auto add_recon = [&](CLI::App *c, bool with_mode) {
        c->add_option("-t,--tomogram", rec.tomogram, "Tomogram file (.csv or .json)")->required();
        if (with_mode) {
            c->add_option("--mode", rec.mode, "fock, moments or qfunc")->check(CLI::IsMember({"fock", "moments", "qfunc"}));
        }
        c->add_option("--rep", rec.rep, "Pattern representation for fock mode");
        c->add_option("--dim", rec.dim, "Matrix dimension (fock: default nmax+1; moments: density from moments)");
        c->add_option("--order", rec.order, "Moment order k+l");
        c->add_option("--angles", rec.angles, "Comma-separated angles in radians for the discrete routes");
        c->add_option("--alpha", rec.alphas, "Q-function argument, re+imi or re,im (repeatable)");
        c->add_option("-o,--out", rec.out, "JSON output (default stdout)");
        c->add_option("--csv", rec.csv, "CSV density matrix output");
    };
    auto *c_rec = app.add_subcommand("reconstruct", "Density matrix, moments or Q-function from a tomogram");
    add_recon(c_rec, true);
    auto *c_mom = app.add_subcommand("moments", "Normally ordered moments from a tomogram");
    add_recon(c_mom, false);
    auto *c_q = app.add_subcommand("qfunc", "Q-function values from a tomogram");
    add_recon(c_q, false);

    TableArgs tab;
    auto *c_tab = app.add_subcommand("pattern-table", "Tabulate pattern functions");
    c_tab->add_option("-m", tab.m, "Row index")->required();
    c_tab->add_option("-n", tab.n, "Column index")->required();
    c_tab->add_option("--rep", tab.rep, "canonical, hermite-series, deriv-product, deriv-swapped, deriv-sym or all");
    c_tab->add_option("--xmin", tab.xmin);
    c_tab->add_option("--xmax", tab.xmax);
    c_tab->add_option("--points", tab.points);
    c_tab->add_option("--trunc", tab.trunc, "Fixed series length for hermite-series (0: adaptive)");
    c_tab->add_option("-o,--out", tab.out, "CSV output (default stdout)");

    InvertArgs inv;
    auto *c_inv = app.add_subcommand("invert-radon", "Wigner function on a square grid by filtered back-projection");
    c_inv->add_option("-t,--tomogram", inv.tomogram)->required();
    c_inv->add_option("--points", inv.points, "Grid points per axis");
    c_inv->add_option("--extent", inv.extent, "Grid half-width (0: half the q window)");
    c_inv->add_option("-o,--out", inv.out, "CSV output (default stdout)");

    std::string suite = "all", verify_out;
    auto *c_ver = app.add_subcommand("verify", "Run the self-check suites");
    c_ver->add_option("suite", suite, "specfun, symplectic, radon, pattern, reconstruct or all");
    c_ver->add_option("-o,--out", verify_out, "JSON report");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        RunConfig cfg;
        if (config_path.empty()) {
            if (const char *env = std::getenv(kConfigEnv); env && *env) {
                config_path = env;
            }
        }
        if (!config_path.empty()) {
            const nlohmann::json j = read_json_file(config_path);
            as_usage([&] {
                cfg.apply_json(j);
                return 0;
            });
        }
        if (o_hbar->count()) cfg.hbar = flags.hbar;
        if (o_nmax->count()) cfg.nmax = flags.nmax;
        if (o_nang->count()) cfg.n_angles = flags.n_angles;
        if (o_nq->count()) cfg.n_q = flags.n_q;
        if (o_hw->count()) cfg.half_width = flags.half_width;
        if (o_tol->count()) cfg.tol = flags.tol;
        if (o_seed->count()) cfg.seed = flags.seed;
        (void)o_config;
        as_usage([&] {
            cfg.validate();
            return 0;
        });

        if (c_gen->parsed()) return cmd_gen_tomogram(cfg, gen);
        if (c_rec->parsed()) return cmd_reconstruct(cfg, rec);
        if (c_mom->parsed()) {
            rec.mode = "moments";
            return cmd_reconstruct(cfg, rec);
        }
        if (c_q->parsed()) {
            rec.mode = "qfunc";
            return cmd_reconstruct(cfg, rec);
        }
        if (c_tab->parsed()) return cmd_pattern_table(cfg, tab);
        if (c_inv->parsed()) return cmd_invert_radon(cfg, inv);
        if (c_ver->parsed()) return cmd_verify(cfg, suite, verify_out);
    } catch (const UsageError &e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const DomainError &e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const ArityError &e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const IoError &e) {
        std::cerr << "io error: " << e.what() << '\n';
        return 3;
    } catch (const AccuracyError &e) {
        std::cerr << "accuracy: " << e.what() << '\n';
        return 1;
    } catch (const std::exception &e) {
        std::cerr << "failed: " << e.what() << '\n';
        return 1;
    }
    return 2;
}
