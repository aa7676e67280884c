// Copyright 2026 The entangle Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//     http://www.apache.org/licenses/LICENSE-2.0
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// entangle_cli: entanglement numbers of measures, pure and mixed states.
//
// Exit codes: 0 ok, 1 verification failure, 2 malformed input or usage,
// 3 invariant violation, 4 shape mismatch, 5 optimizer budget exhausted.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <entangle/entangle.hpp>
#include <entangle/io.hpp>

#include "report.hpp"
#include "verification.hpp"

namespace {

using namespace entangle;
using entangle::cli::json;
using entangle::cli::Report;

constexpr int exit_ok = 0;
constexpr int exit_verify = 1;
constexpr int exit_parse = 2;
constexpr int exit_invariant = 3;
constexpr int exit_shape = 4;
constexpr int exit_budget = 5;

std::vector<std::size_t> one_based(const std::vector<std::size_t> &support) {
    std::vector<std::size_t> out;
    for (std::size_t i : support) {
        out.push_back(i + 1);
    }
    return out;
}

int emit(const Report &report) {
    std::cout << report.to_json().dump(2) << '\n';
    return report.ok() ? exit_ok : exit_verify;
}

int cmd_classical(const std::string &path, double tol) {
    Report report("classical");
    const std::string text = cli::read_file(path);
    report.add_input(text);
    const json j = cli::parse_json(text, path);
    if (j.is_array() && !j.empty() && j[0].is_array()) {
        const auto u = io::product_measure_from_json(j);
        const Eigen::MatrixXd &w = u.weights();
        const classical::ProbMeasure flat(std::vector<double>(w.data(), w.data() + w.size()));
        report.value("kind", "product", 0.0);
        report.value("support_size", classical::support(flat).size(), classical::zero_tol);
        report.value("index", classical::entanglement_index(flat), classical::zero_tol);
        report.value("e", classical::product_entanglement_number(u), 0.0);
        report.value("row_marginal", json(u.row_marginal()), 0.0);
        report.value("col_marginal", json(u.col_marginal()), 0.0);
        report.value("factorized", classical::is_factorized(u, tol), tol);
        report.value("verdict", classical::is_factorized(u, tol) ? "factorized" : "entangled", tol);
    } else {
        const auto u = io::prob_measure_from_json(j);
        report.value("kind", "measure", 0.0);
        report.value("support", one_based(classical::support(u)), classical::zero_tol);
        report.value("index", classical::entanglement_index(u), classical::zero_tol);
        report.value("e", classical::entanglement_number(u), 0.0);
        report.value("uniform", classical::is_uniform(u), classical::zero_tol);
        report.value("point", classical::is_point(u), classical::zero_tol);
    }
    return emit(report);
}

BipartiteVectorState read_bipartite(const json &j, FactorDims dims) {
    if (j.is_object()) {
        const BipartiteVectorState psi = io::bipartite_state_from_json(j);
        if (psi.dims().a != dims.a || psi.dims().b != dims.b) {
            throw DimensionError("--dims disagree with dimA/dimB in the file");
        }
        return psi;
    }
    return BipartiteVectorState(io::vector_from_json(j), dims);
}

int cmd_schmidt(const std::string &path, FactorDims dims) {
    Report report("schmidt");
    const std::string text = cli::read_file(path);
    report.add_input(text);
    report.add_input("dims=" + std::to_string(dims.a) + "x" + std::to_string(dims.b));
    const BipartiteVectorState psi = read_bipartite(cli::parse_json(text, path), dims);
    const Entanglement e = schmidt_decompose(psi);
    report.value("lambda", io::to_json(e.lambda()), classical::zero_tol);
    report.value("e", classical::entanglement_number(e.lambda()), 0.0);
    report.value("factorized", is_factorized(psi), state_tol);
    const ComplexVector back = psi_from_entanglement(e).vector();
    const double overlap = 1.0 - std::abs(back.dot(psi.vector()));
    report.check("reconstruction_defect", overlap, 1e-9, overlap <= 1e-9);
    return emit(report);
}

int cmd_context_coeff(const std::string &op_path, const std::string &ctx_path, double tol) {
    Report report("context-coeff");
    const std::string op_text = cli::read_file(op_path);
    const std::string ctx_text = cli::read_file(ctx_path);
    report.add_input(op_text);
    report.add_input(ctx_text);
    report.add_input("tol=" + cli::fmt16(tol));
    const Operator a = io::matrix_from_json(cli::parse_json(op_text, op_path));
    if (a.rows() != a.cols()) {
        throw DimensionError("operator must be square");
    }
    const Context ctx = io::context_from_json(cli::parse_json(ctx_text, ctx_path));
    const double c = context_coefficient(a, ctx);
    const double r = hs_norm(residual_map(a, ctx));
    report.value("c", c, 0.0);
    report.value("residual_norm", r, 0.0);
    report.value("measurable", is_measurable(a, ctx), 1e-10);
    report.check("c_equals_residual_norm", std::abs(c - r), tol, std::abs(c - r) <= tol);
    return emit(report);
}

struct MixedArgs {
    std::string rho_path;
    std::vector<Eigen::Index> dims;
    std::optional<int> restarts;
    std::optional<int> m;
    std::optional<std::uint64_t> seed;
    std::string opts_path;
    bool require_converged = false;
    std::string out_path;
};

int cmd_mixed(const MixedArgs &args) {
    Report report("mixed");
    const std::string text = cli::read_file(args.rho_path);
    report.add_input(text);
    OptimizerOptions opts;
    if (!args.opts_path.empty()) {
        const std::string opts_text = cli::read_file(args.opts_path);
        opts = io::optimizer_options_from_json(cli::parse_json(opts_text, args.opts_path));
    }
    if (args.restarts) opts.restarts = *args.restarts;
    if (args.m) opts.m = *args.m;
    if (args.seed) opts.seed = *args.seed;
    const FactorDims dims{args.dims[0], args.dims[1]};
    report.add_input("dims=" + std::to_string(dims.a) + "x" + std::to_string(dims.b));
    report.add_input(io::to_json(opts).dump());

    const DensityState rho(io::matrix_from_json(cli::parse_json(text, args.rho_path)));
    const MixedResult res = entanglement_number_mixed(rho, dims, opts);
    const auto cert = certificate_from_result(res, dims, opts.sep_threshold);
    report.value("spectral_e", res.spectral_value, 0.0);
    report.value("e", res.value, opts.stagnation_tol);
    report.value("converged", res.converged, opts.stagnation_tol);
    report.value("terms", res.terms, 0.0);
    report.value("restarts", opts.restarts, 0.0);
    report.value("best_restart", res.best_restart, 0.0);
    report.value("reconstruction_error", res.best.reconstruction_error(rho), 1e-9);
    report.value("certificate", cert.has_value(), opts.sep_threshold);
    if (!args.out_path.empty()) {
        std::ofstream out(args.out_path);
        out << (cert ? io::to_json(*cert) : json(nullptr)).dump(2) << '\n';
        if (!out) {
            throw std::runtime_error("cannot write " + args.out_path);
        }
    }
    const int code = emit(report);
    if (code == exit_ok && args.require_converged && !res.converged) {
        std::cerr << "optimizer budget exhausted before stagnation\n";
        return exit_budget;
    }
    return code;
}

int cmd_verify_paper(const std::string &only, std::uint64_t seed) {
    const auto &groups = cli::verify::groups();
    if (!only.empty() && std::ranges::none_of(groups, [&](const auto &g) { return g.first == only; })) {
        std::cerr << "unknown id '" << only << "'; known:";
        for (const auto &g : groups) {
            std::cerr << ' ' << g.first;
        }
        std::cerr << '\n';
        return exit_parse;
    }
    const auto start = std::chrono::steady_clock::now();
    std::printf("%-9s %-44s %-24s %-9s %-24s %-8s %s\n", "id", "check", "expected", "source", "computed", "tol",
                "result");
    int total = 0;
    int failed = 0;
    for (const auto &[id, run] : groups) {
        if (!only.empty() && id != only) {
            continue;
        }
        for (const cli::Row &row : run(seed)) {
            ++total;
            failed += row.pass ? 0 : 1;
            std::printf("%-9s %-44s %-24s %-9s %-24s %-8.1e %s\n", row.id.c_str(), row.check.c_str(),
                        row.expected.c_str(), row.source.c_str(), cli::fmt16(row.computed).c_str(), row.tol,
                        row.pass ? "PASS" : "FAIL");
        }
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%d checks, %d failed, %.1f s\n", total, failed, secs);
    return failed == 0 ? exit_ok : exit_verify;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Entanglement numbers for measures, pure and mixed bipartite states"};
    app.require_subcommand(1);

    std::string file;
    std::string ctx_file;
    double tol = 1e-10;
    std::vector<Eigen::Index> dims;

    auto *classical_cmd = app.add_subcommand("classical", "Probability or product measure from JSON");
    classical_cmd->add_option("file", file, "measure JSON")->required();
    classical_cmd->add_option("--tol", tol, "factorization tolerance")->capture_default_str();

    auto *schmidt_cmd = app.add_subcommand("schmidt", "Schmidt decomposition of a bipartite vector");
    schmidt_cmd->add_option("file", file, "state JSON")->required();
    schmidt_cmd->add_option("--dims", dims, "factor dimensions A B")->expected(2)->required();

    double coeff_tol = 1e-9;
    auto *coeff_cmd = app.add_subcommand("context-coeff", "Context coefficient of an operator");
    coeff_cmd->add_option("operator", file, "operator JSON")->required();
    coeff_cmd->add_option("context", ctx_file, "context JSON")->required();
    coeff_cmd->add_option("--tol", coeff_tol, "tolerance for c = ||R(A)||")->capture_default_str();

    MixedArgs mixed;
    auto *mixed_cmd = app.add_subcommand("mixed", "Optimized entanglement number of a density matrix");
    mixed_cmd->add_option("rho", mixed.rho_path, "density matrix JSON")->required();
    mixed_cmd->add_option("--dims", mixed.dims, "factor dimensions A B")->expected(2)->required();
    mixed_cmd->add_option("--restarts", mixed.restarts, "optimizer restarts");
    mixed_cmd->add_option("--m", mixed.m, "decomposition terms");
    mixed_cmd->add_option("--seed", mixed.seed, "random seed");
    mixed_cmd->add_option("--opts", mixed.opts_path, "optimizer options JSON");
    mixed_cmd->add_flag("--require-converged", mixed.require_converged, "exit 5 unless the optimizer stagnated");
    mixed_cmd->add_option("--out", mixed.out_path, "write the certificate (or null) here");

    std::string only;
    std::uint64_t seed = 0;
    auto *verify_cmd = app.add_subcommand("verify-paper", "Replay the worked examples and property suites");
    verify_cmd->add_option("--only", only, "run a single id");
    verify_cmd->add_option("--seed", seed, "random seed")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return exit_parse;
    }

    try {
        if (*classical_cmd) {
            return cmd_classical(file, tol);
        }
        if (*schmidt_cmd) {
            return cmd_schmidt(file, {dims[0], dims[1]});
        }
        if (*coeff_cmd) {
            return cmd_context_coeff(file, ctx_file, coeff_tol);
        }
        if (*mixed_cmd) {
            return cmd_mixed(mixed);
        }
        return cmd_verify_paper(only, seed);
    } catch (const ParseError &e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return exit_parse;
    } catch (const json::exception &e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return exit_parse;
    } catch (const InvariantError &e) {
        std::cerr << "invariant violated: " << e.what() << '\n';
        return exit_invariant;
    } catch (const DimensionError &e) {
        std::cerr << "shape mismatch: " << e.what() << '\n';
        return exit_shape;
    }
}
