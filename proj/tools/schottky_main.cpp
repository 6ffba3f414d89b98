#include <cctype>
#include <chrono>
#include <complex>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "schottky/igusa.hpp"
#include "schottky/io.hpp"
#include "schottky/solver.hpp"
#include "schottky/zoo.hpp"

namespace {

using namespace schottky;

// Accepts "1+1i", "0.5-2i", "2i", "1", "-1+0.5i".
cdouble parse_complex(const std::string& text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    if (s.empty()) throw SchottkyError("empty complex literal");

    auto read_number = [](const std::string& str, std::size_t& pos) {
        std::size_t start = pos;
        if (pos < str.size() && (str[pos] == '+' || str[pos] == '-')) ++pos;
        bool digits = false;
        while (pos < str.size() &&
               (std::isdigit(static_cast<unsigned char>(str[pos])) || str[pos] == '.')) {
            digits = true;
            ++pos;
        }
        if (pos < str.size() && (str[pos] == 'e' || str[pos] == 'E')) {
            ++pos;
            if (pos < str.size() && (str[pos] == '+' || str[pos] == '-')) ++pos;
            while (pos < str.size() && std::isdigit(static_cast<unsigned char>(str[pos]))) ++pos;
        }
        if (!digits && pos < str.size() && (str[pos] == 'i' || str[pos] == 'j')) {
            // bare "i" or signed "i" counts as 1
            return str[start] == '-' ? -1.0 : 1.0;
        }
        if (!digits) throw SchottkyError("cannot parse complex literal");
        return std::stod(str.substr(start, pos - start));
    };

    double re = 0.0, im = 0.0;
    std::size_t pos = 0;
    double first = read_number(s, pos);
    if (pos < s.size() && (s[pos] == 'i' || s[pos] == 'j')) {
        im = first;
        ++pos;
    } else {
        re = first;
        if (pos < s.size()) {
            double second = read_number(s, pos);
            if (pos >= s.size() || (s[pos] != 'i' && s[pos] != 'j'))
                throw SchottkyError("cannot parse complex literal: " + text);
            im = second;
            ++pos;
        }
    }
    if (pos != s.size()) throw SchottkyError("cannot parse complex literal: " + text);
    return {re, im};
}

struct MatrixOptions {
    std::string path;
    std::string zoo_name;
    std::string tau = "1+1i";
    int genus = 4;
    double perturb_diag = 0.0;
    double perturb_sym = 0.0;
};

void add_matrix_options(CLI::App* cmd, MatrixOptions& opt, bool path_positional = true) {
    if (path_positional) cmd->add_option("matrix", opt.path, "path to a matrix JSON file");
    cmd->add_option("--zoo", opt.zoo_name,
                    "built-in matrix: rm_tau, hyperelliptic, bring, fermat5, fricke_macbeath");
    cmd->add_option("--tau", opt.tau, "family parameter for rm_tau, e.g. 1+1i");
    cmd->add_option("--genus", opt.genus, "genus for the hyperelliptic family");
    cmd->add_option("--perturb-diag", opt.perturb_diag, "diagonal perturbation size s");
    cmd->add_option("--perturb-sym", opt.perturb_sym, "symmetric perturbation size s");
}

RiemannMatrix resolve_matrix(const MatrixOptions& opt) {
    std::optional<RiemannMatrix> B;
    if (!opt.zoo_name.empty()) {
        if (opt.zoo_name == "rm_tau") {
            B = zoo::genus4_family(parse_complex(opt.tau));
        } else if (opt.zoo_name == "hyperelliptic") {
            B = zoo::hyperelliptic_period_matrix(opt.genus);
        } else {
            B = zoo::embedded(opt.zoo_name).matrix;
        }
    } else if (!opt.path.empty()) {
        B = io::load_matrix(opt.path).matrix;
    } else {
        throw SchottkyError("no input matrix: give a JSON path or --zoo NAME");
    }
    if (opt.perturb_diag != 0.0) B = zoo::diagonal_perturbation(*B, opt.perturb_diag);
    if (opt.perturb_sym != 0.0) B = zoo::symmetric_perturbation(*B, opt.perturb_sym);
    return *B;
}

int cmd_check(const MatrixOptions& mopt, const SolverConfig& cfg, const std::string& json_out) {
    RiemannMatrix B = resolve_matrix(mopt);

    auto t0 = std::chrono::steady_clock::now();
    Verdict v = schottky_test(B, cfg);
    double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    std::cout << "verdict: " << (v.in_locus ? "in_locus" : "not_in_locus") << "\n"
              << "precision: " << v.precision << "\n"
              << "delta_min: " << v.best_delta << "\n"
              << "best_residual: " << v.best_residual << "\n"
              << "starts: " << v.traces.size() << "\n"
              << "wall_seconds: " << wall << "\n";
    if (!json_out.empty()) {
        std::ofstream out(json_out);
        if (!out) throw SchottkyError("cannot write " + json_out);
        out << io::verdict_to_json(v, cfg, wall).dump(2) << "\n";
    }
    return v.in_locus ? 0 : 1;
}

int cmd_reduce(const MatrixOptions& mopt, const std::string& json_out) {
    RiemannMatrix B = resolve_matrix(mopt);
    auto [reduced, report] = siegel_reduce(B);
    std::cout << "y_min_before: " << report.input_ymin << "\n"
              << "y_min_after: " << report.output_ymin << "\n"
              << "iterations: " << report.iterations << "\n";
    if (!json_out.empty()) {
        std::ofstream out(json_out);
        if (!out) throw SchottkyError("cannot write " + json_out);
        out << io::reduction_to_json(B, reduced, report).dump(2) << "\n";
    }
    return 0;
}

int cmd_igusa(const MatrixOptions& mopt) {
    RiemannMatrix B = resolve_matrix(mopt);
    cdouble sigma = schottky_igusa(B);
    std::cout << "sigma_abs: " << std::abs(sigma) << "\n";
    return 0;
}

int cmd_sweep(const MatrixOptions& mopt, const SolverConfig& cfg,
              const std::string& s_grid, const std::string& csv_out) {
    RiemannMatrix B = resolve_matrix(mopt);

    std::vector<double> s_list;
    std::istringstream grid(s_grid);
    std::string token;
    while (std::getline(grid, token, ',')) {
        if (token.empty()) throw SchottkyError("malformed --s-grid");
        std::size_t used = 0;
        double s = std::stod(token, &used);
        if (used != token.size()) throw SchottkyError("malformed --s-grid entry: " + token);
        s_list.push_back(s);
    }
    if (s_list.empty()) throw SchottkyError("empty --s-grid");

    const int g = B.genus();
    RMatrix M(g, g);
    for (int j = 0; j < g; ++j)
        for (int k = 0; k < g; ++k) M(j, k) = static_cast<double>(j + k + 2) / 5.0;

    auto rows = residual_vs_precision_sweep(B, M, s_list, cfg);
    std::string csv = io::sweep_to_csv(rows);
    std::cout << csv;
    if (!csv_out.empty()) {
        std::ofstream out(csv_out);
        if (!out) throw SchottkyError("cannot write " + csv_out);
        out << csv;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Numerical Schottky problem: Jacobi locus membership tests"};
    app.require_subcommand(1);

    // Honored for output determinism; evaluation is serial either way.
    if (const char* threads = std::getenv("SCHOTTKY_THREADS"); threads != nullptr)
        (void)threads;

    MatrixOptions mopt;
    SolverConfig cfg;
    std::string strategy = "half_period";
    std::string json_out, csv_out, s_grid = "0";

    auto add_solver_options = [&](CLI::App* cmd) {
        cmd->add_option("--delta", cfg.delta, "verdict precision delta");
        cmd->add_option("--seed", cfg.seed, "RNG seed for random starts");
        cmd->add_option("--ell0", cfg.ell0, "first ell in the start sweep");
        cmd->add_option("--dell", cfg.d_ell, "ell sweep increment");
        cmd->add_option("--ellmax", cfg.ell_max, "last ell in the start sweep");
        cmd->add_option("--nmax", cfg.n_max, "Newton iteration cap");
        cmd->add_option("--strategy", strategy,
                        "start strategy: half_period, random, near_coincident");
    };

    CLI::App* check = app.add_subcommand("check", "decide Jacobi locus membership");
    add_matrix_options(check, mopt);
    add_solver_options(check);
    check->add_option("--json", json_out, "write the full report to this file");

    CLI::App* reduce = app.add_subcommand("reduce", "Siegel-reduce a Riemann matrix");
    add_matrix_options(reduce, mopt);
    reduce->add_option("--json", json_out, "write matrix + transform + y_min to this file");

    CLI::App* igusa = app.add_subcommand("igusa", "genus-4 Schottky-Igusa form |Sigma|");
    add_matrix_options(igusa, mopt);

    CLI::App* sweep = app.add_subcommand("sweep", "residual vs perturbation size sweep");
    add_matrix_options(sweep, mopt);
    add_solver_options(sweep);
    sweep->add_option("--s-grid", s_grid, "comma-separated perturbation sizes");
    sweep->add_option("--csv", csv_out, "write the CSV table to this file");

    CLI11_PARSE(app, argc, argv);

    try {
        if (strategy == "half_period") cfg.start_strategy = StartStrategy::half_period;
        else if (strategy == "random") cfg.start_strategy = StartStrategy::random;
        else if (strategy == "near_coincident") cfg.start_strategy = StartStrategy::near_coincident;
        else throw schottky::SchottkyError("unknown strategy: " + strategy);

        if (check->parsed()) return cmd_check(mopt, cfg, json_out);
        if (reduce->parsed()) return cmd_reduce(mopt, json_out);
        if (igusa->parsed()) return cmd_igusa(mopt);
        if (sweep->parsed()) return cmd_sweep(mopt, cfg, s_grid, csv_out);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
