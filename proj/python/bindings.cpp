#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "schottky/igusa.hpp"
#include "schottky/io.hpp"
#include "schottky/solver.hpp"
#include "schottky/zoo.hpp"

namespace py = pybind11;
using namespace schottky;

namespace {

RiemannMatrix matrix_from_array(const CMatrix& raw) { return validate_riemann_matrix(raw); }

SolverConfig config_from_kwargs(double delta, double ell0, double d_ell, double ell_max,
                                int n_max, const std::string& strategy, std::uint64_t seed,
                                double theta_delta, bool residual_stop) {
    SolverConfig cfg;
    cfg.delta = delta;
    cfg.ell0 = ell0;
    cfg.d_ell = d_ell;
    cfg.ell_max = ell_max;
    cfg.n_max = n_max;
    cfg.seed = seed;
    cfg.theta_delta = theta_delta;
    cfg.residual_stop = residual_stop;
    if (strategy == "half_period")
        cfg.start_strategy = StartStrategy::half_period;
    else if (strategy == "random")
        cfg.start_strategy = StartStrategy::random;
    else if (strategy == "near_coincident")
        cfg.start_strategy = StartStrategy::near_coincident;
    else
        throw py::value_error("unknown start strategy: " + strategy);
    return cfg;
}

py::dict verdict_to_dict(const Verdict& v) {
    py::dict d;
    d["in_locus"] = v.in_locus;
    d["precision"] = v.precision;
    d["delta_min"] = v.best_delta;
    d["best_residual"] = v.best_residual;
    d["n_starts"] = v.traces.size();
    if (v.witness) {
        py::dict w;
        w["X"] = v.witness->X;
        w["Y"] = v.witness->Y;
        w["Z"] = v.witness->Z;
        d["witness"] = w;
    } else {
        d["witness"] = py::none();
    }
    return d;
}

}  // namespace

PYBIND11_MODULE(_schottky, m) {
    m.doc() = "Numerical Schottky problem: Fay trisecant solver and Schottky-Igusa form";

    py::register_exception<SchottkyError>(m, "SchottkyError");

    m.def(
        "check",
        [](const CMatrix& B, double delta, double ell0, double d_ell, double ell_max, int n_max,
           const std::string& strategy, std::uint64_t seed, double theta_delta) {
            SolverConfig cfg = config_from_kwargs(delta, ell0, d_ell, ell_max, n_max, strategy,
                                                  seed, theta_delta, true);
            return verdict_to_dict(schottky_test(matrix_from_array(B), cfg));
        },
        py::arg("B"), py::arg("delta") = 1e-10, py::arg("ell0") = 0.1, py::arg("d_ell") = 0.1,
        py::arg("ell_max") = 0.5, py::arg("n_max") = 100, py::arg("strategy") = "half_period",
        py::arg("seed") = 0, py::arg("theta_delta") = 1e-12,
        "Decide Jacobi locus membership; returns a dict with the verdict and diagnostics.");

    m.def(
        "reduce",
        [](const CMatrix& B) {
            auto [R, report] = siegel_reduce(matrix_from_array(B));
            py::dict d;
            d["reduced"] = CMatrix(R.mat());
            d["y_min_before"] = report.input_ymin;
            d["y_min_after"] = report.output_ymin;
            d["iterations"] = report.iterations;
            return d;
        },
        py::arg("B"), "Approximate Siegel reduction; returns the reduced matrix and y_min data.");

    m.def(
        "igusa",
        [](const CMatrix& B) { return schottky_igusa(matrix_from_array(B)); },
        py::arg("B"), "Genus-4 Schottky-Igusa modular form Sigma (complex).");

    m.def(
        "sweep",
        [](const CMatrix& B, const RMatrix& M, const std::vector<double>& s_list, int n_max) {
            SolverConfig cfg;
            cfg.n_max = n_max;
            auto rows = residual_vs_precision_sweep(matrix_from_array(B), M, s_list, cfg);
            py::list out;
            for (const SweepRow& r : rows) {
                py::dict d;
                d["s"] = r.s;
                d["best_residual"] = r.best_residual;
                d["delta_min"] = r.delta_min;
                d["converged_fraction"] = r.converged_fraction;
                out.append(d);
            }
            return out;
        },
        py::arg("B"), py::arg("M"), py::arg("s_list"), py::arg("n_max") = 60,
        "Residual-vs-perturbation sweep over B + s (M + iM).");

    m.def(
        "theta",
        [](const CVector& z, const CMatrix& B, const RVector& p, const RVector& q, int n) {
            Characteristic chr{p, q};
            ThetaEval t = theta_wrapped(z, matrix_from_array(B), chr, n);
            return py::make_tuple(t.value, CVector(t.gradient));
        },
        py::arg("z"), py::arg("B"), py::arg("p"), py::arg("q"), py::arg("n") = 6,
        "Theta function with characteristic (value, gradient).");

    auto zoo = m.def_submodule("zoo", "reference Riemann matrices");
    zoo.def("hyperelliptic", [](int g) { return CMatrix(zoo::hyperelliptic_period_matrix(g).mat()); },
            py::arg("g"));
    zoo.def("rm_tau", [](cdouble tau) { return CMatrix(zoo::genus4_family(tau).mat()); },
            py::arg("tau"));
    zoo.def("embedded", [](const std::string& name) { return CMatrix(zoo::embedded(name).matrix.mat()); },
            py::arg("name"));
    zoo.def(
        "diagonal_perturbation",
        [](const CMatrix& B, double s) {
            return CMatrix(zoo::diagonal_perturbation(matrix_from_array(B), s).mat());
        },
        py::arg("B"), py::arg("s"));
    zoo.def(
        "symmetric_perturbation",
        [](const CMatrix& B, double s) {
            return CMatrix(zoo::symmetric_perturbation(matrix_from_array(B), s).mat());
        },
        py::arg("B"), py::arg("s"));
}
