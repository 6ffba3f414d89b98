#include "schottky/io.hpp"

#include <fstream>
#include <sstream>

namespace schottky {
namespace io {

using nlohmann::json;

namespace {

json real_matrix_to_json(const RMatrix& M) {
    json rows = json::array();
    for (int i = 0; i < M.rows(); ++i) {
        json row = json::array();
        for (int j = 0; j < M.cols(); ++j) row.push_back(M(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

RMatrix real_matrix_from_json(const json& j, int g, const char* field) {
    if (!j.is_array() || static_cast<int>(j.size()) != g)
        throw InvalidMatrixError(std::string(field) + " must be a " + std::to_string(g) +
                                 "-row array");
    RMatrix M(g, g);
    for (int i = 0; i < g; ++i) {
        const json& row = j[i];
        if (!row.is_array() || static_cast<int>(row.size()) != g)
            throw InvalidMatrixError(std::string(field) + " row " + std::to_string(i) +
                                     " must have " + std::to_string(g) + " entries");
        for (int k = 0; k < g; ++k) {
            if (!row[k].is_number())
                throw InvalidMatrixError(std::string(field) + " entries must be numbers");
            M(i, k) = row[k].get<double>();
        }
    }
    return M;
}

const char* stop_reason_name(StopReason r) {
    switch (r) {
        case StopReason::step_small: return "step_small";
        case StopReason::residual_small: return "residual_small";
        case StopReason::max_iter: return "max_iter";
        case StopReason::failed_start: return "failed_start";
    }
    return "unknown";
}

const char* strategy_name(StartStrategy s) {
    switch (s) {
        case StartStrategy::half_period: return "half_period";
        case StartStrategy::random: return "random";
        case StartStrategy::near_coincident: return "near_coincident";
    }
    return "unknown";
}

json complex_vector_to_json(const CVector& v) {
    json re = json::array(), im = json::array();
    for (int i = 0; i < v.size(); ++i) {
        re.push_back(v(i).real());
        im.push_back(v(i).imag());
    }
    return json{{"re", re}, {"im", im}};
}

}  // namespace

json matrix_to_json(const RiemannMatrix& B, const std::optional<std::string>& name,
                    std::optional<double> stated_accuracy) {
    json j;
    j["g"] = B.genus();
    j["re"] = real_matrix_to_json(B.mat().real());
    j["im"] = real_matrix_to_json(B.mat().imag());
    if (name) j["name"] = *name;
    if (stated_accuracy) j["stated_accuracy"] = *stated_accuracy;
    return j;
}

zoo::MatrixRecord matrix_from_json(const json& j) {
    if (!j.is_object() || !j.contains("g") || !j.contains("re") || !j.contains("im"))
        throw InvalidMatrixError("matrix JSON must contain g, re, im");
    if (!j["g"].is_number_integer())
        throw InvalidMatrixError("g must be an integer");
    const int g = j["g"].get<int>();
    if (g < 1) throw InvalidMatrixError("g must be positive");

    RMatrix re = real_matrix_from_json(j["re"], g, "re");
    RMatrix im = real_matrix_from_json(j["im"], g, "im");
    CMatrix M = re.cast<cdouble>() + cdouble(0.0, 1.0) * im.cast<cdouble>();

    zoo::MatrixRecord rec{j.value("name", std::string("unnamed")), g,
                          zoo::MatrixSource::exact_formula,
                          j.value("stated_accuracy", 1e-15), RiemannMatrix(M)};
    return rec;
}

zoo::MatrixRecord load_matrix(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidMatrixError("cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw InvalidMatrixError("cannot parse " + path + ": " + e.what());
    }
    return matrix_from_json(j);
}

void save_matrix(const std::string& path, const RiemannMatrix& B,
                 const std::optional<std::string>& name,
                 std::optional<double> stated_accuracy) {
    std::ofstream out(path);
    if (!out) throw InvalidMatrixError("cannot write " + path);
    out << matrix_to_json(B, name, stated_accuracy).dump(2) << "\n";
}

json verdict_to_json(const Verdict& v, const SolverConfig& cfg, double wall_seconds) {
    json traces = json::array();
    for (const auto& t : v.traces) {
        json steps = json::array();
        for (const auto& s : t.steps)
            steps.push_back(json{{"n", s.n},
                                 {"residual", s.residual},
                                 {"step_norm", s.step_norm},
                                 {"delta", s.delta}});
        traces.push_back(json{{"stop_reason", stop_reason_name(t.stop_reason)},
                              {"best_residual", t.best_residual},
                              {"final_delta", t.final_delta},
                              {"steps", std::move(steps)}});
    }

    json j{{"verdict", v.in_locus ? "in_locus" : "not_in_locus"},
           {"precision", v.precision},
           {"delta_min", v.best_delta},
           {"best_residual", v.best_residual},
           {"wall_seconds", wall_seconds},
           {"traces", std::move(traces)},
           {"config",
            {{"delta", cfg.delta},
             {"ell0", cfg.ell0},
             {"d_ell", cfg.d_ell},
             {"ell_max", cfg.ell_max},
             {"n_max", cfg.n_max},
             {"strategy", strategy_name(cfg.start_strategy)},
             {"seed", cfg.seed},
             {"theta_delta", cfg.theta_delta}}}};
    if (v.witness) {
        j["witness"] = json{{"X", complex_vector_to_json(v.witness->X)},
                            {"Y", complex_vector_to_json(v.witness->Y)},
                            {"Z", complex_vector_to_json(v.witness->Z)}};
    }
    return j;
}

json reduction_to_json(const RiemannMatrix& input, const RiemannMatrix& reduced,
                       const ReductionReport& report) {
    auto int_matrix = [](const IMatrix& M) {
        json rows = json::array();
        for (int i = 0; i < M.rows(); ++i) {
            json row = json::array();
            for (int j = 0; j < M.cols(); ++j) row.push_back(M(i, j));
            rows.push_back(std::move(row));
        }
        return rows;
    };
    return json{{"input", matrix_to_json(input)},
                {"reduced", matrix_to_json(reduced)},
                {"y_min_before", report.input_ymin},
                {"y_min_after", report.output_ymin},
                {"iterations", report.iterations},
                {"transform",
                 {{"A", int_matrix(report.transform.A)},
                  {"B", int_matrix(report.transform.B)},
                  {"C", int_matrix(report.transform.C)},
                  {"D", int_matrix(report.transform.D)}}}};
}

std::string sweep_to_csv(const std::vector<SweepRow>& rows) {
    std::ostringstream out;
    out.precision(17);
    out << "s,best_residual,delta_min,converged_fraction\n";
    for (const auto& r : rows)
        out << r.s << "," << r.best_residual << "," << r.delta_min << ","
            << r.converged_fraction << "\n";
    return out.str();
}

std::vector<SweepRow> sweep_from_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != "s,best_residual,delta_min,converged_fraction")
        throw SchottkyError("unexpected CSV header");
    std::vector<SweepRow> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        SweepRow r{};
        char c1, c2, c3;
        if (!(ls >> r.s >> c1 >> r.best_residual >> c2 >> r.delta_min >> c3 >>
              r.converged_fraction) ||
            c1 != ',' || c2 != ',' || c3 != ',')
            throw SchottkyError("malformed CSV row: " + line);
        rows.push_back(r);
    }
    return rows;
}

}  // namespace io
}  // namespace schottky
