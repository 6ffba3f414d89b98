#ifndef SCHOTTKY_IO_HPP
#define SCHOTTKY_IO_HPP

#include <optional>
#include <string>

#include <json.hpp>

#include "schottky/siegel.hpp"
#include "schottky/solver.hpp"
#include "schottky/zoo.hpp"

namespace schottky {
namespace io {

/// JSON layout: { "g": int, "re": g x g, "im": g x g,
///                "name"?: string, "stated_accuracy"?: double }
nlohmann::json matrix_to_json(const RiemannMatrix& B,
                              const std::optional<std::string>& name = std::nullopt,
                              std::optional<double> stated_accuracy = std::nullopt);

zoo::MatrixRecord matrix_from_json(const nlohmann::json& j);

zoo::MatrixRecord load_matrix(const std::string& path);
void save_matrix(const std::string& path, const RiemannMatrix& B,
                 const std::optional<std::string>& name = std::nullopt,
                 std::optional<double> stated_accuracy = std::nullopt);

nlohmann::json verdict_to_json(const Verdict& v, const SolverConfig& cfg,
                               double wall_seconds);

nlohmann::json reduction_to_json(const RiemannMatrix& input, const RiemannMatrix& reduced,
                                 const ReductionReport& report);

/// CSV with header "s,best_residual,delta_min,converged_fraction".
std::string sweep_to_csv(const std::vector<SweepRow>& rows);
std::vector<SweepRow> sweep_from_csv(const std::string& text);

}  // namespace io
}  // namespace schottky

#endif
