#ifndef SCHOTTKY_SOLVER_HPP
#define SCHOTTKY_SOLVER_HPP

#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "schottky/kummer_fay.hpp"
#include "schottky/siegel.hpp"

namespace schottky {

enum class StartStrategy { half_period, random, near_coincident };

struct SolverConfig {
    double delta = 1e-10;
    double ell0 = 0.10;
    double d_ell = 0.10;
    double ell_max = 0.5;
    int n_max = 100;
    StartStrategy start_strategy = StartStrategy::half_period;
    std::uint64_t seed = 0;
    double theta_delta = 1e-12;
    bool residual_stop = true;  // disabled for the precision-residual sweeps
};

enum class StopReason { step_small, residual_small, max_iter, failed_start };

struct StepRecord {
    int n;
    double residual;
    double step_norm;
    double delta;
};

struct IterationTrace {
    std::vector<StepRecord> steps;
    StopReason stop_reason = StopReason::max_iter;
    double best_residual = std::numeric_limits<double>::infinity();
    double final_delta = std::numeric_limits<double>::infinity();
};

struct NewtonResult {
    IterationTrace trace;
    CVector x;
    FixedComponents fixed;
    double delta = std::numeric_limits<double>::infinity();
};

struct Verdict {
    bool in_locus = false;
    double precision = 0.0;
    double best_delta = std::numeric_limits<double>::infinity();
    double best_residual = std::numeric_limits<double>::infinity();
    std::vector<IterationTrace> traces;
    std::optional<TrisecantTriple> witness;
};

TrisecantTriple initial_triple(const RiemannMatrix& B, double ell, StartStrategy strategy,
                               std::uint64_t seed);

NewtonResult newton_solve(const FayContext& ctx, const TrisecantTriple& triple0,
                          const SolverConfig& cfg);
NewtonResult newton_solve(const RiemannMatrix& B, const TrisecantTriple& triple0,
                          const SolverConfig& cfg);

/// Full decision procedure: Siegel reduction, then the ell sweep of Newton
/// runs with early exit on the first witness.
Verdict schottky_test(const RiemannMatrix& B_raw, const SolverConfig& cfg = {});

struct SweepRow {
    double s;
    double best_residual;
    double delta_min;
    double converged_fraction;
};

/// For each s, runs the decision sweep on B_exact + s (M + iM) with the
/// residual stop disabled, recording the smallest residual achieved.
std::vector<SweepRow> residual_vs_precision_sweep(const RiemannMatrix& B_exact,
                                                  const RMatrix& M,
                                                  const std::vector<double>& s_list,
                                                  const SolverConfig& cfg = {});

}  // namespace schottky

#endif
