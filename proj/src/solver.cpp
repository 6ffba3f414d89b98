#include "schottky/solver.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "schottky/zoo.hpp"

namespace schottky {

namespace {

CVector half_period_vector(const RiemannMatrix& B, int k, double ell) {
    const int g = B.genus();
    CVector e = CVector::Zero(g);
    e(k) = 1.0;
    return (ell / 2.0) * (e + B.mat() * e);
}

CVector random_point(const RiemannMatrix& B, std::mt19937_64& rng) {
    const int g = B.genus();
    std::uniform_real_distribution<double> u(-0.5, 0.5);
    RVector p(g), q(g);
    for (int j = 0; j < g; ++j) p(j) = u(rng);
    for (int j = 0; j < g; ++j) q(j) = u(rng);
    return p.cast<cdouble>() + B.mat() * q.cast<cdouble>();
}

}  // namespace

TrisecantTriple initial_triple(const RiemannMatrix& B, double ell, StartStrategy strategy,
                               std::uint64_t seed) {
    const int g = B.genus();
    if (g < 3) throw WrongGenusError("initial_triple requires genus >= 3");

    switch (strategy) {
        case StartStrategy::half_period: {
            if (!(ell > 0.0) || !(ell < 1.0))
                throw DegenerateEllError("ell must lie strictly between 0 and 1");
            TrisecantTriple t;
            t.X = half_period_vector(B, g - 3, ell);
            t.Y = half_period_vector(B, g - 2, ell);
            t.Z = half_period_vector(B, g - 1, ell);
            return t;
        }
        case StartStrategy::random: {
            std::mt19937_64 rng(seed);
            for (int attempt = 0; attempt < 64; ++attempt) {
                TrisecantTriple t;
                t.X = random_point(B, rng);
                t.Y = random_point(B, rng);
                t.Z = random_point(B, rng);
                if (!is_trivial(t.X, t.Y, t.Z, B)) return t;
            }
            throw TrivialConfigurationError("could not draw a non-trivial random triple");
        }
        case StartStrategy::near_coincident: {
            std::mt19937_64 rng(seed);
            for (int attempt = 0; attempt < 64; ++attempt) {
                TrisecantTriple t;
                t.X = random_point(B, rng);
                t.Z = random_point(B, rng);
                // Y starts a small characteristic offset away from X; large
                // enough to clear the triviality tolerance.
                std::uniform_real_distribution<double> u(-0.5, 0.5);
                RVector dp(g), dq(g);
                for (int j = 0; j < g; ++j) dp(j) = 1e-2 * u(rng);
                for (int j = 0; j < g; ++j) dq(j) = 1e-2 * u(rng);
                t.Y = t.X + dp.cast<cdouble>() + B.mat() * dq.cast<cdouble>();
                if (!is_trivial(t.X, t.Y, t.Z, B)) return t;
            }
            throw TrivialConfigurationError("could not draw a near-coincident triple");
        }
    }
    throw SchottkyError("unknown start strategy");
}

NewtonResult newton_solve(const FayContext& ctx, const TrisecantTriple& triple0,
                          const SolverConfig& cfg) {
    NewtonResult result;
    CVector x;
    FixedComponents fixed;
    FayContext::disassemble(triple0, x, fixed);

    auto record = [&](int n, const FayEvaluation& ev, double step_norm) {
        result.trace.steps.push_back({n, ev.residual, step_norm, ev.delta});
        result.trace.best_residual = std::min(result.trace.best_residual, ev.residual);
    };

    try {
        FayEvaluation ev = ctx.evaluate(x, fixed);
        record(0, ev, std::numeric_limits<double>::quiet_NaN());
        if (!std::isfinite(ev.residual) || !std::isfinite(ev.delta)) {
            result.trace.stop_reason = StopReason::failed_start;
            return result;
        }
        result.trace.stop_reason = StopReason::max_iter;

        for (int n = 1; n <= cfg.n_max; ++n) {
            CVector step = ev.jacobian.colPivHouseholderQr().solve(ev.F);

            // Damped update: halve the step while the residual explodes.
            bool accepted = false;
            CVector x_new;
            FixedComponents fixed_new;
            FayEvaluation ev_new;
            double applied_norm = 0.0;
            for (int k = 0; k <= 10; ++k) {
                x_new = x - step;
                fixed_new = fixed;
                try {
                    ev_new = ctx.evaluate(x_new, fixed_new);
                } catch (const TrivialConfigurationError&) {
                    step *= 0.5;
                    continue;
                } catch (const DenominatorUnderflowError&) {
                    step *= 0.5;
                    continue;
                }
                if (std::isfinite(ev_new.residual) &&
                    (ev_new.residual <= 1e3 * ev.residual || ev.residual == 0.0)) {
                    applied_norm = step.norm();
                    accepted = true;
                    break;
                }
                step *= 0.5;
            }
            if (!accepted) {
                result.trace.stop_reason = StopReason::failed_start;
                break;
            }

            x = x_new;
            fixed = fixed_new;
            ev = ev_new;
            record(n, ev, applied_norm);

            if (applied_norm < cfg.delta) {
                result.trace.stop_reason = StopReason::step_small;
                break;
            }
            if (cfg.residual_stop && ev.residual < cfg.delta) {
                result.trace.stop_reason = StopReason::residual_small;
                break;
            }
        }

        result.x = x;
        result.fixed = fixed;
        if (result.trace.stop_reason != StopReason::failed_start && std::isfinite(ev.delta)) {
            result.delta = ev.delta;
            result.trace.final_delta = ev.delta;
        }
    } catch (const TrivialConfigurationError&) {
        result.trace.stop_reason = StopReason::failed_start;
    } catch (const DenominatorUnderflowError&) {
        result.trace.stop_reason = StopReason::failed_start;
    }
    return result;
}

NewtonResult newton_solve(const RiemannMatrix& B, const TrisecantTriple& triple0,
                          const SolverConfig& cfg) {
    FayContext ctx(B, cfg.theta_delta);
    return newton_solve(ctx, triple0, cfg);
}

Verdict schottky_test(const RiemannMatrix& B_raw, const SolverConfig& cfg) {
    Verdict verdict;
    verdict.precision = cfg.delta;

    auto [B, report] = siegel_reduce(B_raw);
    (void)report;
    FayContext ctx(B, cfg.theta_delta);

    std::uint64_t start_index = 0;
    for (double ell = cfg.ell0; ell <= cfg.ell_max + 1e-12; ell += cfg.d_ell) {
        TrisecantTriple t0;
        try {
            t0 = initial_triple(B, ell, cfg.start_strategy, cfg.seed + start_index);
        } catch (const TrivialConfigurationError&) {
            ++start_index;
            continue;
        }
        ++start_index;

        NewtonResult r = newton_solve(ctx, t0, cfg);
        verdict.traces.push_back(r.trace);
        verdict.best_delta = std::min(verdict.best_delta, r.delta);
        verdict.best_residual = std::min(verdict.best_residual, r.trace.best_residual);

        if (r.delta < cfg.delta) {
            verdict.in_locus = true;
            verdict.witness = ctx.assemble(r.x, r.fixed);
            break;
        }
    }
    return verdict;
}

std::vector<SweepRow> residual_vs_precision_sweep(const RiemannMatrix& B_exact,
                                                  const RMatrix& M,
                                                  const std::vector<double>& s_list,
                                                  const SolverConfig& cfg) {
    SolverConfig sweep_cfg = cfg;
    sweep_cfg.residual_stop = false;

    std::vector<SweepRow> rows;
    rows.reserve(s_list.size());
    const CMatrix P = M.cast<cdouble>() + cdouble(0.0, 1.0) * M.cast<cdouble>();

    for (double s : s_list) {
        RiemannMatrix Bs(B_exact.mat() + s * P);
        Verdict v = schottky_test(Bs, sweep_cfg);

        int converged = 0;
        for (const auto& tr : v.traces)
            if (tr.final_delta < sweep_cfg.delta) ++converged;
        double frac = v.traces.empty()
                          ? 0.0
                          : static_cast<double>(converged) / static_cast<double>(v.traces.size());
        rows.push_back({s, v.best_residual, v.best_delta, frac});
    }
    return rows;
}

}  // namespace schottky
