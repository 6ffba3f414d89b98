#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "schottky/solver.hpp"
#include "schottky/zoo.hpp"

using namespace schottky;

TEST_CASE("initial triple construction") {
    RiemannMatrix B = zoo::genus4_family(cdouble(1.0, 1.0));
    TrisecantTriple t = initial_triple(B, 0.2, StartStrategy::half_period, 0);
    CHECK(t.X.size() == 4);
    CHECK_FALSE(is_trivial(t.X, t.Y, t.Z, B));
    CHECK_THROWS_AS(initial_triple(B, 0.0, StartStrategy::half_period, 0), DegenerateEllError);
    CHECK_THROWS_AS(initial_triple(B, 1.0, StartStrategy::half_period, 0), DegenerateEllError);
    CHECK_THROWS_AS(initial_triple(zoo::hyperelliptic_period_matrix(2), 0.2,
                                   StartStrategy::half_period, 0),
                    WrongGenusError);

    // random starts are seeded deterministically
    TrisecantTriple r1 = initial_triple(B, 0.2, StartStrategy::random, 7);
    TrisecantTriple r2 = initial_triple(B, 0.2, StartStrategy::random, 7);
    TrisecantTriple r3 = initial_triple(B, 0.2, StartStrategy::random, 8);
    CHECK((r1.X - r2.X).norm() == 0.0);
    CHECK((r1.X - r3.X).norm() > 1e-3);
    CHECK_FALSE(is_trivial(r1.X, r1.Y, r1.Z, B));

    TrisecantTriple n1 = initial_triple(B, 0.2, StartStrategy::near_coincident, 5);
    CHECK((n1.X - n1.Y).norm() < 0.1);
    CHECK_FALSE(is_trivial(n1.X, n1.Y, n1.Z, B));
}

TEST_CASE("newton converges on an exact genus-4 jacobian") {
    RiemannMatrix B = zoo::genus4_family(cdouble(1.0, 1.0));
    SolverConfig cfg;
    NewtonResult r = newton_solve(B, initial_triple(B, 0.1, StartStrategy::half_period, 0), cfg);
    CHECK(r.delta < 1e-10);
    CHECK(r.trace.stop_reason != StopReason::failed_start);
    CHECK(r.trace.steps.size() >= 2);
    CHECK(r.trace.best_residual < 1e-10);
    // trace records the starting point at n = 0
    CHECK(r.trace.steps.front().n == 0);
}

TEST_CASE("verdicts separate the locus from perturbations") {
    RiemannMatrix B = zoo::genus4_family(cdouble(1.0, 1.0));
    Verdict in = schottky_test(B);
    CHECK(in.in_locus);
    CHECK(in.best_delta < 1e-10);
    REQUIRE(in.witness.has_value());
    // the witness really sits on the identity
    FayContext ctx(siegel_reduce(B).first);
    CVector x;
    FixedComponents fixed;
    FayContext::disassemble(*in.witness, x, fixed);
    CHECK(ctx.evaluate(x, fixed).residual < 1e-8);

    Verdict out = schottky_test(zoo::diagonal_perturbation(B, 0.1));
    CHECK_FALSE(out.in_locus);
    CHECK(out.best_delta > 1e-5);
    CHECK_FALSE(out.witness.has_value());
    CHECK(out.traces.size() == 5);  // full ell sweep, no early exit
}

TEST_CASE("residual stop can be disabled") {
    RiemannMatrix B = zoo::genus4_family(cdouble(1.0, 1.0));
    SolverConfig cfg;
    cfg.residual_stop = false;
    NewtonResult r = newton_solve(B, initial_triple(B, 0.1, StartStrategy::half_period, 0), cfg);
    CHECK(r.trace.stop_reason == StopReason::step_small);
}

TEST_CASE("precision-residual sweep rows") {
    RiemannMatrix B = zoo::genus4_family(cdouble(1.0, 1.0));
    RMatrix M(4, 4);
    for (int j = 0; j < 4; ++j)
        for (int k = 0; k < 4; ++k) M(j, k) = static_cast<double>(j + k + 2) / 5.0;
    SolverConfig cfg;
    cfg.n_max = 40;
    auto rows = residual_vs_precision_sweep(B, M, {1e-14, 1e-3}, cfg);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].s == 1e-14);
    CHECK(rows[0].best_residual < 1e-9);
    CHECK(rows[1].best_residual > 1e-5);
    CHECK(rows[0].converged_fraction > 0.0);
    CHECK(rows[1].converged_fraction == 0.0);
}
