#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "schottky/kummer_fay.hpp"
#include "schottky/solver.hpp"
#include "schottky/zoo.hpp"

using namespace schottky;

namespace {

const cdouble I{0.0, 1.0};

CVector random_z(int g, std::mt19937_64& rng, double scale = 0.3) {
    std::uniform_real_distribution<double> u(-scale, scale);
    CVector z(g);
    for (int i = 0; i < g; ++i) z(i) = cdouble(u(rng), u(rng));
    return z;
}

}  // namespace

TEST_CASE("kummer shapes and evenness") {
    std::mt19937_64 rng(41);
    RiemannMatrix B = zoo::genus4_family(cdouble(1.0, 1.0));
    FayContext ctx(B);
    CVector Z = random_z(4, rng);
    KummerPoint K = ctx.kummer(Z);
    CHECK(K.values.size() == 16);
    CHECK(K.jacobian.rows() == 16);
    CHECK(K.jacobian.cols() == 4);
    KummerPoint Km = ctx.kummer(-Z);
    CHECK((K.values - Km.values).norm() < 1e-10);
    CHECK((K.jacobian + Km.jacobian).norm() < 1e-9);
}

// Frozen from an independent multiprecision evaluation: the two second-order
// theta constants of the square torus.
TEST_CASE("genus-1 kummer reference values") {
    CMatrix tau(1, 1);
    tau(0, 0) = I;
    FayContext ctx(validate_riemann_matrix(tau));
    KummerPoint K = ctx.kummer(CVector::Zero(1));
    CHECK(std::abs(K.values(0) - cdouble(1.003734885487739091, 0.0)) < 1e-14);
    CHECK(std::abs(K.values(1) - cdouble(0.41576060259602703231, 0.0)) < 1e-14);
    CHECK(K.jacobian.cwiseAbs().maxCoeff() < 1e-13);  // even functions at 0
}

TEST_CASE("lambda properties") {
    std::mt19937_64 rng(42);
    RiemannMatrix B = zoo::hyperelliptic_period_matrix(3);
    FayContext ctx(B);
    CVector a = random_z(3, rng), b = random_z(3, rng);
    auto [lab, ga, gb] = ctx.lambda_pair(a, b);
    auto [lba, gba, gab] = ctx.lambda_pair(b, a);
    CHECK(std::abs(lab + lba) < 1e-12);  // odd in the second slot
    auto [laa, gaa, gaa2] = ctx.lambda_pair(a, a);
    CHECK(std::abs(laa) < 1e-12);

    // matches the product of two independent theta evaluations
    Characteristic odd = Characteristic::odd_default(3);
    cdouble direct = theta_wrapped(a + b, B, odd, ctx.n_base()).value *
                     theta_wrapped(a - b, B, odd, ctx.n_base()).value;
    CHECK(std::abs(lab - direct) < 1e-12);

    // gradients against central differences
    const double h = 1e-6;
    for (int j = 0; j < 3; ++j) {
        CVector ap = a, am = a;
        ap(j) += h;
        am(j) -= h;
        cdouble fd = (std::get<0>(ctx.lambda_pair(ap, b)) - std::get<0>(ctx.lambda_pair(am, b))) /
                     (2.0 * h);
        CHECK(std::abs(fd - ga(j)) < 1e-6 * std::max(1.0, std::abs(ga(j))));
    }
}

TEST_CASE("fay jacobian vs finite differences") {
    RiemannMatrix B = zoo::genus4_family(cdouble(1.0, 1.0));
    FayContext ctx(B);
    TrisecantTriple t = initial_triple(B, 0.3, StartStrategy::half_period, 0);
    CVector x;
    FixedComponents fixed;
    FayContext::disassemble(t, x, fixed);
    FayEvaluation ev = ctx.evaluate(x, fixed);
    const double h = 1e-6;
    for (int j = 0; j < x.size(); ++j) {
        CVector xp = x, xm = x;
        xp(j) += h;
        xm(j) -= h;
        FixedComponents fp = fixed, fm = fixed;
        CVector colfd = (ctx.evaluate(xp, fp).F - ctx.evaluate(xm, fm).F) / (2.0 * h);
        double rel = (colfd - ev.jacobian.col(j)).norm() / std::max(1.0, ev.jacobian.col(j).norm());
        CHECK(rel < 1e-5);
    }
}

TEST_CASE("degenerate triples are rejected") {
    RiemannMatrix B = zoo::genus4_family(cdouble(1.0, 1.0));
    FayContext ctx(B);
    TrisecantTriple t = initial_triple(B, 0.3, StartStrategy::half_period, 0);
    CHECK_FALSE(is_trivial(t.X, t.Y, t.Z, B));
    CHECK(is_trivial(t.X, t.X, t.Z, B));
    // sign flips and lattice shifts still count as coincident
    CVector Ym = -t.X + B.mat().col(2) + CVector::Ones(4);
    CHECK(is_trivial(t.X, Ym, t.Z, B));

    CVector x;
    FixedComponents fixed;
    TrisecantTriple bad = t;
    bad.Y = t.X;
    FayContext::disassemble(bad, x, fixed);
    CHECK_THROWS_AS(ctx.evaluate(x, fixed), TrivialConfigurationError);
}

TEST_CASE("linear dependence delta") {
    CVector e1 = CVector::Zero(16), e2 = CVector::Zero(16), e3 = CVector::Zero(16);
    e1(0) = 1.0;
    e2(1) = 1.0;
    e3(2) = 1.0;
    CHECK(linear_dependence_delta(e1, e2, e3) == doctest::Approx(1.0));
    CHECK(linear_dependence_delta(e1, e2, e1 + e2) < 1e-14);
}

// The printed Abel-map columns give a triple that nearly solves the identity;
// both residual and delta sit at the floor set by the 4-digit inputs.
TEST_CASE("bring abel map triple nearly solves the identity") {
    zoo::MatrixRecord bring = zoo::embedded("bring");
    auto cols = zoo::bring_abelmap_columns();
    REQUIRE(cols.size() == 4);
    TrisecantTriple t;
    t.X = 0.5 * (cols[2] + cols[3] - cols[0] - cols[1]);
    t.Y = 0.5 * (cols[0] + cols[3] - cols[1] - cols[2]);
    t.Z = 0.5 * (cols[0] + cols[2] - cols[1] - cols[3]);
    FayContext ctx(bring.matrix);
    CVector x;
    FixedComponents fixed;
    FayContext::disassemble(t, x, fixed);
    FayEvaluation ev = ctx.evaluate(x, fixed);
    CHECK(ev.residual < 2e-2);
    CHECK(ev.delta < 5e-3);

    // one Newton correction absorbs the Abel-map printing error; what is
    // left is the floor set by the 4-digit matrix itself
    SolverConfig cfg;
    cfg.residual_stop = false;
    NewtonResult r = newton_solve(ctx, t, cfg);
    CHECK(r.trace.best_residual < 5e-3);
    CHECK(r.trace.steps.size() >= 2);
    CHECK(r.trace.steps[1].residual < 5e-3);
}
