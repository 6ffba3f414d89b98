#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "schottky/siegel.hpp"
#include "schottky/zoo.hpp"

using namespace schottky;

namespace {

const cdouble I{0.0, 1.0};

RiemannMatrix g1(cdouble tau) {
    CMatrix m(1, 1);
    m(0, 0) = tau;
    return validate_riemann_matrix(m);
}

SymplecticTransform random_word(int g, std::mt19937_64& rng, int length) {
    std::uniform_int_distribution<int> kind(0, 2);
    std::uniform_int_distribution<int> entry(-2, 2);
    SymplecticTransform R = SymplecticTransform::identity(g);
    for (int k = 0; k < length; ++k) {
        switch (kind(rng)) {
            case 0: {
                IMatrix S = IMatrix::Zero(g, g);
                for (int i = 0; i < g; ++i)
                    for (int j = 0; j <= i; ++j) S(i, j) = S(j, i) = entry(rng);
                R = SymplecticTransform::real_shift(S).compose(R);
                break;
            }
            case 1: {
                // shear: unimodular with unit diagonal
                IMatrix U = IMatrix::Identity(g, g);
                if (g > 1) U(0, g - 1) = entry(rng);
                R = SymplecticTransform::basis_change(U).compose(R);
                break;
            }
            default:
                R = SymplecticTransform::leading_inversion(g).compose(R);
        }
    }
    return R;
}

}  // namespace

TEST_CASE("genus-1 modular action") {
    // inversion tau -> -1/tau on purely imaginary points
    auto inv = SymplecticTransform::leading_inversion(1);
    CHECK(inv.is_symplectic());
    RiemannMatrix a = apply_modular(g1(2.0 * I), inv);
    CHECK(std::abs(a.mat()(0, 0) - 0.5 * I) < 1e-14);
    RiemannMatrix b = apply_modular(g1(0.1 * I), inv);
    CHECK(std::abs(b.mat()(0, 0) - 10.0 * I) < 1e-13);
}

TEST_CASE("transforms are exactly symplectic and compose") {
    std::mt19937_64 rng(31);
    for (int g : {1, 2, 4}) {
        SymplecticTransform R1 = random_word(g, rng, 6);
        SymplecticTransform R2 = random_word(g, rng, 6);
        CHECK(R1.is_symplectic());
        CHECK(R2.is_symplectic());
        CHECK(R1.compose(R2).is_symplectic());

        RiemannMatrix B = zoo::genus4_family(cdouble(1.0, 1.0));
        if (g == 4) {
            RiemannMatrix lhs = apply_modular(apply_modular(B, R2), R1);
            RiemannMatrix rhs = apply_modular(B, R1.compose(R2));
            CHECK((lhs.mat() - rhs.mat()).cwiseAbs().maxCoeff() < 1e-10);
        }
    }
}

TEST_CASE("reduction brings every zoo matrix above the Siegel bound") {
    const double bound = std::sqrt(3.0) / 2.0 - 1e-9;
    std::vector<RiemannMatrix> zoo_matrices;
    for (int g = 2; g <= 7; ++g) zoo_matrices.push_back(zoo::hyperelliptic_period_matrix(g));
    zoo_matrices.push_back(zoo::genus4_family(cdouble(1.0, 1.0)));
    for (const char* name : {"bring", "fermat5", "fricke_macbeath"})
        zoo_matrices.push_back(zoo::embedded(name).matrix);

    for (const RiemannMatrix& B0 : zoo_matrices) {
        auto [B, report] = siegel_reduce(B0);
        CHECK(lattice_ymin(B) >= bound);
        CHECK(report.transform.is_symplectic());
        CHECK(report.output_ymin >= bound);
        // the recorded transform reproduces the reduced matrix
        RiemannMatrix again = apply_modular(B0, report.transform);
        CHECK((again.mat() - B.mat()).cwiseAbs().maxCoeff() < 1e-9);
        // |Re| <= 1/2 entrywise
        CHECK(B.real().cwiseAbs().maxCoeff() <= 0.5 + 1e-12);
        // idempotence
        auto [B2, report2] = siegel_reduce(B);
        CHECK((B2.mat() - B.mat()).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("reduction of a scrambled matrix recovers a reduced point") {
    std::mt19937_64 rng(32);
    RiemannMatrix B0 = zoo::hyperelliptic_period_matrix(4);
    RiemannMatrix scrambled = apply_modular(B0, random_word(4, rng, 8));
    auto [B, report] = siegel_reduce(scrambled);
    CHECK(lattice_ymin(B) >= std::sqrt(3.0) / 2.0 - 1e-9);
}

TEST_CASE("modular transformation law of theta") {
    std::mt19937_64 rng(33);
    std::uniform_real_distribution<double> u(-0.3, 0.3);
    RiemannMatrix B = zoo::genus4_family(cdouble(1.0, 1.0));
    std::vector<CVector> samples;
    for (int k = 0; k < 6; ++k) {
        CVector z(4);
        for (int i = 0; i < 4; ++i) z(i) = cdouble(u(rng), u(rng));
        samples.push_back(z);
    }
    for (int rep = 0; rep < 3; ++rep) {
        SymplecticTransform R = random_word(4, rng, 4);
        CHECK(modular_theta_consistency(B, R, samples) < 1e-8);
    }
}
