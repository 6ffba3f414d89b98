#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "schottky/siegel.hpp"
#include "schottky/zoo.hpp"

using namespace schottky;

// Frozen entries from an independent multiprecision quadrature of the same
// period integrals.
TEST_CASE("hyperelliptic period matrices match the reference computation") {
    auto B2 = zoo::hyperelliptic_period_matrix(2);
    CHECK(std::abs(B2.mat()(0, 0) - cdouble(0.0, 1.175570504584946)) < 1e-13);
    CHECK(std::abs(B2.mat()(1, 1) - cdouble(0.3090169943749476, 0.9510565162951538)) < 1e-13);

    auto B4 = zoo::hyperelliptic_period_matrix(4);
    CHECK(std::abs(B4.mat()(0, 0) - cdouble(0.004423139557999433, 1.595945975581553)) < 1e-12);
    CHECK(std::abs(B4.mat()(3, 3) - cdouble(-0.03328330656697747, 0.4925352242330193)) < 1e-12);
    CHECK(std::abs(B4.mat()(0, 1) - cdouble(0.08938500114805917, -0.6971993462131343)) < 1e-12);

    auto B5 = zoo::hyperelliptic_period_matrix(5);
    CHECK(std::abs(B5.mat()(0, 0) - cdouble(0.02267406594378503, 1.75135294219332)) < 1e-12);
}

TEST_CASE("genus-1 member is the hexagonal point") {
    auto B1 = zoo::hyperelliptic_period_matrix(1);
    auto [R, rep] = siegel_reduce(B1);
    cdouble tau = R.mat()(0, 0);
    CHECK(std::abs(std::abs(tau.real()) - 0.5) < 1e-12);
    CHECK(std::abs(tau.imag() - std::sqrt(3.0) / 2.0) < 1e-12);
}

TEST_CASE("matrices validate and are deterministic") {
    for (int g = 1; g <= 7; ++g) {
        auto A = zoo::hyperelliptic_period_matrix(g);
        auto B = zoo::hyperelliptic_period_matrix(g);
        CHECK(A.genus() == g);
        CHECK((A.mat() - B.mat()).cwiseAbs().maxCoeff() == 0.0);
    }
    auto F = zoo::genus4_family(cdouble(1.0, 1.0));
    CHECK(F.genus() == 4);
}

TEST_CASE("perturbations") {
    RiemannMatrix B = zoo::genus4_family(cdouble(1.0, 1.0));
    CHECK((zoo::diagonal_perturbation(B, 0.0).mat() - B.mat()).cwiseAbs().maxCoeff() == 0.0);
    CHECK((zoo::symmetric_perturbation(B, 0.0).mat() - B.mat()).cwiseAbs().maxCoeff() == 0.0);

    RiemannMatrix D = zoo::diagonal_perturbation(B, 0.01);
    CMatrix diff = D.mat() - B.mat();
    CHECK(std::abs(diff(0, 0) - cdouble(0.02, 0.0)) < 1e-15);
    CHECK(std::abs(diff(3, 3) - cdouble(0.07, 0.0)) < 1e-15);
    CHECK(std::abs(diff(0, 1)) == 0.0);

    RiemannMatrix S = zoo::symmetric_perturbation(B, 0.1);
    CMatrix sdiff = S.mat() - B.mat();
    CHECK(std::abs(sdiff(0, 1) - 0.1 * cdouble(0.6, 0.6)) < 1e-15);  // M_12 = 3/5

    // strongly negative s destroys positive definiteness
    CHECK_THROWS_AS(zoo::symmetric_perturbation(B, -10.0), NotPositiveDefiniteError);
}

TEST_CASE("embedded printed matrices") {
    for (const char* name : {"bring", "fermat5", "fricke_macbeath"}) {
        zoo::MatrixRecord r = zoo::embedded(name);
        CHECK(r.name == name);
        CHECK(r.stated_accuracy == 5e-5);
        CHECK(r.matrix.genus() == r.genus);
    }
    CHECK(zoo::embedded("bring").genus == 4);
    CHECK(zoo::embedded("fermat5").genus == 6);
    CHECK(zoo::embedded("fricke_macbeath").genus == 7);
    CHECK_THROWS_AS(zoo::embedded("nonexistent"), UnknownNameError);

    auto cols = zoo::bring_abelmap_columns();
    CHECK(cols.size() == 4);
    for (const CVector& c : cols) CHECK(c.size() == 4);
    CHECK(std::abs(cols[0](0) - cdouble(-0.7052, 0.3692)) < 1e-12);
    CHECK(std::abs(cols[3](3) - cdouble(0.0487, 0.0493)) < 1e-12);
}

TEST_CASE("hyperelliptic genus bounds") {
    CHECK_THROWS_AS(zoo::hyperelliptic_period_matrix(0), WrongGenusError);
    CHECK_THROWS_AS(zoo::hyperelliptic_period_matrix(-3), WrongGenusError);
}
