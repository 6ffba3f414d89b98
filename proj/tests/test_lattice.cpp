#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "schottky/lattice.hpp"
#include "schottky/riemann_matrix.hpp"

using namespace schottky;

namespace {

RMatrix random_basis(int g, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    RMatrix T(g, g);
    do {
        for (int i = 0; i < g; ++i)
            for (int j = 0; j < g; ++j) T(i, j) = u(rng);
    } while (std::abs(T.determinant()) < 0.1);
    return T;
}

// Exhaustive shortest vector over a coefficient box, for cross-checking the
// enumeration. The box is wide enough for the bases drawn above.
double brute_force_shortest(const RMatrix& T, int radius) {
    const int g = static_cast<int>(T.rows());
    double best = std::numeric_limits<double>::infinity();
    std::vector<int> n(static_cast<size_t>(g), -radius);
    while (true) {
        RVector v = RVector::Zero(g);
        bool zero = true;
        for (int i = 0; i < g; ++i) {
            if (n[static_cast<size_t>(i)] != 0) zero = false;
            v += static_cast<double>(n[static_cast<size_t>(i)]) * T.col(i);
        }
        if (!zero) best = std::min(best, v.norm());
        int k = 0;
        while (k < g && ++n[static_cast<size_t>(k)] > radius) n[static_cast<size_t>(k++)] = -radius;
        if (k == g) break;
    }
    return best;
}

}  // namespace

TEST_CASE("shortest vector matches exhaustive search") {
    std::mt19937_64 rng(21);
    for (int g : {2, 3, 4}) {
        for (int rep = 0; rep < 20; ++rep) {
            RMatrix T = random_basis(g, rng);
            LatticeResult r = shortest_lattice_vector(T);
            double ref = brute_force_shortest(T, 6);
            CHECK(r.length == doctest::Approx(ref).epsilon(1e-12));
            CHECK((T * r.vector.cast<double>()).norm() == doctest::Approx(r.length));
            // coefficient vector is primitive and sign-normalized
            int first = 0;
            while (first < g && r.vector(first) == 0) ++first;
            REQUIRE(first < g);
            CHECK(r.vector(first) > 0);
        }
    }
}

TEST_CASE("lll transform is unimodular and reduces the basis") {
    std::mt19937_64 rng(22);
    for (int rep = 0; rep < 10; ++rep) {
        RMatrix T = random_basis(4, rng);
        IMatrix U = lll_reduce(T);
        const double det = U.cast<double>().determinant();
        CHECK(std::abs(std::abs(det) - 1.0) < 1e-9);
        RMatrix R = T * U.cast<double>();
        // first reduced vector is never longer than twice the true minimum
        // (LLL guarantee is 2^{(g-1)/2}; this is looser than that bound)
        double ref = brute_force_shortest(T, 6);
        CHECK(R.col(0).norm() <= 4.0 * ref + 1e-12);
    }
}

TEST_CASE("unimodular completion") {
    std::mt19937_64 rng(23);
    std::uniform_int_distribution<int> u(-5, 5);
    for (int rep = 0; rep < 30; ++rep) {
        const int g = 2 + rep % 4;
        IVector v(g);
        bool zero = true;
        for (int i = 0; i < g; ++i) {
            v(i) = u(rng);
            if (v(i) != 0) zero = false;
        }
        if (zero) v(0) = 1;
        // make primitive
        std::int64_t d = 0;
        for (int i = 0; i < g; ++i) d = std::gcd(d, std::abs(v(i)));
        for (int i = 0; i < g; ++i) v(i) /= d;

        IMatrix M = unimodular_completion(v);
        CHECK((M.col(0) - v).cwiseAbs().maxCoeff() == 0);
        CHECK(std::abs(std::abs(M.cast<double>().determinant()) - 1.0) < 1e-9);
    }
}

TEST_CASE("cholesky factor reproduces Im B") {
    std::mt19937_64 rng(24);
    RMatrix A = random_basis(4, rng);
    RMatrix Y = A * A.transpose() + 4.0 * RMatrix::Identity(4, 4);
    CMatrix Bm = CMatrix::Zero(4, 4);
    Bm.imag() = Y;
    RiemannMatrix B = validate_riemann_matrix(Bm);
    RMatrix T = cholesky_im(B);
    CHECK((T.transpose() * T - Y).cwiseAbs().maxCoeff() < 1e-12);
    // upper triangular
    for (int i = 1; i < 4; ++i)
        for (int j = 0; j < i; ++j) CHECK(T(i, j) == 0.0);
}
