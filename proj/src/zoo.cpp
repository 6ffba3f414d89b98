#include "schottky/zoo.hpp"

#include <cmath>
#include <cstdint>
#include <vector>

namespace schottky {
namespace zoo {

namespace {

const cdouble I{0.0, 1.0};

CMatrix from_rows(int g, const std::vector<std::vector<cdouble>>& rows) {
    CMatrix M(g, g);
    for (int i = 0; i < g; ++i) {
        for (int j = 0; j < g; ++j) M(i, j) = rows[static_cast<size_t>(i)][static_cast<size_t>(j)];
    }
    return M;
}

cdouble C(double re, double im) { return {re, im}; }

}  // namespace

namespace {

// Gauss-Legendre nodes and weights on [0, 1].
void gauss_legendre01(int n, std::vector<double>& x, std::vector<double>& w) {
    x.assign(static_cast<size_t>(n), 0.0);
    w.assign(static_cast<size_t>(n), 0.0);
    for (int i = 0; i < n; ++i) {
        double t = std::cos(pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = t;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (t * p1 - p0) / (t * t - 1.0);
            double dt = p1 / dp;
            t -= dt;
            if (std::abs(dt) < 1e-15) break;
        }
        x[static_cast<size_t>(i)] = 0.5 * (1.0 + t);
        w[static_cast<size_t>(i)] = 1.0 / ((1.0 - t * t) * dp * dp);
    }
}

// Integer symplectic Gram-Schmidt: rows of the result M satisfy
// M G M^T = [[0, I], [-I, 0]] for a unimodular skew form G.
IMatrix symplectic_basis(const IMatrix& G) {
    const int n2 = static_cast<int>(G.rows());
    const int g = n2 / 2;
    auto ip = [&](const IVector& u, const IVector& v) -> std::int64_t {
        return (u.transpose() * G * v)(0);
    };
    std::vector<IVector> remaining;
    for (int i = 0; i < n2; ++i) remaining.push_back(IVector::Unit(n2, i));
    std::vector<IVector> a_vecs, b_vecs;

    while (!remaining.empty()) {
        IVector u = remaining.front();
        remaining.erase(remaining.begin());

        // Euclid on the pairings <u, .> until some partner pairs to 1.
        int j = -1;
        for (int guard = 0; guard < 1000; ++guard) {
            std::int64_t dmin = 0;
            j = -1;
            for (size_t i = 0; i < remaining.size(); ++i) {
                std::int64_t d = std::abs(ip(u, remaining[i]));
                if (d != 0 && (j < 0 || d < dmin)) {
                    dmin = d;
                    j = static_cast<int>(i);
                }
            }
            if (j < 0) throw SchottkyError("degenerate intersection form");
            if (ip(u, remaining[static_cast<size_t>(j)]) < 0)
                remaining[static_cast<size_t>(j)] = -remaining[static_cast<size_t>(j)];
            if (dmin == 1) break;
            bool changed = false;
            for (size_t i = 0; i < remaining.size(); ++i) {
                if (static_cast<int>(i) == j) continue;
                std::int64_t d = ip(u, remaining[i]);
                if (d % dmin != 0) {
                    remaining[i] -= (d / dmin) * remaining[static_cast<size_t>(j)];
                    changed = true;
                }
            }
            if (!changed) throw SchottkyError("intersection form is not unimodular");
        }
        IVector v = remaining[static_cast<size_t>(j)];
        remaining.erase(remaining.begin() + j);

        std::vector<IVector> rest;
        for (const auto& w0 : remaining) {
            IVector w = w0 - ip(w0, v) * u + ip(w0, u) * v;
            if (w.cwiseAbs().maxCoeff() != 0) rest.push_back(w);
        }
        a_vecs.push_back(u);
        b_vecs.push_back(v);
        remaining = std::move(rest);
    }
    if (static_cast<int>(a_vecs.size()) != g)
        throw SchottkyError("symplectic reduction produced wrong rank");

    IMatrix M(n2, n2);
    for (int i = 0; i < g; ++i) {
        M.row(i) = a_vecs[static_cast<size_t>(i)].transpose();
        M.row(g + i) = b_vecs[static_cast<size_t>(i)].transpose();
    }
    return M;
}

}  // namespace

// Period matrix of y^2 = x (x^{2g+1} - 1), computed from scratch. The curve
// carries the order-(2g+1) automorphism phi(x, y) = (zeta x, zeta^{g+1} y),
// so every period is a root of unity times one of g base integrals over the
// branch cut (0, 1); the homology intersection form over the orbit cycles
// phi^j gamma is circulant and a symplectic basis follows by integer
// reduction. The Riemann bilinear relations are rechecked numerically.
RiemannMatrix hyperelliptic_period_matrix(int g) {
    if (g < 1) throw WrongGenusError("genus must be >= 1");
    const int m = 2 * g + 1;
    auto zeta_pow = [&](int n) {
        return std::exp(2.0 * pi * I * static_cast<double>(n) / static_cast<double>(m));
    };

    // Base integrals of x^{k-1} dx / y over the cut. The substitution
    // t = sin^2(pi u / 2) removes both endpoint singularities:
    // I_k = -i pi int_0^1 t^{k-1} / sqrt(sum_{j=0}^{2g} t^j) du.
    std::vector<double> xs, ws;
    gauss_legendre01(160, xs, ws);
    std::vector<cdouble> base(static_cast<size_t>(g));
    for (int k = 1; k <= g; ++k) {
        double acc = 0.0;
        for (size_t i = 0; i < xs.size(); ++i) {
            const double sn = std::sin(0.5 * pi * xs[i]);
            const double t = sn * sn;
            double denom = 0.0, tp = 1.0;
            for (int j = 0; j <= 2 * g; ++j) {
                denom += tp;
                tp *= t;
            }
            acc += ws[i] * std::pow(t, k - 1) / std::sqrt(denom);
        }
        base[static_cast<size_t>(k) - 1] = -I * pi * acc;
    }

    // Periods over gamma_j = phi^j gamma_0, j = 0..2g-1.
    CMatrix P(g, 2 * g);
    for (int k = 1; k <= g; ++k)
        for (int j = 0; j < 2 * g; ++j)
            P(k - 1, j) = 2.0 * base[static_cast<size_t>(k) - 1] * zeta_pow(j * (k - g - 1));

    // gamma_i . gamma_j = c_{(j-i) mod m} with c_n = -1 for odd n <= g,
    // 0 for even, extended antisymmetrically.
    std::vector<std::int64_t> c(static_cast<size_t>(m), 0);
    for (int n = 1; n <= g; ++n) {
        c[static_cast<size_t>(n)] = (n % 2 == 1) ? -1 : 0;
        c[static_cast<size_t>(m - n)] = -c[static_cast<size_t>(n)];
    }
    IMatrix G(2 * g, 2 * g);
    for (int i = 0; i < 2 * g; ++i)
        for (int j = 0; j < 2 * g; ++j)
            G(i, j) = c[static_cast<size_t>(((j - i) % m + m) % m)];

    // Riemann bilinear relations over this basis: P Q P^T = 0 and
    // -i P Q P^* positive definite, Q = G^{-1}.
    RMatrix Gd = G.cast<double>();
    RMatrix Qd = Gd.inverse();
    IMatrix Q = Qd.array().round().cast<std::int64_t>();
    if (((Gd * Q.cast<double>()) - RMatrix::Identity(2 * g, 2 * g)).cwiseAbs().maxCoeff() > 1e-9)
        throw SchottkyError("hyperelliptic intersection form is not unimodular");
    CMatrix Qc = Q.cast<double>().cast<cdouble>();
    const double scale = P.cwiseAbs().maxCoeff();
    if ((P * Qc * P.transpose()).cwiseAbs().maxCoeff() > 1e-9 * scale * scale)
        throw SchottkyError("hyperelliptic periods violate the bilinear relations");
    CMatrix H = -I * (P * Qc * P.adjoint());
    Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (H + H.adjoint()));
    if (es.eigenvalues().minCoeff() <= 0.0)
        throw SchottkyError("hyperelliptic period form has wrong orientation");

    IMatrix M = symplectic_basis(G);
    CMatrix Pn = P * M.cast<double>().cast<cdouble>().transpose();
    CMatrix A = Pn.leftCols(g);
    CMatrix Cm = Pn.rightCols(g);
    CMatrix B = A.fullPivLu().solve(Cm);
    RMatrix Bim = 0.5 * (B.imag() + B.imag().transpose());
    Eigen::SelfAdjointEigenSolver<RMatrix> esb(Bim);
    if (esb.eigenvalues().minCoeff() < 0.0) {
        // flip orientation: basis (b, -a) replaces (a, b)
        B = Cm.fullPivLu().solve(CMatrix(-A));
    }
    if ((B - B.transpose()).cwiseAbs().maxCoeff() > 1e-9)
        throw SchottkyError("hyperelliptic period matrix is not symmetric");
    B = 0.5 * (B + B.transpose().eval());
    return validate_riemann_matrix(B);
}

RiemannMatrix genus4_family(cdouble tau) {
    if (tau.imag() <= 0.0) {
        throw InvalidMatrixError("tau must have positive imaginary part");
    }
    const cdouble z = std::exp(2.0 * pi * I / 12.0);
    const cdouble z2 = z * z, z3 = z * z * z;
    CMatrix A(4, 4), B(4, 4);
    A << tau, tau, 0.0, -tau - 1.0,
        z2 - 1.0, 1.0, -z2 + 1.0, 1.0,
        z3 - z, -z3, -2.0 * z3 + 2.0 * z2 + z - 1.0, z2 - z,
        -z3 + z, z3, 2.0 * z3 + 2.0 * z2 - z - 1.0, z2 + z;
    B << 1.0, 1.0, 0.0, -1.0,
        1.0, -z2, z2, -z2 + 1.0,
        1.0, z2 - 1.0, z3 - z2 - 2.0 * z + 2.0, z2,
        1.0, z2 - 1.0, -z3 - z2 + 2.0 * z + 2.0, z2;
    Eigen::FullPivLU<CMatrix> lu(A);
    if (!lu.isInvertible()) {
        throw SingularAError("A block of the genus-4 family is singular");
    }
    // The raw solve lands in the lower halfspace for this branch of the
    // family; its conjugate is the Siegel-halfspace representative.
    CMatrix M = lu.solve(B).conjugate();
    M = 0.5 * (M + M.transpose().eval());
    return validate_riemann_matrix(M);
}

RiemannMatrix diagonal_perturbation(const RiemannMatrix& B, double s,
                                    const std::vector<double>& weights) {
    const int g = B.genus();
    std::vector<double> w = weights;
    if (w.empty()) {
        if (g == 4) {
            w = {2, 3, 5, 7};
        } else {
            for (int i = 0; i < g; ++i) w.push_back(static_cast<double>(i + 2));
        }
    }
    if (static_cast<int>(w.size()) != g) {
        throw InvalidMatrixError("perturbation weights must have length g");
    }
    CMatrix M = B.mat();
    for (int i = 0; i < g; ++i) M(i, i) += s * w[static_cast<size_t>(i)];
    return validate_riemann_matrix(M);
}

RiemannMatrix symmetric_perturbation(const RiemannMatrix& B, double s) {
    const int g = B.genus();
    CMatrix M = B.mat();
    for (int j = 0; j < g; ++j) {
        for (int k = 0; k < g; ++k) {
            const double mjk = static_cast<double>(j + k + 2) / 5.0;
            M(j, k) += s * (mjk + I * mjk);
        }
    }
    return validate_riemann_matrix(M);
}

MatrixRecord embedded(const std::string& name) {
    if (name == "bring") {
        const CMatrix M = from_rows(4, {
            {C(-0.5000, 0.8685), C(-0.0000, 0.0649), C(-0.5000, -0.2678), C(0.5000, -0.2678)},
            {C(0.0000, 0.0649), C(-0.5000, 0.8685), C(0.5000, 0.2678), C(-0.5000, 0.2678)},
            {C(-0.5000, -0.2678), C(0.5000, 0.2678), C(-0.0000, 1.0714), C(0.5000, -0.2678)},
            {C(0.5000, -0.2678), C(-0.5000, 0.2678), C(0.5000, -0.2678), C(-0.5000, 0.8685)},
        });
        return {"bring", 4, MatrixSource::printed_paper, 5e-5, validate_riemann_matrix(M)};
    }
    if (name == "fermat5") {
        const CMatrix M = from_rows(6, {
            {C(-0.3735, 0.9276), C(-0.3574, 0.4580), C(-0.4578, 0.3092), C(-0.2891, 0.3705), C(0.0905, 0.4390), C(-0.4417, -0.1605)},
            {C(-0.3574, 0.4580), C(0.1365, 1.0006), C(-0.0161, 0.4697), C(0.1104, -0.1415), C(-0.4616, 0.4201), C(-0.3313, -0.3020)},
            {C(-0.4578, 0.3092), C(-0.0161, 0.4697), C(0.3474, 1.0079), C(-0.2630, -0.3894), C(0.3635, 0.5382), C(0.2891, -0.3705)},
            {C(-0.2891, 0.3705), C(0.1104, -0.1415), C(-0.2630, -0.3894), C(-0.3152, 1.1305), C(-0.3735, -0.2479), C(-0.1725, 0.0496)},
            {C(0.0905, 0.4390), C(-0.4616, 0.4201), C(0.3635, 0.5382), C(-0.3735, -0.2479), C(-0.4839, 1.0692), C(-0.3796, -0.0685)},
            {C(-0.4417, -0.1605), C(-0.3313, -0.3020), C(0.2891, -0.3705), C(-0.1725, 0.0496), C(-0.3796, -0.0685), C(-0.4095, 0.8023)},
        });
        return {"fermat5", 6, MatrixSource::printed_paper, 5e-5, validate_riemann_matrix(M)};
    }
    if (name == "fricke_macbeath") {
        const CMatrix M = from_rows(7, {
            {C(0.3967, 1.0211), C(0.0615, -0.1322), C(0.0000, -0.0000), C(0.4609, 0.2609), C(-0.3553, 0.5828), C(-0.1838, -0.3219), C(0.3386, -0.1933)},
            {C(0.0615, -0.1322), C(0.3967, 1.0211), C(-0.3553, 0.5828), C(0.3386, -0.1933), C(-0.4776, 0.1287), C(-0.2743, -0.5669), C(0.3386, -0.1933)},
            {C(0.0000, -0.0000), C(-0.3553, 0.5828), C(0.2894, 1.1656), C(0.0905, 0.2450), C(-0.4776, 0.1287), C(0.3871, -0.3736), C(-0.1223, -0.4541)},
            {C(0.4609, 0.2609), C(0.3386, -0.1933), C(0.0905, 0.2450), C(0.3967, 1.0211), C(-0.4776, 0.1287), C(0.0167, -0.3895), C(0.0615, -0.1322)},
            {C(-0.3553, 0.5828), C(-0.4776, 0.1287), C(-0.4776, 0.1287), C(-0.4776, 0.1287), C(0.2894, 1.1656), C(-0.1671, -0.7115), C(0.0905, 0.2450)},
            {C(-0.1838, -0.3219), C(-0.2743, -0.5669), C(0.3871, -0.3736), C(0.0167, -0.3895), C(-0.1671, -0.7115), C(0.4414, 1.2784), C(-0.3386, 0.1933)},
            {C(0.3386, -0.1933), C(0.3386, -0.1933), C(-0.1223, -0.4541), C(0.0615, -0.1322), C(0.0905, 0.2450), C(-0.3386, 0.1933), C(0.3967, 1.0211)},
        });
        return {"fricke_macbeath", 7, MatrixSource::printed_paper, 5e-5, validate_riemann_matrix(M)};
    }
    throw UnknownNameError("unknown embedded matrix: " + name);
}

std::vector<CVector> bring_abelmap_columns() {
    const CMatrix M = from_rows(4, {
        {C(-0.7052, 0.3692), C(0.0545, 0.0278), C(0.0293, 0.0775), C(-0.0607, 0.1180)},
        {C(0.1286, -0.2662), C(0.2747, 0.2456), C(-0.4068, 0.4113), C(0.0318, 0.2067)},
        {C(-0.4351, 0.2906), C(-0.2108, 0.0422), C(0.0250, 0.2906), C(0.0823, -0.2451)},
        {C(0.4519, -0.6915), C(0.0718, 0.0915), C(-0.0126, -0.0140), C(0.0487, 0.0493)},
    });
    std::vector<CVector> cols;
    for (int j = 0; j < 4; ++j) cols.push_back(M.col(j));
    return cols;
}

}  // namespace zoo
}  // namespace schottky
