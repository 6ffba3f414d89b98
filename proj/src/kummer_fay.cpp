#include "schottky/kummer_fay.hpp"

#include <cmath>

#include <Eigen/QR>
#include <Eigen/SVD>

namespace schottky {

namespace {
const cdouble I{0.0, 1.0};

double dist_to_integers(const RVector& v) {
    double d = 0.0;
    for (int i = 0; i < v.size(); ++i) {
        d = std::max(d, std::abs(v[i] - std::round(v[i])));
    }
    return d;
}
}  // namespace

FayContext::FayContext(RiemannMatrix B, double theta_delta, double trivial_tol)
    : B_(B), B2_(validate_riemann_matrix(2.0 * B.mat())), trivial_tol_(trivial_tol) {
    const double ymin = shortest_lattice_vector(cholesky_im(B_)).length;
    // One extra shell on top of the generic bound: the Fay residual divides
    // by lambda values that can be ~1e-2, so absolute theta errors are
    // amplified by a few orders of magnitude before they reach F.
    n_base_ = suggested_truncation(ymin, theta_delta) + 1;
    // Im(2B) = 2 Im(B): the lattice scales by sqrt(2), same minimizer.
    n_doubled_ = suggested_truncation(std::sqrt(2.0) * ymin, theta_delta) + 1;
}

KummerPoint FayContext::kummer(const CVector& Z) const {
    const int g = B_.genus();
    const std::size_t m = std::size_t{1} << g;
    KummerPoint K;
    K.values.resize(static_cast<Eigen::Index>(m));
    K.jacobian.resize(static_cast<Eigen::Index>(m), g);
    const Characteristic zero = Characteristic::zero(g);
    for (std::size_t idx = 0; idx < m; ++idx) {
        RVector eps(g);
        for (int j = 0; j < g; ++j) eps[j] = static_cast<double>((idx >> j) & 1u);
        const CVector Beps = B_.mat() * eps.cast<cdouble>();
        cdouble quad{0.0, 0.0}, lin{0.0, 0.0};
        for (int j = 0; j < g; ++j) {
            quad += eps[j] * Beps[j];
            lin += eps[j] * Z[j];
        }
        const cdouble factor = std::exp(0.5 * pi * I * quad + 2.0 * pi * I * lin);
        const CVector arg = 2.0 * Z + Beps;
        const ThetaEval t = theta_wrapped(arg, B2_, zero, n_doubled_);
        K.values[static_cast<Eigen::Index>(idx)] = factor * t.value;
        for (int j = 0; j < g; ++j) {
            K.jacobian(static_cast<Eigen::Index>(idx), j) =
                factor * (2.0 * t.gradient[j] + 2.0 * pi * I * eps[j] * t.value);
        }
    }
    return K;
}

std::tuple<cdouble, CVector, CVector> FayContext::lambda_pair(const CVector& a,
                                                              const CVector& b) const {
    const Characteristic odd = Characteristic::odd_default(B_.genus());
    const ThetaEval tp = theta_wrapped(a + b, B_, odd, n_base_);
    const ThetaEval tm = theta_wrapped(a - b, B_, odd, n_base_);
    const cdouble lambda = tp.value * tm.value;
    const CVector grad_a = tm.value * tp.gradient + tp.value * tm.gradient;
    const CVector grad_b = tm.value * tp.gradient - tp.value * tm.gradient;
    return {lambda, grad_a, grad_b};
}

TrisecantTriple FayContext::assemble(const CVector& x, const FixedComponents& fixed) const {
    const int g = B_.genus();
    TrisecantTriple t;
    t.X.resize(g);
    t.Y.resize(g);
    t.Z.resize(g);
    t.X[0] = fixed.X1;
    t.X[1] = fixed.X2;
    for (int j = 2; j < g; ++j) t.X[j] = x[j - 2];
    t.Y[0] = fixed.Y1;
    for (int j = 1; j < g; ++j) t.Y[j] = x[(g - 2) + (j - 1)];
    t.Z[0] = fixed.Z1;
    for (int j = 1; j < g; ++j) t.Z[j] = x[(2 * g - 3) + (j - 1)];
    return t;
}

void FayContext::disassemble(const TrisecantTriple& t, CVector& x, FixedComponents& fixed) {
    const int g = static_cast<int>(t.X.size());
    x.resize(3 * g - 4);
    fixed.X1 = t.X[0];
    fixed.X2 = t.X[1];
    fixed.Y1 = t.Y[0];
    fixed.Z1 = t.Z[0];
    for (int j = 2; j < g; ++j) x[j - 2] = t.X[j];
    for (int j = 1; j < g; ++j) x[(g - 2) + (j - 1)] = t.Y[j];
    for (int j = 1; j < g; ++j) x[(2 * g - 3) + (j - 1)] = t.Z[j];
}

FayEvaluation FayContext::evaluate(CVector& x, FixedComponents& fixed,
                                   bool check_trivial) const {
    const int g = B_.genus();
    TrisecantTriple t = assemble(x, fixed);
    t.X = wrap_to_fundamental(t.X, B_).z_wrapped;
    t.Y = wrap_to_fundamental(t.Y, B_).z_wrapped;
    t.Z = wrap_to_fundamental(t.Z, B_).z_wrapped;
    disassemble(t, x, fixed);

    if (check_trivial && is_trivial(t.X, t.Y, t.Z, B_, trivial_tol_)) {
        throw TrivialConfigurationError("trisecant triple collapsed to a trivial configuration");
    }

    const auto [l_yz, dY_lyz, dZ_lyz] = lambda_pair(t.Y, t.Z);
    if (std::abs(l_yz) < 1e-300) {
        throw DenominatorUnderflowError("lambda(Y,Z) underflowed");
    }
    const auto [l_yx, dY_lyx, dX_lyx] = lambda_pair(t.Y, t.X);
    const auto [l_xz, dX_lxz, dZ_lxz] = lambda_pair(t.X, t.Z);

    const cdouble c1 = l_yx / l_yz;
    const cdouble c2 = l_xz / l_yz;

    const KummerPoint KX = kummer(t.X);
    const KummerPoint KY = kummer(t.Y);
    const KummerPoint KZ = kummer(t.Z);

    FayEvaluation ev;
    ev.F = c1 * KZ.values + c2 * KY.values - KX.values;

    const auto rows = KX.values.size();
    CMatrix JX(rows, g), JY(rows, g), JZ(rows, g);
    const cdouble inv = 1.0 / l_yz;
    const cdouble inv2 = inv * inv;
    for (int j = 0; j < g; ++j) {
        const cdouble dc1_dX = dX_lyx[j] * inv;
        const cdouble dc2_dX = dX_lxz[j] * inv;
        JX.col(j) = dc1_dX * KZ.values + dc2_dX * KY.values - KX.jacobian.col(j);

        const cdouble dc1_dY = dY_lyx[j] * inv - l_yx * dY_lyz[j] * inv2;
        const cdouble dc2_dY = -l_xz * dY_lyz[j] * inv2;
        JY.col(j) = dc1_dY * KZ.values + dc2_dY * KY.values + c2 * KY.jacobian.col(j);

        const cdouble dc1_dZ = -l_yx * dZ_lyz[j] * inv2;
        const cdouble dc2_dZ = dZ_lxz[j] * inv - l_xz * dZ_lyz[j] * inv2;
        JZ.col(j) = dc1_dZ * KZ.values + dc2_dZ * KY.values + c1 * KZ.jacobian.col(j);
    }

    // Free coordinates: X_3..X_g, Y_2..Y_g, Z_2..Z_g.
    ev.jacobian.resize(rows, 3 * g - 4);
    int col = 0;
    for (int j = 2; j < g; ++j) ev.jacobian.col(col++) = JX.col(j);
    for (int j = 1; j < g; ++j) ev.jacobian.col(col++) = JY.col(j);
    for (int j = 1; j < g; ++j) ev.jacobian.col(col++) = JZ.col(j);

    ev.residual = ev.F.norm();
    ev.delta = linear_dependence_delta(KX.values, KY.values, KZ.values);
    return ev;
}

KummerPoint kummer(const CVector& Z, const RiemannMatrix& B, int n_delta) {
    KummerPoint out;
    const int g = B.genus();
    const std::size_t m = std::size_t{1} << g;
    out.values.resize(static_cast<Eigen::Index>(m));
    out.jacobian.resize(static_cast<Eigen::Index>(m), g);
    const RiemannMatrix B2 = validate_riemann_matrix(2.0 * B.mat());
    const Characteristic zero = Characteristic::zero(g);
    const cdouble I_{0.0, 1.0};
    for (std::size_t idx = 0; idx < m; ++idx) {
        RVector eps(g);
        for (int j = 0; j < g; ++j) eps[j] = static_cast<double>((idx >> j) & 1u);
        const CVector Beps = B.mat() * eps.cast<cdouble>();
        cdouble quad{0.0, 0.0}, lin{0.0, 0.0};
        for (int j = 0; j < g; ++j) {
            quad += eps[j] * Beps[j];
            lin += eps[j] * Z[j];
        }
        const cdouble factor = std::exp(0.5 * pi * I_ * quad + 2.0 * pi * I_ * lin);
        const ThetaEval t = theta(2.0 * Z + Beps, B2, zero, n_delta);
        out.values[static_cast<Eigen::Index>(idx)] = factor * t.value;
        for (int j = 0; j < g; ++j) {
            out.jacobian(static_cast<Eigen::Index>(idx), j) =
                factor * (2.0 * t.gradient[j] + 2.0 * pi * I_ * eps[j] * t.value);
        }
    }
    return out;
}

std::tuple<cdouble, CVector, CVector> lambda_pair(const CVector& a, const CVector& b,
                                                  const RiemannMatrix& B, int n_delta) {
    const Characteristic odd = Characteristic::odd_default(B.genus());
    const ThetaEval tp = theta(a + b, B, odd, n_delta);
    const ThetaEval tm = theta(a - b, B, odd, n_delta);
    return {tp.value * tm.value, tm.value * tp.gradient + tp.value * tm.gradient,
            tm.value * tp.gradient - tp.value * tm.gradient};
}

FayEvaluation fay_function(CVector& x, FixedComponents& fixed, const RiemannMatrix& B,
                           double theta_delta) {
    FayContext ctx(B, theta_delta);
    return ctx.evaluate(x, fixed);
}

double linear_dependence_delta(const CVector& KX, const CVector& KY, const CVector& KZ) {
    if (KX.size() != KY.size() || KY.size() != KZ.size()) {
        throw InvalidMatrixError("Kummer vectors must have equal length");
    }
    CMatrix M(KX.size(), 3);
    M.col(0) = KX;
    M.col(1) = KY;
    M.col(2) = KZ;
    Eigen::HouseholderQR<CMatrix> qr(M);
    const CMatrix R = qr.matrixQR()
                          .topRows(3)
                          .triangularView<Eigen::Upper>()
                          .toDenseMatrix();
    Eigen::JacobiSVD<CMatrix> svd(R);
    return svd.singularValues().minCoeff();
}

bool is_trivial(const CVector& X, const CVector& Y, const CVector& Z,
                const RiemannMatrix& B, double tol) {
    const CVector* pts[3] = {&X, &Y, &Z};
    for (int a = 0; a < 3; ++a) {
        for (int b = a + 1; b < 3; ++b) {
            for (double sign : {1.0, -1.0}) {
                const CVector w = *pts[a] - sign * (*pts[b]);
                RVector p, q;
                split_characteristics(w, B, p, q);
                if (dist_to_integers(p) <= tol && dist_to_integers(q) <= tol) {
                    return true;
                }
            }
        }
    }
    return false;
}

}  // namespace schottky
