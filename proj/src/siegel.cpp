#include "schottky/siegel.hpp"

#include <cmath>

#include "schottky/theta.hpp"

namespace schottky {

namespace {
const cdouble I{0.0, 1.0};
}

IMatrix SymplecticTransform::full() const {
    const int g = genus();
    IMatrix R(2 * g, 2 * g);
    R.topLeftCorner(g, g) = A;
    R.topRightCorner(g, g) = B;
    R.bottomLeftCorner(g, g) = C;
    R.bottomRightCorner(g, g) = D;
    return R;
}

SymplecticTransform SymplecticTransform::identity(int g) {
    return {IMatrix::Identity(g, g), IMatrix::Zero(g, g), IMatrix::Zero(g, g),
            IMatrix::Identity(g, g)};
}

SymplecticTransform SymplecticTransform::from_blocks(IMatrix A, IMatrix B, IMatrix C,
                                                     IMatrix D) {
    SymplecticTransform R{std::move(A), std::move(B), std::move(C), std::move(D)};
    if (!R.is_symplectic()) {
        throw InvalidMatrixError("blocks do not satisfy the symplectic relation");
    }
    return R;
}

bool SymplecticTransform::is_symplectic() const {
    const int g = genus();
    const IMatrix R = full();
    IMatrix J = IMatrix::Zero(2 * g, 2 * g);
    J.topRightCorner(g, g) = IMatrix::Identity(g, g);
    J.bottomLeftCorner(g, g) = -IMatrix::Identity(g, g);
    return ((R.transpose() * J * R) - J).cwiseAbs().maxCoeff() == 0;
}

SymplecticTransform SymplecticTransform::compose(const SymplecticTransform& other) const {
    const int g = genus();
    const IMatrix R = full() * other.full();
    SymplecticTransform out;
    out.A = R.topLeftCorner(g, g);
    out.B = R.topRightCorner(g, g);
    out.C = R.bottomLeftCorner(g, g);
    out.D = R.bottomRightCorner(g, g);
    return out;
}

SymplecticTransform SymplecticTransform::basis_change(const IMatrix& U) {
    const int g = static_cast<int>(U.rows());
    // B -> U^T B U equals (A B)(D)^{-1} with A = U^T, D = U^{-1}.
    // U^{-1} is integer since U is unimodular; compute it exactly by
    // solving with the adjugate (entries are small here).
    Eigen::MatrixXd Ud = U.cast<double>();
    Eigen::MatrixXd Uinv_d = Ud.inverse();
    IMatrix Uinv(g, g);
    for (int i = 0; i < g; ++i) {
        for (int j = 0; j < g; ++j) {
            Uinv(i, j) = static_cast<std::int64_t>(std::llround(Uinv_d(i, j)));
        }
    }
    if (((U * Uinv) - IMatrix::Identity(g, g)).cwiseAbs().maxCoeff() != 0) {
        throw InvalidMatrixError("basis change matrix is not unimodular");
    }
    return from_blocks(U.transpose(), IMatrix::Zero(g, g), IMatrix::Zero(g, g), Uinv);
}

SymplecticTransform SymplecticTransform::real_shift(const IMatrix& S) {
    const int g = static_cast<int>(S.rows());
    if ((S - S.transpose()).cwiseAbs().maxCoeff() != 0) {
        throw InvalidMatrixError("real shift must be symmetric");
    }
    return from_blocks(IMatrix::Identity(g, g), S, IMatrix::Zero(g, g),
                       IMatrix::Identity(g, g));
}

SymplecticTransform SymplecticTransform::leading_inversion(int g) {
    IMatrix A = IMatrix::Identity(g, g);
    A(0, 0) = 0;
    IMatrix B = IMatrix::Zero(g, g);
    B(0, 0) = -1;
    IMatrix C = IMatrix::Zero(g, g);
    C(0, 0) = 1;
    IMatrix D = A;
    return from_blocks(A, B, C, D);
}

RiemannMatrix apply_modular(const RiemannMatrix& B0, const SymplecticTransform& R) {
    const CMatrix M = R.C.cast<double>().cast<cdouble>() * B0.mat() +
                      R.D.cast<double>().cast<cdouble>();
    Eigen::FullPivLU<CMatrix> lu(M);
    if (!lu.isInvertible()) {
        throw SingularDenominatorError("C*B + D is singular");
    }
    // Condition estimate via the pivots.
    const double pmax = lu.matrixLU().diagonal().cwiseAbs().maxCoeff();
    const double pmin = lu.matrixLU().diagonal().cwiseAbs().minCoeff();
    if (pmin == 0.0 || pmax / pmin > 1e12) {
        throw SingularDenominatorError("C*B + D is numerically singular");
    }
    const CMatrix num = R.A.cast<double>().cast<cdouble>() * B0.mat() +
                        R.B.cast<double>().cast<cdouble>();
    CMatrix out = num * lu.inverse();
    out = 0.5 * (out + out.transpose().eval());
    return validate_riemann_matrix(out);
}

double lattice_ymin(const RiemannMatrix& B) {
    return shortest_lattice_vector(cholesky_im(B)).length;
}

namespace {

// One pass of the classical loop. Returns true when a step changed B.
bool reduction_pass(RiemannMatrix& B, SymplecticTransform& acc, bool allow_inversion) {
    const int g = B.genus();
    bool changed = false;

    // (a) make the shortest lattice vector the first basis vector of Im B.
    // Only act on a strict improvement; ties between equally short vectors
    // would otherwise flip the basis forever.
    const LatticeResult sv = shortest_lattice_vector(cholesky_im(B));
    IVector e1 = IVector::Zero(g);
    e1[0] = 1;
    const double first_len = std::sqrt(B.imag()(0, 0));
    if ((sv.vector - e1).cwiseAbs().maxCoeff() != 0 &&
        sv.length < first_len * (1.0 - 1e-12)) {
        const IMatrix U = unimodular_completion(sv.vector);
        const SymplecticTransform R = SymplecticTransform::basis_change(U);
        B = apply_modular(B, R);
        acc = R.compose(acc);
        changed = true;
    }

    // (b) clamp Re B entrywise into [-1/2, 1/2] by an integer shift.
    IMatrix S = IMatrix::Zero(g, g);
    const RMatrix X = B.real();
    bool shift = false;
    for (int i = 0; i < g; ++i) {
        for (int j = 0; j < g; ++j) {
            S(i, j) = -static_cast<std::int64_t>(round_half_toward_zero(X(i, j)));
            if (S(i, j) != 0) shift = true;
        }
    }
    S = ((S + S.transpose()) / 2).eval();  // exact: rounding a symmetric matrix
    if (shift && S.cwiseAbs().maxCoeff() != 0) {
        const SymplecticTransform R = SymplecticTransform::real_shift(S);
        B = apply_modular(B, R);
        acc = R.compose(acc);
        changed = true;
    }

    // (c) if |B_11| < 1, invert the leading entry.
    if (allow_inversion && std::abs(B.mat()(0, 0)) < 1.0 - 1e-12) {
        const SymplecticTransform R = SymplecticTransform::leading_inversion(g);
        B = apply_modular(B, R);
        acc = R.compose(acc);
        changed = true;
    }
    return changed;
}

std::pair<RiemannMatrix, ReductionReport> reduce_loop(const RiemannMatrix& B0,
                                                      int max_iterations,
                                                      bool allow_inversion) {
    RiemannMatrix B = B0;
    ReductionReport report;
    report.transform = SymplecticTransform::identity(B0.genus());
    report.input_ymin = lattice_ymin(B0);
    int iter = 0;
    while (iter < max_iterations) {
        ++iter;
        if (!reduction_pass(B, report.transform, allow_inversion)) break;
    }
    if (iter >= max_iterations) {
        throw NoConvergenceError("Siegel reduction did not settle within the iteration cap");
    }
    report.iterations = iter;
    report.output_ymin = lattice_ymin(B);
    return {B, report};
}

}  // namespace

std::pair<RiemannMatrix, ReductionReport> siegel_reduce(const RiemannMatrix& B0,
                                                        int max_iterations) {
    auto [B, report] = reduce_loop(B0, max_iterations, true);
    if (report.output_ymin < report.input_ymin - 1e-12) {
        // The inversion steps shortened the lattice; the input lattice was
        // already long enough, so redo with basis changes and shifts only
        // (these preserve y_min exactly).
        return reduce_loop(B0, max_iterations, false);
    }
    return {B, report};
}

double modular_theta_consistency(const RiemannMatrix& B0, const SymplecticTransform& R,
                                 const std::vector<CVector>& z_samples) {
    const int g = B0.genus();
    const RiemannMatrix Bt = apply_modular(B0, R);
    const CMatrix M = R.C.cast<double>().cast<cdouble>() * B0.mat() +
                      R.D.cast<double>().cast<cdouble>();
    const CMatrix Minv = M.inverse();

    // Transformed characteristic of the zero characteristic, per the known
    // action of the modular group.
    Characteristic chr0 = Characteristic::zero(g);
    Characteristic chrt;
    chrt.p.resize(g);
    chrt.q.resize(g);
    const IMatrix CDt = R.C * R.D.transpose();
    const IMatrix ABt = R.A * R.B.transpose();
    for (int i = 0; i < g; ++i) {
        chrt.p[i] = 0.5 * static_cast<double>(CDt(i, i));
        chrt.q[i] = 0.5 * static_cast<double>(ABt(i, i));
    }

    const int n0 = suggested_truncation(lattice_ymin(B0), 1e-14);
    const int nt = suggested_truncation(lattice_ymin(Bt), 1e-14);

    std::vector<cdouble> ratios;
    ratios.reserve(z_samples.size());
    for (const CVector& z : z_samples) {
        const CVector zt = Minv.transpose() * z;
        const cdouble lhs = theta(zt, Bt, chrt, nt).value;
        const cdouble quad = (z.transpose() * (Minv * R.C.cast<double>().cast<cdouble>()) * z)(0);
        const cdouble factor = std::exp(pi * I * quad);
        const cdouble rhs = factor * theta(z, B0, chr0, n0).value;
        ratios.push_back(lhs / rhs);
    }
    cdouble mean{0.0, 0.0};
    for (const cdouble& r : ratios) mean += r;
    mean /= static_cast<double>(ratios.size());
    double spread = 0.0;
    for (const cdouble& r : ratios) spread = std::max(spread, std::abs(r - mean));
    return std::abs(mean) > 0 ? spread / std::abs(mean) : spread;
}

}  // namespace schottky
