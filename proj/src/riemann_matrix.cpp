#include "schottky/riemann_matrix.hpp"

#include <cmath>

#include <Eigen/Cholesky>

namespace schottky {

RiemannMatrix::RiemannMatrix(const CMatrix& raw) {
    if (raw.rows() != raw.cols() || raw.rows() < 1) {
        throw InvalidMatrixError("Riemann matrix must be square and non-empty");
    }
    const double asym = (raw - raw.transpose()).cwiseAbs().maxCoeff();
    if (asym > symmetry_tol) {
        throw NotSymmetricError("matrix asymmetry " + std::to_string(asym) +
                                " exceeds 1e-12");
    }
    // Symmetrize away roundoff so downstream linear algebra sees an exactly
    // symmetric matrix.
    mat_ = 0.5 * (raw + raw.transpose());
    Eigen::LLT<RMatrix> llt(mat_.imag());
    if (llt.info() != Eigen::Success) {
        throw NotPositiveDefiniteError("imaginary part is not positive definite");
    }
}

RiemannMatrix validate_riemann_matrix(const CMatrix& raw) { return RiemannMatrix(raw); }

RMatrix cholesky_upper(const RMatrix& Y) {
    Eigen::LLT<RMatrix> llt(Y);
    if (llt.info() != Eigen::Success) {
        throw NotPositiveDefiniteError("Cholesky failed: matrix not positive definite");
    }
    // LLT yields Y = L L^T; T = L^T is upper triangular with T^T T = Y.
    return llt.matrixL().transpose();
}

RMatrix cholesky_im(const RiemannMatrix& B) { return cholesky_upper(B.imag()); }

bool Characteristic::is_half_integer() const {
    for (int i = 0; i < p.size(); ++i) {
        if (std::abs(2 * p[i] - std::round(2 * p[i])) > 1e-12) return false;
    }
    for (int i = 0; i < q.size(); ++i) {
        if (std::abs(2 * q[i] - std::round(2 * q[i])) > 1e-12) return false;
    }
    return true;
}

int Characteristic::parity() const {
    if (!is_half_integer()) {
        throw SchottkyError("parity is only defined for half-integer characteristics");
    }
    auto m = static_cast<std::int64_t>(std::llround(4.0 * p.dot(q)));
    return static_cast<int>(((m % 2) + 2) % 2);
}

Characteristic Characteristic::zero(int g) {
    return {RVector::Zero(g), RVector::Zero(g)};
}

Characteristic Characteristic::odd_default(int g) {
    RVector e1 = RVector::Zero(g);
    e1[0] = 0.5;
    return {e1, e1};
}

}  // namespace schottky
