#ifndef SCHOTTKY_RIEMANN_MATRIX_HPP
#define SCHOTTKY_RIEMANN_MATRIX_HPP

#include "schottky/types.hpp"

namespace schottky {

/// A point of the Siegel halfspace: a g x g complex symmetric matrix with
/// positive definite imaginary part.
class RiemannMatrix {
  public:
    static constexpr double symmetry_tol = 1e-12;

    /// Validates symmetry and positive definiteness of the imaginary part.
    /// Throws NotSymmetricError / NotPositiveDefiniteError.
    explicit RiemannMatrix(const CMatrix& raw);

    int genus() const { return static_cast<int>(mat_.rows()); }
    const CMatrix& mat() const { return mat_; }
    RMatrix real() const { return mat_.real(); }
    RMatrix imag() const { return mat_.imag(); }

  private:
    CMatrix mat_;
};

RiemannMatrix validate_riemann_matrix(const CMatrix& raw);

/// Real upper-triangular T with Im(B) = T^T T.
RMatrix cholesky_im(const RiemannMatrix& B);
RMatrix cholesky_upper(const RMatrix& Y);

struct Characteristic {
    RVector p;
    RVector q;

    bool is_half_integer() const;
    /// 4<p,q> mod 2; 0 = even, 1 = odd. Defined only for half-integer
    /// characteristics.
    int parity() const;

    static Characteristic zero(int g);
    static Characteristic odd_default(int g);  // (e_1/2, e_1/2)
};

}  // namespace schottky

#endif
