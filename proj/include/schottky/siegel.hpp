#ifndef SCHOTTKY_SIEGEL_HPP
#define SCHOTTKY_SIEGEL_HPP

#include <vector>

#include "schottky/riemann_matrix.hpp"

namespace schottky {

/// Integer block matrix R = [[A, B], [C, D]] in Sp(2g, Z). All arithmetic on
/// these matrices stays in integers.
struct SymplecticTransform {
    IMatrix A, B, C, D;

    int genus() const { return static_cast<int>(A.rows()); }
    IMatrix full() const;

    static SymplecticTransform identity(int g);
    static SymplecticTransform from_blocks(IMatrix A, IMatrix B, IMatrix C, IMatrix D);

    /// R^T J R == J checked exactly.
    bool is_symplectic() const;

    /// this * other (the composition acting as first `other`, then `this`).
    SymplecticTransform compose(const SymplecticTransform& other) const;

    /// Im-part basis change: B -> U^T B U.
    static SymplecticTransform basis_change(const IMatrix& U);
    /// Real shift: B -> B + S with S symmetric integer.
    static SymplecticTransform real_shift(const IMatrix& S);
    /// Partial inversion acting on the leading entry of B.
    static SymplecticTransform leading_inversion(int g);
};

struct ReductionReport {
    double input_ymin = 0.0;
    double output_ymin = 0.0;
    SymplecticTransform transform;
    int iterations = 0;
};

/// Modular transformation (A B0 + B)(C B0 + D)^{-1}, validated.
RiemannMatrix apply_modular(const RiemannMatrix& B0, const SymplecticTransform& R);

double lattice_ymin(const RiemannMatrix& B);

/// Approximate Siegel reduction: drives the shortest lattice vector of
/// Im(B) above sqrt(3)/2 while keeping |Re(B)| entrywise <= 1/2.
std::pair<RiemannMatrix, ReductionReport> siegel_reduce(const RiemannMatrix& B0,
                                                        int max_iterations = 200);

/// Test utility for the modular transformation law of theta functions:
/// evaluates the ratio of the transformed theta to the z-dependent factor
/// times the original theta over the sample points and returns the relative
/// spread of the ratio (z-independent when the law holds).
double modular_theta_consistency(const RiemannMatrix& B0, const SymplecticTransform& R,
                                 const std::vector<CVector>& z_samples);

}  // namespace schottky

#endif
