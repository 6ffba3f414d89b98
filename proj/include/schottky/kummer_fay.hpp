#ifndef SCHOTTKY_KUMMER_FAY_HPP
#define SCHOTTKY_KUMMER_FAY_HPP

#include <tuple>

#include "schottky/theta.hpp"

namespace schottky {

/// Representative of a Kummer point: the 2^g second-order theta values
/// indexed by eps in {0,1}^g, and their derivative matrix d/dZ_j.
struct KummerPoint {
    CVector values;    // length 2^g
    CMatrix jacobian;  // 2^g x g
};

struct TrisecantTriple {
    CVector X, Y, Z;
};

/// The four pinned coordinates X_1, X_2, Y_1, Z_1.
struct FixedComponents {
    cdouble X1, X2, Y1, Z1;
};

struct FayEvaluation {
    CVector F;         // 2^g components
    CMatrix jacobian;  // 2^g x (3g-4), columns X_3..X_g, Y_2..Y_g, Z_2..Z_g
    double residual;   // ||F||_2
    double delta;      // smallest singular value of [Kum(X), Kum(Y), Kum(Z)]
};

/// Evaluates theta functions for one Riemann matrix, holding the truncation
/// orders for the B and 2B series.
class FayContext {
  public:
    explicit FayContext(RiemannMatrix B, double theta_delta = 1e-12,
                        double trivial_tol = 1e-6);

    const RiemannMatrix& matrix() const { return B_; }
    const RiemannMatrix& doubled() const { return B2_; }
    int n_base() const { return n_base_; }
    int n_doubled() const { return n_doubled_; }
    double trivial_tol() const { return trivial_tol_; }

    KummerPoint kummer(const CVector& Z) const;
    /// lambda(a, b) = Theta*(a+b) Theta*(a-b) with the default odd
    /// characteristic, plus its gradients in a and b.
    std::tuple<cdouble, CVector, CVector> lambda_pair(const CVector& a,
                                                      const CVector& b) const;

    /// Assembles X, Y, Z from (fixed, x), wraps them into the fundamental
    /// domain (updating both arguments in place), and evaluates F, its
    /// Jacobian over the free coordinates, the residual and Delta.
    FayEvaluation evaluate(CVector& x, FixedComponents& fixed,
                           bool check_trivial = true) const;

    TrisecantTriple assemble(const CVector& x, const FixedComponents& fixed) const;
    static void disassemble(const TrisecantTriple& t, CVector& x, FixedComponents& fixed);

  private:
    RiemannMatrix B_;
    RiemannMatrix B2_;
    int n_base_;
    int n_doubled_;
    double trivial_tol_;
};

KummerPoint kummer(const CVector& Z, const RiemannMatrix& B, int n_delta);

std::tuple<cdouble, CVector, CVector> lambda_pair(const CVector& a, const CVector& b,
                                                  const RiemannMatrix& B, int n_delta);

FayEvaluation fay_function(CVector& x, FixedComponents& fixed, const RiemannMatrix& B,
                           double theta_delta = 1e-12);

/// Smallest singular value of the 2^g x 3 matrix [KX, KY, KZ], computed by
/// orthogonal reduction to a 3x3 problem.
double linear_dependence_delta(const CVector& KX, const CVector& KY, const CVector& KZ);

/// True iff some pair of the triple coincides up to sign modulo the lattice
/// within tol (measured on the wrapped characteristics).
bool is_trivial(const CVector& X, const CVector& Y, const CVector& Z,
                const RiemannMatrix& B, double tol = 1e-6);

}  // namespace schottky

#endif
