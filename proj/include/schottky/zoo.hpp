#ifndef SCHOTTKY_ZOO_HPP
#define SCHOTTKY_ZOO_HPP

#include <string>
#include <vector>

#include "schottky/riemann_matrix.hpp"

namespace schottky {
namespace zoo {

enum class MatrixSource { exact_formula, printed_paper };

struct MatrixRecord {
    std::string name;
    int genus = 0;
    MatrixSource source = MatrixSource::exact_formula;
    double stated_accuracy = 1e-15;
    RiemannMatrix matrix;
};

/// Period matrix of the hyperelliptic curve y^2 = x (x^{2g+1} - 1).
RiemannMatrix hyperelliptic_period_matrix(int g);

/// The genus-4 family Rm_tau = A^{-1} B built from the fixed 4x8 block with
/// zeta = exp(2 pi i / 12).
RiemannMatrix genus4_family(cdouble tau);

/// B + s * diag(weights). Default weights: [2,3,5,7] for g = 4, [2,...,g+1]
/// otherwise.
RiemannMatrix diagonal_perturbation(const RiemannMatrix& B, double s,
                                    const std::vector<double>& weights = {});

/// B + s (M + iM) with M_jk = (j + k)/5 (1-based indices).
RiemannMatrix symmetric_perturbation(const RiemannMatrix& B, double s);

/// Printed matrices: "bring", "fermat5", "fricke_macbeath".
MatrixRecord embedded(const std::string& name);

/// Columns of the printed Bring Abel-map matrix (four genus-4 vectors).
std::vector<CVector> bring_abelmap_columns();

}  // namespace zoo
}  // namespace schottky

#endif
