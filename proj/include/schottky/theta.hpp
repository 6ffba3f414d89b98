#ifndef SCHOTTKY_THETA_HPP
#define SCHOTTKY_THETA_HPP

#include "schottky/lattice.hpp"
#include "schottky/riemann_matrix.hpp"

namespace schottky {

struct ThetaEval {
    cdouble value;
    CVector gradient;  // d/dz_i
};

/// Theta function with characteristic, summed over the hypercube
/// N in [-n_delta, n_delta]^g:
///   sum exp(pi i <N+p, B(N+p)> + 2 pi i <N+p, z+q>)
/// together with its z-gradient. The per-term quadratic exponentials are
/// cached per (B, n_delta, p) and shared between value and gradient.
ThetaEval theta(const CVector& z, const RiemannMatrix& B, const Characteristic& chr,
                int n_delta);

/// Same function computed through the zero-characteristic series at the
/// shifted argument z + Bp + q.
ThetaEval theta_via_zero_char(const CVector& z, const RiemannMatrix& B,
                              const Characteristic& chr, int n_delta);

/// Theta evaluated after wrapping z into the fundamental domain, with the
/// quasi-periodicity factor restored exactly (value and gradient). Use this
/// for arguments that may lie far outside the domain: the direct series
/// overflows its intermediate phases there.
ThetaEval theta_wrapped(const CVector& z, const RiemannMatrix& B, const Characteristic& chr,
                        int n_delta);

struct WrapResult {
    CVector z_wrapped;
    IVector m;
    IVector n;  // z = z_wrapped + m + B n
};

/// Wrap z into the fundamental domain (characteristics of z_wrapped in
/// [-1/2, 1/2]) by splitting z = p + Bq and rounding half-toward-zero.
WrapResult wrap_to_fundamental(const CVector& z, const RiemannMatrix& B);

/// Characteristics (p, q) of z with respect to B: z = p + B q.
void split_characteristics(const CVector& z, const RiemannMatrix& B, RVector& p,
                           RVector& q);

/// Memory budget (number of cached table entries) for the quadratic-form
/// cache; beyond it the series is streamed term by term. Overridable via
/// the SCHOTTKY_TABLE_BUDGET environment variable.
std::size_t table_entry_budget();

}  // namespace schottky

#endif
