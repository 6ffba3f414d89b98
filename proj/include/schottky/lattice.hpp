#ifndef SCHOTTKY_LATTICE_HPP
#define SCHOTTKY_LATTICE_HPP

#include "schottky/types.hpp"

namespace schottky {

struct LatticeResult {
    IVector vector;  // integer coefficients n* w.r.t. the columns of T
    double length;   // ||T n*||
};

/// LLL basis reduction (delta = 0.99) of the lattice spanned by the columns
/// of basis. Returns the unimodular transform U such that basis * U is the
/// reduced basis.
IMatrix lll_reduce(const RMatrix& basis);

/// Exact shortest nonzero vector of the lattice { T n : n integer }, found
/// by Schnorr-Euchner enumeration after an LLL preconditioner. Ties are
/// broken by the lexicographically smallest coefficient vector whose first
/// nonzero entry is positive.
LatticeResult shortest_lattice_vector(const RMatrix& T);

/// Unimodular matrix whose first column is the (primitive) integer vector v.
IMatrix unimodular_completion(const IVector& v);

/// Truncation bound for the theta series: ceil(sqrt(-ln(delta)/(pi y_min)) + 1/2).
int truncation_radius(double y_min, double delta);

/// Conservative working bound: max(truncation_radius, 5).
int suggested_truncation(double y_min, double delta);

}  // namespace schottky

#endif
