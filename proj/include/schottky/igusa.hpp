#ifndef SCHOTTKY_IGUSA_HPP
#define SCHOTTKY_IGUSA_HPP

#include <array>
#include <vector>

#include "schottky/theta.hpp"

namespace schottky {

/// The three base characteristics and the rank-3 subgroup N defining the
/// genus-4 Schottky-Igusa form. All characteristic arithmetic is carried out
/// on doubled integer 8-vectors mod 2.
struct IgusaCharacteristicSet {
    std::array<std::array<int, 8>, 3> base;      // (2p | 2q) for p^(i), q^(i)
    std::array<std::array<int, 8>, 3> generators;  // 2 n_1, 2 n_2, 2 n_3

    /// The 8 elements of N.
    std::vector<std::array<int, 8>> subgroup() const;
    /// The 8 characteristics of the coset (p^(i) q^(i)) + N, halved.
    std::vector<Characteristic> coset(int i) const;

    static IgusaCharacteristicSet standard();
};

cdouble theta_constant(const Characteristic& chr, const RiemannMatrix& B, int n_delta);

std::array<cdouble, 3> coset_products(const RiemannMatrix& B);

/// Schottky-Igusa modular form: pi1^2 + pi2^2 + pi3^2 - 2 (pi1 pi2 + pi1 pi3 + pi2 pi3),
/// the combination that factors as prod (sqrt(pi1) +- sqrt(pi2) +- sqrt(pi3)).
cdouble schottky_igusa(const RiemannMatrix& B);

}  // namespace schottky

#endif
