#include "schottky/igusa.hpp"

#include <set>

#include "schottky/lattice.hpp"
#include "schottky/siegel.hpp"

namespace schottky {

IgusaCharacteristicSet IgusaCharacteristicSet::standard() {
    IgusaCharacteristicSet s;
    // Doubled characteristics (2p | 2q), entries in {0,1}.
    s.base[0] = {1, 0, 1, 0, /*|*/ 1, 0, 1, 0};
    s.base[1] = {0, 0, 0, 1, /*|*/ 1, 0, 0, 0};
    s.base[2] = {0, 0, 1, 1, /*|*/ 1, 0, 1, 1};
    // Generators n_i, printed as 4x2 blocks (p column | q column).
    s.generators[0] = {0, 0, 0, 1, /*|*/ 1, 1, 1, 0};
    s.generators[1] = {0, 0, 1, 1, /*|*/ 0, 0, 0, 1};
    s.generators[2] = {0, 0, 1, 0, /*|*/ 1, 0, 1, 1};
    return s;
}

std::vector<std::array<int, 8>> IgusaCharacteristicSet::subgroup() const {
    std::vector<std::array<int, 8>> elems;
    std::set<std::array<int, 8>> seen;
    for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
            for (int c = 0; c < 2; ++c) {
                std::array<int, 8> e{};
                for (int k = 0; k < 8; ++k) {
                    e[k] = (a * generators[0][k] + b * generators[1][k] +
                            c * generators[2][k]) %
                           2;
                }
                if (seen.insert(e).second) elems.push_back(e);
            }
        }
    }
    if (elems.size() != 8) {
        throw SchottkyError("subgroup N does not have 8 elements");
    }
    return elems;
}

std::vector<Characteristic> IgusaCharacteristicSet::coset(int i) const {
    std::vector<Characteristic> out;
    for (const auto& n : subgroup()) {
        Characteristic chr;
        chr.p.resize(4);
        chr.q.resize(4);
        for (int k = 0; k < 4; ++k) {
            chr.p[k] = 0.5 * ((base[static_cast<size_t>(i)][k] + n[k]) % 2);
            chr.q[k] = 0.5 * ((base[static_cast<size_t>(i)][k + 4] + n[k + 4]) % 2);
        }
        out.push_back(chr);
    }
    return out;
}

cdouble theta_constant(const Characteristic& chr, const RiemannMatrix& B, int n_delta) {
    if (B.genus() != 4) {
        throw WrongGenusError("the Schottky-Igusa form is defined for genus 4");
    }
    return theta(CVector::Zero(4), B, chr, n_delta).value;
}

std::array<cdouble, 3> coset_products(const RiemannMatrix& B) {
    if (B.genus() != 4) {
        throw WrongGenusError("the Schottky-Igusa form is defined for genus 4");
    }
    const int n = suggested_truncation(lattice_ymin(B), 1e-14);
    const auto set = IgusaCharacteristicSet::standard();
    std::array<cdouble, 3> pis;
    for (int i = 0; i < 3; ++i) {
        cdouble prod{1.0, 0.0};
        for (const auto& chr : set.coset(i)) {
            prod *= theta_constant(chr, B, n);
        }
        pis[static_cast<size_t>(i)] = prod;
    }
    return pis;
}

cdouble schottky_igusa(const RiemannMatrix& B) {
    const auto [p1, p2, p3] = coset_products(B);
    return p1 * p1 + p2 * p2 + p3 * p3 - 2.0 * (p1 * p2 + p1 * p3 + p2 * p3);
}

}  // namespace schottky
