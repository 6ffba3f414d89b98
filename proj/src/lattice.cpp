#include "schottky/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

namespace schottky {

namespace {

// Gram-Schmidt data for the columns of B: mu (strictly lower part used)
// and the squared norms of the orthogonalized vectors.
void gram_schmidt(const RMatrix& B, RMatrix& mu, RVector& cnorm) {
    const int n = static_cast<int>(B.cols());
    RMatrix Bstar = B;
    mu = RMatrix::Identity(n, n);
    cnorm.resize(n);
    for (int i = 0; i < n; ++i) {
        RVector v = B.col(i);
        for (int j = 0; j < i; ++j) {
            mu(i, j) = B.col(i).dot(Bstar.col(j)) / cnorm[j];
            v -= mu(i, j) * Bstar.col(j);
        }
        Bstar.col(i) = v;
        cnorm[i] = v.squaredNorm();
        if (cnorm[i] <= 0.0) {
            throw RankDeficientError("lattice basis is rank deficient");
        }
    }
}

// Depth-first Schnorr-Euchner enumeration over the reduced basis. All
// coefficient vectors with ||sum x_i b_i||^2 <= radius2 are reported.
void enumerate_level(int level, double partial, std::vector<std::int64_t>& x,
                     const RMatrix& mu, const RVector& cnorm, double radius2,
                     const std::function<void(const std::vector<std::int64_t>&, double)>& emit) {
    if (level < 0) {
        emit(x, partial);
        return;
    }
    double center = 0.0;
    for (size_t j = level + 1; j < x.size(); ++j) {
        center -= static_cast<double>(x[j]) * mu(static_cast<int>(j), level);
    }
    const std::int64_t base = static_cast<std::int64_t>(std::llround(center));
    // Walk outward from the rounded center until the partial norm bound fails
    // on both sides.
    for (int dir = 0; dir < 2; ++dir) {
        std::int64_t xi = (dir == 0) ? base : base - 1;
        const std::int64_t step = (dir == 0) ? 1 : -1;
        while (true) {
            const double d = static_cast<double>(xi) - center;
            const double contrib = d * d * cnorm[level];
            if (partial + contrib > radius2) break;
            x[level] = xi;
            enumerate_level(level - 1, partial + contrib, x, mu, cnorm, radius2, emit);
            xi += step;
        }
    }
    x[level] = 0;
}

void canonicalize_sign(IVector& v) {
    for (int i = 0; i < v.size(); ++i) {
        if (v[i] != 0) {
            if (v[i] < 0) v = -v;
            return;
        }
    }
}

bool lex_less(const IVector& a, const IVector& b) {
    for (int i = 0; i < a.size(); ++i) {
        if (a[i] != b[i]) return a[i] < b[i];
    }
    return false;
}

}  // namespace

IMatrix lll_reduce(const RMatrix& basis) {
    const int n = static_cast<int>(basis.cols());
    constexpr double delta = 0.99;
    RMatrix B = basis;
    IMatrix U = IMatrix::Identity(n, n);
    RMatrix mu;
    RVector cnorm;
    gram_schmidt(B, mu, cnorm);
    int k = 1;
    int guard = 0;
    while (k < n) {
        if (++guard > 100000) {
            throw NoConvergenceError("LLL did not terminate");
        }
        for (int j = k - 1; j >= 0; --j) {
            const auto q = static_cast<std::int64_t>(std::llround(mu(k, j)));
            if (q != 0) {
                B.col(k) -= static_cast<double>(q) * B.col(j);
                U.col(k) -= q * U.col(j);
                gram_schmidt(B, mu, cnorm);
            }
        }
        if (cnorm[k] >= (delta - mu(k, k - 1) * mu(k, k - 1)) * cnorm[k - 1]) {
            ++k;
        } else {
            B.col(k).swap(B.col(k - 1));
            U.col(k).swap(U.col(k - 1));
            gram_schmidt(B, mu, cnorm);
            k = std::max(k - 1, 1);
        }
    }
    return U;
}

LatticeResult shortest_lattice_vector(const RMatrix& T) {
    const int n = static_cast<int>(T.cols());
    if (T.rows() != n) {
        throw RankDeficientError("lattice basis must be square");
    }
    const IMatrix U = lll_reduce(T);
    RMatrix B = T * U.cast<double>();
    RMatrix mu;
    RVector cnorm;
    gram_schmidt(B, mu, cnorm);

    double radius2 = B.colwise().squaredNorm().minCoeff() * (1.0 + 1e-12);
    double best2 = radius2;
    std::vector<IVector> candidates;
    std::vector<std::int64_t> x(static_cast<size_t>(n), 0);
    std::function<void(const std::vector<std::int64_t>&, double)> emit =
        [&](const std::vector<std::int64_t>& coeffs, double len2) {
            bool zero = std::all_of(coeffs.begin(), coeffs.end(),
                                    [](std::int64_t c) { return c == 0; });
            if (zero) return;
            if (len2 < best2 * (1.0 - 1e-12)) {
                best2 = len2;
                candidates.clear();
            }
            if (len2 <= best2 * (1.0 + 1e-9)) {
                IVector xi(n);
                for (int i = 0; i < n; ++i) xi[i] = coeffs[static_cast<size_t>(i)];
                IVector v = U * xi;
                canonicalize_sign(v);
                candidates.push_back(v);
            }
        };
    enumerate_level(n - 1, 0.0, x, mu, cnorm, radius2, emit);

    // Re-filter: the radius shrank while enumerating, so drop stale entries.
    LatticeResult result;
    bool have = false;
    for (const auto& v : candidates) {
        const double len2 = (T * v.cast<double>()).squaredNorm();
        if (len2 > best2 * (1.0 + 1e-9)) continue;
        if (!have || len2 < result.length * result.length * (1.0 - 1e-12) ||
            (std::abs(len2 - result.length * result.length) <=
                 1e-9 * result.length * result.length &&
             lex_less(v, result.vector))) {
            result.vector = v;
            result.length = std::sqrt(len2);
            have = true;
        }
    }
    if (!have) {
        throw SchottkyError("shortest vector enumeration found no candidate");
    }
    return result;
}

IMatrix unimodular_completion(const IVector& v) {
    const int n = static_cast<int>(v.size());
    IVector w = v;
    IMatrix U = IMatrix::Identity(n, n);
    // Reduce w to +-e_k by integer row operations, mirroring each operation
    // as the inverse column operation on U, so that U * e_1 = v at the end.
    while (true) {
        int nz = -1, count = 0;
        for (int i = 0; i < n; ++i) {
            if (w[i] != 0) {
                ++count;
                if (nz < 0 || std::llabs(w[i]) < std::llabs(w[nz])) nz = i;
            }
        }
        if (count == 0) throw SchottkyError("cannot complete the zero vector");
        if (count == 1) {
            if (nz != 0) {
                std::swap(w[0], w[nz]);
                U.col(0).swap(U.col(nz));
            }
            if (w[0] < 0) {
                w[0] = -w[0];
                U.col(0) = -U.col(0);
            }
            if (w[0] != 1) {
                throw SchottkyError("unimodular completion requires a primitive vector");
            }
            return U;
        }
        for (int i = 0; i < n; ++i) {
            if (i == nz || w[i] == 0) continue;
            // w_i -= q * w_nz  <=>  U.col(nz) += q * U.col(i)
            const std::int64_t q = w[i] / w[nz];
            if (q != 0) {
                w[i] -= q * w[nz];
                U.col(nz) += q * U.col(i);
            }
        }
    }
}

int truncation_radius(double y_min, double delta) {
    if (!(delta > 0.0) || !(delta < 1.0)) {
        throw InvalidDeltaError("delta must lie in (0, 1)");
    }
    if (!(y_min > 0.0)) {
        throw InvalidDeltaError("y_min must be positive");
    }
    const double bound = std::sqrt(-std::log(delta) / (pi * y_min)) + 0.5;
    return std::max(1, static_cast<int>(std::ceil(bound)));
}

int suggested_truncation(double y_min, double delta) {
    // Floor of 5: the radius formula is asymptotic and optimistic for the
    // smallest lattices; the floor costs little at low genus and protects
    // the tails of products of several theta values.
    return std::max(truncation_radius(y_min, delta), 5);
}

}  // namespace schottky
