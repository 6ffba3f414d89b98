#include "schottky/theta.hpp"

#include <cstdlib>
#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include <Eigen/Cholesky>

namespace schottky {

namespace {

const cdouble I{0.0, 1.0};

struct TableKey {
    int n;
    std::vector<double> data;  // matrix entries (re, im interleaved) then the p shift

    bool operator<(const TableKey& o) const {
        if (n != o.n) return n < o.n;
        return data < o.data;
    }
};

TableKey make_key(const CMatrix& B, const RVector& p, int n) {
    TableKey key;
    key.n = n;
    key.data.reserve(static_cast<size_t>(2 * B.size() + p.size()));
    for (int i = 0; i < B.rows(); ++i) {
        for (int j = 0; j < B.cols(); ++j) {
            key.data.push_back(B(i, j).real());
            key.data.push_back(B(i, j).imag());
        }
    }
    for (int i = 0; i < p.size(); ++i) key.data.push_back(p[i]);
    return key;
}

std::size_t hypercube_size(int g, int n) {
    std::size_t m = 1;
    for (int i = 0; i < g; ++i) m *= static_cast<std::size_t>(2 * n + 1);
    return m;
}

// exp(pi i <N+p, B(N+p)>) for every N in the hypercube, in odometer order
// (first index slowest). The quadratic form is maintained incrementally down
// the recursion, O(g) per term.
void build_quad_recursive(int level, int g, int n, const CMatrix& B, const RVector& p,
                          cdouble partial, std::vector<CVector>& t_stack,
                          std::vector<cdouble>& out, std::size_t& idx) {
    if (level == g) {
        out[idx++] = std::exp(I * pi * partial);
        return;
    }
    for (int c = 0; c <= 2 * n; ++c) {
        const double v = static_cast<double>(c - n) + p[level];
        const CVector& t = t_stack[static_cast<size_t>(level)];
        const cdouble next =
            partial + 2.0 * v * t[level] + B(level, level) * (v * v);
        CVector& tn = t_stack[static_cast<size_t>(level) + 1];
        tn = t;
        for (int k = level + 1; k < g; ++k) tn[k] += B(k, level) * v;
        build_quad_recursive(level + 1, g, n, B, p, next, t_stack, out, idx);
    }
}

std::shared_ptr<const std::vector<cdouble>> build_quad_table(const CMatrix& B,
                                                             const RVector& p, int n) {
    const int g = static_cast<int>(B.rows());
    auto out = std::make_shared<std::vector<cdouble>>(hypercube_size(g, n));
    std::vector<CVector> t_stack(static_cast<size_t>(g) + 1, CVector::Zero(g));
    std::size_t idx = 0;
    build_quad_recursive(0, g, n, B, p, cdouble{0.0, 0.0}, t_stack, *out, idx);
    return out;
}

std::mutex g_cache_mutex;
std::map<TableKey, std::shared_ptr<const std::vector<cdouble>>> g_cache;
std::size_t g_cache_entries = 0;

std::shared_ptr<const std::vector<cdouble>> acquire_table(const CMatrix& B,
                                                          const RVector& p, int n) {
    const std::size_t m = hypercube_size(static_cast<int>(B.rows()), n);
    const std::size_t budget = table_entry_budget();
    if (m > budget) return nullptr;  // stream instead
    TableKey key = make_key(B, p, n);
    {
        std::lock_guard<std::mutex> lock(g_cache_mutex);
        auto it = g_cache.find(key);
        if (it != g_cache.end()) return it->second;
    }
    auto table = build_quad_table(B, p, n);
    {
        std::lock_guard<std::mutex> lock(g_cache_mutex);
        if (g_cache_entries + m > 4 * budget) {
            g_cache.clear();
            g_cache_entries = 0;
        }
        auto [it, inserted] = g_cache.emplace(std::move(key), table);
        if (inserted) g_cache_entries += m;
        return it->second;
    }
}

struct SumState {
    cdouble value{0.0, 0.0};
    CVector grad_raw;  // sum of term * (N_i + p_i); scaled by 2 pi i at the end
};

// Shared series core: term = quad(N) * prod_j phase[j][c_j], where
// phase[j][c] = exp(2 pi i (c - n + p_j) w_j). When quad is null the
// quadratic exponential is recomputed per term (streaming mode).
void sum_recursive(int level, int g, int n, const CMatrix& B, const RVector& p,
                   const std::vector<std::vector<cdouble>>& phase, cdouble prefix,
                   cdouble quad_partial, std::vector<CVector>& t_stack,
                   const std::vector<cdouble>* quad, std::size_t& idx,
                   std::vector<double>& coord, SumState& s) {
    if (level == g) {
        cdouble term;
        if (quad) {
            term = (*quad)[idx++] * prefix;
        } else {
            term = std::exp(I * pi * quad_partial) * prefix;
        }
        s.value += term;
        for (int j = 0; j < g; ++j) s.grad_raw[j] += term * coord[static_cast<size_t>(j)];
        return;
    }
    for (int c = 0; c <= 2 * n; ++c) {
        const double v = static_cast<double>(c - n) + p[level];
        coord[static_cast<size_t>(level)] = v;
        cdouble next_quad{0.0, 0.0};
        if (!quad) {
            const CVector& t = t_stack[static_cast<size_t>(level)];
            next_quad = quad_partial + 2.0 * v * t[level] + B(level, level) * (v * v);
            CVector& tn = t_stack[static_cast<size_t>(level) + 1];
            tn = t;
            for (int k = level + 1; k < g; ++k) tn[k] += B(k, level) * v;
        }
        sum_recursive(level + 1, g, n, B, p, phase, prefix * phase[static_cast<size_t>(level)][static_cast<size_t>(c)],
                      next_quad, t_stack, quad, idx, coord, s);
    }
}

ThetaEval theta_sum(const CMatrix& B, const RVector& p, const CVector& w, int n) {
    const int g = static_cast<int>(B.rows());
    auto quad = acquire_table(B, p, n);

    std::vector<std::vector<cdouble>> phase(static_cast<size_t>(g));
    for (int j = 0; j < g; ++j) {
        auto& u = phase[static_cast<size_t>(j)];
        u.resize(static_cast<size_t>(2 * n + 1));
        const cdouble step = std::exp(2.0 * pi * I * w[j]);
        u[0] = std::exp(2.0 * pi * I * (static_cast<double>(-n) + p[j]) * w[j]);
        for (int c = 1; c <= 2 * n; ++c) u[static_cast<size_t>(c)] = u[static_cast<size_t>(c - 1)] * step;
    }

    SumState s;
    s.grad_raw = CVector::Zero(g);
    std::vector<CVector> t_stack;
    if (!quad) t_stack.assign(static_cast<size_t>(g) + 1, CVector::Zero(g));
    std::size_t idx = 0;
    std::vector<double> coord(static_cast<size_t>(g), 0.0);
    sum_recursive(0, g, n, B, p, phase, cdouble{1.0, 0.0}, cdouble{0.0, 0.0}, t_stack,
                  quad ? quad.get() : nullptr, idx, coord, s);

    ThetaEval eval;
    eval.value = s.value;
    eval.gradient = 2.0 * pi * I * s.grad_raw;
    return eval;
}

}  // namespace

std::size_t table_entry_budget() {
    static const std::size_t budget = [] {
        if (const char* env = std::getenv("SCHOTTKY_TABLE_BUDGET")) {
            const long long v = std::atoll(env);
            if (v > 0) return static_cast<std::size_t>(v);
        }
        return static_cast<std::size_t>(25'000'000);
    }();
    return budget;
}

ThetaEval theta(const CVector& z, const RiemannMatrix& B, const Characteristic& chr,
                int n_delta) {
    if (n_delta < 1) throw InvalidDeltaError("n_delta must be >= 1");
    const CVector w = z + chr.q.cast<cdouble>();
    return theta_sum(B.mat(), chr.p, w, n_delta);
}

ThetaEval theta_via_zero_char(const CVector& z, const RiemannMatrix& B,
                              const Characteristic& chr, int n_delta) {
    if (n_delta < 1) throw InvalidDeltaError("n_delta must be >= 1");
    const int g = B.genus();
    const CVector shifted = z + B.mat() * chr.p.cast<cdouble>() + chr.q.cast<cdouble>();
    const ThetaEval base = theta_sum(B.mat(), RVector::Zero(g), shifted, n_delta);
    const cdouble quad = (chr.p.cast<cdouble>().transpose() * B.mat() * chr.p.cast<cdouble>())(0);
    cdouble lin{0.0, 0.0};
    for (int i = 0; i < g; ++i) lin += chr.p[i] * (z[i] + chr.q[i]);
    const cdouble factor = std::exp(pi * I * quad + 2.0 * pi * I * lin);
    ThetaEval eval;
    eval.value = factor * base.value;
    eval.gradient = factor * (base.gradient + 2.0 * pi * I * base.value * chr.p.cast<cdouble>());
    return eval;
}

ThetaEval theta_wrapped(const CVector& z, const RiemannMatrix& B, const Characteristic& chr,
                        int n_delta) {
    const WrapResult wr = wrap_to_fundamental(z, B);
    const ThetaEval base = theta(wr.z_wrapped, B, chr, n_delta);
    // theta[p,q](zw + m + Bn) = exp(2 pi i <p,m> - pi i <n,Bn> - 2 pi i <n,zw+q>) theta[p,q](zw)
    const CVector nv = wr.n.cast<double>().cast<cdouble>();
    const cdouble quad = (nv.transpose() * B.mat() * nv)(0);
    cdouble lin{0.0, 0.0}, pm{0.0, 0.0};
    for (int i = 0; i < B.genus(); ++i) {
        lin += nv[i] * (wr.z_wrapped[i] + chr.q[i]);
        pm += chr.p[i] * static_cast<double>(wr.m[i]);
    }
    const cdouble factor = std::exp(2.0 * pi * I * pm - pi * I * quad - 2.0 * pi * I * lin);
    ThetaEval eval;
    eval.value = factor * base.value;
    eval.gradient = factor * (base.gradient - 2.0 * pi * I * base.value * nv);
    return eval;
}

void split_characteristics(const CVector& z, const RiemannMatrix& B, RVector& p,
                           RVector& q) {
    Eigen::LLT<RMatrix> llt(B.imag());
    q = llt.solve(z.imag());
    p = z.real() - B.real() * q;
}

WrapResult wrap_to_fundamental(const CVector& z, const RiemannMatrix& B) {
    const int g = B.genus();
    RVector p, q;
    split_characteristics(z, B, p, q);
    WrapResult r;
    r.m.resize(g);
    r.n.resize(g);
    for (int i = 0; i < g; ++i) {
        r.m[i] = static_cast<std::int64_t>(round_half_toward_zero(p[i]));
        r.n[i] = static_cast<std::int64_t>(round_half_toward_zero(q[i]));
    }
    r.z_wrapped = z - r.m.cast<double>().cast<cdouble>() -
                  B.mat() * r.n.cast<double>().cast<cdouble>();
    return r;
}

}  // namespace schottky
