#pragma once

#include "qtor/fock.hpp"

#include <functional>
#include <map>

namespace qtor {

/// Twisted vertex operators on the Fock space:
///   E_-^s(alpha,z) = exp( s sum_{m odd>=1} (2 q^{-sm/2}/[m]) a_alpha(-m) z^m )
///   E_+^s(alpha,z) = exp(-s sum_{m odd>=1} (2 q^{-sm/2}/[m]) a_alpha(m) z^-m )
///   X_alpha^s(z)   = E_-^s E_+^s e_alpha^s = sum_n X_alpha^s(n) z^-n
/// with s = +-1.  All mode extraction is exact: the annihilation expansion
/// terminates at the input's degree and the creation side is bounded by the
/// requested modes, so no truncation error can enter any coefficient.

inline QRat e_minus_coeff(int s, int m) {
    thread_local std::map<std::pair<int, int>, QRat> cache;
    auto it = cache.find({s, m});
    if (it == cache.end())
        it = cache.emplace(std::pair{s, m}, QRat(2 * s) * QRat::q_half(-s * m) / qint(m)).first;
    return it->second;
}
inline QRat e_plus_coeff(int s, int m) { return -e_minus_coeff(s, m); }

namespace detail {

using ModeCoeff = std::function<QRat(int)>;

/// exp(sum_{m odd} x_m a_alpha(-m)) v, split by created weight 0..max_weight.
/// Mode-by-mode knapsack; contributions flow strictly upward, so processing
/// source weights in descending order updates in place.
inline std::vector<FockVector> exp_creation_buckets(const CartanData& c, const LatticeElt& alpha,
                                                    const ModeCoeff& x, const FockVector& v,
                                                    int max_weight) {
    std::vector<FockVector> buckets(size_t(std::max(max_weight, 0)) + 1);
    buckets[0] = v;
    if (v.is_zero()) return buckets;
    for (int m = 1; m <= max_weight; m += 2) {
        const QRat xm = x(m);
        if (xm.is_zero()) continue;
        for (int u = max_weight - m; u >= 0; --u) {
            if (buckets[size_t(u)].is_zero()) continue;
            FockVector power = buckets[size_t(u)];
            QRat factor(1);
            for (int k = 1; u + k * m <= max_weight; ++k) {
                power = heis_apply(c, alpha, -m, power);
                factor *= xm / QRat(k);
                buckets[size_t(u + k * m)] += power * factor;
            }
        }
    }
    return buckets;
}

/// exp(sum_{m odd} x_m a_alpha(m)) v, split by annihilated weight; the
/// expansion terminates at the input's degree.
inline std::vector<FockVector> exp_annihilation_buckets(const CartanData& c,
                                                        const LatticeElt& alpha,
                                                        const ModeCoeff& x, const FockVector& v) {
    const int max_weight = v.max_degree();
    std::vector<FockVector> buckets(size_t(max_weight) + 1);
    buckets[0] = v;
    if (v.is_zero()) return buckets;
    for (int m = 1; m <= max_weight; m += 2) {
        const QRat xm = x(m);
        if (xm.is_zero()) continue;
        for (int u = max_weight - m; u >= 0; --u) {
            if (buckets[size_t(u)].is_zero()) continue;
            FockVector power = buckets[size_t(u)];
            QRat factor(1);
            for (int k = 1; u + k * m <= max_weight; ++k) {
                power = heis_apply(c, alpha, m, power);
                if (power.is_zero()) break;
                factor *= xm / QRat(k);
                buckets[size_t(u + k * m)] += power * factor;
            }
        }
    }
    return buckets;
}

} // namespace detail

/// All modes X_alpha^s(n) v for n in [n_min, n_max], computed in one pass.
inline std::map<int, FockVector> vertex_all_modes(const CartanData& c, const LatticeElt& alpha,
                                                  int s, int n_min, int n_max,
                                                  const FockVector& v) {
    std::map<int, FockVector> out;
    if (v.is_zero() || n_min > n_max) return out;
    FockVector w = group_apply(c, alpha, s, v);
    auto ann = detail::exp_annihilation_buckets(
        c, alpha, [s](int m) { return e_plus_coeff(s, m); }, w);
    for (int u = 0; u < int(ann.size()); ++u) {
        if (ann[size_t(u)].is_zero()) continue;
        const int t_max = u - n_min;
        if (t_max < 0) continue;
        auto cre = detail::exp_creation_buckets(
            c, alpha, [s](int m) { return e_minus_coeff(s, m); }, ann[size_t(u)], t_max);
        for (int t = std::max(0, u - n_max); t <= t_max; ++t) {
            if (cre[size_t(t)].is_zero()) continue;
            out[u - t] += cre[size_t(t)];
        }
    }
    return out;
}

/// Coefficient of z^{-n} in X_alpha^s(z) v.  Output is homogeneous of degree
/// deg(v) - n on homogeneous input.
inline FockVector vertex_mode(const CartanData& c, const LatticeElt& alpha, int s, int n,
                              const FockVector& v) {
    auto grid = vertex_all_modes(c, alpha, s, n, n, v);
    auto it = grid.find(n);
    return it == grid.end() ? FockVector() : it->second;
}

inline FockVector vertex_mode(const CartanData& c, size_t node, int s, int n,
                              const FockVector& v) {
    return vertex_mode(c, LatticeElt::simple(c.rank(), node), s, n, v);
}

enum class PhiPsi { phi, psi };

/// phi_{alpha,-n} v for n = 0..n_max: coefficients of
/// phi_alpha(z) = exp(2(q^{-1}-q) sum_{m odd} a_alpha(-m) z^m).
inline std::vector<FockVector> phi_buckets(const CartanData& c, const LatticeElt& alpha,
                                           const FockVector& v, int n_max) {
    const QRat coeff = QRat(2) * (QRat::q(-1) - QRat::q(1));
    return detail::exp_creation_buckets(c, alpha, [&](int) { return coeff; }, v, n_max);
}

/// psi_{alpha,n} v for n = 0..deg(v): coefficients of
/// psi_alpha(z) = exp(2(q-q^{-1}) sum_{m odd} a_alpha(m) z^-m).
inline std::vector<FockVector> psi_buckets(const CartanData& c, const LatticeElt& alpha,
                                           const FockVector& v) {
    const QRat coeff = QRat(2) * (QRat::q(1) - QRat::q(-1));
    return detail::exp_annihilation_buckets(c, alpha, [&](int) { return coeff; }, v);
}

/// phi_{i,-n} v or psi_{i,n} v (n >= 0).
inline FockVector phi_psi_mode(const CartanData& c, const LatticeElt& alpha, PhiPsi kind, int n,
                               const FockVector& v) {
    if (n < 0) throw usage_error("phi_psi_mode: mode index must be non-negative");
    if (kind == PhiPsi::phi) {
        auto b = phi_buckets(c, alpha, v, n);
        return b[size_t(n)];
    }
    auto b = psi_buckets(c, alpha, v);
    return n < int(b.size()) ? b[size_t(n)] : FockVector();
}

inline FockVector phi_psi_mode(const CartanData& c, size_t node, PhiPsi kind, int n,
                               const FockVector& v) {
    return phi_psi_mode(c, LatticeElt::simple(c.rank(), node), kind, n, v);
}

/// All coefficients of z^{-m} w^{-n} of the normal-ordered pair
///   :X_alpha^s(z) X_beta^t(w): v
/// for (m,n) in the given ranges.  Normal ordering: both creation
/// exponentials left of both annihilation exponentials, group elements
/// rightmost in original order e_alpha^s e_beta^t.
inline std::map<std::pair<int, int>, FockVector>
normal_pair_grid(const CartanData& c, const LatticeElt& alpha, int s, const LatticeElt& beta,
                 int t, int m_min, int m_max, int n_min, int n_max, const FockVector& v) {
    std::map<std::pair<int, int>, FockVector> out;
    if (v.is_zero()) return out;
    FockVector w0 = group_apply(c, alpha, s, group_apply(c, beta, t, v));
    auto annB = detail::exp_annihilation_buckets(
        c, beta, [t](int m) { return e_plus_coeff(t, m); }, w0);
    for (int ub = 0; ub < int(annB.size()); ++ub) {
        if (annB[size_t(ub)].is_zero()) continue;
        const int tb_max = ub - n_min;
        if (tb_max < 0) continue;
        auto annA = detail::exp_annihilation_buckets(
            c, alpha, [s](int m) { return e_plus_coeff(s, m); }, annB[size_t(ub)]);
        for (int ua = 0; ua < int(annA.size()); ++ua) {
            if (annA[size_t(ua)].is_zero()) continue;
            const int ta_max = ua - m_min;
            if (ta_max < 0) continue;
            auto creB = detail::exp_creation_buckets(
                c, beta, [t](int m) { return e_minus_coeff(t, m); }, annA[size_t(ua)], tb_max);
            for (int tb = std::max(0, ub - n_max); tb <= tb_max; ++tb) {
                if (creB[size_t(tb)].is_zero()) continue;
                auto creA = detail::exp_creation_buckets(
                    c, alpha, [s](int m) { return e_minus_coeff(s, m); }, creB[size_t(tb)],
                    ta_max);
                for (int ta = std::max(0, ua - m_max); ta <= ta_max; ++ta) {
                    if (creA[size_t(ta)].is_zero()) continue;
                    out[{ua - ta, ub - tb}] += creA[size_t(ta)];
                }
            }
        }
    }
    return out;
}

/// Coefficient of z^{-m} w^{-n} in :X_alpha^s(z) X_beta^t(w): v.
inline FockVector normal_pair_mode(const CartanData& c, const LatticeElt& alpha, int s,
                                   const LatticeElt& beta, int t, int m, int n,
                                   const FockVector& v) {
    auto grid = normal_pair_grid(c, alpha, s, beta, t, m, m, n, n, v);
    auto it = grid.find({m, n});
    return it == grid.end() ? FockVector() : it->second;
}

struct VertexOp {
    LatticeElt root;
    int sign; // +1 or -1
};

/// X_{alpha_1}^{s_1}(n_1) ... X_{alpha_k}^{s_k}(n_k) v by right-to-left
/// exact mode application.
inline FockVector product_mode(const CartanData& c, const std::vector<VertexOp>& ops,
                               const std::vector<int>& modes, const FockVector& v) {
    if (ops.empty()) throw usage_error("product_mode: empty operator list");
    if (ops.size() != modes.size())
        throw usage_error("product_mode: operator/mode count mismatch");
    FockVector cur = v;
    for (size_t k = ops.size(); k-- > 0;) {
        if (cur.is_zero()) return cur;
        cur = vertex_mode(c, ops[k].root, ops[k].sign, modes[k], cur);
    }
    return cur;
}

/// Full mode grid of a product of vertex operators: result[(n_1..n_k)] =
/// X^{s_1}(n_1)...X^{s_k}(n_k) v for each mode tuple with n_r in
/// [lo_r, hi_r].  Built right-to-left so shared suffixes are computed once.
inline std::map<std::vector<int>, FockVector>
product_grid(const CartanData& c, const std::vector<VertexOp>& ops, const std::vector<int>& lo,
             const std::vector<int>& hi, const FockVector& v) {
    if (ops.size() != lo.size() || ops.size() != hi.size())
        throw usage_error("product_grid: bound count mismatch");
    std::map<std::vector<int>, FockVector> layer;
    layer.emplace(std::vector<int>{}, v);
    for (size_t k = ops.size(); k-- > 0;) {
        std::map<std::vector<int>, FockVector> next;
        for (const auto& [suffix, vec] : layer) {
            if (vec.is_zero()) continue;
            auto modes = vertex_all_modes(c, ops[k].root, ops[k].sign, lo[k], hi[k], vec);
            for (auto& [n, res] : modes) {
                if (res.is_zero()) continue;
                std::vector<int> key;
                key.reserve(suffix.size() + 1);
                key.push_back(n);
                key.insert(key.end(), suffix.begin(), suffix.end());
                next[std::move(key)] += res;
            }
        }
        layer = std::move(next);
    }
    return layer;
}

} // namespace qtor
