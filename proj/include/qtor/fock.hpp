#pragma once

#include "qtor/lattice.hpp"
#include "qtor/qrat.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace qtor {

/// Basis state of the Fock space: a multiset of creation modes (node index,
/// negative odd integer), a lattice element, and a sign.  The multiset is
/// kept sorted so equality is structural; FockVector folds the sign into the
/// coefficient, so stored states always have sign +1.
struct BasisState {
    std::vector<std::pair<int, int>> modes; // (node, mode<0), sorted ascending
    LatticeElt lattice;
    int sign = 1;

    auto operator<=>(const BasisState& o) const = default;
    bool operator==(const BasisState& o) const = default;

    /// Principal degree: sum of |mode| over the creation multiset.
    int degree() const {
        int d = 0;
        for (const auto& [node, m] : modes) d += -m;
        return d;
    }

    /// "a1(-3)a2(-1)|a1+a2; +>"
    std::string str() const {
        std::string out;
        for (const auto& [node, m] : modes)
            out += "a" + std::to_string(node + 1) + "(" + std::to_string(m) + ")";
        out += "|" + lattice.str() + "; " + (sign > 0 ? "+" : "-") + ">";
        return out;
    }
};

inline int degree(const BasisState& s) { return s.degree(); }

/// Finite QRat-linear combination of basis states, canonical form: no zero
/// coefficients, no sign=-1 states (sign folded into the coefficient).
class FockVector {
  public:
    FockVector() = default;

    static FockVector zero() { return FockVector(); }

    const std::map<BasisState, QRat>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    size_t term_count() const { return terms_.size(); }

    bool operator==(const FockVector& o) const { return terms_ == o.terms_; }
    bool operator!=(const FockVector& o) const { return !(*this == o); }

    void add_term(BasisState s, QRat c) {
        if (c.is_zero()) return;
        if (s.sign < 0) {
            s.sign = 1;
            c = -c;
        }
        auto it = terms_.find(s);
        if (it == terms_.end()) {
            terms_.emplace(std::move(s), std::move(c));
        } else {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    FockVector operator+(const FockVector& o) const {
        FockVector r = *this;
        for (const auto& [s, c] : o.terms_) r.add_term(s, c);
        return r;
    }
    FockVector operator-(const FockVector& o) const {
        FockVector r = *this;
        for (const auto& [s, c] : o.terms_) r.add_term(s, -c);
        return r;
    }
    FockVector operator*(const QRat& k) const {
        if (k.is_zero()) return {};
        FockVector r = *this;
        for (auto& [s, c] : r.terms_) c *= k;
        return r;
    }
    FockVector operator-() const { return *this * QRat(-1); }
    FockVector& operator+=(const FockVector& o) {
        for (const auto& [s, c] : o.terms_) add_term(s, c);
        return *this;
    }
    FockVector& operator-=(const FockVector& o) {
        for (const auto& [s, c] : o.terms_) add_term(s, -c);
        return *this;
    }
    FockVector& operator*=(const QRat& k) { return *this = *this * k; }

    int max_degree() const {
        int d = 0;
        for (const auto& [s, c] : terms_) d = std::max(d, s.degree());
        return d;
    }

    /// First difference against another vector in basis-state order, for
    /// witness extraction.  Returns (state, this-coefficient, other-coefficient).
    struct Difference {
        BasisState state;
        QRat lhs, rhs;
    };
    std::optional<Difference> first_difference(const FockVector& o) const {
        auto a = terms_.begin();
        auto b = o.terms_.begin();
        while (a != terms_.end() || b != o.terms_.end()) {
            if (b == o.terms_.end() || (a != terms_.end() && a->first < b->first)) {
                return Difference{a->first, a->second, QRat()};
            }
            if (a == terms_.end() || b->first < a->first) {
                return Difference{b->first, QRat(), b->second};
            }
            if (a->second != b->second) return Difference{a->first, a->second, b->second};
            ++a;
            ++b;
        }
        return std::nullopt;
    }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::string out;
        for (const auto& [s, c] : terms_) {
            if (!out.empty()) out += " + ";
            std::string cs = c.str();
            if (cs == "1")
                out += s.str();
            else if (cs == "-1")
                out += "-" + s.str();
            else
                out += coeff_wrapped(cs) + "*" + s.str();
        }
        return out;
    }

  private:
    std::map<BasisState, QRat> terms_;
};

inline FockVector operator*(const QRat& k, const FockVector& v) { return v * k; }

/// Highest-weight vector over the group-algebra element e_beta.
inline FockVector vacuum(const LatticeElt& beta) {
    FockVector v;
    v.add_term(BasisState{{}, beta, 1}, QRat(1));
    return v;
}

/// Heisenberg bracket scalar at level one (gamma = q):
///   [a_i(m), a_j(n)] = delta_{m,-n} [a_ij m][m] / (2m).
/// Cached per (pairing, mode); this sits on the contraction hot path.
inline QRat heis_bracket_scalar(const CartanData& c, size_t i, size_t j, int m) {
    thread_local std::map<std::pair<int, int>, QRat> cache;
    const std::pair<int, int> key{c.a[i][j], m};
    auto it = cache.find(key);
    if (it == cache.end())
        it = cache.emplace(key, qint(key.first * m) * qint(m) / QRat(2 * m)).first;
    return it->second;
}

namespace detail {

/// a_i(m) v for a single node and negative odd m: creation (multiset insert).
inline FockVector create_node(size_t node, int m, const FockVector& v) {
    FockVector r;
    for (const auto& [s, c] : v.terms()) {
        BasisState t = s;
        auto pos = std::lower_bound(t.modes.begin(), t.modes.end(),
                                    std::make_pair(int(node), m));
        t.modes.insert(pos, {int(node), m});
        r.add_term(std::move(t), c);
    }
    return r;
}

/// a_i(m) v for positive odd m: contraction against each matching creation
/// factor, with the bracket scalar and the multiplicity.
inline FockVector annihilate_node(const CartanData& c, size_t node, int m, const FockVector& v) {
    FockVector r;
    for (const auto& [s, coeff] : v.terms()) {
        size_t k = 0;
        while (k < s.modes.size()) {
            // run of equal (j, -m) entries
            if (s.modes[k].second != -m) {
                ++k;
                continue;
            }
            size_t e = k + 1;
            while (e < s.modes.size() && s.modes[e] == s.modes[k]) ++e;
            const size_t mult = e - k;
            const size_t j = size_t(s.modes[k].first);
            QRat scalar = heis_bracket_scalar(c, node, j, m);
            if (!scalar.is_zero()) {
                BasisState t = s;
                t.modes.erase(t.modes.begin() + long(k));
                r.add_term(std::move(t), coeff * QRat(long(mult)) * scalar);
            }
            k = e;
        }
    }
    return r;
}

} // namespace detail

/// a_alpha(m) v with a_alpha = sum c_i a_i: multiplication operator for
/// m < 0, contraction (differential operator) for m > 0.  m must be odd.
inline FockVector heis_apply(const CartanData& c, const LatticeElt& alpha, int m,
                             const FockVector& v) {
    if (m == 0 || m % 2 == 0) throw usage_error("heis_apply: mode must be a nonzero odd integer");
    if (alpha.rank() != c.rank()) throw usage_error("heis_apply: rank mismatch");
    FockVector r;
    for (size_t i = 0; i < c.rank(); ++i) {
        const int ci = alpha.coeffs[i];
        if (ci == 0) continue;
        FockVector part =
            m < 0 ? detail::create_node(i, m, v) : detail::annihilate_node(c, i, m, v);
        r += part * QRat(ci);
    }
    return r;
}

inline FockVector heis_apply(const CartanData& c, size_t node, int m, const FockVector& v) {
    return heis_apply(c, LatticeElt::simple(c.rank(), node), m, v);
}

/// Group-algebra action: e_alpha^{+1} maps (M, beta, s) to
/// (M, beta+alpha, s*eps(alpha,beta)); e_alpha^{-1} is its inverse,
/// (M, beta, s) -> (M, beta-alpha, s*eps(alpha,beta-alpha)).
inline FockVector group_apply(const CartanData& c, const LatticeElt& alpha, int exponent,
                              const FockVector& v) {
    if (exponent != 1 && exponent != -1) throw usage_error("group_apply: exponent must be +-1");
    FockVector r;
    for (const auto& [s, coeff] : v.terms()) {
        BasisState t = s;
        if (exponent > 0) {
            t.sign = s.sign * cocycle(c, alpha, s.lattice);
            t.lattice = s.lattice + alpha;
        } else {
            t.lattice = s.lattice - alpha;
            t.sign = s.sign * cocycle(c, alpha, t.lattice);
        }
        r.add_term(std::move(t), coeff);
    }
    return r;
}

} // namespace qtor
