#pragma once

#include "qtor/qrat.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <string>
#include <vector>

namespace qtor {

/// Sparse multivariate Laurent polynomial over QRat.  Variables are named;
/// the stored order is sorted-by-name so two polynomials over the same set
/// of names always agree on exponent layout.  No zero coefficients are kept.
class MPoly {
  public:
    using Exponents = std::vector<int>;

    MPoly() = default;
    explicit MPoly(std::vector<std::string> vars) : vars_(std::move(vars)) {
        std::sort(vars_.begin(), vars_.end());
        vars_.erase(std::unique(vars_.begin(), vars_.end()), vars_.end());
    }

    static MPoly zero(std::vector<std::string> vars) { return MPoly(std::move(vars)); }

    static MPoly constant(std::vector<std::string> vars, QRat c) {
        MPoly p(std::move(vars));
        p.add_term(Exponents(p.vars_.size(), 0), std::move(c));
        return p;
    }

    static MPoly variable(std::vector<std::string> vars, const std::string& name) {
        MPoly p(std::move(vars));
        Exponents e(p.vars_.size(), 0);
        e[p.index_of(name)] = 1;
        p.add_term(std::move(e), QRat(1));
        return p;
    }

    /// c * prod names[i]^exps[i]; unnamed variables get exponent 0.
    static MPoly monomial(std::vector<std::string> vars,
                          const std::vector<std::pair<std::string, int>>& exps, QRat c) {
        MPoly p(std::move(vars));
        Exponents e(p.vars_.size(), 0);
        for (const auto& [name, k] : exps) e[p.index_of(name)] += k;
        p.add_term(std::move(e), std::move(c));
        return p;
    }

    const std::vector<std::string>& vars() const { return vars_; }
    const std::map<Exponents, QRat>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    size_t term_count() const { return terms_.size(); }

    size_t index_of(const std::string& name) const {
        auto it = std::lower_bound(vars_.begin(), vars_.end(), name);
        if (it == vars_.end() || *it != name)
            throw usage_error("MPoly: unknown variable '" + name + "'");
        return size_t(it - vars_.begin());
    }

    QRat coeff(const Exponents& e) const {
        auto it = terms_.find(e);
        return it == terms_.end() ? QRat() : it->second;
    }

    void add_term(Exponents e, QRat c) { accumulate(e, c); }

    bool operator==(const MPoly& o) const {
        if (vars_ == o.vars_) return terms_ == o.terms_;
        auto [a, b] = aligned(*this, o);
        return a.terms_ == b.terms_;
    }
    bool operator!=(const MPoly& o) const { return !(*this == o); }

    MPoly operator-() const {
        MPoly r = *this;
        for (auto& [e, c] : r.terms_) c = -c;
        return r;
    }

    MPoly operator+(const MPoly& o) const {
        if (vars_ != o.vars_) {
            auto [a, b] = aligned(*this, o);
            return a + b;
        }
        MPoly r = *this;
        for (const auto& [e, c] : o.terms_) r.accumulate(e, c);
        return r;
    }

    MPoly operator-(const MPoly& o) const { return *this + (-o); }

    MPoly operator*(const MPoly& o) const {
        if (vars_ != o.vars_) {
            auto [a, b] = aligned(*this, o);
            return a * b;
        }
        MPoly r(vars_raw());
        Exponents e(vars_.size());
        for (const auto& [ea, ca] : terms_)
            for (const auto& [eb, cb] : o.terms_) {
                for (size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
                r.accumulate(e, ca * cb);
            }
        return r;
    }

    MPoly operator*(const QRat& s) const {
        if (s.is_zero()) return MPoly(vars_raw());
        MPoly r = *this;
        for (auto& [e, c] : r.terms_) c *= s;
        return r;
    }

    MPoly& operator+=(const MPoly& o) { return *this = *this + o; }
    MPoly& operator-=(const MPoly& o) { return *this = *this - o; }
    MPoly& operator*=(const MPoly& o) { return *this = *this * o; }

    /// Relabel variables of the listed subset by a permutation: variable
    /// subset[i] is replaced by subset[perm[i]] everywhere.
    MPoly permuted(const std::vector<size_t>& perm,
                   const std::vector<std::string>& subset) const {
        if (perm.size() != subset.size())
            throw usage_error("MPoly: permutation arity does not match variable list");
        std::vector<size_t> src(subset.size()), dst(subset.size());
        for (size_t i = 0; i < subset.size(); ++i) {
            src[i] = index_of(subset[i]);
            dst[i] = index_of(subset[perm[i]]);
        }
        MPoly r(vars_raw());
        for (const auto& [e, c] : terms_) {
            Exponents e2 = e;
            for (size_t i = 0; i < src.size(); ++i) e2[src[i]] = 0;
            for (size_t i = 0; i < src.size(); ++i) e2[dst[i]] += e[src[i]];
            r.accumulate(e2, c);
        }
        return r;
    }

    /// Polynomial of the coefficient of name^k (the named variable's
    /// exponent is zeroed in the result).
    MPoly coeff_of(const std::string& name, int k) const {
        size_t idx = index_of(name);
        MPoly r(vars_raw());
        for (const auto& [e, c] : terms_)
            if (e[idx] == k) {
                Exponents e2 = e;
                e2[idx] = 0;
                r.accumulate(e2, c);
            }
        return r;
    }

    int degree_in(const std::string& name) const {
        size_t idx = index_of(name);
        int d = 0;
        for (const auto& [e, c] : terms_) d = std::max(d, e[idx]);
        return d;
    }

    /// Every coefficient evaluated at q = 1 (stays a QRat-coefficient
    /// polynomial, with constant rational coefficients).
    MPoly specialize_q1() const {
        MPoly r(vars_raw());
        for (const auto& [e, c] : terms_) {
            BigRational v = c.specialize_q1();
            r.accumulate(e, QRat::rational(boost::multiprecision::numerator(v),
                                           boost::multiprecision::denominator(v)));
        }
        return r;
    }

    /// Deterministic rendering: monomials sorted by descending total degree,
    /// then by the exponent vector.
    std::string str() const {
        if (terms_.empty()) return "0";
        std::vector<const std::pair<const Exponents, QRat>*> ts;
        for (const auto& t : terms_) ts.push_back(&t);
        auto total = [](const Exponents& e) { return std::accumulate(e.begin(), e.end(), 0); };
        std::sort(ts.begin(), ts.end(), [&](auto* a, auto* b) {
            int ta = total(a->first), tb = total(b->first);
            if (ta != tb) return ta > tb;
            return a->first > b->first;
        });
        std::string out;
        for (auto* t : ts) {
            if (!out.empty()) out += " + ";
            std::string cs = t->second.str();
            std::string mono;
            for (size_t i = 0; i < vars_.size(); ++i) {
                if (t->first[i] == 0) continue;
                if (!mono.empty()) mono += "*";
                mono += vars_[i];
                if (t->first[i] != 1) mono += "^" + std::to_string(t->first[i]);
            }
            if (mono.empty())
                out += cs;
            else if (cs == "1")
                out += mono;
            else if (cs == "-1")
                out += "-" + mono;
            else
                out += coeff_wrapped(cs) + "*" + mono;
        }
        return out;
    }

    /// First stored term in key order, for witness reports.
    const std::pair<const Exponents, QRat>* first_term() const {
        return terms_.empty() ? nullptr : &*terms_.begin();
    }

    void accumulate(const Exponents& e, const QRat& c) {
        if (c.is_zero()) return;
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            terms_.emplace(e, c);
        } else {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

  private:
    std::vector<std::string> vars_raw() const { return vars_; }

    static std::pair<MPoly, MPoly> aligned(const MPoly& a, const MPoly& b) {
        std::vector<std::string> u = a.vars_;
        u.insert(u.end(), b.vars_.begin(), b.vars_.end());
        MPoly ra(u), rb(u);
        auto extend = [&](const MPoly& src, MPoly& dst) {
            std::vector<size_t> where(src.vars_.size());
            for (size_t i = 0; i < src.vars_.size(); ++i) where[i] = dst.index_of(src.vars_[i]);
            for (const auto& [e, c] : src.terms_) {
                Exponents e2(dst.vars_.size(), 0);
                for (size_t i = 0; i < e.size(); ++i) e2[where[i]] = e[i];
                dst.accumulate(e2, c);
            }
        };
        extend(a, ra);
        extend(b, rb);
        return {std::move(ra), std::move(rb)};
    }

    std::vector<std::string> vars_;
    std::map<Exponents, QRat> terms_;
};

inline MPoly operator*(const QRat& s, const MPoly& p) { return p * s; }

/// sgn of a permutation given as images of 0..n-1.
inline int permutation_sign(const std::vector<size_t>& perm) {
    int inv = 0;
    for (size_t i = 0; i < perm.size(); ++i)
        for (size_t j = i + 1; j < perm.size(); ++j)
            if (perm[i] > perm[j]) ++inv;
    return inv % 2 == 0 ? 1 : -1;
}

/// sigma.p: relabel the listed variables by sigma.
inline MPoly sym_action(const std::vector<size_t>& perm, const MPoly& p,
                        const std::vector<std::string>& vars) {
    return p.permuted(perm, vars);
}

/// Sum of sigma.p over the full symmetric group on the listed variables.
inline MPoly symmetrize(const MPoly& p, const std::vector<std::string>& vars) {
    std::vector<size_t> perm(vars.size());
    std::iota(perm.begin(), perm.end(), 0);
    MPoly acc = MPoly::zero(p.vars());
    do {
        acc += p.permuted(perm, vars);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return acc;
}

/// Sum of sgn(sigma) * sigma.p over the full symmetric group.
inline MPoly antisymmetrize(const MPoly& p, const std::vector<std::string>& vars) {
    std::vector<size_t> perm(vars.size());
    std::iota(perm.begin(), perm.end(), 0);
    MPoly acc = MPoly::zero(p.vars());
    do {
        MPoly img = p.permuted(perm, vars);
        acc += permutation_sign(perm) == 1 ? img : -img;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return acc;
}

/// (z - c w)(z - c q^2 w) ... (z - c q^{2(k-1)} w): the k-fold q-bracket
/// with an extra scale c on the second variable.
inline MPoly qbracket_scaled(const std::vector<std::string>& vars, const std::string& zvar,
                             const std::string& wvar, const QRat& scale, int k) {
    if (k < 1) throw usage_error("qbracket: k must be >= 1");
    MPoly acc = MPoly::constant(vars, QRat(1));
    for (int j = 0; j < k; ++j) {
        MPoly factor =
            MPoly::variable(vars, zvar) - MPoly::variable(vars, wvar) * (scale * QRat::q(2 * j));
        acc *= factor;
    }
    return acc;
}

/// [z, w; k]_{q^2} = (z-w)(z-wq^2)...(z-wq^{2(k-1)}).
inline MPoly qbracket_poly(const std::vector<std::string>& vars, const std::string& zvar,
                           const std::string& wvar, int k) {
    return qbracket_scaled(vars, zvar, wvar, QRat(1), k);
}

} // namespace qtor
