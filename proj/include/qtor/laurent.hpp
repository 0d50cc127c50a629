#pragma once

#include "qtor/common.hpp"

#include <algorithm>
#include <cassert>
#include <vector>

namespace qtor {

/// Integer-coefficient Laurent polynomial in the half-power parameter v,
/// where q = v^2.  Working in v keeps every expression involving q^{n/2}
/// inside one Laurent ring.  Dense representation: coeffs_[i] is the
/// coefficient of v^{low_+i}; the first and last stored coefficients are
/// nonzero, and the zero polynomial stores nothing.
class Laurent {
  public:
    Laurent() = default;

    /// c * v^exp
    static Laurent term(BigInt c, int exp) {
        Laurent r;
        if (c != 0) {
            r.low_ = exp;
            r.coeffs_.push_back(std::move(c));
        }
        return r;
    }

    static Laurent constant(BigInt c) { return term(std::move(c), 0); }
    static Laurent one() { return constant(1); }

    /// q^n = v^{2n}
    static Laurent q_power(int n) { return term(1, 2 * n); }
    /// q^{n/2} = v^n
    static Laurent q_half_power(int n) { return term(1, n); }

    bool is_zero() const { return coeffs_.empty(); }
    bool is_one() const { return coeffs_.size() == 1 && low_ == 0 && coeffs_[0] == 1; }

    /// Lowest/highest v-exponents with nonzero coefficient (zero poly: both 0).
    int low() const { return coeffs_.empty() ? 0 : low_; }
    int high() const { return coeffs_.empty() ? 0 : low_ + int(coeffs_.size()) - 1; }

    const BigInt& leading() const {
        assert(!coeffs_.empty());
        return coeffs_.back();
    }

    BigInt coeff(int exp) const {
        if (coeffs_.empty() || exp < low_ || exp > high()) return 0;
        return coeffs_[size_t(exp - low_)];
    }

    bool operator==(const Laurent& o) const { return low() == o.low() && coeffs_ == o.coeffs_; }
    bool operator!=(const Laurent& o) const { return !(*this == o); }

    /// Total order used for canonical map keys.
    std::strong_ordering operator<=>(const Laurent& o) const {
        if (auto c = low() <=> o.low(); c != 0) return c;
        if (auto c = coeffs_.size() <=> o.coeffs_.size(); c != 0) return c;
        for (size_t i = 0; i < coeffs_.size(); ++i)
            if (auto c = coeffs_[i].compare(o.coeffs_[i]); c != 0)
                return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }

    Laurent operator-() const {
        Laurent r = *this;
        for (auto& c : r.coeffs_) c = -c;
        return r;
    }

    Laurent operator+(const Laurent& o) const {
        if (is_zero()) return o;
        if (o.is_zero()) return *this;
        int lo = std::min(low_, o.low_);
        int hi = std::max(high(), o.high());
        std::vector<BigInt> out(size_t(hi - lo + 1));
        for (size_t i = 0; i < coeffs_.size(); ++i) out[size_t(low_ - lo) + i] += coeffs_[i];
        for (size_t i = 0; i < o.coeffs_.size(); ++i) out[size_t(o.low_ - lo) + i] += o.coeffs_[i];
        return from_dense(lo, std::move(out));
    }

    Laurent operator-(const Laurent& o) const { return *this + (-o); }

    Laurent operator*(const Laurent& o) const {
        if (is_zero() || o.is_zero()) return {};
        std::vector<BigInt> out(coeffs_.size() + o.coeffs_.size() - 1);
        for (size_t i = 0; i < coeffs_.size(); ++i)
            for (size_t j = 0; j < o.coeffs_.size(); ++j)
                out[i + j] += coeffs_[i] * o.coeffs_[j];
        return from_dense(low_ + o.low_, std::move(out));
    }

    Laurent& operator+=(const Laurent& o) { return *this = *this + o; }
    Laurent& operator-=(const Laurent& o) { return *this = *this - o; }
    Laurent& operator*=(const Laurent& o) { return *this = *this * o; }

    /// Multiply by v^k.
    Laurent shifted(int k) const {
        Laurent r = *this;
        if (!r.coeffs_.empty()) r.low_ += k;
        return r;
    }

    /// gcd of all integer coefficients, non-negative; 0 for the zero poly.
    BigInt content() const {
        BigInt g = 0;
        for (const auto& c : coeffs_) {
            g = boost::multiprecision::gcd(g, c);
            if (g == 1) break;
        }
        return g;
    }

    /// Exact division by an integer; every coefficient must be divisible.
    Laurent div_int(const BigInt& d) const {
        assert(d != 0);
        Laurent r = *this;
        for (auto& c : r.coeffs_) {
            assert(c % d == 0);
            c /= d;
        }
        return r;
    }

    /// Value at v = 1 (so also q = 1): the coefficient sum.
    BigInt eval_one() const {
        BigInt s = 0;
        for (const auto& c : coeffs_) s += c;
        return s;
    }

    /// Exact polynomial division; throws if the division leaves a remainder.
    /// Exponent offsets divide trivially: v^a*n / v^b*d = v^{a-b}*(n/d).
    Laurent div_exact(const Laurent& d) const {
        if (d.is_zero()) throw arithmetic_error("Laurent: division by zero");
        if (is_zero()) return {};
        std::vector<BigInt> rem = coeffs_;
        const auto& dc = d.coeffs_;
        if (rem.size() < dc.size()) throw arithmetic_error("Laurent: inexact division");
        std::vector<BigInt> quot(rem.size() - dc.size() + 1);
        for (size_t i = quot.size(); i-- > 0;) {
            BigInt& lead = rem[i + dc.size() - 1];
            if (lead == 0) continue;
            if (lead % dc.back() != 0) throw arithmetic_error("Laurent: inexact division");
            BigInt c = lead / dc.back();
            for (size_t j = 0; j < dc.size(); ++j) rem[i + j] -= c * dc[j];
            quot[i] = std::move(c);
        }
        for (const auto& c : rem)
            if (c != 0) throw arithmetic_error("Laurent: inexact division");
        return from_dense(low_ - d.low_, std::move(quot));
    }

    /// gcd of the polynomial parts (v-offsets stripped), primitive with a
    /// positive leading coefficient.  Primitive pseudo-remainder sequence.
    static Laurent gcd(Laurent a, Laurent b) {
        if (a.is_zero()) return normalize_sign(b.primitive_part());
        if (b.is_zero()) return normalize_sign(a.primitive_part());
        a = a.shifted(-a.low_).primitive_part();
        b = b.shifted(-b.low_).primitive_part();
        while (!b.is_zero()) {
            Laurent r = pseudo_rem(a, b);
            if (!r.is_zero()) r = r.shifted(-r.low_).primitive_part();
            a = std::move(b);
            b = std::move(r);
        }
        return normalize_sign(a);
    }

    /// Content-inclusive gcd: gcd of integer contents times the primitive
    /// polynomial gcd (offset-free, positive leading coefficient).
    static Laurent gcd_full(const Laurent& a, const Laurent& b) {
        if (a.is_zero() || b.is_zero()) {
            const Laurent& o = a.is_zero() ? b : a;
            return normalize_sign(o.shifted(-o.low()));
        }
        BigInt cg = boost::multiprecision::gcd(a.content(), b.content());
        Laurent g = gcd(a, b);
        if (cg > 1) {
            for (auto& c : g.coeffs_) c *= cg;
        }
        return g;
    }

    /// Renders in q-notation: even v-exponents as integer q-powers, odd ones
    /// as q^(k/2).  Terms in descending exponent order, e.g. "q^2+1+q^-2".
    std::string str() const {
        if (coeffs_.empty()) return "0";
        std::string out;
        for (int e = high(); e >= low(); --e) {
            const BigInt c = coeff(e);
            if (c == 0) continue;
            const bool neg = c < 0;
            BigInt a = neg ? BigInt(-c) : c;
            if (out.empty()) {
                if (neg) out += "-";
            } else {
                out += neg ? "-" : "+";
            }
            const bool unit = (a == 1);
            if (!unit || e == 0) out += a.str();
            if (e != 0) {
                out += "q";
                if (e == 2) {
                    // plain "q"
                } else if (e % 2 == 0) {
                    out += "^" + std::to_string(e / 2);
                } else {
                    out += "^(" + std::to_string(e) + "/2)";
                }
            }
        }
        return out;
    }

    size_t term_count() const {
        size_t n = 0;
        for (const auto& c : coeffs_)
            if (c != 0) ++n;
        return n;
    }

  private:
    static Laurent from_dense(int lo, std::vector<BigInt> v) {
        size_t b = 0, e = v.size();
        while (b < e && v[b] == 0) ++b;
        while (e > b && v[e - 1] == 0) --e;
        Laurent r;
        if (b < e) {
            r.low_ = lo + int(b);
            r.coeffs_.assign(std::make_move_iterator(v.begin() + long(b)),
                             std::make_move_iterator(v.begin() + long(e)));
        }
        return r;
    }

    Laurent primitive_part() const {
        BigInt c = content();
        if (c == 0 || c == 1) return *this;
        return div_int(c);
    }

    static Laurent normalize_sign(Laurent p) {
        if (!p.is_zero() && p.leading() < 0) return -p;
        return p;
    }

    /// Pseudo-remainder of a by b, both treated as ordinary polynomials
    /// (low offsets already stripped by the caller).  Each elimination step
    /// scales the running remainder by lead(b), so no fractions appear.
    static Laurent pseudo_rem(const Laurent& a, const Laurent& b) {
        const int da = a.high(), db = b.high();
        if (da < db) return a;
        std::vector<BigInt> r(size_t(da + 1));
        for (int e = a.low(); e <= da; ++e) r[size_t(e)] = a.coeff(e);
        const BigInt lb = b.leading();
        int dr = da;
        while (true) {
            while (dr >= 0 && r[size_t(dr)] == 0) --dr;
            if (dr < db) break;
            const BigInt c = r[size_t(dr)];
            for (int e = 0; e <= dr; ++e) r[size_t(e)] *= lb;
            for (int j = 0; j <= db; ++j) r[size_t(dr - db + j)] -= c * b.coeff(b.low() + j);
            --dr;
        }
        r.resize(size_t(std::max(db, 1)));
        return from_dense(0, std::move(r));
    }

    int low_ = 0;
    std::vector<BigInt> coeffs_;
};

} // namespace qtor
