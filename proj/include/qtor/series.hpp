#pragma once

#include "qtor/qrat.hpp"

#include <string>
#include <vector>

namespace qtor {

/// Univariate power series over QRat, truncated at an explicit degree bound.
/// Every stored coefficient is exact; truncation only loses degrees > bound.
/// Binary operations take the minimum of the two bounds.
class TruncSeries {
  public:
    TruncSeries(std::string var, int bound) : var_(std::move(var)), coeffs_(size_t(bound) + 1) {
        if (bound < 0) throw usage_error("TruncSeries: negative bound");
    }

    static TruncSeries zero(std::string var, int bound) { return TruncSeries(std::move(var), bound); }

    static TruncSeries constant(std::string var, int bound, QRat c) {
        TruncSeries s(std::move(var), bound);
        s.coeffs_[0] = std::move(c);
        return s;
    }

    static TruncSeries one(std::string var, int bound) {
        return constant(std::move(var), bound, QRat(1));
    }

    /// The variable itself (bound must be >= 1 for the coefficient to exist).
    static TruncSeries x(std::string var, int bound) {
        TruncSeries s(std::move(var), bound);
        if (bound >= 1) s.coeffs_[1] = QRat(1);
        return s;
    }

    const std::string& var() const { return var_; }
    int bound() const { return int(coeffs_.size()) - 1; }

    const QRat& coeff(int k) const {
        static const QRat zero_coeff;
        if (k < 0 || k > bound()) return zero_coeff;
        return coeffs_[size_t(k)];
    }

    void set_coeff(int k, QRat c) {
        if (k < 0 || k > bound()) throw usage_error("TruncSeries: coefficient index out of range");
        coeffs_[size_t(k)] = std::move(c);
    }

    bool is_zero() const {
        for (const auto& c : coeffs_)
            if (!c.is_zero()) return false;
        return true;
    }

    bool operator==(const TruncSeries& o) const { return var_ == o.var_ && coeffs_ == o.coeffs_; }
    bool operator!=(const TruncSeries& o) const { return !(*this == o); }

    TruncSeries operator-() const {
        TruncSeries r = *this;
        for (auto& c : r.coeffs_) c = -c;
        return r;
    }

    TruncSeries operator+(const TruncSeries& o) const {
        check_var(o);
        TruncSeries r(var_, std::min(bound(), o.bound()));
        for (int k = 0; k <= r.bound(); ++k) r.coeffs_[size_t(k)] = coeff(k) + o.coeff(k);
        return r;
    }

    TruncSeries operator-(const TruncSeries& o) const { return *this + (-o); }

    TruncSeries operator*(const TruncSeries& o) const {
        check_var(o);
        TruncSeries r(var_, std::min(bound(), o.bound()));
        for (int k = 0; k <= r.bound(); ++k) {
            QRat acc;
            for (int j = 0; j <= k; ++j) {
                if (coeff(j).is_zero() || o.coeff(k - j).is_zero()) continue;
                acc += coeff(j) * o.coeff(k - j);
            }
            r.coeffs_[size_t(k)] = std::move(acc);
        }
        return r;
    }

    TruncSeries operator*(const QRat& s) const {
        TruncSeries r = *this;
        for (auto& c : r.coeffs_) c *= s;
        return r;
    }

    TruncSeries operator/(const TruncSeries& o) const {
        check_var(o);
        if (o.coeff(0).is_zero())
            throw arithmetic_error("TruncSeries: division by series with zero constant term");
        TruncSeries r(var_, std::min(bound(), o.bound()));
        QRat inv0 = o.coeff(0).inverse();
        for (int k = 0; k <= r.bound(); ++k) {
            QRat acc = coeff(k);
            for (int j = 0; j < k; ++j) {
                if (r.coeffs_[size_t(j)].is_zero()) continue;
                acc -= r.coeffs_[size_t(j)] * o.coeff(k - j);
            }
            r.coeffs_[size_t(k)] = acc * inv0;
        }
        return r;
    }

    TruncSeries& operator+=(const TruncSeries& o) { return *this = *this + o; }
    TruncSeries& operator-=(const TruncSeries& o) { return *this = *this - o; }
    TruncSeries& operator*=(const TruncSeries& o) { return *this = *this * o; }

    /// exp(s), requires s(0) = 0.  e_k = (1/k) sum_{j=1..k} j s_j e_{k-j}.
    TruncSeries exp() const {
        if (!coeff(0).is_zero())
            throw arithmetic_error("TruncSeries: exp needs zero constant term");
        TruncSeries r(var_, bound());
        r.coeffs_[0] = QRat(1);
        for (int k = 1; k <= bound(); ++k) {
            QRat acc;
            for (int j = 1; j <= k; ++j) {
                if (coeff(j).is_zero() || r.coeffs_[size_t(k - j)].is_zero()) continue;
                acc += QRat(j) * coeff(j) * r.coeffs_[size_t(k - j)];
            }
            r.coeffs_[size_t(k)] = acc / QRat(k);
        }
        return r;
    }

    /// log(s), requires s(0) = 1.  l_k = s_k - (1/k) sum_{j=1..k-1} j l_j s_{k-j}.
    TruncSeries log() const {
        if (!coeff(0).is_one())
            throw arithmetic_error("TruncSeries: log needs constant term 1");
        TruncSeries r(var_, bound());
        for (int k = 1; k <= bound(); ++k) {
            QRat acc = QRat(k) * coeff(k);
            for (int j = 1; j < k; ++j) {
                if (r.coeffs_[size_t(j)].is_zero() || coeff(k - j).is_zero()) continue;
                acc -= QRat(j) * r.coeffs_[size_t(j)] * coeff(k - j);
            }
            r.coeffs_[size_t(k)] = acc / QRat(k);
        }
        return r;
    }

    /// Substitution z -> c*z: coefficient k picks up c^k.
    TruncSeries scale_var(const QRat& c) const {
        TruncSeries r = *this;
        QRat p(1);
        for (int k = 1; k <= bound(); ++k) {
            p *= c;
            r.coeffs_[size_t(k)] *= p;
        }
        return r;
    }

    /// Substitution z -> -z.
    TruncSeries negate_var() const { return scale_var(QRat(-1)); }

    std::string str() const {
        std::string out;
        for (int k = 0; k <= bound(); ++k) {
            if (coeff(k).is_zero()) continue;
            if (!out.empty()) out += " + ";
            std::string cs = coeff(k).str();
            if (k == 0) {
                out += cs;
            } else {
                std::string mono = var_ + (k == 1 ? "" : "^" + std::to_string(k));
                if (cs == "1")
                    out += mono;
                else if (cs == "-1")
                    out += "-" + mono;
                else
                    out += coeff_wrapped(cs) + "*" + mono;
            }
        }
        if (out.empty()) out = "0";
        return out + " + O(" + var_ + "^" + std::to_string(bound() + 1) + ")";
    }

  private:
    void check_var(const TruncSeries& o) const {
        if (var_ != o.var_)
            throw usage_error("TruncSeries: mixed variables '" + var_ + "' and '" + o.var_ + "'");
    }

    std::string var_;
    std::vector<QRat> coeffs_;
};

inline TruncSeries operator*(const QRat& s, const TruncSeries& t) { return t * s; }

/// (1-z)^r_{q^2} = exp(-sum_{n>=1} [rn]/(n [n]) z^n) to the given bound.
inline TruncSeries qpow_homog(int r, int bound, const std::string& var = "z") {
    TruncSeries e(var, bound);
    for (int n = 1; n <= bound; ++n)
        e.set_coeff(n, -(qint(r * n) / (QRat(n) * qint(n))));
    return e.exp();
}

/// ((1-z)/(1+z))^r_{q^2} = exp(-sum_{n odd} 2[rn]/(n [n]) z^n).
inline TruncSeries qpow_twisted(int r, int bound, const std::string& var = "z") {
    TruncSeries e(var, bound);
    for (int n = 1; n <= bound; n += 2)
        e.set_coeff(n, -(QRat(2) * qint(r * n) / (QRat(n) * qint(n))));
    return e.exp();
}

/// The q-Pochhammer-ratio form of (1-z)^r_{q^2}: for integer r the ratio
/// (q^{-r+1}z;q^2)_inf / (q^{r+1}z;q^2)_inf telescopes to the finite product
/// prod_{j=0..r-1}(1 - q^{-r+1+2j} z) (reciprocal for r < 0).  Used as the
/// independent oracle for qpow_homog.
inline TruncSeries qpow_pochhammer(int r, int bound, const std::string& var = "z") {
    TruncSeries acc = TruncSeries::one(var, bound);
    const int s = r < 0 ? -r : r;
    for (int j = 0; j < s; ++j) {
        TruncSeries factor = TruncSeries::one(var, bound);
        if (bound >= 1) factor.set_coeff(1, -QRat::q(-s + 1 + 2 * j));
        acc *= factor;
    }
    if (r >= 0) return acc;
    return TruncSeries::one(var, bound) / acc;
}

/// Taylor coefficients at x = 0 of
///   G_a(x) = (q^a x - 1)/(q^a x + 1) * (x + q^a)/(x - q^a),
/// computed by exact series division (the function is regular at 0, G_0 = 1).
inline TruncSeries g_series(int a, int bound, const std::string& var = "x") {
    TruncSeries x = TruncSeries::x(var, bound);
    TruncSeries qa = TruncSeries::constant(var, bound, QRat::q(a));
    TruncSeries one = TruncSeries::one(var, bound);
    TruncSeries num = (x * QRat::q(a) - one) * (x + qa);
    TruncSeries den = (x * QRat::q(a) + one) * (x - qa);
    return num / den;
}

enum class SignPair { same, mixed };

/// OPE contraction factor as a series in x = w/z:
///   same-sign pair:  ((1 - q^shift x)/(1 + q^shift x))^pairing_{q^2}
///   mixed-sign pair: ((1 + x)/(1 - x))^pairing_{q^2}
/// The shift is -1 for a (+,+) pair, +1 for a (-,-) pair, 0 for mixed.
inline TruncSeries contraction(int pairing, SignPair pair, int q_shift, int bound,
                               const std::string& var = "x") {
    if (pair == SignPair::same)
        return qpow_twisted(pairing, bound, var).scale_var(QRat::q(q_shift));
    return qpow_twisted(-pairing, bound, var).scale_var(QRat::q(q_shift));
}

} // namespace qtor
