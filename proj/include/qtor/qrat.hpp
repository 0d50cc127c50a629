#pragma once

#include "qtor/laurent.hpp"

#include <compare>
#include <string>
#include <utility>

namespace qtor {

/// Element of the coefficient field: a reduced fraction of integer Laurent
/// polynomials in q^{1/2}.  Canonical form makes structural equality equal
/// semantic equality:
///   * denominator nonzero, lowest v-power 0, positive leading coefficient,
///   * numerator/denominator coprime (polynomial gcd and integer content),
///   * all arithmetic exact.
class QRat {
  public:
    QRat() : num_(), den_(Laurent::one()) {}
    QRat(long n) : num_(Laurent::constant(n)), den_(Laurent::one()) {}
    QRat(Laurent n, Laurent d) : num_(std::move(n)), den_(std::move(d)) { reduce(); }

    static QRat integer(BigInt n) { return QRat(Laurent::constant(std::move(n)), Laurent::one()); }
    static QRat rational(BigInt n, BigInt d) {
        return QRat(Laurent::constant(std::move(n)), Laurent::constant(std::move(d)));
    }
    /// q^n
    static QRat q(int n = 1) { return QRat(Laurent::q_power(n), Laurent::one()); }
    /// q^{n/2}
    static QRat q_half(int n) { return QRat(Laurent::q_half_power(n), Laurent::one()); }

    const Laurent& num() const { return num_; }
    const Laurent& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return num_.is_one() && den_.is_one(); }
    bool is_integer_denominator() const { return den_.is_one(); }

    bool operator==(const QRat& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const QRat& o) const { return !(*this == o); }
    std::strong_ordering operator<=>(const QRat& o) const {
        if (auto c = num_ <=> o.num_; c != 0) return c;
        return den_ <=> o.den_;
    }

    QRat operator-() const {
        QRat r = *this;
        r.num_ = -r.num_;
        return r;
    }

    /// Sums and products of reduced fractions stay reduced via the classical
    /// cross-gcd identities, so the expensive polynomial gcd only ever runs
    /// on the small original parts, never on their products.
    QRat operator+(const QRat& o) const {
        if (is_zero()) return o;
        if (o.is_zero()) return *this;
        if (den_.is_one() && o.den_.is_one())
            return QRat(num_ + o.num_, den_, prereduced_tag{});
        Laurent g = Laurent::gcd_full(den_, o.den_);
        if (g.is_one())
            return QRat(num_ * o.den_ + o.num_ * den_, den_ * o.den_, prereduced_tag{});
        Laurent da = den_.div_exact(g);
        Laurent db = o.den_.div_exact(g);
        Laurent t = num_ * db + o.num_ * da;
        if (t.is_zero()) return QRat();
        Laurent d = da * o.den_;
        Laurent h = Laurent::gcd_full(t, g);
        if (!h.is_one()) {
            t = t.div_exact(h);
            d = d.div_exact(h);
        }
        return QRat(std::move(t), std::move(d), prereduced_tag{});
    }

    QRat operator-(const QRat& o) const { return *this + (-o); }

    QRat operator*(const QRat& o) const {
        if (is_zero() || o.is_zero()) return QRat();
        if (den_.is_one() && o.den_.is_one())
            return QRat(num_ * o.num_, den_, prereduced_tag{});
        Laurent na = num_, nb = o.num_;
        Laurent da = den_, db = o.den_;
        if (!db.is_one()) {
            Laurent g = Laurent::gcd_full(na, db);
            if (!g.is_one()) {
                na = na.div_exact(g);
                db = db.div_exact(g);
            }
        }
        if (!da.is_one()) {
            Laurent g = Laurent::gcd_full(nb, da);
            if (!g.is_one()) {
                nb = nb.div_exact(g);
                da = da.div_exact(g);
            }
        }
        return QRat(na * nb, da * db, prereduced_tag{});
    }

    QRat operator/(const QRat& o) const {
        if (o.is_zero()) throw arithmetic_error("QRat: division by zero");
        if (is_zero()) return QRat();
        return QRat(num_ * o.den_, den_ * o.num_);
    }

    QRat& operator+=(const QRat& o) { return *this = *this + o; }
    QRat& operator-=(const QRat& o) { return *this = *this - o; }
    QRat& operator*=(const QRat& o) { return *this = *this * o; }
    QRat& operator/=(const QRat& o) { return *this = *this / o; }

    QRat inverse() const {
        if (is_zero()) throw arithmetic_error("QRat: inverse of zero");
        return QRat(den_, num_);
    }

    QRat pow(int e) const {
        if (e < 0) return inverse().pow(-e);
        QRat r(1), b = *this;
        while (e) {
            if (e & 1) r *= b;
            b *= b;
            e >>= 1;
        }
        return r;
    }

    /// Exact value at q = 1 (the half-power parameter evaluates to 1 too).
    BigRational specialize_q1() const {
        BigInt d = den_.eval_one();
        if (d == 0)
            throw specialization_error("QRat: denominator vanishes at q=1: " + den_.str());
        return BigRational(num_.eval_one(), d);
    }

    /// "(q^2+1+q^-2)", "(q+q^-1)/2", "2/(q-q^-1)", "q^(1/2)", ...
    /// Multi-term polynomials are parenthesized so the rendering stays
    /// unambiguous inside monomial products.
    std::string str() const {
        std::string n = num_.str();
        if (num_.term_count() > 1) n = "(" + n + ")";
        if (den_.is_one()) return n;
        std::string d = den_.str();
        if (den_.term_count() > 1 || den_.high() != 0) d = "(" + d + ")";
        return n + "/" + d;
    }

  private:
    struct prereduced_tag {};

    /// Construction from parts already known coprime; only the sign and the
    /// denominator's v-offset still need normalizing.
    QRat(Laurent n, Laurent d, prereduced_tag) : num_(std::move(n)), den_(std::move(d)) {
        if (num_.is_zero()) {
            den_ = Laurent::one();
            return;
        }
        num_ = num_.shifted(-den_.low());
        den_ = den_.shifted(-den_.low());
        if (den_.leading() < 0) {
            num_ = -num_;
            den_ = -den_;
        }
    }

    void reduce() {
        if (den_.is_zero()) throw arithmetic_error("QRat: zero denominator");
        if (num_.is_zero()) {
            den_ = Laurent::one();
            return;
        }
        // Pull the v-offset out of the denominator so it has lowest power 0.
        num_ = num_.shifted(-den_.low());
        den_ = den_.shifted(-den_.low());
        if (den_.is_one()) return;
        // gcd of the polynomial parts; v-offsets pass through div_exact.
        Laurent g0 = Laurent::gcd(num_, den_);
        if (!g0.is_one()) {
            num_ = num_.div_exact(g0);
            den_ = den_.div_exact(g0);
        }
        BigInt cn = num_.content();
        BigInt cd = den_.content();
        BigInt g = boost::multiprecision::gcd(cn, cd);
        if (g > 1) {
            num_ = num_.div_int(g);
            den_ = den_.div_int(g);
        }
        if (den_.leading() < 0) {
            num_ = -num_;
            den_ = -den_;
        }
    }

    Laurent num_;
    Laurent den_;
};

inline QRat operator*(long a, const QRat& b) { return QRat(a) * b; }
inline QRat operator+(long a, const QRat& b) { return QRat(a) + b; }
inline QRat operator-(long a, const QRat& b) { return QRat(a) - b; }

/// Wrap a rendered coefficient in parentheses when it is not safe to juxtapose
/// with a monomial (contains a top-level operator or a fraction).
inline std::string coeff_wrapped(const std::string& s) {
    if (s.empty()) return s;
    if (s.front() == '(') {
        int depth = 0;
        for (size_t i = 0; i < s.size(); ++i) {
            if (s[i] == '(') ++depth;
            if (s[i] == ')' && --depth == 0 && i + 1 == s.size()) return s; // fully wrapped
            if (s[i] == ')' && depth == 0) break;
        }
    }
    for (size_t i = 0; i < s.size(); ++i) {
        char ch = s[i];
        if (ch == '+' || ch == '/' || ch == '*') return "(" + s + ")";
        if (ch == '-' && !(i > 0 && (s[i - 1] == '^' || s[i - 1] == '(')))
            return "(" + s + ")";
    }
    return s;
}

/// Symmetric q-integer [n] = (q^n - q^{-n})/(q - q^{-1}) as a Laurent
/// polynomial: q^{n-1} + q^{n-3} + ... + q^{-(n-1)} for n > 0, with
/// [-n] = -[n] and [0] = 0.
inline QRat qint(int n) {
    if (n == 0) return QRat();
    const int a = n < 0 ? -n : n;
    Laurent p;
    for (int j = 0; j < a; ++j) p += Laurent::q_power(a - 1 - 2 * j);
    return n > 0 ? QRat(p, Laurent::one()) : QRat(-p, Laurent::one());
}

} // namespace qtor
