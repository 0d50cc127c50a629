#include "qtor/report_json.hpp"
#include "qtor/series.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace qtor;

namespace {
TruncSeries one(int d) { return TruncSeries::one("z", d); }
TruncSeries z(int d) { return TruncSeries::x("z", d); }
} // namespace

TEST_CASE("series arithmetic") {
    const int D = 10;
    // (1-z) * (1+z+z^2+...) = 1
    TruncSeries geo("z", D);
    for (int k = 0; k <= D; ++k) geo.set_coeff(k, QRat(1));
    TruncSeries prod = (one(D) - z(D)) * geo;
    CHECK(prod == one(D));
    // 1/(1+z) alternates
    TruncSeries inv = one(D) / (one(D) + z(D));
    for (int k = 0; k <= D; ++k) CHECK(inv.coeff(k) == QRat(k % 2 == 0 ? 1 : -1));
    // (1+z)^2
    TruncSeries sq = (one(D) + z(D)) * (one(D) + z(D));
    CHECK(sq.coeff(0) == QRat(1));
    CHECK(sq.coeff(1) == QRat(2));
    CHECK(sq.coeff(2) == QRat(1));
    CHECK(sq.coeff(3).is_zero());
    CHECK_THROWS_AS(one(D) / z(D), arithmetic_error);
    // min-bound combination
    CHECK((one(4) + one(7)).bound() == 4);
}

TEST_CASE("exp and log") {
    const int D = 10;
    CHECK(TruncSeries::zero("z", D).exp() == one(D));
    CHECK_THROWS_AS(one(D).exp(), arithmetic_error);
    CHECK_THROWS_AS((one(D) + one(D)).log(), arithmetic_error);

    // exp(-sum z^n / n) = 1 - z; oracle: sum exp series by repeated
    // multiplication, independent of the recurrence in series_exp.
    TruncSeries s("z", D);
    for (int n = 1; n <= D; ++n) s.set_coeff(n, QRat(-1) / QRat(n));
    TruncSeries by_impl = s.exp();
    TruncSeries by_sum = one(D);
    TruncSeries power = one(D);
    QRat factorial(1);
    for (int k = 1; k <= D; ++k) {
        power *= s;
        factorial *= QRat(k);
        by_sum += power * factorial.inverse();
    }
    CHECK(by_impl == by_sum);
    CHECK(by_impl == one(D) - z(D));

    // round trip on random series with zero constant term
    std::mt19937 rng(11);
    std::uniform_int_distribution<int> coeff(-5, 5);
    for (int t = 0; t < 20; ++t) {
        TruncSeries r("z", 8);
        for (int k = 1; k <= 8; ++k) r.set_coeff(k, QRat(coeff(rng)) * QRat::q(coeff(rng) % 3));
        CHECK(r.exp().log() == r);
    }
}

TEST_CASE("q-analog power series") {
    CHECK(qpow_homog(0, 8) == one(8));
    // r = 1 is exactly 1 - z
    TruncSeries r1 = qpow_homog(1, 8);
    CHECK(r1 == one(8) - z(8));
    // r = 2: coefficient of z is -[2]
    CHECK(qpow_homog(2, 8).coeff(1) == -qint(2));
    // exponential form vs telescoped Pochhammer ratio
    for (int r = -2; r <= 2; ++r) CHECK(qpow_homog(r, 12) == qpow_pochhammer(r, 12));
}

TEST_CASE("twisted q-analog power series") {
    CHECK(qpow_twisted(0, 8) == one(8));
    TruncSeries t1 = qpow_twisted(1, 20);
    TruncSeries classical = (one(20) - z(20)) / (one(20) + z(20));
    CHECK(t1 == classical);
    for (int k = 1; k <= 20; ++k)
        CHECK(t1.coeff(k) == QRat(k % 2 == 0 ? 2 : -2)); // 1 - 2z + 2z^2 - ...
    CHECK(qpow_twisted(2, 8).coeff(1) == QRat(-2) * qint(2));
    // twisted(r) = homog(r)(z) / homog(r)(-z)
    for (int r = -2; r <= 2; ++r) {
        TruncSeries h = qpow_homog(r, 10);
        CHECK(qpow_twisted(r, 10) == h / h.negate_var());
        // exponents additive
        CHECK(qpow_homog(r, 10) * qpow_homog(-r, 10) == one(10));
    }
    // log of the twisted series has only odd-degree terms
    for (int r : {1, 2, -2}) {
        TruncSeries lg = qpow_twisted(r, 12).log();
        for (int k = 2; k <= 12; k += 2) CHECK(lg.coeff(k).is_zero());
    }
    // q -> 1 specialization matches the classical ((1-z)/(1+z))^r
    for (int r = -2; r <= 2; ++r) {
        TruncSeries tw = qpow_twisted(r, 10);
        TruncSeries frac = (one(10) - z(10)) / (one(10) + z(10));
        TruncSeries classical_r = one(10);
        for (int j = 0; j < std::abs(r); ++j)
            classical_r = r > 0 ? classical_r * frac : classical_r / frac;
        for (int k = 0; k <= 10; ++k) {
            BigRational lhs = tw.coeff(k).specialize_q1();
            BigRational rhs = classical_r.coeff(k).specialize_q1();
            CHECK(lhs == rhs);
        }
    }
}

TEST_CASE("coefficient-list export") {
    nlohmann::json j = series_to_json(qpow_homog(2, 3));
    CHECK(j["var"] == "z");
    CHECK(j["bound"] == 3);
    REQUIRE(j["coeffs"].size() == 4);
    CHECK(j["coeffs"][0] == "1");
    CHECK(j["coeffs"][1] == (-qint(2)).str());
}

TEST_CASE("G series") {
    for (int a : {-2, -1, 0, 1, 2}) {
        TruncSeries G = g_series(a, 8);
        CHECK(G.coeff(0) == QRat(1));
        CHECK(G.coeff(1) == QRat(2) * (QRat::q(-a) - QRat::q(a)));
    }
    CHECK(g_series(0, 8) == TruncSeries::one("x", 8));
}

TEST_CASE("contraction factors") {
    const int D = 8;
    // zero pairing: constant 1 for every sign assignment
    CHECK(contraction(0, SignPair::same, -1, D) == TruncSeries::one("x", D));
    CHECK(contraction(0, SignPair::mixed, 0, D) == TruncSeries::one("x", D));
    // pairing -1, same-sign "+": expansion of (z + q^-1 w)/(z - q^-1 w) in w/z
    TruncSeries got = contraction(-1, SignPair::same, -1, D);
    TruncSeries x = TruncSeries::x("x", D);
    TruncSeries expect =
        (TruncSeries::one("x", D) + x * QRat::q(-1)) / (TruncSeries::one("x", D) - x * QRat::q(-1));
    CHECK(got == expect);
    // pairing 2, mixed: q -> 1 limit agrees with ((1+x)/(1-x))^2
    TruncSeries m2 = contraction(2, SignPair::mixed, 0, D);
    TruncSeries frac =
        (TruncSeries::one("x", D) + x) / (TruncSeries::one("x", D) - x);
    TruncSeries classical = frac * frac;
    for (int k = 0; k <= D; ++k)
        CHECK(m2.coeff(k).specialize_q1() == classical.coeff(k).specialize_q1());
}
