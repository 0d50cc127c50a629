#include "qtor/fock.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace qtor;

namespace {
const CartanData A2 = cartan_load("A2");
const LatticeElt a1 = LatticeElt::simple(2, 0);
const LatticeElt a2 = LatticeElt::simple(2, 1);
const LatticeElt zero2 = LatticeElt::zero(2);
} // namespace

TEST_CASE("vacuum states") {
    FockVector v0 = vacuum(zero2);
    CHECK(v0.term_count() == 1);
    CHECK(v0.max_degree() == 0);
    CHECK(vacuum(a1).max_degree() == 0);
    CHECK(vacuum(a1) != vacuum(a2));
    CHECK(v0.str() == "|0; +>");
}

TEST_CASE("basis state degree") {
    BasisState s;
    CHECK(s.degree() == 0);
    s.modes = {{0, -1}, {1, -3}};
    CHECK(s.degree() == 4);
    BasisState t;
    t.modes = {{0, -5}};
    BasisState joined;
    joined.modes = s.modes;
    joined.modes.insert(joined.modes.end(), t.modes.begin(), t.modes.end());
    std::sort(joined.modes.begin(), joined.modes.end());
    CHECK(joined.degree() == s.degree() + t.degree());
    CHECK(s.str() == "a1(-1)a2(-3)|0; +>");
}

TEST_CASE("sign folding") {
    FockVector v;
    BasisState s;
    s.lattice = a1;
    s.sign = -1;
    v.add_term(s, QRat(1));
    CHECK(v.term_count() == 1);
    CHECK(v.terms().begin()->first.sign == 1);
    CHECK(v.terms().begin()->second == QRat(-1));
}

TEST_CASE("heisenberg action") {
    FockVector v0 = vacuum(zero2);
    CHECK(heis_apply(A2, size_t(0), 1, v0).is_zero());
    FockVector created = heis_apply(A2, size_t(0), -1, v0);
    CHECK(created.max_degree() == 1);
    // a1(1) a1(-1)|0> = [2][1]/2 |0> = (q+q^-1)/2 |0>
    FockVector back = heis_apply(A2, size_t(0), 1, created);
    CHECK(back == v0 * (qint(2) / QRat(2)));
    // delta_{m,-n} fails
    CHECK(heis_apply(A2, size_t(0), 3, created).is_zero());
    CHECK_THROWS_AS(heis_apply(A2, size_t(0), 2, v0), usage_error);
    CHECK_THROWS_AS(heis_apply(A2, size_t(0), 0, v0), usage_error);
}

TEST_CASE("heisenberg bracket on basis states") {
    // [a_i(m), a_j(n)] = delta_{m,-n} [a_ij m][m]/(2m), degrees <= 4, |m| <= 3
    std::vector<FockVector> states;
    states.push_back(vacuum(zero2));
    states.push_back(heis_apply(A2, size_t(0), -1, vacuum(zero2)));
    states.push_back(heis_apply(A2, size_t(1), -3, states[1]));
    for (size_t i = 0; i < 2; ++i)
        for (size_t j = 0; j < 2; ++j)
            for (int m : {-3, -1, 1, 3})
                for (int n : {-3, -1, 1, 3})
                    for (const auto& v : states) {
                        FockVector lhs = heis_apply(A2, i, m, heis_apply(A2, j, n, v)) -
                                         heis_apply(A2, j, n, heis_apply(A2, i, m, v));
                        FockVector rhs;
                        if (m == -n) rhs = v * heis_bracket_scalar(A2, i, j, m);
                        CHECK(lhs == rhs);
                    }
}

TEST_CASE("degree shifts") {
    FockVector v = heis_apply(A2, size_t(1), -3, vacuum(a1));
    CHECK(v.max_degree() == 3);
    CHECK(heis_apply(A2, size_t(0), -5, v).max_degree() == 8);
    FockVector lowered = heis_apply(A2, size_t(1), 3, v);
    CHECK(lowered.max_degree() == 0);
}

TEST_CASE("composite-root generators expand over simple roots") {
    FockVector v = heis_apply(A2, a1 + a2, -1, vacuum(zero2));
    CHECK(v.term_count() == 2);
    FockVector expect = heis_apply(A2, size_t(0), -1, vacuum(zero2)) +
                        heis_apply(A2, size_t(1), -1, vacuum(zero2));
    CHECK(v == expect);
}

TEST_CASE("group action") {
    FockVector v0 = vacuum(zero2);
    CHECK(group_apply(A2, a1, 1, v0) == vacuum(a1));
    // a1 a2 |0> = -a2 a1 |0> in A2
    FockVector ab = group_apply(A2, a1, 1, group_apply(A2, a2, 1, v0));
    FockVector ba = group_apply(A2, a2, 1, group_apply(A2, a1, 1, v0));
    CHECK(ab == -ba);
    // inverses cancel from any starting lattice element
    for (const LatticeElt& beta : {zero2, a1, a1 + a2}) {
        FockVector w = vacuum(beta);
        CHECK(group_apply(A2, a1, -1, group_apply(A2, a1, 1, w)) == w);
        CHECK(group_apply(A2, a1, 1, group_apply(A2, a1, -1, w)) == w);
        // composite roots too
        CHECK(group_apply(A2, a1 + a2, -1, group_apply(A2, a1 + a2, 1, w)) == w);
    }
    CHECK_THROWS_AS(group_apply(A2, a1, 2, v0), usage_error);
}

TEST_CASE("group action commutes with the heisenberg action") {
    FockVector v = heis_apply(A2, size_t(0), -3, heis_apply(A2, size_t(1), -1, vacuum(a2)));
    for (int m : {-1, 1, 3}) {
        FockVector left = group_apply(A2, a1, 1, heis_apply(A2, size_t(0), m, v));
        FockVector right = heis_apply(A2, size_t(0), m, group_apply(A2, a1, 1, v));
        CHECK(left == right);
    }
}

TEST_CASE("first difference for witnesses") {
    FockVector a = vacuum(zero2) * qint(2);
    FockVector b = vacuum(zero2) * qint(3);
    auto diff = a.first_difference(b);
    REQUIRE(diff.has_value());
    CHECK(diff->lhs == qint(2));
    CHECK(diff->rhs == qint(3));
    CHECK(!a.first_difference(a).has_value());
}
