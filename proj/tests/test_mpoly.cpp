#include "qtor/serre_polynomials.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace qtor;

namespace {
const std::vector<std::string> ZW{"z", "w"};
const std::vector<std::string> Z12{"z1", "z2"};

MPoly var(const std::vector<std::string>& vs, const std::string& n) {
    return MPoly::variable(vs, n);
}
} // namespace

TEST_CASE("polynomial arithmetic") {
    auto z1 = var(Z12, "z1"), z2 = var(Z12, "z2");
    CHECK((z1 - z2) * (z1 + z2) == z1 * z1 - z2 * z2);
    auto z = var(ZW, "z"), w = var(ZW, "w");
    MPoly p = z + w * QRat::q(-1);
    CHECK((p - p).is_zero());
    // (z-w)(z-wq^2) expanded term by term
    MPoly expect = MPoly::monomial(ZW, {{"z", 2}}, QRat(1)) +
                   MPoly::monomial(ZW, {{"w", 1}, {"z", 1}}, -(QRat(1) + QRat::q(2))) +
                   MPoly::monomial(ZW, {{"w", 2}}, QRat::q(2));
    CHECK((z - w) * (z - w * QRat::q(2)) == expect);
    // variable-set union with zero extension
    MPoly a = MPoly::variable({"z1"}, "z1");
    MPoly b = MPoly::variable({"z2"}, "z2");
    CHECK((a + b) == z1 + z2);
    CHECK(a.term_count() == 1);
}

TEST_CASE("negative exponents") {
    MPoly zi = MPoly::monomial(ZW, {{"z", -1}}, QRat(1));
    auto z = var(ZW, "z");
    CHECK(zi * z == MPoly::constant(ZW, QRat(1)));
}

TEST_CASE("symmetric group action") {
    auto z1 = var(Z12, "z1"), z2 = var(Z12, "z2");
    MPoly p = z1 - z2;
    CHECK(sym_action({1, 0}, p, Z12) == z2 - z1);
    CHECK(sym_action({0, 1}, p, Z12) == p);
    CHECK_THROWS_AS(sym_action({0}, p, Z12), usage_error);
    // three-cycle on z1 z2^2 -> z2 z3^2
    const std::vector<std::string> Z123{"z1", "z2", "z3"};
    MPoly m = MPoly::monomial(Z123, {{"z1", 1}, {"z2", 2}}, QRat(1));
    MPoly image = sym_action({1, 2, 0}, m, Z123); // z1->z2, z2->z3, z3->z1
    CHECK(image == MPoly::monomial(Z123, {{"z2", 1}, {"z3", 2}}, QRat(1)));
}

TEST_CASE("antisymmetrizer and symmetrizer") {
    auto z1 = var(Z12, "z1"), z2 = var(Z12, "z2");
    CHECK(antisymmetrize(z1, Z12) == z1 - z2);
    CHECK(symmetrize(z1, Z12) == z1 + z2);
    CHECK(symmetrize(z1 * z2, Z12) == QRat(2) * (z1 * z2));
    // symmetric input dies under the antisymmetrizer
    CHECK(antisymmetrize(z1 * z2 + z1 + z2, Z12).is_zero());
    // antisymmetric input dies under the symmetrizer
    CHECK(symmetrize(z1 - z2, Z12).is_zero());
    // double antisymmetrization scales by n!
    const std::vector<std::string> Z123{"z1", "z2", "z3"};
    MPoly p = MPoly::monomial(Z123, {{"z1", 2}, {"z2", 1}}, QRat(1));
    MPoly once = antisymmetrize(p, Z123);
    CHECK(antisymmetrize(once, Z123) == QRat(6) * once);
    // sgn equivariance: antisym(sigma.p) = sgn(sigma) antisym(p)
    std::vector<size_t> perm{0, 1, 2};
    do {
        MPoly lhs = antisymmetrize(sym_action(perm, p, Z123), Z123);
        MPoly rhs = antisymmetrize(p, Z123) * QRat(permutation_sign(perm));
        CHECK(lhs == rhs);
    } while (std::next_permutation(perm.begin(), perm.end()));
}

TEST_CASE("antisymmetrizer commutes with symmetric multipliers") {
    auto z1 = var(Z12, "z1"), z2 = var(Z12, "z2");
    MPoly sym = z1 * z2 + (z1 + z2) * QRat::q(1);
    MPoly p = z1 * z1 * z2;
    CHECK(antisymmetrize(sym * p, Z12) == sym * antisymmetrize(p, Z12));
    CHECK(symmetrize(sym * p, Z12) == sym * symmetrize(p, Z12));
}

TEST_CASE("q-bracket products") {
    CHECK(qbracket_poly(ZW, "z", "w", 1) == var(ZW, "z") - var(ZW, "w"));
    MPoly b2 = qbracket_poly(ZW, "z", "w", 2);
    MPoly expect = MPoly::monomial(ZW, {{"z", 2}}, QRat(1)) +
                   MPoly::monomial(ZW, {{"w", 1}, {"z", 1}}, -(QRat(1) + QRat::q(2))) +
                   MPoly::monomial(ZW, {{"w", 2}}, QRat::q(2));
    CHECK(b2 == expect);
    CHECK_THROWS_AS(qbracket_poly(ZW, "z", "w", 0), usage_error);
    for (int k = 1; k <= 5; ++k) {
        MPoly b = qbracket_poly(ZW, "z", "w", k);
        // leading coefficient in z is 1
        MPoly::Exponents ez(2, 0);
        ez[b.index_of("z")] = k;
        CHECK(b.coeff(ez) == QRat(1));
        // coefficient of w^k is (-1)^k q^{k(k-1)}, the product of the factors
        QRat scale(1);
        for (int j = 0; j < k; ++j) scale *= -QRat::q(2 * j);
        MPoly::Exponents ew(2, 0);
        ew[b.index_of("w")] = k;
        CHECK(b.coeff(ew) == scale);
        CHECK(scale == QRat(k % 2 == 0 ? 1 : -1) * QRat::q(k * (k - 1)));
        // q -> 1 specialization is (z-w)^k
        MPoly classical = MPoly::constant(ZW, QRat(1));
        for (int j = 0; j < k; ++j) classical *= var(ZW, "z") - var(ZW, "w");
        CHECK(b.specialize_q1() == classical);
    }
}

TEST_CASE("cubic identity polynomial (displayed form)") {
    // The displayed polynomial is NOT zero: the residue concentrates in the
    // w^3 coefficient as -4(q^-1 - q^-3)(z1-z2)^2(z1+z2).
    MPoly p = serre_poly_k1();
    CHECK(!p.is_zero());
    const std::vector<std::string> V{"z1", "z2", "w"};
    auto z1 = var(V, "z1"), z2 = var(V, "z2"), w = var(V, "w");
    MPoly residue =
        (z1 - z2) * (z1 - z2) * (z1 + z2) * w * w * w * (QRat(-4) * (QRat::q(-1) - QRat::q(-3)));
    CHECK(p == residue);
    for (int j : {0, 1, 2, 4, 5, 6, 7}) CHECK(p.coeff_of("w", j).is_zero());
    // the inner bracket's constant term in w vanishes after symmetrization
    MPoly inner_sym = symmetrize(serre_poly_k1_inner(), {"z1", "z2"});
    CHECK(inner_sym.coeff_of("w", 0).is_zero());
    // mutating one exponent moves the residue elsewhere as well
    MPoly mutated = serre_poly_k1(Mutation::serre_k1_shift_exponent);
    CHECK(!mutated.is_zero());
    CHECK(mutated != p);
}

TEST_CASE("higher bracket-product identities") {
    CHECK(serre_f_check(2).is_zero());
    CHECK_THROWS_AS(serre_f_check(1), usage_error);
    // each summand of f is invariant under a transposition of z-variables:
    // r = 1 leaves z2, z3 interchangeable
    MPoly s1 = serre_f_summand(2, 1);
    CHECK(sym_action({0, 2, 1}, s1, {"z1", "z2", "z3"}) == s1);
    // r = 0 and r = k+1 are symmetric in all z
    MPoly s0 = serre_f_summand(2, 0);
    CHECK(sym_action({1, 0, 2}, s0, {"z1", "z2", "z3"}) == s0);
}
