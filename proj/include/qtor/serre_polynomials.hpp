#pragma once

#include "qtor/mpoly.hpp"

namespace qtor {

/// Perturbations used by the mutation-sensitivity tests: each one breaks a
/// single scalar or prefactor of a checker so that a vacuous pass is
/// impossible to miss.
enum class Mutation {
    none,
    heisenberg_drop_half,    // bracket scalar loses its 1/2
    ope_flip_pairing_sign,   // contraction built with the negated pairing
    locality_flip_sign,      // (z+w) prefactor becomes (z-w)
    delta_unit_scalar,       // 2(q+q^-1)/(q-q^-1) becomes 1
    phipsi_negate_g1,        // degree-1 coefficient of G negated
    serre_k1_shift_exponent, // one q^-1 in the cubic identity becomes q^-2
    serre_op_shift_prefactor // (z1+q^-2 z2) becomes (z1+q^-1 z2)
};

/// The symmetrized cubic combination in z1, z2, w: the sum over S_2 of
///   (z1-z2) * [ z2 (z1+q^-1 w)(z2+q^-1 w)(w-q^-1 z1)(w-q^-1 z2)
///             + (z1+z2)(z1+q^-1 w)(z2-q^-1 w)(w-q^-1 z1)(w+q^-1 z2)
///             + z1 (z1-q^-1 w)(z2-q^-1 w)(w+q^-1 z1)(w+q^-1 z2) ],
/// the denominator-cleared form of the cubic Serre relation.  The k=1
/// checker expects this to vanish; it in fact carries an exact residue
/// -4(q^-1-q^-3) w^3 (z1-z2)^2 (z1+z2), which the checker reports.
/// With Mutation::serre_k1_shift_exponent the q^-1 in the first product's
/// (z2+q^-1 w) factor becomes q^-2.
inline MPoly serre_poly_k1(Mutation mutation = Mutation::none) {
    const std::vector<std::string> vars{"z1", "z2", "w"};
    auto z1 = MPoly::variable(vars, "z1");
    auto z2 = MPoly::variable(vars, "z2");
    auto w = MPoly::variable(vars, "w");
    const QRat qi = QRat::q(-1);
    const QRat qi_mut = mutation == Mutation::serre_k1_shift_exponent ? QRat::q(-2) : qi;

    MPoly p1 = z2 * (z1 + w * qi) * (z2 + w * qi_mut) * (w - z1 * qi) * (w - z2 * qi);
    MPoly p2 = (z1 + z2) * (z1 + w * qi) * (z2 - w * qi) * (w - z1 * qi) * (w + z2 * qi);
    MPoly p3 = z1 * (z1 - w * qi) * (z2 - w * qi) * (w + z1 * qi) * (w + z2 * qi);
    MPoly inner = (z1 - z2) * (p1 + p2 + p3);
    return symmetrize(inner, {"z1", "z2"});
}

/// The inner (un-symmetrized) bracket of serre_poly_k1, for coefficient
/// extraction tests.
inline MPoly serre_poly_k1_inner() {
    const std::vector<std::string> vars{"z1", "z2", "w"};
    auto z1 = MPoly::variable(vars, "z1");
    auto z2 = MPoly::variable(vars, "z2");
    auto w = MPoly::variable(vars, "w");
    const QRat qi = QRat::q(-1);
    MPoly p1 = z2 * (z1 + w * qi) * (z2 + w * qi) * (w - z1 * qi) * (w - z2 * qi);
    MPoly p2 = (z1 + z2) * (z1 + w * qi) * (z2 - w * qi) * (w - z1 * qi) * (w + z2 * qi);
    MPoly p3 = z1 * (z1 - w * qi) * (z2 - w * qi) * (w + z1 * qi) * (w + z2 * qi);
    return (z1 - z2) * (p1 + p2 + p3);
}

inline std::vector<std::string> serre_f_vars(int k) {
    std::vector<std::string> vars{"w"};
    for (int s = 1; s <= k + 1; ++s) vars.push_back("z" + std::to_string(s));
    return vars;
}

/// One summand of the k-fold sum f(z1..z_{k+1}): the first r variables use
/// the flipped bracket pair [z_s, -w q^-k][w, z_s q^-k], the rest use
/// [w, -z_s q^-k][z_s, w q^-k]; every bracket is the k-fold [.,.;k]_{q^2}.
inline MPoly serre_f_summand(int k, int r) {
    if (k < 2) throw usage_error("serre_f: k must be >= 2");
    if (r < 0 || r > k + 1) throw usage_error("serre_f: summand index out of range");
    const auto vars = serre_f_vars(k);
    const QRat qk = QRat::q(-k);
    MPoly acc = MPoly::constant(vars, QRat(1));
    for (int s = 1; s <= k + 1; ++s) {
        const std::string zs = "z" + std::to_string(s);
        if (s <= r) {
            acc *= qbracket_scaled(vars, zs, "w", -qk, k); // [z_s, -w q^-k]
            acc *= qbracket_scaled(vars, "w", zs, qk, k);  // [w, z_s q^-k]
        } else {
            acc *= qbracket_scaled(vars, "w", zs, -qk, k); // [w, -z_s q^-k]
            acc *= qbracket_scaled(vars, zs, "w", qk, k);  // [z_s, w q^-k]
        }
    }
    return acc;
}

/// f(z1,...,z_{k+1}): the (k+2)-term sum of serre_f_summand(k, r).
inline MPoly serre_f(int k) {
    MPoly acc = MPoly::zero(serre_f_vars(k));
    for (int r = 0; r <= k + 1; ++r) acc += serre_f_summand(k, r);
    return acc;
}

/// Antisymmetrization of f over z1..z_{k+1}.  Zero for every k >= 2: each
/// summand is invariant under some transposition of z-variables.
inline MPoly serre_f_check(int k) {
    if (k < 2) throw usage_error("serre_f_check: k must be >= 2");
    std::vector<std::string> zs;
    for (int s = 1; s <= k + 1; ++s) zs.push_back("z" + std::to_string(s));
    return antisymmetrize(serre_f(k), zs);
}

} // namespace qtor
