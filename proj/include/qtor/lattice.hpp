#pragma once

#include "qtor/common.hpp"

#include <string>
#include <vector>

namespace qtor {

/// Element of the root lattice Q, as integer coefficients over the simple
/// roots alpha_1..alpha_l.
struct LatticeElt {
    std::vector<int> coeffs;

    LatticeElt() = default;
    explicit LatticeElt(std::vector<int> c) : coeffs(std::move(c)) {}

    static LatticeElt zero(size_t rank) { return LatticeElt(std::vector<int>(rank, 0)); }

    static LatticeElt simple(size_t rank, size_t i) {
        LatticeElt e = zero(rank);
        e.coeffs.at(i) = 1;
        return e;
    }

    size_t rank() const { return coeffs.size(); }
    bool is_zero() const {
        for (int c : coeffs)
            if (c != 0) return false;
        return true;
    }

    LatticeElt operator+(const LatticeElt& o) const {
        LatticeElt r = *this;
        for (size_t i = 0; i < coeffs.size(); ++i) r.coeffs[i] += o.coeffs.at(i);
        return r;
    }
    LatticeElt operator-(const LatticeElt& o) const {
        LatticeElt r = *this;
        for (size_t i = 0; i < coeffs.size(); ++i) r.coeffs[i] -= o.coeffs.at(i);
        return r;
    }
    LatticeElt operator-() const {
        LatticeElt r = *this;
        for (auto& c : r.coeffs) c = -c;
        return r;
    }

    bool operator==(const LatticeElt& o) const { return coeffs == o.coeffs; }
    auto operator<=>(const LatticeElt& o) const = default;

    /// "0", "a1", "a1+2a2", "-a1+a3", ...
    std::string str() const {
        std::string out;
        for (size_t i = 0; i < coeffs.size(); ++i) {
            int c = coeffs[i];
            if (c == 0) continue;
            if (c > 0 && !out.empty()) out += "+";
            if (c == -1)
                out += "-";
            else if (c != 1)
                out += std::to_string(c);
            out += "a" + std::to_string(i + 1);
        }
        return out.empty() ? "0" : out;
    }
};

/// Simply-laced generalized Cartan matrix with its node labels.  Labels are
/// 1..l for a finite-type matrix and 0..l after the affine extension.
struct CartanData {
    std::vector<std::vector<int>> a;
    std::vector<int> labels;

    size_t rank() const { return a.size(); }

    int entry(size_t i, size_t j) const { return a.at(i).at(j); }
};

inline void validate_cartan(const std::vector<std::vector<int>>& m) {
    const size_t n = m.size();
    if (n == 0) throw validation_error("Cartan matrix: empty");
    for (size_t i = 0; i < n; ++i) {
        if (m[i].size() != n)
            throw validation_error("Cartan matrix: row " + std::to_string(i + 1) +
                                   " has wrong length");
        if (m[i][i] != 2)
            throw validation_error("Cartan matrix: diagonal entry (" + std::to_string(i + 1) +
                                   "," + std::to_string(i + 1) + ") = " +
                                   std::to_string(m[i][i]) + ", expected 2");
        for (size_t j = 0; j < n; ++j) {
            if (i != j && m[i][j] > 0)
                throw validation_error("Cartan matrix: positive off-diagonal entry (" +
                                       std::to_string(i + 1) + "," + std::to_string(j + 1) +
                                       ") = " + std::to_string(m[i][j]));
            if (m[i][j] != m[j][i])
                throw validation_error("Cartan matrix: asymmetric at (" + std::to_string(i + 1) +
                                       "," + std::to_string(j + 1) + "): " +
                                       std::to_string(m[i][j]) + " vs " +
                                       std::to_string(m[j][i]));
        }
    }
}

inline CartanData cartan_from_matrix(std::vector<std::vector<int>> m) {
    validate_cartan(m);
    CartanData c;
    c.a = std::move(m);
    c.labels.resize(c.a.size());
    for (size_t i = 0; i < c.a.size(); ++i) c.labels[i] = int(i) + 1;
    return c;
}

/// Builtin simply-laced types: "A<l>", "D<l>" (l >= 4), "E6", "E7", "E8".
/// Bourbaki node numbering for D and E (the fork/branch node attaches to
/// node l-2 for D_l and node 4 for E).
inline CartanData cartan_load(const std::string& name) {
    if (name.size() < 2) throw validation_error("unknown Cartan type '" + name + "'");
    const char family = name[0];
    int l = 0;
    try {
        l = std::stoi(name.substr(1));
    } catch (...) {
        throw validation_error("unknown Cartan type '" + name + "'");
    }
    auto chain = [](size_t n) {
        std::vector<std::vector<int>> m(n, std::vector<int>(n, 0));
        for (size_t i = 0; i < n; ++i) m[i][i] = 2;
        for (size_t i = 0; i + 1 < n; ++i) m[i][i + 1] = m[i + 1][i] = -1;
        return m;
    };
    if (family == 'A' && l >= 1) return cartan_from_matrix(chain(size_t(l)));
    if (family == 'D' && l >= 4) {
        auto m = chain(size_t(l));
        // detach l from l-1, fork it off l-2
        m[size_t(l - 1)][size_t(l - 2)] = m[size_t(l - 2)][size_t(l - 1)] = 0;
        m[size_t(l - 1)][size_t(l - 3)] = m[size_t(l - 3)][size_t(l - 1)] = -1;
        return cartan_from_matrix(m);
    }
    if (family == 'E' && l >= 6 && l <= 8) {
        // chain 1-3-4-5-...-l with node 2 attached to node 4
        std::vector<std::vector<int>> m(size_t(l), std::vector<int>(size_t(l), 0));
        for (int i = 0; i < l; ++i) m[size_t(i)][size_t(i)] = 2;
        auto link = [&](int i, int j) {
            m[size_t(i - 1)][size_t(j - 1)] = m[size_t(j - 1)][size_t(i - 1)] = -1;
        };
        link(1, 3);
        link(2, 4);
        for (int i = 3; i < l; ++i) link(i, i + 1);
        return cartan_from_matrix(m);
    }
    throw validation_error("unknown Cartan type '" + name + "'");
}

/// Highest-root coefficients over the simple roots, for the builtin types.
inline LatticeElt highest_root(const std::string& name) {
    const CartanData c = cartan_load(name);
    const size_t l = c.rank();
    std::vector<int> v(l, 0);
    if (name[0] == 'A') {
        v.assign(l, 1);
    } else if (name[0] == 'D') {
        v.assign(l, 2);
        v[0] = v[l - 2] = v[l - 1] = 1;
    } else if (name == "E6") {
        v = {1, 2, 2, 3, 2, 1};
    } else if (name == "E7") {
        v = {2, 2, 3, 4, 3, 2, 1};
    } else if (name == "E8") {
        v = {2, 3, 4, 6, 5, 4, 3, 2};
    }
    return LatticeElt(std::move(v));
}

/// Adjoin the affine node: row 0 determined by alpha_0 = -theta, so
/// a_{00} = (theta|theta) = 2 and a_{0j} = -(theta|alpha_j).
inline CartanData affine_extend(const CartanData& c, const LatticeElt& theta) {
    const size_t l = c.rank();
    if (theta.rank() != l) throw usage_error("affine_extend: rank mismatch");
    std::vector<std::vector<int>> m(l + 1, std::vector<int>(l + 1, 0));
    for (size_t i = 0; i < l; ++i)
        for (size_t j = 0; j < l; ++j) m[i + 1][j + 1] = c.a[i][j];
    m[0][0] = 2;
    for (size_t j = 0; j < l; ++j) {
        int pair = 0;
        for (size_t i = 0; i < l; ++i) pair += theta.coeffs[i] * c.a[i][j];
        m[0][j + 1] = m[j + 1][0] = -pair;
    }
    validate_cartan(m);
    CartanData r;
    r.a = std::move(m);
    r.labels.resize(l + 1);
    for (size_t i = 0; i <= l; ++i) r.labels[i] = int(i);
    return r;
}

/// Bilinear form (alpha|beta) = sum c_i d_j a_ij.
inline int pairing(const CartanData& c, const LatticeElt& alpha, const LatticeElt& beta) {
    if (alpha.rank() != c.rank() || beta.rank() != c.rank())
        throw usage_error("pairing: rank mismatch");
    int s = 0;
    for (size_t i = 0; i < c.rank(); ++i) {
        if (alpha.coeffs[i] == 0) continue;
        for (size_t j = 0; j < c.rank(); ++j) s += alpha.coeffs[i] * beta.coeffs[j] * c.a[i][j];
    }
    return s;
}

/// Bimultiplicative 2-cocycle section eps: Q x Q -> {+-1}, defined on simple
/// roots by eps(a_i, a_j) = 1 for i <= j and (-1)^{a_ij} for i > j, so that
/// eps(alpha,beta) eps(beta,alpha)^{-1} = (-1)^{(alpha|beta)} whenever the
/// diagonal contribution is even (always, since a_ii = 2).
inline int cocycle(const CartanData& c, const LatticeElt& alpha, const LatticeElt& beta) {
    if (alpha.rank() != c.rank() || beta.rank() != c.rank())
        throw usage_error("cocycle: rank mismatch");
    long exponent = 0;
    for (size_t i = 0; i < c.rank(); ++i) {
        if (alpha.coeffs[i] == 0) continue;
        for (size_t j = 0; j < i; ++j)
            exponent += long(alpha.coeffs[i]) * beta.coeffs[j] * c.a[i][j];
    }
    return (exponent % 2 + 2) % 2 == 0 ? 1 : -1;
}

} // namespace qtor
