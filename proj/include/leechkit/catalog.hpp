#ifndef LEECHKIT_CATALOG_HPP
#define LEECHKIT_CATALOG_HPP

// Named lattices used throughout the toolkit.  Root lattices follow the
// negative definite convention by default (pass sign = +1 for the positive
// form; labels get a "(+)" suffix).  A and D series live inside a signed
// Euclidean ambient so dual classes have explicit coordinates; the E series
// is given on its simple-root basis, which is its own ambient.

#include <cstdlib>
#include <optional>
#include <string>

#include "lattice.hpp"

namespace leechkit {

inline Lattice hyperbolic_plane() {
    IntMat g(2, 2);
    g(0, 1) = 1;
    g(1, 0) = 1;
    return lattice_from_gram("U", g);
}

inline Lattice rank_one(const Int& k) {
    IntMat g(1, 1);
    g(0, 0) = k;
    return lattice_from_gram("(" + k.str() + ")", g);
}

namespace detail {
inline std::string signed_label(std::string base, int sign) {
    return sign > 0 ? base + "(+)" : base;
}
}  // namespace detail

// integer vectors with zero coordinate sum inside sign * Z^{n+1},
// basis e_i - e_{i+1}
inline Lattice root_A(long n, int sign = -1) {
    check(n >= 1, "root_A: rank must be at least 1");
    check(sign == 1 || sign == -1, "root_A: sign must be +1 or -1");
    IntMat amb(n + 1, n + 1);
    for (long i = 0; i <= n; ++i) amb(i, i) = sign;
    RatMat basis(n + 1, n);
    for (long j = 0; j < n; ++j) {
        basis(j, j) = 1;
        basis(j + 1, j) = -1;
    }
    return lattice_in_ambient(detail::signed_label("A" + std::to_string(n), sign),
                              std::move(amb), std::move(basis));
}

// integer vectors with even coordinate sum inside sign * Z^n,
// basis e_i - e_{i+1} and e_{n-1} + e_n
inline Lattice root_D(long n, int sign = -1) {
    check(n >= 2, "root_D: rank must be at least 2");
    check(sign == 1 || sign == -1, "root_D: sign must be +1 or -1");
    IntMat amb(n, n);
    for (long i = 0; i < n; ++i) amb(i, i) = sign;
    RatMat basis(n, n);
    for (long j = 0; j + 1 < n; ++j) {
        basis(j, j) = 1;
        basis(j + 1, j) = -1;
    }
    basis(n - 2, n - 1) = 1;
    basis(n - 1, n - 1) = 1;
    return lattice_in_ambient(detail::signed_label("D" + std::to_string(n), sign),
                              std::move(amb), std::move(basis));
}

// E6, E7, E8 on the simple-root basis: a path on nodes 0..n-2 with one
// extra edge (n-4, n-1); determinants 3, 2, 1
inline Lattice root_E(long n, int sign = -1) {
    check(n >= 6 && n <= 8, "root_E: rank must be 6, 7 or 8");
    check(sign == 1 || sign == -1, "root_E: sign must be +1 or -1");
    IntMat g(n, n);
    for (long i = 0; i < n; ++i) g(i, i) = 2 * sign;
    for (long i = 0; i + 2 < n; ++i) {
        g(i, i + 1) = -sign;
        g(i + 1, i) = -sign;
    }
    g(n - 4, n - 1) = -sign;
    g(n - 1, n - 4) = -sign;
    RatMat basis(n, n);
    for (long i = 0; i < n; ++i) basis(i, i) = 1;
    return lattice_in_ambient(detail::signed_label("E" + std::to_string(n), sign),
                              std::move(g), std::move(basis));
}

// index-2 even unimodular overlattice of D16, adjoining the all-halves
// vector of norm 4*sign
inline Lattice d16_plus(int sign = -1) {
    Lattice d = root_D(16, sign);
    RatMat s(16, 1);
    for (long i = 0; i < 16; ++i) s(i, 0) = Rat(1, 2);
    auto x = solve_field<Rat>(d.ambient->basis, s);
    check(x.has_value(), "d16_plus: half vector not in the rational span");
    return overlattice(d, *x, detail::signed_label("D16+", sign));
}

// even unimodular lattice of signature (1,25): vectors of even coordinate
// sum in diag(1,-1,...,-1), extended by the all-halves vector
inline Lattice lorentzian_even_26() {
    long n = 26;
    IntMat amb(n, n);
    amb(0, 0) = 1;
    for (long i = 1; i < n; ++i) amb(i, i) = -1;
    RatMat basis(n, n);
    for (long j = 0; j + 1 < n; ++j) {
        basis(j, j) = 1;
        basis(j + 1, j) = -1;
    }
    basis(n - 2, n - 1) = 1;
    basis(n - 1, n - 1) = 1;
    Lattice even_part = lattice_in_ambient("II(1,25).even", std::move(amb), std::move(basis));
    RatMat s(n, 1);
    for (long i = 0; i < n; ++i) s(i, 0) = Rat(1, 2);
    auto x = solve_field<Rat>(even_part.ambient->basis, s);
    check(x.has_value(), "lorentzian_even_26: half vector not in the rational span");
    return overlattice(even_part, *x, "II(1,25)");
}

// second cohomology of the Hilbert square of a K3 surface:
// U^3 + E8(-1)^2 + (-2), rank 23, signature (3,20), determinant -2
inline Lattice k3two_lattice() {
    Lattice u = hyperbolic_plane();
    Lattice e8m = root_E(8);
    Lattice l = direct_sum(direct_sum(direct_sum(u, u), u),
                           direct_sum(direct_sum(e8m, e8m), rank_one(Int(-2))));
    l.label = "K3two";
    return l;
}

// full cohomology lattice of a K3 surface: U^4 + E8(-1)^2, even unimodular
// of signature (4,20)
inline Lattice mukai_lattice() {
    Lattice u = hyperbolic_plane();
    Lattice e8m = root_E(8);
    Lattice l = direct_sum(direct_sum(direct_sum(u, u), direct_sum(u, u)),
                           direct_sum(e8m, e8m));
    l.label = "Mukai";
    return l;
}

// negative definite rank-2 block of determinant 11
inline Lattice m11_block() {
    IntMat g(2, 2);
    g(0, 0) = -2;
    g(0, 1) = 1;
    g(1, 0) = 1;
    g(1, 1) = -6;
    return lattice_from_gram("M11", g);
}

// rank-20 negative definite even lattice of determinant 121 and minimum 4,
// the co-invariant lattice of an order-11 isometry of a rank-24 even
// unimodular lattice; fixed reference Gram matrix
inline Lattice s11_lattice() {
    static const int rows[20][20] = {
        {-4, 1, -2, -2, -1, 1, -1, 1, -1, -1, 2, 1, -1, 2, -1, -2, -2, 2, 1, -1},
        {1, -4, -1, -1, -1, -1, -1, 1, -1, 2, -1, -2, 2, 0, -1, 0, 0, -1, -2, 1},
        {-2, -1, -4, -2, -1, -1, 0, 1, 0, -1, 1, 0, -1, 2, -2, -1, -1, 0, 0, 1},
        {-2, -1, -2, -4, 0, 0, -2, 0, -1, 0, 2, 1, 0, 1, 0, 0, -1, 1, 0, -1},
        {-1, -1, -1, 0, -4, 1, -1, 2, -2, -1, 1, 0, -1, 0, -2, -2, 0, 1, 1, -1},
        {1, -1, -1, 0, 1, -4, 0, -1, 0, 1, -2, -1, 0, -1, -1, 0, -1, 0, -1, 1},
        {-1, -1, 0, -2, -1, 0, -4, 1, -2, 1, 1, 1, 0, -1, 0, -1, 0, 2, 0, -2},
        {1, 1, 1, 0, 2, -1, 1, -4, 0, 0, -1, 1, 1, 0, 2, 1, 0, -1, 1, 0},
        {-1, -1, 0, -1, -2, 0, -2, 0, -4, 0, 0, 1, 1, 0, -1, -2, 0, 2, 0, -2},
        {-1, 2, -1, 0, -1, 1, 1, 0, 0, -4, 1, 1, -2, 1, 0, 0, 1, 1, 1, 0},
        {2, -1, 1, 2, 1, -2, 1, -1, 0, 1, -4, -2, 2, -1, 0, 0, 0, -1, -2, 1},
        {1, -2, 0, 1, 0, -1, 1, 1, 1, 1, -2, -4, 1, 0, -1, 0, -1, -1, -2, 2},
        {-1, 2, -1, 0, -1, 0, 0, 1, 1, -2, 2, 1, -4, 0, -1, 0, 0, 1, 2, 0},
        {2, 0, 2, 1, 0, -1, -1, 0, 0, 1, -1, 0, 0, -4, 1, 1, 1, 0, 0, -1},
        {-1, -1, -2, 0, -2, -1, 0, 2, -1, 0, 0, -1, -1, 1, -4, -2, -1, 1, 0, 0},
        {-2, 0, -1, 0, -2, 0, -1, 1, -2, 0, 0, 0, 0, 1, -2, -4, -2, 2, 0, -1},
        {-2, 0, -1, -1, 0, -1, 0, 0, 0, 1, 0, -1, 0, 1, -1, -2, -4, 1, 0, 0},
        {2, -1, 0, 1, 1, 0, 2, -1, 2, 1, -1, -1, 1, 0, 1, 2, 1, -4, 0, 2},
        {1, -2, 0, 0, 1, -1, 0, 1, 0, 1, -2, -2, 2, 0, 0, 0, 0, 0, -4, 1},
        {-1, 1, 1, -1, -1, 1, -2, 0, -2, 0, 1, 2, 0, -1, 0, -1, 0, 2, 1, -4}};
    IntMat g(20, 20);
    for (long i = 0; i < 20; ++i)
        for (long j = 0; j < 20; ++j) g(i, j) = rows[i][j];
    return lattice_from_gram("S11", g);
}

// the two positive definite rank-3 even lattices of determinant 242 that
// arise as invariant lattices alongside S11
inline Lattice t11_one() {
    IntMat g(3, 3);
    g(0, 0) = 2;
    g(0, 1) = g(1, 0) = 1;
    g(1, 1) = 6;
    g(2, 2) = 22;
    return lattice_from_gram("T1_11", g);
}

inline Lattice t11_two() {
    IntMat g(3, 3);
    g(0, 0) = 6;
    g(0, 1) = g(1, 0) = -2;
    g(0, 2) = g(2, 0) = -2;
    g(1, 1) = 8;
    g(1, 2) = g(2, 1) = -3;
    g(2, 2) = 8;
    return lattice_from_gram("T2_11", g);
}

// rank-2 positive definite lattice of determinant 363, the orthogonal
// complement of a degree-6 vector in t11_two()
inline Lattice tx_block() {
    IntMat g(2, 2);
    g(0, 0) = 22;
    g(0, 1) = g(1, 0) = 33;
    g(1, 1) = 66;
    return lattice_from_gram("TX", g);
}

// Name-based lookup backing the command line interface.  Accepted names:
//   U, A<n>, D<n>, E6, E7, E8, (<k>), D16plus, II_1_25, K3two, Mukai,
//   M11, S11, T1_11, T2_11, TX
// Root-lattice names (and D16plus) take an optional trailing '+' for the
// positive definite form.
inline std::optional<Lattice> catalog_lookup(const std::string& name) {
    if (name == "U") return hyperbolic_plane();
    if (name == "II_1_25") return lorentzian_even_26();
    if (name == "K3two") return k3two_lattice();
    if (name == "Mukai") return mukai_lattice();
    if (name == "M11") return m11_block();
    if (name == "S11") return s11_lattice();
    if (name == "T1_11") return t11_one();
    if (name == "T2_11") return t11_two();
    if (name == "TX") return tx_block();
    if (name.size() >= 3 && name.front() == '(' && name.back() == ')') {
        try {
            return rank_one(Int(name.substr(1, name.size() - 2)));
        } catch (...) {
            return std::nullopt;
        }
    }
    if (name == "D16plus" || name == "D16+") return d16_plus(-1);
    if (name == "D16plus+") return d16_plus(1);
    std::string base = name;
    int sign = -1;
    if (!base.empty() && base.back() == '+') {
        base.pop_back();
        sign = 1;
    }
    if (base.size() >= 2 && (base[0] == 'A' || base[0] == 'D' || base[0] == 'E')) {
        char* end = nullptr;
        long n = std::strtol(base.c_str() + 1, &end, 10);
        if (end == nullptr || *end != '\0' || n <= 0) return std::nullopt;
        try {
            if (base[0] == 'A') return root_A(n, sign);
            if (base[0] == 'D') return root_D(n, sign);
            return root_E(n, sign);
        } catch (...) {
            return std::nullopt;
        }
    }
    return std::nullopt;
}

}  // namespace leechkit

#endif
