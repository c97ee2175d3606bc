#ifndef LEECHKIT_NIEMEIER_HPP
#define LEECHKIT_NIEMEIER_HPP

// The 24 negative definite even unimodular lattices of rank 24.  Each row of
// the table carries a root system and a glue code; the lattice is generated
// by the simple roots together with dual-class representatives of the code
// words.  The rootless member is obtained as an isotropic quotient of the
// even unimodular Lorentzian lattice of rank 26, and again by re-gluing the
// frame of a full A_n^m root system, which is also how explicit isometries
// of it are produced later.

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "catalog.hpp"
#include "enumerate.hpp"

namespace leechkit {

struct NiemeierRow {
    std::string name;
    std::vector<std::pair<char, long>> dynkin;  // (series, rank) pairs
    std::string group;  // isometry group metadata, label only
    long coxeter = 0;
    std::vector<std::string> glue;  // bracketed code words
};

namespace detail {

inline std::vector<std::pair<char, long>> repeat_component(char s, long n, long count) {
    return std::vector<std::pair<char, long>>(static_cast<size_t>(count), {s, n});
}

}  // namespace detail

inline const std::vector<NiemeierRow>& niemeier_table() {
    static const std::vector<NiemeierRow> rows = {
        {"N1", {{'D', 24}}, "1", 46, {"[1]"}},
        {"N2", {{'D', 16}, {'E', 8}}, "1", 30, {"[10]"}},
        {"N3", {{'E', 8}, {'E', 8}, {'E', 8}}, "S_3", 30, {"[000]"}},
        {"N4", {{'A', 24}}, "2", 25, {"[5]"}},
        {"N5", {{'D', 12}, {'D', 12}}, "2", 22, {"[12]", "[21]"}},
        {"N6", {{'A', 17}, {'E', 7}}, "2", 18, {"[31]"}},
        {"N7", {{'D', 10}, {'E', 7}, {'E', 7}}, "2", 18, {"[110]", "[301]"}},
        {"N8", {{'A', 15}, {'D', 9}}, "2", 16, {"[21]"}},
        {"N9", {{'D', 8}, {'D', 8}, {'D', 8}}, "S_3", 14, {"[(122)]"}},
        {"N10", {{'A', 12}, {'A', 12}}, "4", 13, {"[15]"}},
        {"N11", {{'A', 11}, {'D', 7}, {'E', 6}}, "2", 12, {"[111]"}},
        {"N12", {{'E', 6}, {'E', 6}, {'E', 6}, {'E', 6}}, "2.S_4", 12, {"[1(012)]"}},
        {"N13", {{'A', 9}, {'A', 9}, {'D', 6}}, "2^2", 10, {"[240]", "[501]", "[053]"}},
        {"N14", {{'D', 6}, {'D', 6}, {'D', 6}, {'D', 6}}, "S_4", 10, {"[even perm. of {0,1,2,3}]"}},
        {"N15", {{'A', 8}, {'A', 8}, {'A', 8}}, "S_3x2", 9, {"[(114)]"}},
        {"N16", {{'A', 7}, {'A', 7}, {'D', 5}, {'D', 5}}, "2^3", 8, {"[1112]", "[1721]"}},
        {"N17", {{'A', 6}, {'A', 6}, {'A', 6}, {'A', 6}}, "2.A_4", 7, {"[1(216)]"}},
        {"N18",
         {{'A', 5}, {'A', 5}, {'A', 5}, {'A', 5}, {'D', 4}},
         "2.S_4",
         6,
         {"[2(024)0]", "[33001]", "[30302]", "[30033]"}},
        // The two D_4^6 words usually printed close additively to an
        // index-2 subcode; the third word below completes them to the
        // hexacode (the unique even self-dual extension up to relabeling),
        // and the closure order check enforces it.
        {"N19",
         {{'D', 4}, {'D', 4}, {'D', 4}, {'D', 4}, {'D', 4}, {'D', 4}},
         "3xS_6",
         6,
         {"[111111]", "[0(02332)]", "[200131]"}},
        {"N20",
         {{'A', 4}, {'A', 4}, {'A', 4}, {'A', 4}, {'A', 4}, {'A', 4}},
         "2.L_2(5).2",
         5,
         {"[1(01441)]"}},
        {"N21", detail::repeat_component('A', 3, 8), "2^3.L_2(7).2", 4, {"[3(2001011)]"}},
        {"N22", detail::repeat_component('A', 2, 12), "2.M_12", 3, {"[2(11211122212)]"}},
        {"N23", detail::repeat_component('A', 1, 24), "M_24", 2,
         {"[1(00000101001100110101111)]"}},
        {"Lambda", {}, "Co_0", 0, {}},
    };
    return rows;
}

inline const NiemeierRow& niemeier_row(const std::string& name) {
    for (const NiemeierRow& r : niemeier_table())
        if (r.name == name) return r;
    check(false, "niemeier: unknown row name " + name);
    return niemeier_table().front();
}

// ---------------------------------------------------------------------------
// glue digit arithmetic
//
// A_n digits live in Z/(n+1).  D_n digits 1, 2, 3 stand for the half, vector
// and conjugate half classes; they add via XOR when n is even (Klein group)
// and mod 4 when n is odd (cyclic, generated by the half class).  E6 and E7
// digits live in Z/3 and Z/2; E8 has only the zero digit.

inline long glue_digit_count(char series, long n) {
    if (series == 'A') return n + 1;
    if (series == 'D') return 4;
    if (series == 'E') {
        if (n == 6) return 3;
        if (n == 7) return 2;
        return 1;
    }
    check(false, "glue: unknown series");
    return 0;
}

inline long glue_digit_add(char series, long n, long a, long b) {
    if (series == 'D') return n % 2 == 0 ? (a ^ b) : (a + b) % 4;
    long m = glue_digit_count(series, n);
    return (a + b) % m;
}

inline Int component_disc_order(char series, long n) {
    if (series == 'A') return Int(n + 1);
    if (series == 'D') return Int(4);
    return Int(glue_digit_count(series, n));
}

// Expand one bracketed code word.  "[abc]" is a single word; "[a(bc..)d]"
// yields one word per rotation of the parenthesized digits with the outer
// digits fixed; the even-permutation shorthand yields the twelve even
// rearrangements of 0123.
inline std::vector<std::vector<long>> glue_expand_word(const std::string& s) {
    check(s.size() >= 2 && s.front() == '[' && s.back() == ']', "glue: malformed word " + s);
    std::string body = s.substr(1, s.size() - 2);
    if (body.rfind("even perm", 0) == 0) {
        std::vector<long> digits = {0, 1, 2, 3};
        std::vector<std::vector<long>> out;
        std::sort(digits.begin(), digits.end());
        do {
            long inv = 0;
            for (size_t i = 0; i < 4; ++i)
                for (size_t j = i + 1; j < 4; ++j)
                    if (digits[i] > digits[j]) ++inv;
            if (inv % 2 == 0) out.push_back(digits);
        } while (std::next_permutation(digits.begin(), digits.end()));
        return out;
    }
    auto digit = [&](char c) -> long {
        check(c >= '0' && c <= '9', "glue: bad digit in " + s);
        return c - '0';
    };
    size_t open = body.find('(');
    if (open == std::string::npos) {
        std::vector<long> w;
        for (char c : body) w.push_back(digit(c));
        return {w};
    }
    size_t close = body.find(')');
    check(close != std::string::npos && close > open, "glue: malformed cycle in " + s);
    std::vector<long> head, cyc, tail;
    for (size_t i = 0; i < open; ++i) head.push_back(digit(body[i]));
    for (size_t i = open + 1; i < close; ++i) cyc.push_back(digit(body[i]));
    for (size_t i = close + 1; i < body.size(); ++i) tail.push_back(digit(body[i]));
    std::vector<std::vector<long>> out;
    for (size_t k = 0; k < cyc.size(); ++k) {
        std::vector<long> w = head;
        for (size_t i = 0; i < cyc.size(); ++i) w.push_back(cyc[(i + k) % cyc.size()]);
        w.insert(w.end(), tail.begin(), tail.end());
        out.push_back(w);
    }
    return out;
}

// generator words of a row, validated against the component digit ranges
inline std::vector<std::vector<long>> glue_generators(const NiemeierRow& row) {
    std::vector<std::vector<long>> out;
    for (const std::string& s : row.glue)
        for (std::vector<long>& w : glue_expand_word(s)) {
            check(w.size() == row.dynkin.size(), "glue: word length mismatch in " + row.name);
            for (size_t c = 0; c < w.size(); ++c)
                check(w[c] >= 0 && w[c] < glue_digit_count(row.dynkin[c].first, row.dynkin[c].second),
                      "glue: digit out of range in " + row.name);
            out.push_back(std::move(w));
        }
    return out;
}

// Full glue group as sorted unique words, zero word first.  Its order must
// square to the product of the component discriminant orders; a mismatch
// means the code table is corrupt.
inline std::vector<std::vector<long>> glue_closure(const NiemeierRow& row) {
    auto gens = glue_generators(row);
    std::vector<long> zero(row.dynkin.size(), 0);
    std::set<std::vector<long>> seen = {zero};
    std::vector<std::vector<long>> queue = {zero};
    for (size_t head = 0; head < queue.size(); ++head) {
        std::vector<long> cur = queue[head];
        for (const auto& g : gens) {
            std::vector<long> nxt(cur.size());
            for (size_t c = 0; c < cur.size(); ++c)
                nxt[c] = glue_digit_add(row.dynkin[c].first, row.dynkin[c].second, cur[c], g[c]);
            if (seen.insert(nxt).second) queue.push_back(std::move(nxt));
        }
    }
    Int disc = 1;
    for (auto [s, n] : row.dynkin) disc *= component_disc_order(s, n);
    check(Int(queue.size()) * Int(queue.size()) == disc,
          "glue: group of wrong order in " + row.name);
    std::sort(queue.begin() + 1, queue.end());
    return queue;
}

// ---------------------------------------------------------------------------
// ambient frame of the component sum

struct ComponentFrame {
    std::vector<std::pair<char, long>> comps;
    std::vector<long> offset;  // ambient offset of each block
    long dim = 0;
    IntMat ambient;
    RatMat roots;                              // 24 simple-root columns
    std::vector<std::vector<RatMat>> digit;    // digit[c][k]: ambient column
};

// dual-class representative of digit k on an A_n block: the difference of
// the k-th and 0-th cyclic shifts of the dual weight vector, with k leading
// coordinates 1 - k/(n+1) and the rest -k/(n+1)
inline RatMat a_digit_vector(long n, long k, long dim, long offset) {
    RatMat v(dim, 1);
    for (long i = 0; i <= n; ++i)
        v(offset + i, 0) = i < k ? Rat(n + 1 - k, n + 1) : Rat(-k, n + 1);
    return v;
}

inline ComponentFrame component_frame(const NiemeierRow& row) {
    ComponentFrame fr;
    fr.comps = row.dynkin;
    long rank = 0;
    for (auto [s, n] : row.dynkin) {
        fr.offset.push_back(fr.dim);
        fr.dim += s == 'A' ? n + 1 : n;
        rank += n;
    }
    check(rank == 24, "frame: component ranks must sum to 24");
    fr.ambient = IntMat(fr.dim, fr.dim);
    fr.roots = RatMat(fr.dim, 24);
    long col = 0;
    for (size_t c = 0; c < fr.comps.size(); ++c) {
        auto [s, n] = fr.comps[c];
        long o = fr.offset[c];
        std::vector<RatMat> dig;
        if (s == 'A') {
            for (long i = 0; i <= n; ++i) fr.ambient(o + i, o + i) = -1;
            for (long j = 0; j < n; ++j, ++col) {
                fr.roots(o + j, col) = 1;
                fr.roots(o + j + 1, col) = -1;
            }
            for (long k = 0; k <= n; ++k) dig.push_back(a_digit_vector(n, k, fr.dim, o));
        } else if (s == 'D') {
            for (long i = 0; i < n; ++i) fr.ambient(o + i, o + i) = -1;
            for (long j = 0; j + 1 < n; ++j, ++col) {
                fr.roots(o + j, col) = 1;
                fr.roots(o + j + 1, col) = -1;
            }
            fr.roots(o + n - 2, col) = 1;
            fr.roots(o + n - 1, col) = 1;
            ++col;
            for (long k = 0; k < 4; ++k) {
                RatMat v(fr.dim, 1);
                if (k == 1 || k == 3)
                    for (long i = 0; i < n; ++i) v(o + i, 0) = Rat(1, 2);
                if (k == 2) v(o + n - 1, 0) = 1;
                if (k == 3) v(o + n - 1, 0) = Rat(-1, 2);
                dig.push_back(std::move(v));
            }
        } else {
            Lattice e = root_E(n);
            for (long i = 0; i < n; ++i)
                for (long j = 0; j < n; ++j) fr.ambient(o + i, o + j) = e.gram(i, j);
            for (long j = 0; j < n; ++j, ++col) fr.roots(o + j, col) = 1;
            long cnt = glue_digit_count('E', n);
            RatMat zero(fr.dim, 1);
            dig.push_back(zero);
            if (cnt > 1) {
                DiscriminantGroup dg = discriminant_group(e);
                check(dg.form.orders.size() == 1 && dg.form.orders[0] == cnt,
                      "frame: unexpected dual quotient of an E block");
                for (long k = 1; k < cnt; ++k) {
                    RatMat v(fr.dim, 1);
                    for (long i = 0; i < n; ++i) v(o + i, 0) = Rat(k) * dg.gens(i, 0);
                    dig.push_back(std::move(v));
                }
            }
        }
        fr.digit.push_back(std::move(dig));
    }
    return fr;
}

// ambient representative of a code word: the sum of its digit columns
inline RatMat glue_vector(const ComponentFrame& fr, const std::vector<long>& word) {
    check(word.size() == fr.comps.size(), "glue vector: word length mismatch");
    RatMat v(fr.dim, 1);
    for (size_t c = 0; c < word.size(); ++c) {
        const RatMat& d = fr.digit[c][static_cast<size_t>(word[c])];
        for (long i = 0; i < fr.dim; ++i)
            if (!(d(i, 0) == Rat(0))) v(i, 0) += d(i, 0);
    }
    return v;
}

// ---------------------------------------------------------------------------
// isotropic quotients of the Lorentzian lattice

// quotient of v^perp by an isotropic primitive vector v (ambient column);
// the attached ambient coordinates are representatives modulo v
inline Lattice quotient_by_isotropic(const Lattice& l, const IntMat& v, std::string label = "") {
    check(l.ambient.has_value(), "isotropic quotient: ambient coordinates required");
    auto cv = member_coords(l, to_rat(v));
    check(cv.has_value(), "isotropic quotient: vector is not in the lattice");
    check(l.norm_of(*cv) == 0, "isotropic quotient: vector is not isotropic");
    IntMat c(l.rank(), 1);
    Int content = 0;
    for (long i = 0; i < l.rank(); ++i) {
        c(i, 0) = (*cv)[i];
        content = gcd(content, c(i, 0));
    }
    check(content == 1, "isotropic quotient: vector is not primitive");
    Lattice perp = orthogonal_complement(l, c);
    auto pv = member_coords(perp, to_rat(v));
    check(pv.has_value(), "isotropic quotient: vector lost in the complement");
    long r = perp.rank();
    IntMat pc(r, 1);
    for (long i = 0; i < r; ++i) pc(i, 0) = (*pv)[i];
    SnfResult s = snf(pc);
    check(abs(s.d(0, 0)) == 1, "isotropic quotient: vector imprimitive in the complement");
    RatMat ui = inverse_rat(to_rat(s.u));
    RatMat nb = perp.ambient->basis * ui;  // first column is +-v
    RatMat q(nb.rows, r - 1);
    for (long i = 0; i < nb.rows; ++i)
        for (long j = 1; j < r; ++j) q(i, j - 1) = nb(i, j);
    return lattice_in_ambient(label.empty() ? l.label + ".mod-null" : std::move(label),
                              l.ambient->gram, std::move(q));
}

// null vector with the triangular weight pattern; its quotient is rootless
inline IntMat triangular_null_vector() {
    IntMat v(26, 1);
    v(0, 0) = 70;
    for (long i = 2; i < 26; ++i) v(i, 0) = i - 1;
    return v;
}

// null vector whose quotient carries the A_8^3 root system
inline IntMat a8_hole_null_vector() {
    IntMat v(26, 1);
    v(0, 0) = 17;
    for (long i = 1; i <= 8; ++i) v(i, 0) = 1;
    for (long i = 9; i <= 17; ++i) v(i, 0) = 3;
    for (long i = 18; i <= 25; ++i) v(i, 0) = 5;
    return v;
}

// the rootless rank-24 even unimodular lattice, negative definite
inline Lattice leech_lattice() {
    Lattice lam =
        quotient_by_isotropic(lorentzian_even_26(), triangular_null_vector(), "Lambda");
    check(lam.rank() == 24 && lam.det() == 1 && lam.is_even(), "leech: wrong quotient");
    return lam;
}

// ---------------------------------------------------------------------------
// row builder

inline Lattice build_niemeier(const NiemeierRow& row, bool verify_roots = false) {
    Lattice out = [&] {
        if (row.dynkin.empty()) return leech_lattice();
        ComponentFrame fr = component_frame(row);
        auto gens = glue_generators(row);
        glue_closure(row);  // order check
        RatMat all(fr.dim, 24 + static_cast<long>(gens.size()));
        for (long i = 0; i < fr.dim; ++i)
            for (long j = 0; j < 24; ++j) all(i, j) = fr.roots(i, j);
        for (size_t g = 0; g < gens.size(); ++g) {
            RatMat v = glue_vector(fr, gens[g]);
            for (long i = 0; i < fr.dim; ++i) all(i, 24 + static_cast<long>(g)) = v(i, 0);
        }
        IntMat m;
        Int den;
        clear_denominators(all, m, den);
        IntMat hb = column_lattice_basis(m);
        check(hb.cols == 24, "niemeier: glued lattice has wrong rank");
        RatMat basis(fr.dim, 24);
        for (long i = 0; i < fr.dim; ++i)
            for (long j = 0; j < 24; ++j) basis(i, j) = Rat(hb(i, j), den);
        return lattice_in_ambient(row.name, fr.ambient, std::move(basis));
    }();
    check(out.is_even(), "niemeier: glued lattice is odd in " + row.name);
    check(out.det() == 1, "niemeier: glued lattice has wrong determinant in " + row.name);
    if (verify_roots)
        check(vectors_of_norm(out, Int(2)).size() == static_cast<size_t>(24 * row.coxeter),
              "niemeier: root count disagrees with the Coxeter number in " + row.name);
    return out;
}

inline Lattice build_niemeier(const std::string& name, bool verify_roots = false) {
    return build_niemeier(niemeier_row(name), verify_roots);
}

// ---------------------------------------------------------------------------
// hole frames over a full A_n^m root system
//
// The frame keeps the n+1 cyclic shifts f_j of (-1,1,0,...,0) per block and
// one column h_k per code word, where block r of h_k holds the word's
// digit-indexed cyclic shift g_j of the dual weight vector
// g_0 = (-n/2, -n/2+1, ..., n/2)/(n+1).  Differences g_j - g_0 are the
// digit representatives used by the row builder, so re-gluing the frame
// reproduces the glued lattice vector for vector.

struct HolyFrame {
    long n = 0, m = 0;
    NiemeierRow row;
    IntMat ambient;                       // negated identity of size (n+1)m
    RatMat f;                             // column r*(n+1)+j holds f_j in block r
    RatMat h;                             // one column per code word
    std::vector<std::vector<long>> code;  // full glue group, zero word first
    std::map<std::vector<long>, long> word_index;

    long fcol(long r, long j) const { return r * (n + 1) + j; }
};

inline HolyFrame holy_frame(const NiemeierRow& row) {
    HolyFrame fr;
    fr.row = row;
    check(!row.dynkin.empty(), "hole frame: a root system is required");
    fr.n = row.dynkin.front().second;
    fr.m = static_cast<long>(row.dynkin.size());
    for (auto [s, n] : row.dynkin)
        check(s == 'A' && n == fr.n, "hole frame: components must all be the same A_n");
    check(fr.n * fr.m == 24, "hole frame: total rank must be 24");
    long b = fr.n + 1, dim = b * fr.m;
    fr.ambient = IntMat(dim, dim);
    for (long i = 0; i < dim; ++i) fr.ambient(i, i) = -1;
    fr.f = RatMat(dim, dim);
    for (long r = 0; r < fr.m; ++r)
        for (long j = 0; j < b; ++j) {
            fr.f(r * b + j, fr.fcol(r, j)) = -1;
            fr.f(r * b + (j + 1) % b, fr.fcol(r, j)) += 1;
        }
    fr.code = glue_closure(row);
    for (size_t k = 0; k < fr.code.size(); ++k)
        fr.word_index[fr.code[k]] = static_cast<long>(k);
    fr.h = RatMat(dim, static_cast<long>(fr.code.size()));
    for (size_t k = 0; k < fr.code.size(); ++k)
        for (long r = 0; r < fr.m; ++r) {
            long j = fr.code[k][static_cast<size_t>(r)];
            for (long i = 0; i < b; ++i) {
                long src = ((i - j) % b + b) % b;  // g_j = j-th cyclic shift of g_0
                fr.h(r * b + i, static_cast<long>(k)) = Rat(2 * src - fr.n, 2 * (fr.n + 1));
            }
        }
    return fr;
}

namespace detail {

inline Lattice lattice_from_columns(const IntMat& ambient, const RatMat& cols, long rank,
                                    std::string label) {
    IntMat m;
    Int den;
    clear_denominators(cols, m, den);
    IntMat hb = column_lattice_basis(m);
    check(hb.cols == rank, "lattice from columns: wrong rank");
    RatMat basis(cols.rows, rank);
    for (long i = 0; i < cols.rows; ++i)
        for (long j = 0; j < rank; ++j) basis(i, j) = Rat(hb(i, j), den);
    return lattice_in_ambient(std::move(label), ambient, std::move(basis));
}

}  // namespace detail

// integer spans of the frame roots and code-word differences: the glued
// rank-24 lattice of the row, inside the frame ambient
inline Lattice holy_niemeier(const HolyFrame& fr) {
    long dim = (fr.n + 1) * fr.m;
    long nh = static_cast<long>(fr.code.size()) - 1;
    RatMat cols(dim, 24 + nh);
    long col = 0;
    for (long r = 0; r < fr.m; ++r)
        for (long j = 1; j <= fr.n; ++j, ++col)
            for (long i = 0; i < dim; ++i) cols(i, col) = fr.f(i, fr.fcol(r, j));
    for (long k = 1; k <= nh; ++k, ++col)
        for (long i = 0; i < dim; ++i) cols(i, col) = fr.h(i, k) - fr.h(i, 0);
    Lattice out = detail::lattice_from_columns(fr.ambient, cols, 24, fr.row.name + ".holy");
    check(out.is_even() && out.det() == 1, "holy: re-glued row lattice is wrong");
    return out;
}

// integer spans of all differences u - u' where u, u' run over the simple
// root columns and the code-word columns together: the rootless lattice,
// sharing the frame ambient
inline Lattice holy_leech(const HolyFrame& fr) {
    long dim = (fr.n + 1) * fr.m;
    long nh = static_cast<long>(fr.code.size());
    RatMat cols(dim, fr.m * fr.n - 1 + nh);
    long col = 0;
    long u0 = fr.fcol(0, 1);
    for (long r = 0; r < fr.m; ++r)
        for (long j = 1; j <= fr.n; ++j) {
            if (r == 0 && j == 1) continue;
            for (long i = 0; i < dim; ++i)
                cols(i, col) = fr.f(i, fr.fcol(r, j)) - fr.f(i, u0);
            ++col;
        }
    for (long k = 0; k < nh; ++k, ++col)
        for (long i = 0; i < dim; ++i) cols(i, col) = fr.h(i, k) - fr.f(i, u0);
    Lattice out =
        detail::lattice_from_columns(fr.ambient, cols, 24, fr.row.name + ".holy-rootless");
    check(out.is_even() && out.det() == 1, "holy: re-glued rootless lattice is wrong");
    check(vectors_of_norm(out, Int(2)).empty(), "holy: rootless lattice contains a root");
    return out;
}

}  // namespace leechkit

#endif
