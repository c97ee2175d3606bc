#ifndef LEECHKIT_GROUP_ACTION_HPP
#define LEECHKIT_GROUP_ACTION_HPP

// Finite groups of isometries acting on lattices.  Isometries are built
// from permutations of the copies of an A_n^m frame and from glue-code
// translations, both presented as linear maps on the frame's ambient
// coordinates; an isometry is stored as an integer matrix on the lattice
// basis, so composition is plain matrix multiplication while membership
// checks happen in ambient coordinates at construction time.  On top of
// that: breadth-first closure with a hard cap, fixed and co-invariant
// sublattices, induced maps on discriminant groups, and the four-condition
// screen for negative definite rootless actions.

#include <deque>
#include <map>
#include <set>

#include "enumerate.hpp"
#include "niemeier.hpp"

namespace leechkit {

enum class IsometryKind {
    CoordinatePermutation,
    ComponentPermutation,
    GlueTranslation,
    Diagonal,
    Composite,
};

struct Isometry {
    IntMat m;  // action on basis coordinates; m^T gram m = gram
    IsometryKind kind = IsometryKind::Composite;
};

// ---------------------------------------------------------------------------
// permutations over a labeled index set

struct Permutation {
    std::vector<long> img;  // img[i] = image of point i

    long degree() const { return static_cast<long>(img.size()); }

    bool is_identity() const {
        for (long i = 0; i < degree(); ++i)
            if (img[static_cast<size_t>(i)] != i) return false;
        return true;
    }
};

inline Permutation identity_permutation(long n) {
    Permutation p;
    for (long i = 0; i < n; ++i) p.img.push_back(i);
    return p;
}

// labels of the projective line over Z/p in the order used by the frames:
// infinity first, then 0 .. p-1
inline std::vector<std::string> projective_labels(long p) {
    std::vector<std::string> out{"∞"};
    for (long i = 0; i < p; ++i) out.push_back(std::to_string(i));
    return out;
}

// Parse cycle notation over the given label set, e.g. "(0)(2 4)(5 10)".
// Whitespace separates points inside a cycle; labels not mentioned are
// fixed; each label may appear at most once.
inline Permutation permutation_from_cycles(const std::string& text,
                                           const std::vector<std::string>& labels) {
    std::map<std::string, long> index;
    for (size_t i = 0; i < labels.size(); ++i) {
        check(index.emplace(labels[i], static_cast<long>(i)).second,
              "permutation: duplicate label");
    }
    Permutation p = identity_permutation(static_cast<long>(labels.size()));
    std::vector<bool> used(labels.size());
    size_t at = 0;
    auto skip_space = [&] {
        while (at < text.size() && (text[at] == ' ' || text[at] == '\t')) ++at;
    };
    skip_space();
    while (at < text.size()) {
        check(text[at] == '(', "permutation: expected a parenthesized cycle");
        ++at;
        std::vector<long> cyc;
        for (;;) {
            skip_space();
            check(at < text.size(), "permutation: unterminated cycle");
            if (text[at] == ')') {
                ++at;
                break;
            }
            size_t start = at;
            while (at < text.size() && text[at] != ' ' && text[at] != '\t' && text[at] != ')')
                ++at;
            auto it = index.find(text.substr(start, at - start));
            check(it != index.end(), "permutation: unknown label");
            check(!used[static_cast<size_t>(it->second)], "permutation: label used twice");
            used[static_cast<size_t>(it->second)] = true;
            cyc.push_back(it->second);
        }
        for (size_t i = 0; i < cyc.size(); ++i)
            p.img[static_cast<size_t>(cyc[i])] = cyc[(i + 1) % cyc.size()];
        skip_space();
    }
    return p;
}

inline long permutation_order(const Permutation& p) {
    Int order = 1;
    std::vector<bool> seen(static_cast<size_t>(p.degree()));
    for (long i = 0; i < p.degree(); ++i) {
        if (seen[static_cast<size_t>(i)]) continue;
        long len = 0, j = i;
        do {
            seen[static_cast<size_t>(j)] = true;
            j = p.img[static_cast<size_t>(j)];
            ++len;
        } while (j != i);
        order = lcm(order, Int(len));
    }
    return to_long(order);
}

inline long orbit_count(const Permutation& p) {
    long count = 0;
    std::vector<bool> seen(static_cast<size_t>(p.degree()));
    for (long i = 0; i < p.degree(); ++i) {
        if (seen[static_cast<size_t>(i)]) continue;
        ++count;
        for (long j = i; !seen[static_cast<size_t>(j)]; j = p.img[static_cast<size_t>(j)])
            seen[static_cast<size_t>(j)] = true;
    }
    return count;
}

// apply b first, then a
inline Permutation compose(const Permutation& a, const Permutation& b) {
    check(a.degree() == b.degree(), "permutation: cannot compose different degrees");
    Permutation out;
    out.img.resize(b.img.size());
    for (long i = 0; i < b.degree(); ++i)
        out.img[static_cast<size_t>(i)] =
            a.img[static_cast<size_t>(b.img[static_cast<size_t>(i)])];
    return out;
}

inline Permutation inverse(const Permutation& p) {
    Permutation out;
    out.img.resize(p.img.size());
    for (long i = 0; i < p.degree(); ++i)
        out.img[static_cast<size_t>(p.img[static_cast<size_t>(i)])] = i;
    return out;
}

// ---------------------------------------------------------------------------
// isometries from ambient linear maps

// Isometry of l induced by a linear map on ambient coordinates.  Every
// basis vector's image must land back in l; the induced basis matrix must
// preserve the Gram matrix exactly.
inline Isometry isometry_from_ambient(const Lattice& l, const RatMat& map, IsometryKind kind) {
    check(l.ambient.has_value(), "isometry: lattice has no ambient coordinates");
    check(map.rows == map.cols && map.rows == l.ambient->basis.rows,
          "isometry: ambient map has the wrong size");
    long n = l.rank();
    RatMat img = map * l.ambient->basis;
    IntMat m(n, n);
    for (long j = 0; j < n; ++j) {
        RatMat col(img.rows, 1);
        for (long i = 0; i < img.rows; ++i) col(i, 0) = img(i, j);
        auto c = member_coords(l, col);
        check(c.has_value(), "isometry: image of basis vector " + std::to_string(j) +
                                 " is not in the lattice");
        for (long i = 0; i < n; ++i) m(i, j) = (*c)[static_cast<size_t>(i)];
    }
    check(m.transposed() * l.gram * m == l.gram, "isometry: Gram matrix not preserved");
    return Isometry{std::move(m), kind};
}

namespace detail {

// ambient index map of a permutation of the frame's copies: block r moves
// to block p(r) unchanged
inline std::vector<long> copy_permutation_index(const HolyFrame& fr, const Permutation& p) {
    check(p.degree() == fr.m, "copy permutation: degree must match the copy count");
    long b = fr.n + 1;
    std::vector<long> idx(static_cast<size_t>(b * fr.m));
    for (long r = 0; r < fr.m; ++r)
        for (long i = 0; i < b; ++i)
            idx[static_cast<size_t>(r * b + i)] = p.img[static_cast<size_t>(r)] * b + i;
    return idx;
}

// ambient index map of per-copy cyclic coordinate rotations by t_r
inline std::vector<long> rotation_index(const HolyFrame& fr, const std::vector<long>& t) {
    check(static_cast<long>(t.size()) == fr.m, "glue translation: one digit per copy required");
    long b = fr.n + 1;
    std::vector<long> idx(static_cast<size_t>(b * fr.m));
    for (long r = 0; r < fr.m; ++r) {
        long tr = ((t[static_cast<size_t>(r)] % b) + b) % b;
        for (long i = 0; i < b; ++i)
            idx[static_cast<size_t>(r * b + i)] = r * b + (i + tr) % b;
    }
    return idx;
}

inline RatMat index_map_matrix(const std::vector<long>& idx) {
    long dim = static_cast<long>(idx.size());
    RatMat p(dim, dim);
    for (long i = 0; i < dim; ++i) p(idx[static_cast<size_t>(i)], i) = 1;
    return p;
}

}  // namespace detail

// Isometry induced by permuting the copies of the frame's root system.
// Fails when the permutation is not an automorphism of the glue code.
inline Isometry copy_permutation_isometry(const Lattice& l, const HolyFrame& fr,
                                          const Permutation& p) {
    check(l.ambient && l.ambient->gram == fr.ambient,
          "copy permutation: lattice does not live in the frame's ambient space");
    RatMat map = detail::index_map_matrix(detail::copy_permutation_index(fr, p));
    Isometry g = isometry_from_ambient(l, map, IsometryKind::ComponentPermutation);
    if (p.is_identity()) g.kind = IsometryKind::Diagonal;
    return g;
}

// Isometry sending the code-word vector of w to that of w + t, for t a
// glue-code word.  The underlying ambient map rotates each copy's
// coordinates cyclically by the corresponding digit of t; consistency on
// every code word is verified before the lattice is touched.
inline Isometry glue_translation_isometry(const Lattice& l, const HolyFrame& fr,
                                          const std::vector<long>& t) {
    check(l.ambient && l.ambient->gram == fr.ambient,
          "glue translation: lattice does not live in the frame's ambient space");
    std::vector<long> idx = detail::rotation_index(fr, t);
    long b = fr.n + 1;
    for (size_t k = 0; k < fr.code.size(); ++k) {
        std::vector<long> target(static_cast<size_t>(fr.m));
        for (long r = 0; r < fr.m; ++r)
            target[static_cast<size_t>(r)] =
                (fr.code[k][static_cast<size_t>(r)] + t[static_cast<size_t>(r)]) % b;
        auto it = fr.word_index.find(target);
        check(it != fr.word_index.end(),
              "glue translation: translate of a code word leaves the code");
        for (long i = 0; i < b * fr.m; ++i)
            check(fr.h(idx[static_cast<size_t>(i)], it->second) == fr.h(i, static_cast<long>(k)),
                  "glue translation: inconsistent image of a code-word vector");
    }
    return isometry_from_ambient(l, detail::index_map_matrix(idx), IsometryKind::GlueTranslation);
}

// apply b first, then a
inline Isometry compose(const Isometry& a, const Isometry& b) {
    return Isometry{a.m * b.m, IsometryKind::Composite};
}

inline long isometry_order(const Isometry& g, long cap = 1000) {
    long n = g.m.rows;
    IntMat id = IntMat::identity(n);
    IntMat p = g.m;
    for (long k = 1; k <= cap; ++k) {
        if (p == id) return k;
        p = p * g.m;
    }
    check(false, "isometry order: cap exceeded");
    return 0;
}

// ---------------------------------------------------------------------------
// fixed and co-invariant sublattices

namespace detail {

// saturated basis of the common fixed space of the generators, in basis
// coordinates; every column of the whole lattice for an empty list
inline IntMat fixed_space_basis(const Lattice& l, const std::vector<Isometry>& gens) {
    long n = l.rank();
    if (gens.empty()) return IntMat::identity(n);
    IntMat stack(static_cast<long>(gens.size()) * n, n);
    for (size_t a = 0; a < gens.size(); ++a) {
        check(gens[a].m.rows == n, "fixed space: generator size mismatch");
        for (long i = 0; i < n; ++i)
            for (long j = 0; j < n; ++j)
                stack(static_cast<long>(a) * n + i, j) =
                    gens[a].m(i, j) - (i == j ? Int(1) : Int(0));
    }
    return kernel_basis(stack);
}

}  // namespace detail

inline Lattice invariant_lattice(const Lattice& l, const std::vector<Isometry>& gens,
                                 std::string label = "") {
    IntMat k = detail::fixed_space_basis(l, gens);
    return sublattice(l, k, label.empty() ? l.label + ".fixed" : std::move(label));
}

inline Lattice coinvariant_lattice(const Lattice& l, const std::vector<Isometry>& gens,
                                   std::string label = "") {
    IntMat k = detail::fixed_space_basis(l, gens);
    return orthogonal_complement(l, k, label.empty() ? l.label + ".co" : std::move(label));
}

// ---------------------------------------------------------------------------
// induced action on the discriminant group

// matrix of g on the discriminant generators, entries reduced mod the
// respective invariant factors (column a = exponents of g . gen_a)
inline IntMat discriminant_action(const Lattice& l, const DiscriminantGroup& dg,
                                  const Isometry& g) {
    long k = static_cast<long>(dg.kept.size());
    IntMat out(k, k);
    for (long a = 0; a < k; ++a) {
        RatMat col(l.rank(), 1);
        for (long i = 0; i < l.rank(); ++i) {
            Rat s = 0;
            for (long j = 0; j < l.rank(); ++j) s += Rat(g.m(i, j)) * dg.gens(j, a);
            col(i, 0) = s;
        }
        std::vector<Int> e = dg.coords(l, col);
        for (long i = 0; i < k; ++i) out(i, a) = e[static_cast<size_t>(i)];
    }
    return out;
}

inline bool trivial_discriminant_action(const Lattice& l, const DiscriminantGroup& dg,
                                        const Isometry& g) {
    IntMat a = discriminant_action(l, dg, g);
    for (long i = 0; i < a.rows; ++i)
        for (long j = 0; j < a.cols; ++j)
            if (a(i, j) != (i == j ? Int(1) : Int(0))) return false;
    return true;
}

// restriction of an isometry of l to a stable sublattice in the same
// ambient space
inline Isometry restrict_isometry(const Lattice& l, const Isometry& g, const Lattice& sub) {
    check(l.ambient && sub.ambient && l.ambient->gram == sub.ambient->gram,
          "restriction: both lattices must share an ambient space");
    long r = sub.rank();
    IntMat out(r, r);
    for (long j = 0; j < r; ++j) {
        RatMat col(sub.ambient->basis.rows, 1);
        for (long i = 0; i < col.rows; ++i) col(i, 0) = sub.ambient->basis(i, j);
        auto inl = member_coords(l, col);
        check(inl.has_value(), "restriction: sublattice does not sit inside the lattice");
        RatMat img(col.rows, 1);
        for (long i = 0; i < col.rows; ++i) {
            Rat s = 0;
            for (long a = 0; a < l.rank(); ++a)
                for (long b = 0; b < l.rank(); ++b)
                    s += l.ambient->basis(i, a) * Rat(g.m(a, b) * (*inl)[static_cast<size_t>(b)]);
            img(i, 0) = s;
        }
        auto c = member_coords(sub, img);
        check(c.has_value(), "restriction: sublattice is not preserved");
        for (long i = 0; i < r; ++i) out(i, j) = (*c)[static_cast<size_t>(i)];
    }
    check(out.transposed() * sub.gram * out == sub.gram,
          "restriction: Gram matrix not preserved");
    return Isometry{std::move(out), g.kind};
}

// ---------------------------------------------------------------------------
// the four-condition screen for co-invariant candidates

struct LeechCoupleReport {
    bool negative_definite = false;
    bool rootless = false;
    bool trivial_on_discriminant = false;
    bool coinvariant_is_everything = false;

    bool ok() const {
        return negative_definite && rootless && trivial_on_discriminant &&
               coinvariant_is_everything;
    }
};

// (M, G) qualifies when M is negative definite with no |norm| 2 vectors,
// every generator fixes the discriminant group pointwise, and the common
// fixed sublattice is zero.  Generators act on M's basis.
inline LeechCoupleReport leech_couple_check(const Lattice& m, const std::vector<Isometry>& gens) {
    LeechCoupleReport rep;
    SignCounts s = m.signature();
    rep.negative_definite = s.pos == 0 && s.zero == 0;
    rep.rootless = rep.negative_definite && (m.rank() == 0 || minimum_norm(m) != 2);
    if (m.rank() > 0) {
        DiscriminantGroup dg = discriminant_group(m);
        rep.trivial_on_discriminant = true;
        for (const Isometry& g : gens)
            rep.trivial_on_discriminant =
                rep.trivial_on_discriminant && trivial_discriminant_action(m, dg, g);
    } else {
        rep.trivial_on_discriminant = true;
    }
    rep.coinvariant_is_everything = detail::fixed_space_basis(m, gens).cols == 0;
    return rep;
}

// ---------------------------------------------------------------------------
// closure and per-element co-invariant ranks

// Breadth-first closure under composition.  Deterministic: elements come
// out in discovery order, identity first.  Throws when the cap is hit.
inline std::vector<IntMat> group_closure(const std::vector<Isometry>& gens, size_t cap = 100000) {
    check(!gens.empty(), "closure: at least one generator required");
    long n = gens.front().m.rows;
    std::vector<IntMat> elements;
    std::set<std::vector<Int>> seen;
    std::deque<IntMat> frontier;
    IntMat id = IntMat::identity(n);
    seen.insert(id.a);
    elements.push_back(id);
    frontier.push_back(std::move(id));
    while (!frontier.empty()) {
        IntMat cur = std::move(frontier.front());
        frontier.pop_front();
        for (const Isometry& g : gens) {
            IntMat next = cur * g.m;
            if (!seen.insert(next.a).second) continue;
            check(seen.size() <= cap, "closure: cap exceeded");
            elements.push_back(next);
            frontier.push_back(std::move(next));
        }
    }
    return elements;
}

// order of each element paired with the rank of its co-invariant lattice,
// aggregated as order -> set of ranks (the identity contributes {1: {0}})
inline std::map<long, std::set<long>> coinvariant_rank_table(const Lattice& l,
                                                             const std::vector<IntMat>& elements) {
    long n = l.rank();
    std::map<long, std::set<long>> table;
    for (const IntMat& m : elements) {
        check(m.rows == n, "rank table: element size mismatch");
        long order = isometry_order(Isometry{m, IsometryKind::Composite});
        IntMat diff = m;
        for (long i = 0; i < n; ++i) diff(i, i) -= 1;
        long fixed = kernel_basis(diff).cols;
        table[order].insert(n - fixed);
    }
    return table;
}

}  // namespace leechkit

#endif
