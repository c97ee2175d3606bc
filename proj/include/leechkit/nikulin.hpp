#pragma once

// Existence and embedding criteria for even lattices, driven by discriminant
// form arithmetic: signatures of finite quadratic forms via exact Gauss sums,
// complement genus predicates, the unimodular overlattice extending the
// square-two glue construction, reduced enumeration of definite ternary
// genera, and divisors of vectors computed through glue subgroups.

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "catalog.hpp"
#include "fqform.hpp"
#include "group_action.hpp"
#include "isometry_search.hpp"
#include "lattice.hpp"

namespace leechkit {

// signature of a finite quadratic form mod 8, by the Gauss sum identity
inline long milgram_signature(const FiniteQuadraticForm& q) { return fqf_signature_mod8(q); }

struct GenusSymbol {
    long t_plus = 0;
    long t_minus = 0;
    FiniteQuadraticForm form;
};

// a (signature, discriminant form) pair admits an even lattice when the rank
// covers the minimal generator count and the signatures agree mod 8
inline bool exists_even_lattice(long t_plus, long t_minus, const FiniteQuadraticForm& q) {
    if (t_plus < 0 || t_minus < 0) return false;
    if (t_plus + t_minus < q.ngens()) return false;
    long want = ((t_plus - t_minus) % 8 + 8) % 8;
    return milgram_signature(q) == want;
}

inline GenusSymbol genus_symbol(long t_plus, long t_minus, FiniteQuadraticForm q) {
    check(exists_even_lattice(t_plus, t_minus, q), "genus symbol: no even lattice realizes it");
    return GenusSymbol{t_plus, t_minus, std::move(q)};
}

struct EmbeddingCheck {
    bool exists = false;
    long t_plus = 0;  // signature of the would-be orthogonal complement
    long t_minus = 0;
    FiniteQuadraticForm complement_form;
};

// primitive embedding of s into some even unimodular lattice of signature
// (l_plus, l_minus), by the complement criterion: a complement must exist
// with discriminant form -q of s
inline EmbeddingCheck primitive_embedding_exists(const Lattice& s, long l_plus, long l_minus) {
    check(s.is_even(), "embedding: even lattice required");
    SignCounts sc = s.signature();
    check(sc.zero == 0, "embedding: nondegenerate lattice required");
    EmbeddingCheck out;
    out.t_plus = l_plus - sc.pos;
    out.t_minus = l_minus - sc.neg;
    out.complement_form = discriminant_group(s).form.negated();
    out.exists = exists_even_lattice(out.t_plus, out.t_minus, out.complement_form);
    return out;
}

// ---------------------------------------------------------------------------
// the square-two overlattice of the K3two lattice

struct MukaiExtension {
    Lattice small;                   // the rank-23 lattice that was extended
    Lattice big;                     // even unimodular overlattice of small + (2)
    IntMat embedding;                // small basis vectors as columns, big coordinates
    std::vector<Isometry> extended;  // the generators, acting on big
    long coinvariant_rank = 0;       // shared rank of both co-invariant lattices
};

// Adjoins a square-two vector x to the K3two lattice and glues by (x+v)/2,
// where v is a norm -2 vector whose half pairs integrally with the result
// (the summand generator by default).  Every generator is extended by the
// identity on x; the co-invariant lattice is checked to be unchanged.
inline MukaiExtension extend_to_mukai(const std::vector<Isometry>& gens,
                                      std::optional<IntMat> v = std::nullopt) {
    MukaiExtension out;
    out.small = k3two_lattice();
    const long n = out.small.rank();
    for (const Isometry& g : gens)
        check(g.m.rows == n && g.m.cols == n &&
                  g.m.transposed() * out.small.gram * g.m == out.small.gram,
              "mukai extension: generator is not an isometry of the base lattice");
    IntMat vcol(n, 1);
    if (v)
        vcol = *v;
    else
        vcol(n - 1, 0) = 1;
    check(vcol.rows == n && vcol.cols == 1, "mukai extension: v must be a base column vector");
    Int vnorm = (vcol.transposed() * out.small.gram * vcol)(0, 0);
    check(vnorm == -2, "mukai extension: v must have norm -2");

    Lattice amb = direct_sum(out.small, rank_one(2));
    amb.label = out.small.label + "+x";
    RatMat glue(n + 1, 1);
    for (long i = 0; i < n; ++i) glue(i, 0) = Rat(vcol(i, 0)) / 2;
    glue(n, 0) = Rat(1, 2);
    Lattice big = overlattice(amb, glue, "Mukai.glued");
    check(big.is_even(), "mukai extension: glued lattice is odd");
    check(big.is_unimodular(), "mukai extension: glued lattice is not unimodular");
    SignCounts sc = big.signature();
    check(sc.pos == 4 && sc.neg == 20 && sc.zero == 0, "mukai extension: wrong signature");
    check(genus_equal(big, mukai_lattice()), "mukai extension: left the target genus");

    out.embedding = IntMat(n + 1, n);
    for (long j = 0; j < n; ++j) {
        RatMat e(n + 1, 1);
        e(j, 0) = 1;
        auto c = member_coords(big, e);
        check(c.has_value(), "mukai extension: base vector escaped the overlattice");
        for (long i = 0; i <= n; ++i) out.embedding(i, j) = (*c)[static_cast<size_t>(i)];
    }

    RatMat nb = big.ambient->basis;
    RatMat nbi = inverse_rat(nb);
    for (const Isometry& g : gens) {
        RatMat d(n + 1, n + 1);
        for (long i = 0; i < n; ++i)
            for (long j = 0; j < n; ++j) d(i, j) = Rat(g.m(i, j));
        d(n, n) = 1;
        auto ci = to_int_checked(nbi * d * nb);
        check(ci.has_value(), "mukai extension: generator does not preserve the glue");
        out.extended.push_back(Isometry{std::move(*ci), IsometryKind::Composite});
    }

    Lattice s_small = coinvariant_lattice(out.small, gens, out.small.label + ".co");
    Lattice s_big = coinvariant_lattice(big, out.extended, big.label + ".co");
    check(s_small.rank() == s_big.rank(), "mukai extension: co-invariant ranks differ");
    for (long j = 0; j < s_small.rank(); ++j) {
        RatMat col(n + 1, 1);
        for (long i = 0; i < n; ++i) col(i, 0) = s_small.ambient->basis(i, j);
        check(member_coords(s_big, col).has_value(),
              "mukai extension: co-invariant vector missing upstairs");
    }
    for (long j = 0; j < s_big.rank(); ++j) {
        check(s_big.ambient->basis(n, j) == 0,
              "mukai extension: co-invariant vector leaves the base lattice");
        RatMat col(n, 1);
        for (long i = 0; i < n; ++i) col(i, 0) = s_big.ambient->basis(i, j);
        check(member_coords(s_small, col).has_value(),
              "mukai extension: co-invariant vector missing downstairs");
    }
    out.coinvariant_rank = s_small.rank();
    out.big = std::move(big);
    return out;
}

// ---------------------------------------------------------------------------
// definite ternary genus enumeration

// All even positive definite ternary lattices with the given determinant and
// discriminant form, one representative per isometry class.  Completeness by
// classical reduction: a Minkowski reduced form satisfies
// 0 < a <= b <= c on the diagonal, 2|off| <= the smaller diagonal entry, and
// a b c <= 2 det.
inline std::vector<Lattice> enumerate_ternary_genus(const Int& det, const FiniteQuadraticForm& q) {
    check(det > 0, "ternary genus: positive determinant required");
    std::vector<Lattice> out;
    for (Int a = 2; Int(a * a * a) <= Int(2 * det); a += 2) {
        for (Int b = a; Int(a * b * b) <= Int(2 * det); b += 2) {
            for (Int c = b; Int(a * b * c) <= Int(2 * det); c += 2) {
                for (Int d = Int(-a / 2); d <= a / 2; ++d) {
                    for (Int e = Int(-a / 2); e <= a / 2; ++e) {
                        for (Int f = Int(-b / 2); f <= b / 2; ++f) {
                            IntMat g(3, 3);
                            g(0, 0) = a;
                            g(1, 1) = b;
                            g(2, 2) = c;
                            g(0, 1) = g(1, 0) = d;
                            g(0, 2) = g(2, 0) = e;
                            g(1, 2) = g(2, 1) = f;
                            if (Int(a * b - d * d) <= 0) continue;
                            if (det_int(g) != det) continue;
                            Lattice cand = lattice_from_gram(
                                "ternary" + det.str() + "." + std::to_string(out.size() + 1), g);
                            if (!fqf_isomorphism(q, discriminant_group(cand).form).has_value())
                                continue;
                            bool fresh = true;
                            for (const Lattice& kept : out) {
                                IsoResult r = is_isometric_definite(cand, kept);
                                check(r.status != IsoStatus::unknown,
                                      "ternary genus: isometry test hit its cap");
                                if (r.yes()) {
                                    fresh = false;
                                    break;
                                }
                            }
                            if (fresh) out.push_back(std::move(cand));
                        }
                    }
                }
            }
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// divisors through glue subgroups

namespace detail {

// generators of {x : h x = 0} as multiples of the discriminant generators,
// together with their orders; requires the subgroup to be the full h-torsion
inline std::pair<std::vector<Int>, std::vector<Int>> torsion_part(
    const std::vector<Int>& orders, const Int& h) {
    Int total = 1;
    for (const Int& d : orders) total *= d;
    check(total % h == 0, "glue divisor: order does not divide the group");
    check(gcd(h, Int(total / h)) == 1,
          "glue divisor: glue subgroup is not determined by its order alone");
    std::vector<Int> mult, sub;
    Int prod = 1;
    for (const Int& d : orders) {
        Int e = gcd(d, h);
        mult.push_back(Int(d / e));
        sub.push_back(e);
        prod *= e;
    }
    check(prod == h, "glue divisor: torsion part has the wrong order");
    return {mult, sub};
}

// the form restricted to the h-torsion subgroup
inline FiniteQuadraticForm torsion_form(const FiniteQuadraticForm& f, const std::vector<Int>& mult,
                                        const std::vector<Int>& sub) {
    long n = f.ngens();
    std::vector<Rat> q(static_cast<size_t>(n));
    RatMat b(n, n);
    for (long i = 0; i < n; ++i) {
        std::vector<Int> xi(static_cast<size_t>(n), 0);
        xi[static_cast<size_t>(i)] = mult[static_cast<size_t>(i)];
        q[static_cast<size_t>(i)] = f.q_of(xi);
        for (long j = 0; j < n; ++j) {
            std::vector<Int> xj(static_cast<size_t>(n), 0);
            xj[static_cast<size_t>(j)] = mult[static_cast<size_t>(j)];
            b(i, j) = f.b_of(xi, xj);
        }
    }
    return canonical_fqf(sub, q, b);
}

}  // namespace detail

// Divisor of a vector f of T inside the even lattice glued from T and S along
// a subgroup H of the discriminant groups: the positive generator of the
// ideal of inner products of f against the preimage of H in the dual of T.
// H is pinned as the unique subgroup of the forced order (from the glue index
// formula det T det S / |H|^2 = |det of the glued lattice|) that is
// anti-isometric to its counterpart in S; anything short of that errors out.
inline Int glue_divisor(const Lattice& t, const std::vector<Int>& f, const Lattice& s,
                        const Int& ambient_det) {
    check(static_cast<long>(f.size()) == t.rank(), "glue divisor: vector length mismatch");
    Int prod = abs(Int(t.det() * s.det()));
    Int amb = abs(ambient_det);
    check(amb != 0 && prod % amb == 0, "glue divisor: determinants do not glue");
    Int h = sqrt(Int(prod / amb));
    check(Int(h * h) == Int(prod / amb), "glue divisor: glue index is not a square");

    DiscriminantGroup dt = discriminant_group(t);
    DiscriminantGroup ds = discriminant_group(s);
    auto [mult_t, sub_t] = detail::torsion_part(dt.form.orders, h);
    auto [mult_s, sub_s] = detail::torsion_part(ds.form.orders, h);
    FiniteQuadraticForm ht = detail::torsion_form(dt.form, mult_t, sub_t);
    FiniteQuadraticForm hs = detail::torsion_form(ds.form, mult_s, sub_s);
    check(fqf_isomorphism(ht, hs.negated()).has_value(),
          "glue divisor: glue subgroups are not anti-isometric");

    // inner products of f with T itself, then with lifts of the glue generators
    RatMat fg(1, t.rank());
    for (long j = 0; j < t.rank(); ++j) {
        Int acc = 0;
        for (long i = 0; i < t.rank(); ++i) acc += f[static_cast<size_t>(i)] * t.gram(i, j);
        fg(0, j) = Rat(acc);
    }
    Int g0 = 0;
    for (long j = 0; j < t.rank(); ++j) g0 = gcd(g0, fg(0, j).numerator());
    for (long i = 0; i < dt.form.ngens(); ++i) {
        RatMat lift(t.rank(), 1);
        for (long r = 0; r < t.rank(); ++r)
            lift(r, 0) = dt.gens(r, i) * Rat(mult_t[static_cast<size_t>(i)]);
        RatMat val = fg * lift;
        check(val(0, 0).denominator() == 1, "glue divisor: dual pairing left the integers");
        g0 = gcd(g0, val(0, 0).numerator());
    }
    return abs(g0);
}

// ---------------------------------------------------------------------------
// binary reduction and the rank-21/rank-2 consistency report

// Gauss reduced representative 0 <= 2 g01 <= g00 <= g11 of a positive
// definite binary form; unique up to the classical boundary ambiguities,
// which the sign normalization resolves
inline IntMat reduced_binary_form(IntMat g) {
    check(g.rows == 2 && g.cols == 2 && g(0, 1) == g(1, 0), "binary reduction: 2x2 symmetric");
    check(g(0, 0) > 0 && det_int(g) > 0, "binary reduction: positive definite required");
    auto floordiv = [](const Int& x, const Int& y) {
        Int q = x / y;
        if (x % y != 0 && ((x < 0) != (y < 0))) --q;
        return q;
    };
    for (;;) {
        if (g(1, 1) < g(0, 0)) {
            std::swap(g(0, 0), g(1, 1));
            continue;
        }
        Int a = g(0, 0), b = g(0, 1);
        Int k = floordiv(Int(2 * b + a), Int(2 * a));
        if (k != 0) {
            IntMat t(2, 2);
            t(0, 0) = t(1, 1) = 1;
            t(0, 1) = -k;
            g = t.transposed() * g * t;
            continue;
        }
        if (Int(2 * abs(g(0, 1))) > g(0, 0)) {
            // |2b| = a after rounding can only be the boundary case
            check(Int(2 * abs(g(0, 1))) == g(0, 0), "binary reduction: translation failed");
        }
        if (g(0, 1) < 0) {
            g(0, 1) = -g(0, 1);
            g(1, 0) = g(0, 1);
        }
        if (g(1, 1) < g(0, 0)) continue;
        return g;
    }
}

struct NsReport {
    bool no_nontrivial_overlattices = false;  // isotropic scan of the glued form is empty
    bool ns_genus_matches = false;            // rank 21 genus agrees with the block sum shape
    IsoStatus definite_parts = IsoStatus::unknown;  // rank 20 definite blocks compared head on
    IntMat transcendental_reduced;                  // reduced complement of the degree 6 vector
    bool transcendental_matches = false;
    Int transcendental_det = 0;
};

// Cross checks tying the rank 20 co-invariant lattice to the rank 21 ambient
// picture: no nontrivial even overlattice of S11 + (6), genus agreement with
// (6) + E8(-1)^2 + M11^2, and the rank 2 complement of the degree 6 vector in
// the second ternary form reducing to the fixed binary matrix.
inline NsReport ns_and_transcendental_check() {
    NsReport r;
    Lattice s11 = s11_lattice();
    Lattice ns_a = direct_sum(s11, rank_one(6));
    r.no_nontrivial_overlattices = isotropic_elements(discriminant_group(ns_a).form).empty();

    Lattice e8m = root_E(8);
    Lattice blocks = direct_sum(direct_sum(e8m, e8m), direct_sum(m11_block(), m11_block()));
    Lattice ns_b = direct_sum(rank_one(6), blocks);
    r.ns_genus_matches = genus_equal(ns_a, ns_b);
    r.definite_parts = is_isometric_definite(s11, blocks).status;

    Lattice t2 = t11_two();
    IntMat fcol(3, 1);
    fcol(0, 0) = 1;
    Lattice comp = orthogonal_complement(t2, fcol, "T2_11.perp");
    r.transcendental_det = comp.det();
    r.transcendental_reduced = reduced_binary_form(comp.gram);
    r.transcendental_matches = r.transcendental_reduced == reduced_binary_form(tx_block().gram);
    return r;
}

}  // namespace leechkit
