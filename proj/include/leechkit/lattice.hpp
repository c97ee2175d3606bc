#ifndef LEECHKIT_LATTICE_HPP
#define LEECHKIT_LATTICE_HPP

// Integral lattices given by a Gram matrix, optionally with coordinates in
// an ambient quadratic space.  Sublattices, saturations, orthogonal
// complements, dual quotients and finite-index overlattices all stay exact;
// the discriminant group comes with its quadratic form and explicit
// generator lifts so elements of the dual can be reduced to it.

#include <string>

#include "fqform.hpp"
#include "matrix.hpp"

namespace leechkit {

struct Ambient {
    IntMat gram;   // inner products on the ambient space
    RatMat basis;  // lattice basis vectors as columns, ambient coordinates
};

struct Lattice {
    std::string label;
    IntMat gram;  // Gram matrix of the basis
    std::optional<Ambient> ambient;

    long rank() const { return gram.rows; }

    Int det() const { return det_int(gram); }

    bool is_even() const {
        for (long i = 0; i < gram.rows; ++i)
            if (gram(i, i) % 2 != 0) return false;
        return true;
    }

    bool is_unimodular() const {
        Int d = det();
        return d == 1 || d == -1;
    }

    SignCounts signature() const { return symmetric_sign_counts(gram); }

    bool is_definite() const {
        SignCounts s = signature();
        return s.zero == 0 && (s.pos == 0 || s.neg == 0);
    }

    Int norm_of(const std::vector<Int>& x) const {
        check(static_cast<long>(x.size()) == rank(), "norm_of: wrong length");
        Int s = 0;
        for (long i = 0; i < rank(); ++i) {
            if (x[i] == 0) continue;
            for (long j = 0; j < rank(); ++j) s += x[i] * gram(i, j) * x[j];
        }
        return s;
    }

    Int inner(const std::vector<Int>& x, const std::vector<Int>& y) const {
        Int s = 0;
        for (long i = 0; i < rank(); ++i)
            for (long j = 0; j < rank(); ++j) s += x[i] * gram(i, j) * y[j];
        return s;
    }
};

inline Lattice lattice_from_gram(std::string label, IntMat gram) {
    check(gram.is_symmetric(), "lattice: symmetric Gram matrix required");
    return Lattice{std::move(label), std::move(gram), std::nullopt};
}

inline Lattice lattice_in_ambient(std::string label, IntMat ambient_gram, RatMat basis) {
    check(ambient_gram.is_symmetric(), "lattice: symmetric ambient form required");
    check(ambient_gram.rows == basis.rows, "lattice: basis does not live in the ambient space");
    RatMat g = basis.transposed() * to_rat(ambient_gram) * basis;
    auto gi = to_int_checked(g);
    check(gi.has_value(), "lattice: basis has non-integral inner products");
    return Lattice{std::move(label), std::move(*gi),
                   Ambient{std::move(ambient_gram), std::move(basis)}};
}

// sublattice spanned by integer combinations of basis vectors (as columns)
inline Lattice sublattice(const Lattice& l, const IntMat& x, std::string label = "") {
    check(x.rows == l.rank(), "sublattice: coordinate length mismatch");
    IntMat g = x.transposed() * l.gram * x;
    Lattice out{label.empty() ? l.label + ".sub" : std::move(label), std::move(g), std::nullopt};
    if (l.ambient)
        out.ambient = Ambient{l.ambient->gram, l.ambient->basis * to_rat(x)};
    else
        out.ambient = Ambient{l.gram, to_rat(x)};
    return out;
}

// smallest primitive sublattice containing the rational span of the columns
inline Lattice saturation(const Lattice& l, const RatMat& span, std::string label = "") {
    check(span.rows == l.rank(), "saturation: coordinate length mismatch");
    IntMat m;
    Int d;
    clear_denominators(span, m, d);
    IntMat comp = kernel_basis(m.transposed());
    IntMat sat = kernel_basis(comp.transposed());
    return sublattice(l, sat, label.empty() ? l.label + ".sat" : std::move(label));
}

// primitive sublattice orthogonal to the span of the given columns
inline Lattice orthogonal_complement(const Lattice& l, const IntMat& x, std::string label = "") {
    IntMat k = kernel_basis(x.transposed() * l.gram);
    return sublattice(l, k, label.empty() ? l.label + ".perp" : std::move(label));
}

inline Lattice direct_sum(const Lattice& a, const Lattice& b) {
    long n = a.rank(), m = b.rank();
    IntMat g(n + m, n + m);
    for (long i = 0; i < n; ++i)
        for (long j = 0; j < n; ++j) g(i, j) = a.gram(i, j);
    for (long i = 0; i < m; ++i)
        for (long j = 0; j < m; ++j) g(n + i, n + j) = b.gram(i, j);
    return Lattice{a.label + "+" + b.label, std::move(g), std::nullopt};
}

inline Lattice rescale(const Lattice& l, const Int& k, std::string label = "") {
    check(k != 0, "rescale: zero multiplier");
    Lattice out = l;
    out.label = label.empty() ? l.label + "(" + k.str() + ")" : std::move(label);
    for (Int& v : out.gram.a) v *= k;
    out.ambient.reset();  // inner products change, old coordinates do not apply
    return out;
}

// ---------------------------------------------------------------------------
// discriminant group A = L^v / L with its torsion quadratic form

struct DiscriminantGroup {
    FiniteQuadraticForm form;
    RatMat gens;              // columns: generators in lattice basis coordinates
    IntMat u;                 // Smith transform of the Gram matrix
    std::vector<Int> d_full;  // all invariant factors of the Gram matrix
    std::vector<long> kept;   // indices with d_i > 1, aligned with form.orders

    // exponent vector of a dual vector given in basis coordinates
    std::vector<Int> coords(const Lattice& l, const RatMat& x) const {
        check(x.cols == 1 && x.rows == l.rank(), "disc coords: column vector required");
        RatMat y = to_rat(l.gram) * x;
        auto yi = to_int_checked(y);
        check(yi.has_value(), "disc coords: vector is not in the dual lattice");
        IntMat e = u * *yi;
        std::vector<Int> out;
        for (long i : kept) out.push_back(mod_pos(e(i, 0), d_full[i]));
        return out;
    }
};

inline DiscriminantGroup discriminant_group(const Lattice& l) {
    check(l.det() != 0, "discriminant group: nondegenerate lattice required");
    check(l.is_even(), "discriminant group: even lattice required");
    SnfResult s = snf(l.gram);
    DiscriminantGroup dg;
    dg.u = s.u;
    long n = l.rank();
    for (long i = 0; i < n; ++i) dg.d_full.push_back(s.d(i, i));
    for (long i = 0; i < n; ++i)
        if (s.d(i, i) > 1) dg.kept.push_back(i);
    dg.gens = RatMat(n, static_cast<long>(dg.kept.size()));
    for (size_t a = 0; a < dg.kept.size(); ++a) {
        long i = dg.kept[a];
        for (long r = 0; r < n; ++r) dg.gens(r, static_cast<long>(a)) = Rat(s.v(r, i), s.d(i, i));
    }
    RatMat pairing = dg.gens.transposed() * to_rat(l.gram) * dg.gens;
    long k = static_cast<long>(dg.kept.size());
    dg.form.b = RatMat(k, k);
    for (size_t a = 0; a < dg.kept.size(); ++a) {
        dg.form.orders.push_back(dg.d_full[dg.kept[a]]);
        dg.form.q.push_back(mod_rat(pairing(static_cast<long>(a), static_cast<long>(a)), Int(2)));
        for (long c = 0; c < k; ++c)
            dg.form.b(static_cast<long>(a), c) = mod_rat(pairing(static_cast<long>(a), c), Int(1));
    }
    return dg;
}

// |det| = order of the discriminant group for nondegenerate lattices
inline Int disc_order(const Lattice& l) { return abs(l.det()); }

// ---------------------------------------------------------------------------
// finite-index overlattices

// Overlattice L + sum Z g_i where the g_i are rational vectors in basis
// coordinates.  The new Gram matrix must come out integral.
inline Lattice overlattice(const Lattice& l, const RatMat& glue, std::string label = "") {
    long n = l.rank();
    check(glue.rows == n, "overlattice: coordinate length mismatch");
    RatMat all(n, n + glue.cols);
    for (long i = 0; i < n; ++i) {
        all(i, i) = 1;
        for (long j = 0; j < glue.cols; ++j) all(i, n + j) = glue(i, j);
    }
    IntMat m;
    Int d;
    clear_denominators(all, m, d);
    HnfResult h = hnf(m, false);
    check(h.rank == n, "overlattice: rank dropped");
    RatMat nb(n, n);
    for (long i = 0; i < n; ++i)
        for (long j = 0; j < n; ++j) nb(i, j) = Rat(h.h(i, j), d);
    RatMat g = nb.transposed() * to_rat(l.gram) * nb;
    auto gi = to_int_checked(g);
    check(gi.has_value(), "overlattice: glue vectors give non-integral inner products");
    Lattice out{label.empty() ? l.label + ".over" : std::move(label), std::move(*gi), std::nullopt};
    if (l.ambient)
        out.ambient = Ambient{l.ambient->gram, l.ambient->basis * nb};
    else
        out.ambient = Ambient{l.gram, nb};
    return out;
}

// index of a full-rank sublattice given by its basis in l's coordinates
inline Int sublattice_index(const Lattice& l, const IntMat& x) {
    check(x.rows == x.cols && x.rows == l.rank(), "sublattice index: square basis required");
    Int d = det_int(x);
    check(d != 0, "sublattice index: not full rank");
    return abs(d);
}

// membership of an ambient-coordinate vector, with its basis coordinates
inline std::optional<std::vector<Int>> member_coords(const Lattice& l, const RatMat& v) {
    check(l.ambient.has_value(), "member: lattice has no ambient coordinates");
    auto x = solve_field<Rat>(l.ambient->basis, v);
    if (!x) return std::nullopt;
    auto xi = to_int_checked(*x);
    if (!xi) return std::nullopt;
    std::vector<Int> out(static_cast<size_t>(l.rank()));
    for (long i = 0; i < l.rank(); ++i) out[i] = (*xi)(i, 0);
    return out;
}

// equality of lattices sitting in the same ambient space
inline bool same_sublattice(const Lattice& a, const Lattice& b) {
    check(a.ambient && b.ambient, "same_sublattice: ambient coordinates required");
    check(a.ambient->gram == b.ambient->gram, "same_sublattice: different ambient spaces");
    if (a.rank() != b.rank()) return false;
    RatMat joint(a.ambient->basis.rows, a.rank() + b.rank());
    for (long i = 0; i < joint.rows; ++i) {
        for (long j = 0; j < a.rank(); ++j) joint(i, j) = a.ambient->basis(i, j);
        for (long j = 0; j < b.rank(); ++j) joint(i, a.rank() + j) = b.ambient->basis(i, j);
    }
    IntMat m;
    Int d;
    clear_denominators(joint, m, d);
    IntMat ha = column_lattice_basis(m.first_columns(a.rank()));
    IntMat hb = column_lattice_basis(m.columns([&] {
        std::vector<long> idx;
        for (long j = 0; j < b.rank(); ++j) idx.push_back(a.rank() + j);
        return idx;
    }()));
    return ha == hb;
}

// intersection of two sublattices presented in the same ambient space
inline Lattice ambient_intersection(const Lattice& a, const Lattice& b, std::string label = "") {
    check(a.ambient && b.ambient, "intersection: ambient coordinates required");
    check(a.ambient->gram == b.ambient->gram, "intersection: different ambient spaces");
    long dim = a.ambient->basis.rows;
    RatMat joint(dim, a.rank() + b.rank());
    for (long i = 0; i < dim; ++i) {
        for (long j = 0; j < a.rank(); ++j) joint(i, j) = a.ambient->basis(i, j);
        for (long j = 0; j < b.rank(); ++j) joint(i, a.rank() + j) = -b.ambient->basis(i, j);
    }
    IntMat m;
    Int d;
    clear_denominators(joint, m, d);
    IntMat k = kernel_basis(m);  // (x, y) with A x = B y; saturated
    RatMat basis(dim, k.cols);
    for (long j = 0; j < k.cols; ++j)
        for (long i = 0; i < dim; ++i) {
            Rat s = 0;
            for (long t = 0; t < a.rank(); ++t) s += a.ambient->basis(i, t) * Rat(k(t, j));
            basis(i, j) = s;
        }
    return lattice_in_ambient(label.empty() ? a.label + "&" + b.label : std::move(label),
                              a.ambient->gram, std::move(basis));
}

// index [sup : sub] for a finite-index pair in the same ambient space
inline Int index_in(const Lattice& sup, const Lattice& sub) {
    check(sup.ambient && sub.ambient, "index: ambient coordinates required");
    check(sup.ambient->gram == sub.ambient->gram, "index: different ambient spaces");
    check(sup.rank() == sub.rank(), "index: ranks differ");
    auto x = solve_field<Rat>(sup.ambient->basis, sub.ambient->basis);
    check(x.has_value(), "index: not a sublattice");
    auto xi = to_int_checked(*x);
    check(xi.has_value(), "index: not a sublattice");
    return sublattice_index(sup, *xi);
}

// same signature and isomorphic discriminant forms; for even lattices this
// pins the genus
inline bool genus_equal(const Lattice& a, const Lattice& b) {
    if (a.rank() != b.rank()) return false;
    SignCounts sa = a.signature(), sb = b.signature();
    if (sa.pos != sb.pos || sa.neg != sb.neg) return false;
    if (abs(a.det()) != abs(b.det())) return false;
    DiscriminantGroup da = discriminant_group(a), db = discriminant_group(b);
    return fqf_isomorphism(da.form, db.form).has_value();
}

}  // namespace leechkit

#endif
