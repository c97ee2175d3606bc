#ifndef LEECHKIT_FQFORM_HPP
#define LEECHKIT_FQFORM_HPP

// Finite quadratic forms (A, q) on finite abelian groups, presented by
// generators whose orders form a divisibility chain.  q takes values in
// Q/2Z, the associated bilinear form b in Q/Z, with b(x,x) = q(x) mod 1.
// Includes the Gauss sum of the form and the exact extraction of its
// signature mod 8, plus a brute-force isomorphism test used to compare
// discriminant forms of small determinant.

#include "cyclotomic.hpp"
#include "matrix.hpp"

namespace leechkit {

struct FiniteQuadraticForm {
    std::vector<Int> orders;  // d1 | d2 | ..., all > 1
    std::vector<Rat> q;       // q(g_i), normalized to [0, 2)
    RatMat b;                 // b(g_i, g_j), normalized to [0, 1)

    long ngens() const { return static_cast<long>(orders.size()); }

    Int group_order() const {
        Int n = 1;
        for (const Int& d : orders) n *= d;
        return n;
    }

    // q of an exponent vector, in [0, 2)
    Rat q_of(const std::vector<Int>& x) const {
        check(static_cast<long>(x.size()) == ngens(), "q_of: wrong length");
        Rat s = 0;
        for (long i = 0; i < ngens(); ++i) {
            if (x[i] == 0) continue;
            s += Rat(x[i] * x[i]) * q[i];
            for (long j = i + 1; j < ngens(); ++j) s += Rat(2 * x[i] * x[j]) * b(i, j);
        }
        return mod_rat(s, Int(2));
    }

    // b of two exponent vectors, in [0, 1)
    Rat b_of(const std::vector<Int>& x, const std::vector<Int>& y) const {
        Rat s = 0;
        for (long i = 0; i < ngens(); ++i)
            for (long j = 0; j < ngens(); ++j) s += Rat(x[i] * y[j]) * b(i, j);
        return mod_rat(s, Int(1));
    }

    FiniteQuadraticForm negated() const {
        FiniteQuadraticForm f = *this;
        for (Rat& v : f.q) v = mod_rat(-v, Int(2));
        for (Rat& v : f.b.a) v = mod_rat(-v, Int(1));
        return f;
    }

    bool operator==(const FiniteQuadraticForm&) const = default;
};

// Rebuild a presentation with arbitrary generator orders (>= 1, not
// necessarily a chain) into the canonical invariant-factor presentation.
// New generators are integer combinations of the old ones, read off from
// the Smith transform of the relation matrix diag(delta).
inline FiniteQuadraticForm canonical_fqf(const std::vector<Int>& delta, const std::vector<Rat>& q,
                                         const RatMat& b) {
    long n = static_cast<long>(delta.size());
    IntMat rel(n, n);
    for (long i = 0; i < n; ++i) rel(i, i) = delta[i];
    SnfResult s = snf(rel);
    IntMat uinv_rat;
    {
        auto inv = inverse_rat(to_rat(s.u));
        auto ii = to_int_checked(inv);
        check(ii.has_value(), "canonical_fqf: transform not unimodular");
        uinv_rat = *ii;
    }
    // generator j of the new presentation is column j of u^-1 in old gens
    std::vector<long> keep;
    for (long j = 0; j < n; ++j)
        if (s.d(j, j) > 1) keep.push_back(j);
    FiniteQuadraticForm f;
    f.b = RatMat(static_cast<long>(keep.size()), static_cast<long>(keep.size()));
    auto qv = [&](long j) {
        Rat v = 0;
        for (long i = 0; i < n; ++i) {
            Int xi = uinv_rat(i, j);
            if (xi == 0) continue;
            v += Rat(xi * xi) * q[i];
            for (long k = i + 1; k < n; ++k) v += Rat(2 * xi * uinv_rat(k, j)) * b(i, k);
        }
        return mod_rat(v, Int(2));
    };
    auto bv = [&](long j1, long j2) {
        Rat v = 0;
        for (long i = 0; i < n; ++i)
            for (long k = 0; k < n; ++k) v += Rat(uinv_rat(i, j1) * uinv_rat(k, j2)) * b(i, k);
        return mod_rat(v, Int(1));
    };
    for (size_t a = 0; a < keep.size(); ++a) {
        f.orders.push_back(s.d(keep[a], keep[a]));
        f.q.push_back(qv(keep[a]));
        for (size_t c = 0; c < keep.size(); ++c) f.b(a, c) = bv(keep[a], keep[c]);
    }
    return f;
}

inline FiniteQuadraticForm fqf_direct_sum(const FiniteQuadraticForm& x,
                                          const FiniteQuadraticForm& y) {
    std::vector<Int> delta = x.orders;
    delta.insert(delta.end(), y.orders.begin(), y.orders.end());
    std::vector<Rat> q = x.q;
    q.insert(q.end(), y.q.begin(), y.q.end());
    long n = static_cast<long>(delta.size()), nx = x.ngens();
    RatMat b(n, n);
    for (long i = 0; i < nx; ++i)
        for (long j = 0; j < nx; ++j) b(i, j) = x.b(i, j);
    for (long i = 0; i < y.ngens(); ++i)
        for (long j = 0; j < y.ngens(); ++j) b(nx + i, nx + j) = y.b(i, j);
    return canonical_fqf(delta, q, b);
}

// all nonzero x with q(x) = 0 in Q/2Z; the group order must stay below cap
inline std::vector<std::vector<Int>> isotropic_elements(const FiniteQuadraticForm& f,
                                                        Int cap = Int(1000000)) {
    check(f.group_order() <= cap, "isotropic scan: group too large");
    std::vector<std::vector<Int>> out;
    std::vector<Int> x(f.orders.size());
    for (;;) {
        long i = 0;
        while (i < f.ngens() && x[i] + 1 == f.orders[i]) x[i++] = 0;
        if (i == f.ngens()) break;
        x[i] += 1;
        if (f.q_of(x) == 0) out.push_back(x);
    }
    return out;
}

// order of the subgroup generated by the given exponent vectors
inline Int subgroup_order(const FiniteQuadraticForm& f, const std::vector<std::vector<Int>>& gens) {
    long n = f.ngens();
    IntMat m(n, n + static_cast<long>(gens.size()));
    for (long i = 0; i < n; ++i) m(i, i) = f.orders[i];
    for (size_t j = 0; j < gens.size(); ++j)
        for (long i = 0; i < n; ++i) m(i, n + static_cast<long>(j)) = gens[j][i];
    HnfResult h = hnf(m, false);
    check(h.rank == n, "subgroup_order: relation matrix lost rank");
    Int idx = 1;  // index of the subgroup's preimage lattice in Z^n is |A/S|
    for (long j = 0; j < n; ++j) {
        long i = 0;
        while (h.h(i, j) == 0) ++i;
        idx *= h.h(i, j);
    }
    return f.group_order() / idx;
}

// Isomorphism of finite quadratic forms by backtracking over generator
// images.  Returns a matrix whose column j gives the image of g_j of `a`
// as an exponent vector in `b`, or nullopt.  Intended for small groups.
inline std::optional<IntMat> fqf_isomorphism(const FiniteQuadraticForm& a,
                                             const FiniteQuadraticForm& b,
                                             Int cap = Int(100000)) {
    if (a.orders != b.orders) return std::nullopt;
    if (a.orders.empty()) return IntMat(0, 0);
    check(b.group_order() <= cap, "fqf isomorphism: group too large");
    // enumerate all elements of b once
    std::vector<std::vector<Int>> elems;
    std::vector<Int> x(b.orders.size());
    for (;;) {
        elems.push_back(x);
        long i = 0;
        while (i < b.ngens() && x[i] + 1 == b.orders[i]) x[i++] = 0;
        if (i == b.ngens()) break;
        x[i] += 1;
    }
    long n = a.ngens();
    std::vector<std::vector<Int>> img(n);
    std::function<bool(long)> place = [&](long j) -> bool {
        if (j == n) return subgroup_order(b, img) == b.group_order();
        for (const auto& y : elems) {
            // candidate must vanish at order d_j, carry the right q value,
            // and pair correctly with the earlier images
            bool ok = true;
            std::vector<Int> dy(y.size());
            for (size_t t = 0; t < y.size(); ++t) dy[t] = a.orders[j] * y[t] % b.orders[t];
            for (const Int& v : dy)
                if (v != 0) { ok = false; break; }
            if (ok && b.q_of(y) != a.q[j]) ok = false;
            if (ok)
                for (long i = 0; i < j; ++i)
                    if (b.b_of(img[i], y) != mod_rat(a.b(i, j), Int(1))) { ok = false; break; }
            if (!ok) continue;
            img[j] = y;
            if (place(j + 1)) return true;
        }
        return false;
    };
    if (!place(0)) return std::nullopt;
    IntMat m(b.ngens(), n);
    for (long j = 0; j < n; ++j)
        for (long i = 0; i < b.ngens(); ++i) m(i, j) = img[j][i];
    return m;
}

// ---------------------------------------------------------------------------
// Gauss sum and signature mod 8.
//
// The sum of e^(i pi q(a)) over the group equals sqrt(|A|) zeta_8^s where s
// is the signature of the form mod 8.  The sum multiplies over blocks of
// generators that do not pair under b, which keeps groups like (Z/2)^24
// tractable.  The eighth root is pinned exactly by comparing against
// sqrt(|A|) zeta_8^s built from quadratic Gauss sums.

inline Cyclo fqf_gauss_sum(const FiniteQuadraticForm& f, Int component_cap = Int(2000000)) {
    long n = f.ngens();
    // connected components of generators under nonzero pairing
    std::vector<long> comp(n, -1);
    long ncomp = 0;
    for (long i = 0; i < n; ++i) {
        if (comp[i] >= 0) continue;
        std::vector<long> stack{i};
        comp[i] = ncomp;
        while (!stack.empty()) {
            long u = stack.back();
            stack.pop_back();
            for (long v = 0; v < n; ++v)
                if (comp[v] < 0 && f.b(u, v) != 0) {
                    comp[v] = ncomp;
                    stack.push_back(v);
                }
        }
        ++ncomp;
    }
    Cyclo total(1);
    for (long c = 0; c < ncomp; ++c) {
        std::vector<long> idx;
        for (long i = 0; i < n; ++i)
            if (comp[i] == c) idx.push_back(i);
        Int sz = 1;
        for (long i : idx) sz *= f.orders[i];
        check(sz <= component_cap, "gauss sum: component too large");
        Cyclo s(0);
        std::vector<Int> x(idx.size());
        for (;;) {
            Rat qv = 0;
            for (size_t i = 0; i < idx.size(); ++i) {
                if (x[i] == 0) continue;
                qv += Rat(x[i] * x[i]) * f.q[idx[i]];
                for (size_t j = i + 1; j < idx.size(); ++j)
                    qv += Rat(2 * x[i] * x[j]) * f.b(idx[i], idx[j]);
            }
            s += Cyclo::half_turn(qv);
            size_t t = 0;
            while (t < idx.size() && x[t] + 1 == f.orders[idx[t]]) x[t++] = 0;
            if (t == idx.size()) break;
            x[t] += 1;
        }
        total = total * s;
    }
    return total;
}

// sqrt of a positive integer as an exact cyclotomic number
inline Cyclo cyclo_sqrt(const Int& n) {
    check(n > 0, "cyclo_sqrt: positive argument required");
    Int m, fpart;
    squarefree_split(n, m, fpart);
    Cyclo r = Cyclo(Rat(fpart));
    Int rest = m;
    Int p = 2;
    while (rest > 1) {
        if (p * p > rest) p = rest;  // remaining part is prime
        if (rest % p != 0) {
            ++p;
            continue;
        }
        rest /= p;  // m squarefree, so each prime divides once
        long pl = to_long(p);
        if (pl == 2) {
            r = r * (Cyclo::zeta(8) + Cyclo::zeta(8, -1));
        } else {
            Cyclo g(0);
            for (long k = 0; k < pl; ++k) g += Cyclo::zeta(pl, (k * k) % pl);
            if (pl % 4 == 3) g = g * Cyclo::zeta(4, -1);  // g = i sqrt(p) here
            r = r * g;
        }
        ++p;
    }
    return r;
}

// signature of the form mod 8, derived exactly from its Gauss sum
inline long fqf_signature_mod8(const FiniteQuadraticForm& f) {
    Cyclo g = fqf_gauss_sum(f);
    Int order = f.group_order();
    check(g.norm_sq() == Cyclo(Rat(order)), "signature: gauss sum has wrong magnitude");
    Cyclo root = cyclo_sqrt(order);
    for (long s = 0; s < 8; ++s)
        if (g == root * Cyclo::zeta(8, s)) return s;
    check(false, "signature: gauss sum is not sqrt(|A|) times an eighth root of unity");
    return -1;
}

}  // namespace leechkit

#endif
