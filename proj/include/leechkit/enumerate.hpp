#ifndef LEECHKIT_ENUMERATE_HPP
#define LEECHKIT_ENUMERATE_HPP

// Short vector enumeration for positive definite integral forms, entirely
// in integer arithmetic.  A fraction-free (Bareiss) decomposition writes
// the form as Q(x) = sum_k l_k(x)^2 / (D_k D_{k-1}) with integral linear
// forms l_k and leading principal minors D_k; clearing the common
// denominator L scales the budget so every remainder in the backtracking
// tree is an integer.  Definite lattices of either sign are handled by
// enumerating |Q|; the count-only mode splits the top of the tree across
// worker threads.
//
// The backtracking kernel is generic over two integer types: a budget type
// holding the scaled remainders (which carry the common denominator) and a
// coordinate type holding coordinates and linear-form values (which stay
// small).  Before a run starts, worst-case magnitudes for both classes are
// derived from the decomposition and the budget; when they fit, the kernel
// runs on 128/64-bit machine integers with identical results, otherwise on
// arbitrary precision.  Each level scans its coordinate outward from the
// integer minimizer of its parabola, so the hot path needs no integer
// square roots and no divisions.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <optional>
#include <thread>

#include "lattice.hpp"
#include "lll.hpp"

namespace leechkit {

struct FpData {
    long n = 0;
    IntMat u;            // rows of the fraction-free elimination, upper triangular
    std::vector<Int> dk; // dk[k] = leading principal minor of order k+1
    std::vector<Int> w;  // w[k] = L / (dk[k] dk[k-1])
    Int scale = 1;       // L, the common denominator of the squared-form weights
};

inline FpData fp_prepare(const IntMat& gram) {
    check(gram.is_symmetric(), "enumerate: symmetric matrix required");
    long n = gram.rows;
    FpData fp;
    fp.n = n;
    fp.u = IntMat(n, n);
    IntMat wmat = gram;
    Int prev = 1;
    for (long k = 0; k < n; ++k) {
        check(wmat(k, k) > 0, "enumerate: form is not positive definite");
        for (long j = k; j < n; ++j) fp.u(k, j) = wmat(k, j);
        fp.dk.push_back(wmat(k, k));
        for (long i = k + 1; i < n; ++i)
            for (long j = k + 1; j < n; ++j)
                wmat(i, j) = (wmat(i, j) * wmat(k, k) - wmat(i, k) * wmat(k, j)) / prev;
        prev = wmat(k, k);
    }
    for (long k = 0; k < n; ++k) {
        Int p = fp.dk[k] * (k > 0 ? fp.dk[k - 1] : Int(1));
        fp.scale = lcm(fp.scale, p);
    }
    for (long k = 0; k < n; ++k) {
        Int p = fp.dk[k] * (k > 0 ? fp.dk[k - 1] : Int(1));
        fp.w.push_back(fp.scale / p);
    }
    return fp;
}

namespace detail {

using Big = __int128;

using leechkit::floor_div;

inline long long floor_div(long long a, long long b) {
    long long q = a / b;  // b > 0 in every kernel call
    return q * b > a ? q - 1 : q;
}

inline Big to_big(const Int& v) {
    Int a = abs(v);
    check((a >> 126) == 0, "enumerate: value does not fit the budget type");
    auto lo = static_cast<unsigned long long>(a & Int(~0ULL));
    auto hi = static_cast<unsigned long long>(a >> 64);
    Big r = static_cast<Big>((static_cast<unsigned __int128>(hi) << 64) | lo);
    return v < 0 ? -r : r;
}

// kernel data; B holds scaled budgets, S holds coordinates and linear forms
template <class B, class S>
struct FpKern {
    long n = 0;
    std::vector<S> u;  // row-major n x n
    std::vector<S> dk;
    std::vector<B> w;
    std::vector<B> norm_scaled;  // norm_scaled[t] = t * L
    const S& at(long i, long j) const { return u[static_cast<size_t>(i * n + j)]; }
};

template <class B, class S, class CvB, class CvS>
FpKern<B, S> fp_kern(const FpData& fp, long nb, CvB&& cvb, CvS&& cvs) {
    FpKern<B, S> k;
    k.n = fp.n;
    k.u.resize(static_cast<size_t>(fp.n) * static_cast<size_t>(fp.n));
    for (long i = 0; i < fp.n; ++i)
        for (long j = 0; j < fp.n; ++j) k.u[static_cast<size_t>(i * fp.n + j)] = cvs(fp.u(i, j));
    for (long t = 0; t < fp.n; ++t) {
        k.dk.push_back(cvs(fp.dk[t]));
        k.w.push_back(cvb(fp.w[t]));
    }
    for (long t = 0; t <= nb; ++t) k.norm_scaled.push_back(cvb(Int(t) * fp.scale));
    return k;
}

// Worst-case magnitudes of kernel intermediates for this budget.  Interval
// ends are rounded inward, so |l_k| <= sqrt(budget dk dk-1) + dk on every
// candidate the kernel evaluates; coordinate and partial-sum bounds follow
// top-down.  Returns {budget-class magnitude, coordinate-class magnitude}.
struct FpMagnitude {
    Int big, small;
};

inline FpMagnitude fp_magnitude(const FpData& fp, const Int& bound) {
    long n = fp.n;
    Int a = bound * fp.scale;
    FpMagnitude mag{a, 1};
    std::vector<Int> xb(static_cast<size_t>(n)), cs(static_cast<size_t>(n));
    for (long k = n - 1; k >= 0; --k) {
        cs[k] = 0;
        for (long j = k + 1; j < n; ++j) cs[k] += abs(fp.u(k, j)) * xb[j];
        Int m = isqrt(bound * fp.dk[k] * (k > 0 ? fp.dk[k - 1] : Int(1)));
        Int y = m + fp.dk[k];  // largest l_k the scan can evaluate
        xb[k] = (y + cs[k]) / fp.dk[k] + 1;
        Int s = y * y;
        Int small_cand = std::max(s, Int(2 * cs[k] + fp.dk[k] * (2 * xb[k] + 3)));
        mag.small = std::max(mag.small, small_cand);
        Int big_cand = s * fp.w[k] + a;  // scanned budget, with overshoot slack
        mag.big = std::max(mag.big, big_cand);
    }
    for (long i = 0; i < n; ++i) mag.small = std::max(mag.small, cs[i]);
    return mag;
}

// One backtracking worker over levels [k .. 0]; emit(x, t) is called once
// per +- pair with the highest assigned nonzero coordinate positive, t the
// unscaled norm.  Each level scans outward from the integer closest to the
// real minimizer of its parabola, so the per-candidate work is one addition
// per linear form plus one budget multiply and compare.
template <class B, class S, class Emit>
void fp_descend(const FpKern<B, S>& fp, long k, const B& rem, const B& used, bool head,
                std::vector<S>& x, std::vector<std::vector<S>>& sums, Emit&& emit) {
    const S& d = fp.dk[k];
    const S& cs = sums[k][k];
    // head implies every higher coordinate is zero, hence cs == 0
    S c0 = head ? S(0) : S(floor_div(S(d - 2 * cs), S(2 * d)));  // nearest to -cs/d
    S* nxt = k > 0 ? sums[k - 1].data() : nullptr;
    const S* cur = k > 0 ? sums[k].data() : nullptr;
    auto visit = [&](const S& xv, const B& usedl, bool first, bool down) -> void {
        x[k] = xv;
        if (k == 0) {
            B total = B(used + usedl);
            long t = static_cast<long>(std::lower_bound(fp.norm_scaled.begin(),
                                                        fp.norm_scaled.end(), total) -
                                       fp.norm_scaled.begin());
            emit(x, t);
            return;
        }
        if (first) {
            for (long i = 0; i < k; ++i) nxt[i] = S(cur[i] + fp.at(i, k) * xv);
        } else if (down) {
            for (long i = 0; i < k; ++i) nxt[i] = S(nxt[i] - fp.at(i, k));
        } else {
            for (long i = 0; i < k; ++i) nxt[i] = S(nxt[i] + fp.at(i, k));
        }
        fp_descend(fp, k - 1, B(rem - usedl), B(used + usedl), head && xv == 0, x, sums, emit);
    };
    bool first = true;
    for (S xv = c0;; ++xv, first = false) {
        S y = S(d * xv + cs);
        S y2 = S(y * y);
        B usedl = B(B(y2) * fp.w[k]);
        if (usedl > rem) break;
        if (k == 0 && head && xv == 0) continue;  // zero vector, not emitted
        visit(xv, usedl, first, false);
    }
    if (!head) {
        first = true;
        for (S xv = S(c0 - 1);; --xv, first = false) {
            S y = S(d * xv + cs);
            S y2 = S(y * y);
            B usedl = B(B(y2) * fp.w[k]);
            if (usedl > rem) break;
            visit(xv, usedl, first, true);
        }
    }
    x[k] = 0;
}

template <class B, class S, class Emit>
void fp_run(const FpKern<B, S>& fp, const B& budget, Emit&& emit) {
    std::vector<S> x(static_cast<size_t>(fp.n));
    std::vector<std::vector<S>> sums(static_cast<size_t>(fp.n),
                                     std::vector<S>(static_cast<size_t>(fp.n)));
    fp_descend(fp, fp.n - 1, budget, B(0), true, x, sums, emit);
}

constexpr long long fp_small_limit = 1LL << 60;

inline bool fp_fits_machine(const FpMagnitude& mag) {
    return mag.small < Int(fp_small_limit) && (mag.big >> 124) == 0;
}

template <class B, class S>
void shell_counts_run(const FpKern<B, S>& fp, const B& budget, long nb, long threads,
                      std::vector<long>& tally) {
    long n = fp.n;
    if (n <= 2 || threads <= 1) {
        fp_run(fp, budget, [&](const std::vector<S>&, long t) { tally[t] += 2; });
        return;
    }
    // collect subtree tasks by expanding the top two levels sequentially
    struct Task {
        B rem, used;
        bool head;
        std::vector<S> sums_row;  // partial linear forms entering level n-3
    };
    std::vector<Task> tasks;
    {
        const S& d1 = fp.dk[n - 1];
        for (S x1 = 0;; ++x1) {
            S y1 = S(d1 * x1);
            B used1 = B(B(S(y1 * y1)) * fp.w[n - 1]);
            if (used1 > budget) break;
            bool head1 = x1 == 0;
            const S& d2 = fp.dk[n - 2];
            S cs2 = S(fp.at(n - 2, n - 1) * x1);
            B rem1 = B(budget - used1);
            S c2 = head1 ? S(0) : S(floor_div(S(d2 - 2 * cs2), S(2 * d2)));
            auto push = [&](const S& x2) -> bool {
                S y2 = S(d2 * x2 + cs2);
                B used2 = B(B(S(y2 * y2)) * fp.w[n - 2]);
                if (used2 > rem1) return false;
                Task t;
                t.rem = B(rem1 - used2);
                t.used = B(used1 + used2);
                t.head = head1 && x2 == 0;
                t.sums_row.resize(static_cast<size_t>(n - 2));
                for (long i = 0; i < n - 2; ++i)
                    t.sums_row[i] = S(fp.at(i, n - 1) * x1 + fp.at(i, n - 2) * x2);
                tasks.push_back(std::move(t));
                return true;
            };
            for (S x2 = c2; push(x2); ++x2) {}
            if (!head1)
                for (S x2 = S(c2 - 1); push(x2); --x2) {}
        }
    }
    std::atomic<size_t> next{0};
    std::vector<std::vector<long>> partial(static_cast<size_t>(threads),
                                           std::vector<long>(static_cast<size_t>(nb) + 1));
    std::vector<std::thread> pool;
    for (long t = 0; t < threads; ++t) {
        pool.emplace_back([&, t] {
            std::vector<S> x(static_cast<size_t>(n));
            std::vector<std::vector<S>> sums(static_cast<size_t>(n),
                                             std::vector<S>(static_cast<size_t>(n)));
            std::vector<long>& mine = partial[static_cast<size_t>(t)];
            for (;;) {
                size_t i = next.fetch_add(1);
                if (i >= tasks.size()) break;
                const Task& tk = tasks[i];
                for (long j = 0; j < n - 2; ++j) sums[n - 3][j] = tk.sums_row[j];
                fp_descend(fp, n - 3, tk.rem, tk.used, tk.head, x, sums,
                           [&](const std::vector<S>&, long nv) { mine[nv] += 2; });
            }
        });
    }
    for (auto& th : pool) th.join();
    for (const auto& p : partial)
        for (size_t i = 0; i <= static_cast<size_t>(nb); ++i) tally[i] += p[i];
}

}  // namespace detail

// All x with 0 < x^T gram x <= bound, one representative per +- pair,
// paired with its norm.  The Gram matrix must be positive definite.
template <class Emit>
void fp_enumerate(const IntMat& gram, const Int& bound, Emit&& emit) {
    check(bound >= 0, "enumerate: nonnegative bound required");
    if (gram.rows == 0) return;
    FpData fp = fp_prepare(gram);
    long nb = to_long(bound);
    std::vector<Int> xi(static_cast<size_t>(fp.n));
    if (detail::fp_fits_machine(detail::fp_magnitude(fp, bound))) {
        auto kern = detail::fp_kern<detail::Big, long long>(
            fp, nb, [](const Int& v) { return detail::to_big(v); },
            [](const Int& v) { return to_long(v); });
        detail::fp_run(kern, detail::Big(detail::to_big(fp.scale) * nb),
                       [&](const std::vector<long long>& x, long t) {
                           for (long i = 0; i < fp.n; ++i) xi[i] = x[i];
                           emit(xi, Int(t));
                       });
        return;
    }
    auto kern = detail::fp_kern<Int, Int>(
        fp, nb, [](const Int& v) { return v; }, [](const Int& v) { return v; });
    detail::fp_run(kern, Int(fp.scale * bound),
                   [&](const std::vector<Int>& x, long t) { emit(x, Int(t)); });
}

// Shell counts up to the bound: counts[t] is the number of vectors of norm
// exactly t, both signs included.  Enumeration runs on an LLL-reduced copy
// of the form (counts are base-independent); the top two levels of the
// search tree are dealt out to worker threads.
inline std::vector<Int> shell_counts(const IntMat& gram, const Int& bound, long threads = 1) {
    long nb = to_long(bound);
    std::vector<long> tally(static_cast<size_t>(nb) + 1);
    if (gram.rows > 0) {
        IntMat reduced = lll_gram(gram).gram;
        FpData fp = fp_prepare(reduced);
        if (detail::fp_fits_machine(detail::fp_magnitude(fp, bound))) {
            auto kern = detail::fp_kern<detail::Big, long long>(
                fp, nb, [](const Int& v) { return detail::to_big(v); },
                [](const Int& v) { return to_long(v); });
            detail::shell_counts_run(kern, detail::Big(detail::to_big(fp.scale) * nb), nb,
                                     threads, tally);
        } else {
            auto kern = detail::fp_kern<Int, Int>(
                fp, nb, [](const Int& v) { return v; }, [](const Int& v) { return v; });
            detail::shell_counts_run(kern, Int(fp.scale * bound), nb, threads, tally);
        }
    }
    std::vector<Int> counts(static_cast<size_t>(nb) + 1);
    for (size_t i = 0; i < tally.size(); ++i) counts[i] = tally[i];
    return counts;
}

// ---------------------------------------------------------------------------
// lattice-level helpers; definite lattices of either sign, norms by |Q|

inline IntMat definite_gram(const Lattice& l) {
    SignCounts s = l.signature();
    check(s.zero == 0 && (s.pos == 0 || s.neg == 0), "enumerate: definite lattice required");
    if (s.neg == 0) return l.gram;
    IntMat g = l.gram;
    for (Int& v : g.a) v = -v;
    return g;
}

// vectors with 0 < |norm| <= bound, one per +- pair, in basis coordinates
inline std::vector<std::pair<std::vector<Int>, Int>> vectors_up_to(const Lattice& l,
                                                                   const Int& bound) {
    IntMat g = definite_gram(l);
    LllResult red = lll_gram(g);
    std::vector<std::pair<std::vector<Int>, Int>> out;
    fp_enumerate(red.gram, bound, [&](const std::vector<Int>& x, const Int& t) {
        std::vector<Int> y(static_cast<size_t>(g.rows));
        for (long i = 0; i < g.rows; ++i) {
            Int s = 0;
            for (long j = 0; j < g.cols; ++j) s += red.transform(i, j) * x[j];
            y[i] = s;
        }
        out.emplace_back(std::move(y), t);
    });
    return out;
}

// all vectors of |norm| exactly t, both signs
inline std::vector<std::vector<Int>> vectors_of_norm(const Lattice& l, const Int& t) {
    std::vector<std::vector<Int>> out;
    for (auto& [v, nv] : vectors_up_to(l, t)) {
        if (nv != t) continue;
        std::vector<Int> neg(v.size());
        for (size_t i = 0; i < v.size(); ++i) neg[i] = -v[i];
        out.push_back(std::move(v));
        out.push_back(std::move(neg));
    }
    return out;
}

// smallest |norm| of a nonzero vector
inline Int minimum_norm(const Lattice& l) {
    IntMat g = definite_gram(l);
    IntMat reduced = lll_gram(g).gram;
    Int bound = reduced(0, 0);
    for (long i = 1; i < reduced.rows; ++i) bound = std::min(bound, reduced(i, i));
    Int best = bound;
    fp_enumerate(reduced, bound, [&](const std::vector<Int>&, const Int& t) {
        if (t < best) best = t;
    });
    return best;
}

// theta shell counts of a definite lattice, indexed by |norm| up to bound
inline std::vector<Int> theta_shells(const Lattice& l, const Int& bound, long threads = 1) {
    return shell_counts(definite_gram(l), bound, threads);
}

// number of vectors of |norm| 2, both signs
inline Int count_roots(const Lattice& l) {
    if (l.rank() == 0) return 0;
    std::vector<Int> counts = theta_shells(l, 2);
    return counts[2];
}

// primitive vectors of |norm| exactly t, one per +- pair
inline std::vector<std::vector<Int>> primitive_vectors_of_norm(const Lattice& l, const Int& t) {
    check(t > 0, "enumerate: norms are positive in the |Q| convention");
    std::vector<std::vector<Int>> out;
    for (auto& [v, nv] : vectors_up_to(l, t)) {
        if (nv != t) continue;
        Int g = 0;
        for (const Int& c : v) g = gcd(g, c);
        if (g == 1) out.push_back(std::move(v));
    }
    return out;
}

// Full enumeration summary: exact shell counts, optionally the vectors
// themselves (one per +- pair), and the wall time spent.
struct EnumerationReport {
    Int bound = 0;
    std::vector<Int> counts;  // counts[t] = vectors with |norm| = t, both signs
    std::optional<std::vector<std::pair<std::vector<Int>, Int>>> vectors;
    long long wall_ms = 0;
};

inline EnumerationReport enumerate_up_to(const Lattice& l, const Int& bound,
                                         bool with_vectors = false, long threads = 1) {
    EnumerationReport rep;
    rep.bound = bound;
    auto start = std::chrono::steady_clock::now();
    rep.counts = theta_shells(l, bound, threads);
    if (with_vectors) rep.vectors = vectors_up_to(l, bound);
    rep.wall_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::steady_clock::now() - start)
                      .count();
    return rep;
}

}  // namespace leechkit

#endif
