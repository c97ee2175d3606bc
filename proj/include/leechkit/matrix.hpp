#ifndef LEECHKIT_MATRIX_HPP
#define LEECHKIT_MATRIX_HPP

// Dense exact matrices over Int / Rat and the integer linear algebra the
// lattice layer is built on: Hermite and Smith normal forms with transforms,
// saturated kernels, fraction-free determinants and ranks, exact solving,
// and a division-free characteristic polynomial for signature counting.

#include "numeric.hpp"

#include <algorithm>
#include <optional>

namespace leechkit {

template <class T>
struct Mat {
    long rows = 0, cols = 0;
    std::vector<T> a;

    Mat() = default;
    Mat(long r, long c) : rows(r), cols(c), a(static_cast<size_t>(r) * c) {}

    T& operator()(long i, long j) { return a[static_cast<size_t>(i) * cols + j]; }
    const T& operator()(long i, long j) const { return a[static_cast<size_t>(i) * cols + j]; }

    bool operator==(const Mat& o) const { return rows == o.rows && cols == o.cols && a == o.a; }

    static Mat identity(long n) {
        Mat m(n, n);
        for (long i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    Mat transposed() const {
        Mat t(cols, rows);
        for (long i = 0; i < rows; ++i)
            for (long j = 0; j < cols; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    std::vector<T> col(long j) const {
        std::vector<T> v(rows);
        for (long i = 0; i < rows; ++i) v[i] = (*this)(i, j);
        return v;
    }

    void set_col(long j, const std::vector<T>& v) {
        check(static_cast<long>(v.size()) == rows, "set_col: size mismatch");
        for (long i = 0; i < rows; ++i) (*this)(i, j) = v[i];
    }

    Mat columns(const std::vector<long>& idx) const {
        Mat m(rows, static_cast<long>(idx.size()));
        for (long j = 0; j < m.cols; ++j)
            for (long i = 0; i < rows; ++i) m(i, j) = (*this)(i, idx[j]);
        return m;
    }

    Mat first_columns(long k) const {
        std::vector<long> idx(static_cast<size_t>(k));
        for (long j = 0; j < k; ++j) idx[j] = j;
        return columns(idx);
    }

    bool is_symmetric() const {
        if (rows != cols) return false;
        for (long i = 0; i < rows; ++i)
            for (long j = i + 1; j < cols; ++j)
                if ((*this)(i, j) != (*this)(j, i)) return false;
        return true;
    }

    bool is_zero() const {
        for (const auto& x : a)
            if (x != 0) return false;
        return true;
    }
};

using IntMat = Mat<Int>;
using RatMat = Mat<Rat>;

template <class T, class U>
auto operator*(const Mat<T>& x, const Mat<U>& y) {
    check(x.cols == y.rows, "matrix product: shape mismatch");
    using R = decltype(T() * U());
    Mat<R> z(x.rows, y.cols);
    for (long i = 0; i < x.rows; ++i)
        for (long k = 0; k < x.cols; ++k) {
            if (x(i, k) == 0) continue;
            for (long j = 0; j < y.cols; ++j) z(i, j) += x(i, k) * y(k, j);
        }
    return z;
}

template <class T>
Mat<T> operator+(const Mat<T>& x, const Mat<T>& y) {
    check(x.rows == y.rows && x.cols == y.cols, "matrix sum: shape mismatch");
    Mat<T> z = x;
    for (size_t i = 0; i < z.a.size(); ++i) z.a[i] += y.a[i];
    return z;
}

template <class T>
Mat<T> operator-(const Mat<T>& x, const Mat<T>& y) {
    check(x.rows == y.rows && x.cols == y.cols, "matrix difference: shape mismatch");
    Mat<T> z = x;
    for (size_t i = 0; i < z.a.size(); ++i) z.a[i] -= y.a[i];
    return z;
}

template <class T>
std::vector<T> operator*(const Mat<T>& m, const std::vector<T>& v) {
    check(m.cols == static_cast<long>(v.size()), "matrix*vector: shape mismatch");
    std::vector<T> r(m.rows);
    for (long i = 0; i < m.rows; ++i) {
        T s = T();
        for (long j = 0; j < m.cols; ++j) s += m(i, j) * v[j];
        r[i] = s;
    }
    return r;
}

inline RatMat to_rat(const IntMat& m) {
    RatMat r(m.rows, m.cols);
    for (size_t i = 0; i < m.a.size(); ++i) r.a[i] = Rat(m.a[i]);
    return r;
}

// common denominator d and integer matrix n with m = n / d
inline void clear_denominators(const RatMat& m, IntMat& n, Int& d) {
    d = 1;
    for (const auto& x : m.a) d = lcm(d, den(x));
    n = IntMat(m.rows, m.cols);
    for (size_t i = 0; i < m.a.size(); ++i) n.a[i] = num(m.a[i]) * (d / den(m.a[i]));
}

inline std::optional<IntMat> to_int_checked(const RatMat& m) {
    IntMat r(m.rows, m.cols);
    for (size_t i = 0; i < m.a.size(); ++i) {
        if (!is_integer(m.a[i])) return std::nullopt;
        r.a[i] = num(m.a[i]);
    }
    return r;
}

// ---------------------------------------------------------------------------
// Hermite normal form, column style: h = m * u with u unimodular.  Pivot rows
// strictly increase column by column, pivots are positive, entries in a pivot
// row left of the pivot lie in [0, pivot), columns beyond the rank are zero.
// Canonical for the column span, so equal spans give equal h.

struct HnfResult {
    IntMat h;
    IntMat u;  // m * u == h (only when requested)
    long rank = 0;
};

inline HnfResult hnf(const IntMat& m, bool want_transform = true) {
    HnfResult res;
    res.h = m;
    if (want_transform) res.u = IntMat::identity(m.cols);
    IntMat& h = res.h;
    auto col_swap = [&](long j1, long j2) {
        if (j1 == j2) return;
        for (long k = 0; k < m.rows; ++k) std::swap(h(k, j1), h(k, j2));
        if (want_transform)
            for (long k = 0; k < m.cols; ++k) std::swap(res.u(k, j1), res.u(k, j2));
    };
    auto col_addmul = [&](long dst, long src, const Int& q) {
        if (q == 0) return;
        for (long k = 0; k < m.rows; ++k) h(k, dst) += q * h(k, src);
        if (want_transform)
            for (long k = 0; k < m.cols; ++k) res.u(k, dst) += q * res.u(k, src);
    };
    auto col_negate = [&](long j) {
        for (long k = 0; k < m.rows; ++k) h(k, j) = -h(k, j);
        if (want_transform)
            for (long k = 0; k < m.cols; ++k) res.u(k, j) = -res.u(k, j);
    };
    long r = 0;
    for (long i = 0; i < m.rows && r < m.cols; ++i) {
        for (long j = r + 1; j < m.cols; ++j) {
            // euclid on (h(i,r), h(i,j)) via column operations
            while (h(i, j) != 0) {
                if (h(i, r) == 0) {
                    col_swap(r, j);
                    break;
                }
                Int q = h(i, j) / h(i, r);
                col_addmul(j, r, -q);
                if (h(i, j) != 0) col_swap(r, j);
            }
        }
        if (h(i, r) == 0) continue;
        if (h(i, r) < 0) col_negate(r);
        for (long j = 0; j < r; ++j) {
            Int q = floor_div(h(i, j), h(i, r));
            col_addmul(j, r, -q);
        }
        ++r;
    }
    res.rank = r;
    return res;
}

// basis (as columns) of the lattice spanned by the columns of m
inline IntMat column_lattice_basis(const IntMat& m) {
    HnfResult r = hnf(m, false);
    return r.h.first_columns(r.rank);
}

inline Int det_int(const IntMat& m);

inline bool is_unimodular(const IntMat& m) {
    if (m.rows != m.cols) return false;
    Int d = det_int(m);
    return d == 1 || d == -1;
}

// ---------------------------------------------------------------------------
// Smith normal form: u * m * v = d diagonal, d1 | d2 | ..., di >= 0.

struct SnfResult {
    IntMat d, u, v;
    long rank = 0;
};

inline SnfResult snf(const IntMat& m) {
    SnfResult res;
    res.d = m;
    res.u = IntMat::identity(m.rows);
    res.v = IntMat::identity(m.cols);
    IntMat& d = res.d;
    auto row_swap = [&](long i1, long i2) {
        if (i1 == i2) return;
        for (long j = 0; j < d.cols; ++j) std::swap(d(i1, j), d(i2, j));
        for (long j = 0; j < res.u.cols; ++j) std::swap(res.u(i1, j), res.u(i2, j));
    };
    auto col_swap = [&](long j1, long j2) {
        if (j1 == j2) return;
        for (long i = 0; i < d.rows; ++i) std::swap(d(i, j1), d(i, j2));
        for (long i = 0; i < res.v.rows; ++i) std::swap(res.v(i, j1), res.v(i, j2));
    };
    auto row_addmul = [&](long dst, long src, const Int& q) {
        if (q == 0) return;
        for (long j = 0; j < d.cols; ++j) d(dst, j) += q * d(src, j);
        for (long j = 0; j < res.u.cols; ++j) res.u(dst, j) += q * res.u(src, j);
    };
    auto col_addmul = [&](long dst, long src, const Int& q) {
        if (q == 0) return;
        for (long i = 0; i < d.rows; ++i) d(i, dst) += q * d(i, src);
        for (long i = 0; i < res.v.rows; ++i) res.v(i, dst) += q * res.v(i, src);
    };
    auto row_negate = [&](long i) {
        for (long j = 0; j < d.cols; ++j) d(i, j) = -d(i, j);
        for (long j = 0; j < res.u.cols; ++j) res.u(i, j) = -res.u(i, j);
    };
    long n = std::min(m.rows, m.cols);
    long t = 0;
    for (; t < n; ++t) {
        for (;;) {
            // pick pivot of least absolute value in the trailing block
            long pi = -1, pj = -1;
            for (long i = t; i < m.rows; ++i)
                for (long j = t; j < m.cols; ++j)
                    if (d(i, j) != 0 && (pi < 0 || abs(d(i, j)) < abs(d(pi, pj)))) { pi = i; pj = j; }
            if (pi < 0) { t = n; break; }  // trailing block is zero; done
            row_swap(t, pi);
            col_swap(t, pj);
            bool clean = true;
            for (long i = t + 1; i < m.rows; ++i) {
                Int q = d(i, t) / d(t, t);
                row_addmul(i, t, -q);
                if (d(i, t) != 0) clean = false;  // remainder smaller than pivot
            }
            for (long j = t + 1; j < m.cols; ++j) {
                Int q = d(t, j) / d(t, t);
                col_addmul(j, t, -q);
                if (d(t, j) != 0) clean = false;
            }
            if (!clean) continue;  // re-pick: minimum strictly decreased
            // divisibility d_t | every entry of the trailing block
            long bi = -1, bj = -1;
            for (long i = t + 1; i < m.rows && bi < 0; ++i)
                for (long j = t + 1; j < m.cols; ++j)
                    if (d(i, j) % d(t, t) != 0) { bi = i; bj = j; break; }
            if (bi < 0) break;
            row_addmul(t, bi, 1);  // drag the offending row up; next pass shrinks the pivot
        }
        if (t >= n) break;
        if (d(t, t) < 0) row_negate(t);
    }
    long r = 0;
    for (long i = 0; i < n; ++i)
        if (d(i, i) != 0) ++r;
    res.rank = r;
    return res;
}

// ---------------------------------------------------------------------------

// determinant by fraction-free (Bareiss) elimination
inline Int det_int(const IntMat& m) {
    check(m.rows == m.cols, "det: square matrix required");
    long n = m.rows;
    if (n == 0) return 1;
    IntMat w = m;
    Int prev = 1;
    int sign = 1;
    for (long k = 0; k < n - 1; ++k) {
        if (w(k, k) == 0) {
            long p = -1;
            for (long i = k + 1; i < n; ++i)
                if (w(i, k) != 0) { p = i; break; }
            if (p < 0) return 0;
            for (long j = 0; j < n; ++j) std::swap(w(k, j), w(p, j));
            sign = -sign;
        }
        for (long i = k + 1; i < n; ++i)
            for (long j = k + 1; j < n; ++j)
                w(i, j) = (w(i, j) * w(k, k) - w(i, k) * w(k, j)) / prev;  // exact division
        prev = w(k, k);
    }
    return sign > 0 ? w(n - 1, n - 1) : -w(n - 1, n - 1);
}

inline long rank_int(const IntMat& m) {
    IntMat w = m;
    long r = 0;
    for (long j = 0; j < w.cols && r < w.rows; ++j) {
        long p = -1;
        for (long i = r; i < w.rows; ++i)
            if (w(i, j) != 0) { p = i; break; }
        if (p < 0) continue;
        if (p != r)
            for (long k = 0; k < w.cols; ++k) std::swap(w(r, k), w(p, k));
        for (long i = r + 1; i < w.rows; ++i) {
            if (w(i, j) == 0) continue;
            Int g = gcd(w(i, j), w(r, j));
            Int a = w(r, j) / g, b = w(i, j) / g;
            for (long k = 0; k < w.cols; ++k) w(i, k) = a * w(i, k) - b * w(r, k);
        }
        ++r;
    }
    return r;
}

// saturated basis of { x in Z^cols : m x = 0 }, as columns
inline IntMat kernel_basis(const IntMat& m) {
    SnfResult s = snf(m);
    std::vector<long> idx;
    for (long j = s.rank; j < m.cols; ++j) idx.push_back(j);
    return s.v.columns(idx);
}

// ---------------------------------------------------------------------------
// exact rational elimination: rank, solve, inverse

inline long rank_rat(const RatMat& m) {
    RatMat w = m;
    long r = 0;
    for (long j = 0; j < w.cols && r < w.rows; ++j) {
        long p = -1;
        for (long i = r; i < w.rows; ++i)
            if (w(i, j) != 0) { p = i; break; }
        if (p < 0) continue;
        if (p != r)
            for (long k = 0; k < w.cols; ++k) std::swap(w(r, k), w(p, k));
        Rat piv = w(r, j);
        for (long i = r + 1; i < w.rows; ++i) {
            if (w(i, j) == 0) continue;
            Rat f = w(i, j) / piv;
            for (long k = j; k < w.cols; ++k) w(i, k) -= f * w(r, k);
        }
        ++r;
    }
    return r;
}

// Gauss-Jordan reduction over any exact field type F (zero is F(), division
// exact).  Returns pivot columns; w trailing columns of aug are carried along.
template <class F>
std::vector<long> reduce_field(Mat<F>& aug, long m) {
    long n = aug.rows, total = aug.cols;
    std::vector<long> pivot_col;
    long r = 0;
    for (long j = 0; j < m && r < n; ++j) {
        long p = -1;
        for (long i = r; i < n; ++i)
            if (!(aug(i, j) == F())) { p = i; break; }
        if (p < 0) continue;
        if (p != r)
            for (long k = 0; k < total; ++k) std::swap(aug(r, k), aug(p, k));
        F piv = aug(r, j);
        for (long k = j; k < total; ++k) aug(r, k) = aug(r, k) / piv;
        for (long i = 0; i < n; ++i) {
            if (i == r || aug(i, j) == F()) continue;
            F f = aug(i, j);
            for (long k = j; k < total; ++k) aug(i, k) = aug(i, k) - f * aug(r, k);
        }
        pivot_col.push_back(j);
        ++r;
    }
    return pivot_col;
}

template <class F>
long rank_field(const Mat<F>& m) {
    Mat<F> w = m;
    return static_cast<long>(reduce_field(w, m.cols).size());
}

// Solve a x = b columnwise.  The columns of a must be independent (checked);
// returns nullopt when the system is inconsistent.
template <class F>
std::optional<Mat<F>> solve_field(const Mat<F>& a, const Mat<F>& b) {
    check(a.rows == b.rows, "solve: shape mismatch");
    long n = a.rows, m = a.cols, w = b.cols;
    Mat<F> aug(n, m + w);
    for (long i = 0; i < n; ++i) {
        for (long j = 0; j < m; ++j) aug(i, j) = a(i, j);
        for (long j = 0; j < w; ++j) aug(i, m + j) = b(i, j);
    }
    std::vector<long> pivot_col = reduce_field(aug, m);
    long r = static_cast<long>(pivot_col.size());
    check(r == m, "solve: columns of the system matrix are dependent");
    for (long i = r; i < n; ++i)
        for (long j = 0; j < w; ++j)
            if (!(aug(i, m + j) == F())) return std::nullopt;
    Mat<F> x(m, w);
    for (long t = 0; t < r; ++t)
        for (long j = 0; j < w; ++j) x(pivot_col[t], j) = aug(t, m + j);
    return x;
}

// basis of { x : m x = 0 } over the field F, as columns
template <class F>
Mat<F> kernel_field(const Mat<F>& m) {
    Mat<F> w = m;
    std::vector<long> piv = reduce_field(w, m.cols);
    std::vector<bool> is_pivot(static_cast<size_t>(m.cols), false);
    for (long j : piv) is_pivot[j] = true;
    Mat<F> k(m.cols, m.cols - static_cast<long>(piv.size()));
    long out = 0;
    for (long j = 0; j < m.cols; ++j) {
        if (is_pivot[j]) continue;
        k(j, out) = F(1);
        for (long t = 0; t < static_cast<long>(piv.size()); ++t)
            if (piv[t] < j) k(piv[t], out) = F() - w(t, j);
        ++out;
    }
    return k;
}

inline std::optional<RatMat> solve_rat(const RatMat& a, const RatMat& b) {
    return solve_field<Rat>(a, b);
}

inline RatMat inverse_rat(const RatMat& a) {
    check(a.rows == a.cols, "inverse: square matrix required");
    auto x = solve_rat(a, to_rat(IntMat::identity(a.rows)));
    check(x.has_value(), "inverse: singular matrix");
    return *x;
}

// ---------------------------------------------------------------------------
// characteristic polynomial det(x I - m) by Berkowitz (division free),
// coefficients lowest degree first, monic of degree n

inline std::vector<Int> charpoly(const IntMat& m) {
    check(m.rows == m.cols, "charpoly: square matrix required");
    long n = m.rows;
    std::vector<Int> p_high{1};  // highest-degree-first
    for (long k = 1; k <= n; ++k) {
        // c = (1, -m[k-1][k-1], -R C, -R A C, ..., -R A^{k-2} C)
        std::vector<Int> c(static_cast<size_t>(k) + 1);
        c[0] = 1;
        c[1] = -m(k - 1, k - 1);
        std::vector<Int> v(static_cast<size_t>(k) - 1);
        for (long i = 0; i < k - 1; ++i) v[i] = m(i, k - 1);
        for (long j = 2; j <= k; ++j) {
            Int s = 0;
            for (long i = 0; i < k - 1; ++i) s += m(k - 1, i) * v[i];
            c[j] = -s;
            if (j < k) {
                std::vector<Int> nv(static_cast<size_t>(k) - 1);
                for (long i = 0; i < k - 1; ++i) {
                    Int t = 0;
                    for (long l = 0; l < k - 1; ++l) t += m(i, l) * v[l];
                    nv[i] = t;
                }
                v.swap(nv);
            }
        }
        // first k+1 coefficients of conv(c, p_high)
        std::vector<Int> next(static_cast<size_t>(k) + 1);
        for (size_t i = 0; i < next.size(); ++i) {
            Int s = 0;
            for (size_t j = 0; j <= i && j < c.size(); ++j)
                if (i - j < p_high.size()) s += c[j] * p_high[i - j];
            next[i] = s;
        }
        p_high.swap(next);
    }
    return {p_high.rbegin(), p_high.rend()};
}

// eigenvalue sign counts of a symmetric integer matrix; Descartes' rule is
// exact for real-rooted polynomials
struct SignCounts {
    long pos = 0, neg = 0, zero = 0;
};

inline SignCounts symmetric_sign_counts(const IntMat& m) {
    check(m.is_symmetric(), "sign counts: symmetric matrix required");
    std::vector<Int> p = charpoly(m);  // lowest degree first
    long n = m.rows;
    SignCounts sc;
    long z = 0;
    while (z <= n && p[z] == 0) ++z;
    sc.zero = z;
    auto changes = [&](bool alternate) {
        long v = 0;
        int prev = 0;
        for (long i = z; i <= n; ++i) {
            if (p[i] == 0) continue;
            int s = p[i] > 0 ? 1 : -1;
            if (alternate && ((i - z) % 2)) s = -s;
            if (prev != 0 && s != prev) ++v;
            prev = s;
        }
        return v;
    };
    sc.pos = changes(false);
    sc.neg = changes(true);  // q(-x): flip odd-degree coefficients
    // parity of the flip is anchored at degree z; flipping all signs of the
    // sequence leaves the change count invariant, so the anchor is harmless
    check(sc.pos + sc.neg + sc.zero == n, "sign counts: variation mismatch");
    return sc;
}

}  // namespace leechkit

#endif
