#ifndef LEECHKIT_LLL_HPP
#define LEECHKIT_LLL_HPP

// Integral LLL reduction working directly on a positive definite Gram
// matrix.  All quantities are the scaled Gram-Schmidt data d_k (leading
// principal minors) and lambda_{i,j} = d_j mu_{i,j}, which stay integral
// throughout, so no rounding ever enters.  Used to precondition Gram
// matrices before short vector enumeration.

#include "matrix.hpp"

namespace leechkit {

struct LllResult {
    IntMat gram;       // reduced Gram matrix, equal to t^T g t
    IntMat transform;  // unimodular column transform t
};

inline LllResult lll_gram(const IntMat& g_in) {
    check(g_in.is_symmetric(), "lll: symmetric matrix required");
    long n = g_in.rows;
    LllResult res{g_in, IntMat::identity(n)};
    if (n <= 1) return res;
    IntMat& g = res.gram;
    IntMat& h = res.transform;

    std::vector<Int> d(static_cast<size_t>(n) + 1);
    d[0] = 1;
    IntMat lam(n, n);

    auto mul_col = [&](long dst, long src, const Int& q) {
        // b_dst -= q b_src on the transform and on the Gram matrix
        for (long i = 0; i < n; ++i) h(i, dst) -= q * h(i, src);
        for (long i = 0; i < n; ++i) g(i, dst) -= q * g(i, src);
        for (long j = 0; j < n; ++j) g(dst, j) -= q * g(src, j);
    };
    auto swap_col = [&](long a, long b) {
        for (long i = 0; i < n; ++i) std::swap(h(i, a), h(i, b));
        for (long i = 0; i < n; ++i) std::swap(g(i, a), g(i, b));
        for (long j = 0; j < n; ++j) std::swap(g(a, j), g(b, j));
    };
    // reduce b_k against b_l (1-based indices into d, 0-based into matrices)
    auto redi = [&](long k, long l) {
        Int two_lam = 2 * lam(k - 1, l - 1);
        if (abs(two_lam) <= d[l]) return;
        Int q = floor_div(two_lam + d[l], 2 * d[l]);  // nearest integer
        mul_col(k - 1, l - 1, q);
        lam(k - 1, l - 1) -= q * d[l];
        for (long i = 1; i < l; ++i) lam(k - 1, i - 1) -= q * lam(l - 1, i - 1);
    };

    long k = 2, kmax = 1;
    d[1] = g(0, 0);
    check(d[1] > 0, "lll: form is not positive definite");
    while (k <= n) {
        if (k > kmax) {
            kmax = k;
            for (long j = 1; j <= k; ++j) {
                Int u = g(k - 1, j - 1);
                for (long i = 1; i < j; ++i)
                    u = (d[i] * u - lam(k - 1, i - 1) * lam(j - 1, i - 1)) / d[i - 1];
                if (j < k)
                    lam(k - 1, j - 1) = u;
                else {
                    d[k] = u;
                    check(d[k] > 0, "lll: form is not positive definite");
                }
            }
        }
        redi(k, k - 1);
        Int lb = lam(k - 1, k - 2);
        if (4 * d[k] * d[k - 2] < 3 * d[k - 1] * d[k - 1] - 4 * lb * lb) {
            // Lovasz condition fails: swap b_{k-1}, b_k and patch the data
            swap_col(k - 2, k - 1);
            for (long j = 1; j <= k - 2; ++j) std::swap(lam(k - 1, j - 1), lam(k - 2, j - 1));
            Int lv = lam(k - 1, k - 2);
            Int b = (d[k - 2] * d[k] + lv * lv) / d[k - 1];
            for (long i = k + 1; i <= kmax; ++i) {
                Int t = lam(i - 1, k - 1);
                lam(i - 1, k - 1) = (d[k] * lam(i - 1, k - 2) - lv * t) / d[k - 1];
                lam(i - 1, k - 2) = (b * t + lv * lam(i - 1, k - 1)) / d[k];
            }
            d[k - 1] = b;
            k = std::max(2L, k - 1);
        } else {
            for (long l = k - 2; l >= 1; --l) redi(k, l);
            ++k;
        }
    }
    return res;
}

}  // namespace leechkit

#endif
