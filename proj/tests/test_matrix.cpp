#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "leechkit/matrix.hpp"

using namespace leechkit;

namespace {

IntMat from_rows(const std::vector<std::vector<long>>& rows) {
    IntMat m(static_cast<long>(rows.size()), static_cast<long>(rows[0].size()));
    for (long i = 0; i < m.rows; ++i)
        for (long j = 0; j < m.cols; ++j) m(i, j) = rows[i][j];
    return m;
}

IntMat random_mat(std::mt19937& rng, long r, long c, int lo = -9, int hi = 9) {
    std::uniform_int_distribution<int> d(lo, hi);
    IntMat m(r, c);
    for (auto& x : m.a) x = d(rng);
    return m;
}

// independent determinant oracle: cofactor expansion along the first row
Int det_cofactor(const IntMat& m) {
    long n = m.rows;
    if (n == 0) return 1;
    if (n == 1) return m(0, 0);
    Int s = 0;
    for (long j = 0; j < n; ++j) {
        if (m(0, j) == 0) continue;
        IntMat sub(n - 1, n - 1);
        for (long i = 1; i < n; ++i) {
            long cc = 0;
            for (long k = 0; k < n; ++k) {
                if (k == j) continue;
                sub(i - 1, cc++) = m(i, k);
            }
        }
        Int t = m(0, j) * det_cofactor(sub);
        s += (j % 2 == 0) ? t : -t;
    }
    return s;
}

Int eval_poly(const std::vector<Int>& p, const Int& x) {
    Int v = 0;
    for (auto it = p.rbegin(); it != p.rend(); ++it) v = v * x + *it;
    return v;
}

IntMat cartan_e8() {
    // chain 1-2-3-4-5-6-7 with node 8 attached to node 5
    IntMat c(8, 8);
    for (long i = 0; i < 8; ++i) c(i, i) = 2;
    auto edge = [&](long i, long j) { c(i, j) = -1; c(j, i) = -1; };
    for (long i = 0; i + 1 < 7; ++i) edge(i, i + 1);
    edge(4, 7);
    return c;
}

}  // namespace

TEST_CASE("matrix product and transpose") {
    IntMat a = from_rows({{1, 2}, {3, 4}, {5, 6}});
    IntMat b = from_rows({{7, 8, 9}, {10, 11, 12}});
    IntMat ab = a * b;
    CHECK(ab == from_rows({{27, 30, 33}, {61, 68, 75}, {95, 106, 117}}));
    CHECK(a.transposed().transposed() == a);
    CHECK((a.transposed() * a).is_symmetric());
}

TEST_CASE("determinant agrees with cofactor expansion") {
    std::mt19937 rng(12345);
    for (int trial = 0; trial < 30; ++trial) {
        long n = 1 + trial % 6;
        IntMat m = random_mat(rng, n, n);
        CHECK(det_int(m) == det_cofactor(m));
    }
    CHECK(det_int(IntMat::identity(5)) == 1);
    CHECK(det_int(cartan_e8()) == 1);
}

TEST_CASE("hermite form: transform, canonicity, span invariance") {
    std::mt19937 rng(777);
    for (int trial = 0; trial < 25; ++trial) {
        long r = 2 + trial % 4, c = 2 + (trial / 2) % 5;
        IntMat m = random_mat(rng, r, c);
        HnfResult res = hnf(m);
        CHECK(m * res.u == res.h);
        Int du = det_int(res.u);
        CHECK((du == 1 || du == -1));
        // pivot rows increase strictly; pivots positive; left entries reduced
        long prev_row = -1;
        for (long j = 0; j < res.rank; ++j) {
            long i = 0;
            while (i < r && res.h(i, j) == 0) ++i;
            REQUIRE(i < r);
            CHECK(i > prev_row);
            prev_row = i;
            CHECK(res.h(i, j) > 0);
            for (long k = 0; k < j; ++k) {
                CHECK(res.h(i, k) >= 0);
                CHECK(res.h(i, k) < res.h(i, j));
            }
        }
        for (long j = res.rank; j < c; ++j)
            for (long i = 0; i < r; ++i) CHECK(res.h(i, j) == 0);
        // the form is canonical: shuffling columns or adding multiples of
        // one column to another must not change it
        IntMat m2 = m;
        std::uniform_int_distribution<int> pick(0, static_cast<int>(c) - 1);
        for (int op = 0; op < 6; ++op) {
            int x = pick(rng), y = pick(rng);
            if (x == y) continue;
            for (long i = 0; i < r; ++i) m2(i, x) += 3 * m2(i, y);
        }
        CHECK(hnf(m2, false).h == res.h);
    }
}

TEST_CASE("hermite form: fixed example") {
    IntMat m = from_rows({{2, 4, 4}, {-6, 6, 12}, {10, 4, 16}});
    // columns span the same lattice as the columns of this triangular matrix
    HnfResult res = hnf(m);
    CHECK(res.rank == 3);
    CHECK(m * res.u == res.h);
    Int vol = det_int(res.h);
    CHECK(vol == abs(det_int(m)));
}

TEST_CASE("smith form: transform, divisibility, known values") {
    std::mt19937 rng(424242);
    for (int trial = 0; trial < 25; ++trial) {
        long r = 1 + trial % 5, c = 1 + (trial / 3) % 5;
        IntMat m = random_mat(rng, r, c);
        SnfResult s = snf(m);
        CHECK(s.u * m * s.v == s.d);
        Int du = det_int(s.u), dv = det_int(s.v);
        CHECK((du == 1 || du == -1));
        CHECK((dv == 1 || dv == -1));
        for (long i = 0; i < s.d.rows; ++i)
            for (long j = 0; j < s.d.cols; ++j)
                if (i != j) CHECK(s.d(i, j) == 0);
        for (long i = 0; i + 1 < std::min(r, c); ++i) {
            CHECK(s.d(i, i) >= 0);
            if (s.d(i + 1, i + 1) != 0) {
                CHECK(s.d(i, i) != 0);
                CHECK(s.d(i + 1, i + 1) % s.d(i, i) == 0);
            }
        }
        CHECK(s.rank == rank_int(m));
    }
    SnfResult s = snf(from_rows({{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}}));
    CHECK(s.d(0, 0) == 2);
    CHECK(s.d(1, 1) == 6);
    CHECK(s.d(2, 2) == 12);
    s = snf(from_rows({{2, 0}, {0, 3}}));
    CHECK(s.d(0, 0) == 1);
    CHECK(s.d(1, 1) == 6);
}

TEST_CASE("smith form of a zero and identity matrix") {
    IntMat z(3, 4);
    SnfResult s = snf(z);
    CHECK(s.rank == 0);
    CHECK(s.d.is_zero());
    s = snf(IntMat::identity(4));
    CHECK(s.rank == 4);
    for (long i = 0; i < 4; ++i) CHECK(s.d(i, i) == 1);
}

TEST_CASE("kernel basis is saturated and complete") {
    std::mt19937 rng(31337);
    for (int trial = 0; trial < 20; ++trial) {
        long r = 2 + trial % 3, c = 3 + trial % 4;
        IntMat m = random_mat(rng, r, c, -4, 4);
        IntMat k = kernel_basis(m);
        CHECK((m * k).is_zero());
        CHECK(k.cols == c - rank_int(m));
        if (k.cols > 0) {
            CHECK(rank_int(k) == k.cols);
            // saturation: invariant factors of the kernel basis are all 1
            SnfResult s = snf(k);
            for (long i = 0; i < s.rank; ++i) CHECK(s.d(i, i) == 1);
        }
    }
}

TEST_CASE("integer and rational rank agree") {
    std::mt19937 rng(99);
    for (int trial = 0; trial < 20; ++trial) {
        IntMat m = random_mat(rng, 4, 5, -3, 3);
        CHECK(rank_int(m) == rank_rat(to_rat(m)));
    }
    // a forced rank drop
    IntMat m = from_rows({{1, 2, 3}, {2, 4, 6}, {1, 1, 1}});
    CHECK(rank_int(m) == 2);
}

TEST_CASE("exact solve and inverse") {
    IntMat a = from_rows({{2, 1}, {1, 3}, {0, 1}});
    IntMat b = from_rows({{5}, {10}, {3}});
    auto x = solve_rat(to_rat(a), to_rat(b));
    REQUIRE(x.has_value());
    CHECK(to_rat(a) * *x == to_rat(b));
    IntMat bad = from_rows({{1}, {0}, {0}});
    CHECK(!solve_rat(to_rat(a), to_rat(bad)).has_value());

    std::mt19937 rng(555);
    for (int trial = 0; trial < 10; ++trial) {
        IntMat m = random_mat(rng, 4, 4);
        if (det_int(m) == 0) continue;
        RatMat inv = inverse_rat(to_rat(m));
        CHECK(to_rat(m) * inv == to_rat(IntMat::identity(4)));
    }
}

TEST_CASE("clear denominators round trip") {
    RatMat m(2, 2);
    m(0, 0) = Rat(1, 2);
    m(0, 1) = Rat(-3, 4);
    m(1, 0) = Rat(5);
    m(1, 1) = Rat(7, 6);
    IntMat n;
    Int d;
    clear_denominators(m, n, d);
    CHECK(d == 12);
    CHECK(n == from_rows({{6, -9}, {60, 14}}));
    CHECK(!to_int_checked(m).has_value());
    CHECK(to_int_checked(to_rat(n)).has_value());
}

TEST_CASE("characteristic polynomial matches determinant evaluations") {
    std::mt19937 rng(2024);
    for (int trial = 0; trial < 15; ++trial) {
        long n = 1 + trial % 5;
        IntMat m = random_mat(rng, n, n);
        std::vector<Int> p = charpoly(m);
        REQUIRE(static_cast<long>(p.size()) == n + 1);
        CHECK(p[n] == 1);
        for (long x : {-3L, -1L, 0L, 1L, 2L, 5L}) {
            IntMat xim(n, n);
            for (long i = 0; i < n; ++i)
                for (long j = 0; j < n; ++j) xim(i, j) = (i == j ? Int(x) : Int(0)) - m(i, j);
            CHECK(eval_poly(p, Int(x)) == det_int(xim));
        }
    }
}

TEST_CASE("eigenvalue sign counts of symmetric matrices") {
    auto sc = symmetric_sign_counts(cartan_e8());
    CHECK(sc.pos == 8);
    CHECK(sc.neg == 0);
    CHECK(sc.zero == 0);

    IntMat e8neg = cartan_e8();
    for (auto& x : e8neg.a) x = -x;
    sc = symmetric_sign_counts(e8neg);
    CHECK(sc.pos == 0);
    CHECK(sc.neg == 8);

    IntMat u(2, 2);
    u(0, 1) = u(1, 0) = 1;
    sc = symmetric_sign_counts(u);
    CHECK(sc.pos == 1);
    CHECK(sc.neg == 1);

    IntMat d(4, 4);
    d(0, 0) = 3;
    d(1, 1) = -2;
    d(3, 3) = -5;
    sc = symmetric_sign_counts(d);
    CHECK(sc.pos == 1);
    CHECK(sc.neg == 2);
    CHECK(sc.zero == 1);

    // degenerate with repeated eigenvalues
    IntMat j(3, 3);
    for (auto& x : j.a) x = 1;
    sc = symmetric_sign_counts(j);  // eigenvalues 3, 0, 0
    CHECK(sc.pos == 1);
    CHECK(sc.neg == 0);
    CHECK(sc.zero == 2);
}
