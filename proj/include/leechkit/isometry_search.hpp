#pragma once

// Isometry testing for definite lattices over Z.
//
// The decision procedure is exact and deterministic.  Cheap invariants go
// first (signature, determinant, minimum, theta coefficients, then shell
// fingerprints refined by common neighbour counts).  Only when all of those
// agree does the backtracking search run: the columns of an LLL reduced basis
// of the first lattice are matched against short vectors of the second under
// all pairwise inner product constraints, with forward checking.  A successful
// match yields an integral change of basis witness; exhausting the tree proves
// the lattices distinct.  The search is capped, and a capped run returns
// unknown rather than a verdict.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "enumerate.hpp"
#include "lattice.hpp"
#include "lll.hpp"

namespace leechkit {

enum class IsoStatus { isometric, distinct, unknown };

struct IsoResult {
    IsoStatus status = IsoStatus::unknown;
    // columns express the first basis in the second: map^T G_b map = G_a
    std::optional<IntMat> map;
    long long nodes = 0;

    bool yes() const { return status == IsoStatus::isometric; }
};

namespace detail {

inline uint64_t iso_mix(uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// sign normalized copy, first nonzero entry positive
inline std::vector<Int> iso_canon(const std::vector<Int>& v) {
    for (const Int& c : v) {
        if (c == 0) continue;
        if (c > 0) return v;
        std::vector<Int> w(v.size());
        for (size_t i = 0; i < v.size(); ++i) w[i] = Int(-v[i]);
        return w;
    }
    return v;
}

// one enumerated shell family: representatives of the +-pairs with |norm| <= bound
struct IsoShells {
    long n = 0;
    std::vector<std::vector<Int>> vecs;
    std::vector<Int> norms;
    std::map<std::vector<Int>, size_t> index;  // keyed by sign normalized vector

    size_t size() const { return vecs.size(); }
};

inline IsoShells iso_harvest(const Lattice& l, const Int& bound) {
    IsoShells s;
    s.n = l.rank();
    for (auto& [v, nv] : vectors_up_to(l, bound)) {
        s.index.emplace(iso_canon(v), s.vecs.size());
        s.vecs.push_back(std::move(v));
        s.norms.push_back(nv);
    }
    return s;
}

// machine sized coordinate table, or empty when entries do not fit
inline std::vector<long long> iso_flatten(const std::vector<std::vector<Int>>& vecs, long n) {
    std::vector<long long> flat;
    flat.reserve(vecs.size() * static_cast<size_t>(n));
    const Int lim = Int(1) << 30;
    for (const auto& v : vecs)
        for (const Int& c : v) {
            if (c >= lim || c <= -lim) return {};
            flat.push_back(c.convert_to<long long>());
        }
    return flat;
}

// pairwise inner products of the harvest against itself, entries as int8.
// gram is the sign normalized definite form.  Returns empty when some entry
// falls outside int8 or the machine path is unavailable.
inline std::vector<int8_t> iso_pair_dots(const IsoShells& s, const IntMat& gram) {
    const size_t m = s.size();
    const long n = s.n;
    if (m == 0) return {};
    std::vector<std::vector<Int>> gv(m);
    for (size_t i = 0; i < m; ++i) {
        gv[i].assign(static_cast<size_t>(n), 0);
        for (long r = 0; r < n; ++r) {
            Int acc = 0;
            for (long c = 0; c < n; ++c) acc += gram(r, c) * s.vecs[i][static_cast<size_t>(c)];
            gv[i][static_cast<size_t>(r)] = acc;
        }
    }
    std::vector<long long> fv = iso_flatten(s.vecs, n);
    std::vector<std::vector<Int>> gvm(std::move(gv));
    std::vector<long long> fg = iso_flatten(gvm, n);
    std::vector<int8_t> out(m * m);
    if (!fv.empty() && !fg.empty() && n < (1L << 12)) {
        for (size_t i = 0; i < m; ++i)
            for (size_t j = 0; j < m; ++j) {
                __int128 acc = 0;
                const long long* a = fv.data() + i * static_cast<size_t>(n);
                const long long* b = fg.data() + j * static_cast<size_t>(n);
                for (long k = 0; k < n; ++k) acc += static_cast<__int128>(a[k]) * b[k];
                if (acc > 127 || acc < -127) return {};
                out[i * m + j] = static_cast<int8_t>(acc);
            }
        return out;
    }
    for (size_t i = 0; i < m; ++i)
        for (size_t j = 0; j < m; ++j) {
            Int acc = 0;
            for (long k = 0; k < n; ++k)
                acc += gvm[j][static_cast<size_t>(k)] * s.vecs[i][static_cast<size_t>(k)];
            if (acc > 127 || acc < -127) return {};
            out[i * m + j] = acc.convert_to<int8_t>();
        }
    return out;
}

// per vector profile hashes over the fingerprint shells.  The key of a pair
// combines the inner product with the common neighbour count in the nonzero
// inner product graph, so the hash multiset separates lattices whose local
// profiles agree but whose neighbour structure differs.
inline std::vector<uint64_t> iso_profile_hashes(const IsoShells& s, const std::vector<int8_t>& dots) {
    const size_t m = s.size();
    std::vector<uint64_t> hash(m);
    for (size_t i = 0; i < m; ++i)
        hash[i] = iso_mix(0x51AAB1ULL + s.norms[i].convert_to<unsigned long long>());
    if (m == 0 || dots.empty()) return hash;
    const size_t words = (m + 63) / 64;
    std::vector<uint64_t> adj(m * words, 0);
    for (size_t i = 0; i < m; ++i)
        for (size_t j = 0; j < m; ++j)
            if (dots[i * m + j] != 0) adj[i * words + j / 64] |= uint64_t(1) << (j % 64);
    for (size_t i = 0; i < m; ++i) {
        const uint64_t* ri = adj.data() + i * words;
        for (size_t j = i; j < m; ++j) {
            const uint64_t* rj = adj.data() + j * words;
            size_t common = 0;
            for (size_t w = 0; w < words; ++w) common += std::popcount(ri[w] & rj[w]);
            // representatives are one per +- pair, so only |d| is invariant
            int d = dots[i * m + j];
            if (d < 0) d = -d;
            uint64_t key = iso_mix((static_cast<uint64_t>(d) << 24) ^ common);
            hash[i] += key;
            if (j != i) hash[j] += key;
        }
    }
    return hash;
}

}  // namespace detail

// Decides whether two definite lattices of the same sign are isometric.
// Returns a witness basis map on success.  node_cap bounds the number of
// candidate placements tried in the backtracking phase; hitting the cap
// yields IsoStatus::unknown.
inline IsoResult is_isometric_definite(const Lattice& a, const Lattice& b,
                                       long long node_cap = 100000000) {
    IsoResult res;
    if (a.rank() != b.rank()) {
        res.status = IsoStatus::distinct;
        return res;
    }
    if (a.rank() == 0) {
        res.status = IsoStatus::isometric;
        res.map = IntMat(0, 0);
        return res;
    }
    IntMat ga = definite_gram(a);
    IntMat gb = definite_gram(b);
    bool apos = a.gram(0, 0) == ga(0, 0);
    bool bpos = b.gram(0, 0) == gb(0, 0);
    if (apos != bpos) {
        res.status = IsoStatus::distinct;
        return res;
    }
    if (a.det() != b.det() || minimum_norm(a) != minimum_norm(b)) {
        res.status = IsoStatus::distinct;
        return res;
    }

    LllResult red = lll_gram(ga);
    LllResult redb = lll_gram(gb);
    Int bound = 0;
    for (long i = 0; i < red.gram.rows; ++i) bound = std::max(bound, Int(red.gram(i, i)));
    for (long i = 0; i < redb.gram.rows; ++i) bound = std::max(bound, Int(redb.gram(i, i)));

    std::vector<Int> ta = theta_shells(a, bound);
    std::vector<Int> tb = theta_shells(b, bound);
    if (ta != tb) {
        res.status = IsoStatus::distinct;
        return res;
    }

    // fingerprint shells: smallest complete shells, capped in size
    Int fbound = 0;
    Int cum = 0;
    for (Int t = 1; t <= bound; ++t) {
        Int half = ta[t.convert_to<size_t>()] / 2;
        if (half == 0) continue;
        if (fbound != 0 && cum + half > 6500) break;
        cum += half;
        fbound = t;
    }
    check(fbound > 0, "isometry: a definite lattice has a nonempty minimal shell");

    detail::IsoShells fa = detail::iso_harvest(a, fbound);
    detail::IsoShells fb = detail::iso_harvest(b, fbound);
    std::vector<uint64_t> hash_a, hash_b;
    std::vector<int8_t> fp_db;
    {
        // refinement must be all or nothing so the two hash families stay comparable
        std::vector<int8_t> da;
        if (bound <= 127 && fa.size() <= 6500 && fb.size() <= 6500) {
            da = detail::iso_pair_dots(fa, ga);
            fp_db = detail::iso_pair_dots(fb, gb);
            if (da.empty() || fp_db.empty()) {
                da.clear();
                fp_db.clear();
            }
        }
        hash_a = detail::iso_profile_hashes(fa, da);
        hash_b = detail::iso_profile_hashes(fb, fp_db);
    }
    {
        std::vector<uint64_t> sa = hash_a, sb = hash_b;
        std::sort(sa.begin(), sa.end());
        std::sort(sb.begin(), sb.end());
        if (sa != sb) {
            res.status = IsoStatus::distinct;
            return res;
        }
    }

    // candidate pool: every vector of b up to the reduced diagonal bound.
    // hash_b is indexed by fingerprint harvest position; pool_cls carries the
    // class of each pool vector (0 when its shell lies beyond the fingerprints).
    detail::IsoShells pool;
    std::vector<uint64_t> pool_cls;
    if (fbound == bound) {
        pool = std::move(fb);
        pool_cls = hash_b;
    } else {
        pool = detail::iso_harvest(b, bound);
        pool_cls.assign(pool.size(), 0);
        for (size_t j = 0; j < pool.size(); ++j) {
            if (pool.norms[j] > fbound) continue;
            auto it = fb.index.find(detail::iso_canon(pool.vecs[j]));
            check(it != fb.index.end(), "isometry: fingerprint harvest missed a short vector");
            pool_cls[j] = hash_b[it->second];
        }
    }
    const size_t M = pool.size();
    std::vector<int8_t> pd;
    if (fbound == bound && !fp_db.empty())
        pd = std::move(fp_db);
    else if (M <= 13000 && bound <= 127)
        pd = detail::iso_pair_dots(pool, gb);

    const long n = a.rank();
    // reduced basis vectors of a in original coordinates, with their classes
    std::vector<std::vector<int32_t>> cands(static_cast<size_t>(n));
    for (long c = 0; c < n; ++c) {
        std::vector<Int> bc(static_cast<size_t>(n));
        for (long r = 0; r < n; ++r) bc[static_cast<size_t>(r)] = red.transform(r, c);
        Int nc = red.gram(c, c);
        uint64_t cls = 0;
        bool has_cls = false;
        if (nc <= fbound) {
            auto it = fa.index.find(detail::iso_canon(bc));
            check(it != fa.index.end(), "isometry: reduced basis vector missed the harvest");
            cls = hash_a[it->second];
            has_cls = true;
        }
        for (size_t j = 0; j < M; ++j) {
            if (pool.norms[j] != nc) continue;
            if (has_cls && pool_cls[j] != cls) continue;
            cands[static_cast<size_t>(c)].push_back(static_cast<int32_t>(2 * j));
            cands[static_cast<size_t>(c)].push_back(static_cast<int32_t>(2 * j + 1));
        }
        if (cands[static_cast<size_t>(c)].empty()) {
            res.status = IsoStatus::distinct;
            return res;
        }
    }

    // exact pair inner product, used when the int8 table is unavailable
    std::vector<std::vector<Int>> pool_gv;
    auto exact_dot = [&](size_t i, size_t j) -> Int {
        if (pool_gv.empty()) {
            pool_gv.resize(M);
            for (size_t v = 0; v < M; ++v) {
                pool_gv[v].assign(static_cast<size_t>(n), 0);
                for (long r = 0; r < n; ++r) {
                    Int acc = 0;
                    for (long c = 0; c < n; ++c)
                        acc += gb(r, c) * pool.vecs[v][static_cast<size_t>(c)];
                    pool_gv[v][static_cast<size_t>(r)] = acc;
                }
            }
        }
        Int acc = 0;
        for (long k = 0; k < n; ++k)
            acc += pool.vecs[i][static_cast<size_t>(k)] * pool_gv[j][static_cast<size_t>(k)];
        return acc;
    };

    long long nodes = 0;
    bool capped = false;
    std::vector<int32_t> chosen(static_cast<size_t>(n), -1);
    std::vector<bool> placed(static_cast<size_t>(n), false);

    // forward checking DFS: each placement filters every unplaced column's
    // surviving candidates; the next column is always the scarcest one left
    std::vector<std::vector<std::vector<int32_t>>> lists(static_cast<size_t>(n) + 1);
    lists[0].resize(static_cast<size_t>(n));
    for (long c = 0; c < n; ++c) lists[0][static_cast<size_t>(c)] = cands[static_cast<size_t>(c)];

    std::function<bool(long)> descend = [&](long depth) -> bool {
        if (depth == n) return true;
        long col = -1;
        size_t best = 0;
        for (long c = 0; c < n; ++c) {
            if (placed[static_cast<size_t>(c)]) continue;
            size_t sz = lists[static_cast<size_t>(depth)][static_cast<size_t>(c)].size();
            if (col < 0 || sz < best) {
                col = c;
                best = sz;
            }
        }
        const std::vector<int32_t>& mine = lists[static_cast<size_t>(depth)][static_cast<size_t>(col)];
        placed[static_cast<size_t>(col)] = true;
        for (int32_t s : mine) {
            ++nodes;
            if (nodes > node_cap) {
                capped = true;
                break;
            }
            const size_t j = static_cast<size_t>(s) >> 1;
            const int sj = (s & 1) ? -1 : 1;
            auto& next = lists[static_cast<size_t>(depth) + 1];
            next.assign(static_cast<size_t>(n), {});
            bool dead = false;
            for (long fc = 0; fc < n && !dead; ++fc) {
                if (placed[static_cast<size_t>(fc)]) continue;
                Int req = red.gram(col, fc);
                const std::vector<int32_t>& src = lists[static_cast<size_t>(depth)][static_cast<size_t>(fc)];
                std::vector<int32_t>& dst = next[static_cast<size_t>(fc)];
                dst.reserve(src.size());
                if (!pd.empty()) {
                    long reql = req.convert_to<long>();
                    for (int32_t t : src) {
                        const size_t k = static_cast<size_t>(t) >> 1;
                        const int sk = (t & 1) ? -1 : 1;
                        if (static_cast<long>(pd[j * M + k]) * sj * sk == reql) dst.push_back(t);
                    }
                } else {
                    for (int32_t t : src) {
                        const size_t k = static_cast<size_t>(t) >> 1;
                        const int sk = (t & 1) ? -1 : 1;
                        if (exact_dot(j, k) * sj * sk == req) dst.push_back(t);
                    }
                }
                if (dst.empty()) dead = true;
            }
            if (dead) continue;
            chosen[static_cast<size_t>(col)] = s;
            if (descend(depth + 1)) {
                placed[static_cast<size_t>(col)] = false;
                return true;
            }
            if (capped) break;
        }
        placed[static_cast<size_t>(col)] = false;
        return false;
    };
    bool found = descend(0);
    res.nodes = nodes;

    if (found) {
        IntMat w(n, n);
        for (long c = 0; c < n; ++c) {
            const int32_t s = chosen[static_cast<size_t>(c)];
            const size_t j = static_cast<size_t>(s) >> 1;
            const Int sj = (s & 1) ? -1 : 1;
            for (long r = 0; r < n; ++r)
                w(r, c) = Int(sj * pool.vecs[j][static_cast<size_t>(r)]);
        }
        RatMat x = to_rat(w) * inverse_rat(to_rat(red.transform));
        std::optional<IntMat> xi = to_int_checked(x);
        check(xi.has_value(), "isometry: witness not integral");
        check(xi->transposed() * b.gram * *xi == a.gram, "isometry: witness check failed");
        res.status = IsoStatus::isometric;
        res.map = std::move(*xi);
        return res;
    }
    res.status = capped ? IsoStatus::unknown : IsoStatus::distinct;
    return res;
}

}  // namespace leechkit
