#ifndef LEECHKIT_CYCLOTOMIC_HPP
#define LEECHKIT_CYCLOTOMIC_HPP

// Exact arithmetic in cyclotomic fields Q(zeta_n), represented as residues
// modulo the n-th cyclotomic polynomial.  Elements carry their conductor and
// mixed-conductor operations embed both sides into Q(zeta_lcm).  Used for
// Gauss sums attached to finite quadratic forms and for eigenvalue work on
// group actions of known finite order.

#include <functional>
#include <map>
#include <mutex>

#include "numeric.hpp"

namespace leechkit {

using IPoly = std::vector<Int>;

namespace detail {

// exact division of integer polynomials, monic divisor (lowest degree first)
inline IPoly poly_div_exact(IPoly num, const IPoly& den) {
    check(!den.empty() && den.back() == 1, "poly division: monic divisor required");
    long dn = static_cast<long>(num.size()) - 1, dd = static_cast<long>(den.size()) - 1;
    check(dn >= dd, "poly division: degree underflow");
    IPoly q(static_cast<size_t>(dn - dd) + 1);
    for (long i = dn; i >= dd; --i) {
        Int f = num[i];
        if (f == 0) continue;
        q[i - dd] = f;
        for (long j = 0; j <= dd; ++j) num[i - dd + j] -= f * den[j];
    }
    for (const Int& r : num) check(r == 0, "poly division: nonzero remainder");
    return q;
}

}  // namespace detail

// n-th cyclotomic polynomial, memoized; x^n - 1 = prod over d | n
inline const IPoly& cyclotomic_poly(long n) {
    static std::map<long, IPoly> memo;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = memo.find(n);
    if (it != memo.end()) return it->second;
    check(n >= 1, "cyclotomic polynomial: positive index required");
    std::function<const IPoly&(long)> get = [&](long m) -> const IPoly& {
        auto found = memo.find(m);
        if (found != memo.end()) return found->second;
        IPoly p(static_cast<size_t>(m) + 1);
        p[0] = -1;
        p[m] = 1;
        for (long d = 1; d < m; ++d)
            if (m % d == 0) p = detail::poly_div_exact(std::move(p), get(d));
        return memo.emplace(m, std::move(p)).first->second;
    };
    return get(n);
}

inline long euler_phi(long n) { return static_cast<long>(cyclotomic_poly(n).size()) - 1; }

class Cyclo {
public:
    Cyclo() : n_(1), c_(1) {}
    Cyclo(long v) : n_(1), c_{Rat(v)} {}
    Cyclo(const Int& v) : n_(1), c_{Rat(v)} {}
    Cyclo(const Rat& v) : n_(1), c_{v} {}

    static Cyclo zeta(long n, long k = 1) {
        Cyclo z;
        z.n_ = n;
        k %= n;
        if (k < 0) k += n;
        std::vector<Rat> p(static_cast<size_t>(k) + 1);
        p[k] = 1;
        z.c_ = reduce(std::move(p), n);
        return z;
    }

    // e^(i pi q) as a root of unity, q rational
    static Cyclo half_turn(const Rat& q) {
        Rat r = mod_rat(q, Int(2));
        long b = to_long(den(r));
        long a = to_long(num(r));
        return zeta(2 * b, a);
    }

    long conductor() const { return n_; }

    bool is_zero() const {
        for (const Rat& x : c_)
            if (x != 0) return false;
        return true;
    }

    bool is_rational() const {
        for (size_t i = 1; i < c_.size(); ++i)
            if (c_[i] != 0) return false;
        return true;
    }

    Rat rat_value() const {
        check(is_rational(), "cyclotomic: not a rational number");
        return c_[0];
    }

    Cyclo in_conductor(long m) const {
        check(m % n_ == 0, "cyclotomic: conductor must be a multiple");
        if (m == n_) return *this;
        long f = m / n_;
        std::vector<Rat> p(static_cast<size_t>(n_) * f);
        for (size_t i = 0; i < c_.size(); ++i) p[i * f] = c_[i];
        Cyclo z;
        z.n_ = m;
        z.c_ = reduce(std::move(p), m);
        return z;
    }

    // galois conjugate zeta -> zeta^k, gcd(k, n) = 1; substitute x^i -> x^{ik mod n}
    Cyclo galois(long k) const {
        k %= n_;
        if (k < 0) k += n_;
        check(gcd(Int(k), Int(n_)) == 1, "cyclotomic: exponent not coprime to conductor");
        std::vector<Rat> q(static_cast<size_t>(n_));
        for (size_t i = 0; i < c_.size(); ++i) {
            if (c_[i] == 0) continue;
            q[(i * static_cast<size_t>(k)) % n_] += c_[i];
        }
        Cyclo z;
        z.n_ = n_;
        z.c_ = reduce(std::move(q), n_);
        return z;
    }

    Cyclo conj() const { return n_ == 1 ? *this : galois(n_ - 1); }

    Cyclo inverse() const {
        check(!is_zero(), "cyclotomic: division by zero");
        // extended euclid in Q[x] against the cyclotomic polynomial
        const IPoly& phi_i = cyclotomic_poly(n_);
        std::vector<Rat> phi(phi_i.begin(), phi_i.end());
        std::vector<Rat> r0 = trim(c_), s0{Rat(1)};
        std::vector<Rat> r1 = trim(phi), s1{};
        while (!r1.empty()) {
            auto [q, rem] = divmod(r0, r1);
            std::vector<Rat> s2 = sub(s0, mul(q, s1));
            r0 = std::move(r1);
            s0 = std::move(s1);
            r1 = std::move(rem);
            s1 = std::move(s2);
        }
        check(r0.size() == 1, "cyclotomic: residue not invertible");
        Rat g = r0[0];
        for (Rat& x : s0) x /= g;
        Cyclo z;
        z.n_ = n_;
        z.c_ = reduce(std::move(s0), n_);
        return z;
    }

    friend Cyclo operator+(const Cyclo& a, const Cyclo& b) {
        auto [x, y] = unified(a, b);
        for (size_t i = 0; i < x.c_.size(); ++i) x.c_[i] += y.c_[i];
        return x;
    }
    friend Cyclo operator-(const Cyclo& a, const Cyclo& b) {
        auto [x, y] = unified(a, b);
        for (size_t i = 0; i < x.c_.size(); ++i) x.c_[i] -= y.c_[i];
        return x;
    }
    friend Cyclo operator-(const Cyclo& a) { return Cyclo(0) - a; }
    friend Cyclo operator*(const Cyclo& a, const Cyclo& b) {
        auto [x, y] = unified(a, b);
        Cyclo z;
        z.n_ = x.n_;
        z.c_ = reduce(mul(x.c_, y.c_), x.n_);
        return z;
    }
    friend Cyclo operator/(const Cyclo& a, const Cyclo& b) { return a * b.inverse(); }
    Cyclo& operator+=(const Cyclo& o) { return *this = *this + o; }
    Cyclo& operator-=(const Cyclo& o) { return *this = *this - o; }
    Cyclo& operator*=(const Cyclo& o) { return *this = *this * o; }

    friend bool operator==(const Cyclo& a, const Cyclo& b) {
        auto [x, y] = unified(a, b);
        return x.c_ == y.c_;
    }

    Cyclo pow(Int e) const {
        if (e < 0) return inverse().pow(-e);
        Cyclo r(1), b = *this;
        while (e > 0) {
            if ((e & 1) != 0) r = r * b;
            b = b * b;
            e >>= 1;
        }
        return r;
    }

    // |z|^2 = z * conj(z)
    Cyclo norm_sq() const { return *this * conj(); }

    const std::vector<Rat>& coeffs() const { return c_; }

private:
    long n_;
    std::vector<Rat> c_;

    static std::vector<Rat> trim(std::vector<Rat> p) {
        while (!p.empty() && p.back() == 0) p.pop_back();
        return p;
    }
    static std::vector<Rat> mul(const std::vector<Rat>& a, const std::vector<Rat>& b) {
        if (a.empty() || b.empty()) return {};
        std::vector<Rat> p(a.size() + b.size() - 1);
        for (size_t i = 0; i < a.size(); ++i) {
            if (a[i] == 0) continue;
            for (size_t j = 0; j < b.size(); ++j) p[i + j] += a[i] * b[j];
        }
        return p;
    }
    static std::vector<Rat> sub(std::vector<Rat> a, const std::vector<Rat>& b) {
        if (a.size() < b.size()) a.resize(b.size());
        for (size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
        return trim(std::move(a));
    }
    static std::pair<std::vector<Rat>, std::vector<Rat>> divmod(std::vector<Rat> a,
                                                                const std::vector<Rat>& b) {
        check(!b.empty(), "poly divmod: zero divisor");
        if (a.size() < b.size()) return {{}, trim(std::move(a))};
        std::vector<Rat> q(a.size() - b.size() + 1);
        for (size_t i = a.size(); i-- >= b.size();) {
            Rat f = a[i] / b.back();
            if (f != 0) {
                q[i - (b.size() - 1)] = f;
                for (size_t j = 0; j < b.size(); ++j) a[i - (b.size() - 1) + j] -= f * b[j];
            }
        }
        return {std::move(q), trim(std::move(a))};
    }
    static std::vector<Rat> reduce(std::vector<Rat> p, long n) {
        const IPoly& phi = cyclotomic_poly(n);
        size_t d = phi.size() - 1;
        if (p.size() < d) {
            p.resize(d);
            return p;
        }
        for (size_t i = p.size(); i-- > d;) {
            Rat f = p[i];
            if (f == 0) continue;
            for (size_t j = 0; j <= d; ++j) p[i - d + j] -= f * Rat(phi[j]);
        }
        p.resize(d);
        return p;
    }
    static std::pair<Cyclo, Cyclo> unified(const Cyclo& a, const Cyclo& b) {
        if (a.n_ == b.n_) return {a, b};
        long m = to_long(lcm(Int(a.n_), Int(b.n_)));
        return {a.in_conductor(m), b.in_conductor(m)};
    }
};

}  // namespace leechkit

#endif
