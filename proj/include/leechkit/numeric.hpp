#ifndef LEECHKIT_NUMERIC_HPP
#define LEECHKIT_NUMERIC_HPP

// Exact arithmetic primitives shared by every other header: arbitrary
// precision integers and rationals, plus a few helpers the linear algebra
// and enumeration layers need. No floating point anywhere.

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/rational_adaptor.hpp>

#include <stdexcept>
#include <string>
#include <vector>

namespace leechkit {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline void check(bool cond, const std::string& msg) {
    if (!cond) throw std::runtime_error(msg);
}

inline Int num(const Rat& r) { return boost::multiprecision::numerator(r); }
inline Int den(const Rat& r) { return boost::multiprecision::denominator(r); }

inline bool is_integer(const Rat& r) { return den(r) == 1; }

inline Int gcd(const Int& a, const Int& b) { return boost::multiprecision::gcd(a, b); }
inline Int lcm(const Int& a, const Int& b) { return boost::multiprecision::lcm(a, b); }

// floor(a/b) for integers, any sign of a; b > 0 expected.
inline Int floor_div(const Int& a, const Int& b) {
    check(b > 0, "floor_div: divisor must be positive");
    Int q = a / b, r = a % b;
    if (r < 0) --q;
    return q;
}

inline Int ceil_div(const Int& a, const Int& b) {
    check(b > 0, "ceil_div: divisor must be positive");
    Int q = a / b, r = a % b;
    if (r > 0) ++q;
    return q;
}

// a mod b in [0, b)
inline Int mod_pos(const Int& a, const Int& b) {
    check(b > 0, "mod_pos: modulus must be positive");
    Int r = a % b;
    if (r < 0) r += b;
    return r;
}

inline Int floor_rat(const Rat& r) { return floor_div(num(r), den(r)); }

// largest integer s with s^2 <= n; n >= 0
inline Int isqrt(const Int& n) {
    check(n >= 0, "isqrt: negative argument");
    if (n == 0) return 0;
    return boost::multiprecision::sqrt(n);
}

// reduce r into [0, m) for rational r and positive integer modulus m
inline Rat mod_rat(const Rat& r, const Int& m) {
    Rat q = r / Rat(m);
    Rat f = q - Rat(floor_rat(q));
    return f * Rat(m);
}

// squarefree part m and cofactor f with n = f^2 * m (n > 0, trial division)
inline void squarefree_split(const Int& n, Int& m, Int& f) {
    check(n > 0, "squarefree_split: argument must be positive");
    Int rest = n;
    m = 1;
    f = 1;
    for (Int p = 2; p * p <= rest; ++p) {
        if (rest % p != 0) continue;
        int e = 0;
        while (rest % p == 0) { rest /= p; ++e; }
        for (int i = 0; i < e / 2; ++i) f *= p;
        if (e % 2) m *= p;
    }
    m *= rest;
}

inline long to_long(const Int& v) {
    check(v >= std::numeric_limits<long>::min() && v <= std::numeric_limits<long>::max(),
          "to_long: out of range");
    return static_cast<long>(v);
}

inline std::string rat_str(const Rat& r) {
    std::string s = num(r).str();
    if (den(r) != 1) s += "/" + den(r).str();
    return s;
}

inline Rat rat_from_str(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rat(Int(s));
    Int n(s.substr(0, slash)), d(s.substr(slash + 1));
    check(d != 0, "rat_from_str: zero denominator");
    return Rat(n, d);
}

}  // namespace leechkit

#endif
