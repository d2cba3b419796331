#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace k3lat {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline int sign(const Int& x) { return x == 0 ? 0 : (x < 0 ? -1 : 1); }
inline int sign(const Rat& x) { return x == 0 ? 0 : (x < 0 ? -1 : 1); }

inline Int abs_int(const Int& x) { return x < 0 ? Int(-x) : x; }

inline Int gcd_int(const Int& a, const Int& b) {
    return boost::multiprecision::gcd(a, b);
}

/// Quotient rounded to nearest (ties toward zero); |a - q*b| <= |b|/2.
inline Int rounded_div(const Int& a, const Int& b) {
    Int q = a / b;
    Int r = a - q * b;
    if (2 * abs_int(r) > abs_int(b)) q += (sign(r) == sign(b)) ? 1 : -1;
    return q;
}

inline Rat numerator(const Rat& x) { return Rat(boost::multiprecision::numerator(x)); }

inline bool is_integral(const Rat& x) {
    return boost::multiprecision::denominator(x) == 1;
}

inline Int to_int(const Rat& x) {
    if (!is_integral(x)) throw std::domain_error("to_int: non-integral rational");
    return boost::multiprecision::numerator(x);
}

inline Int floor_rat(const Rat& x) {
    Int n = boost::multiprecision::numerator(x);
    Int d = boost::multiprecision::denominator(x);
    Int q = n / d;
    if (n % d != 0 && n < 0) q -= 1;
    return q;
}

/// Reduces x into the half-open interval [0, 2) modulo 2Z.
inline Rat mod_2z(const Rat& x) {
    Rat y = x - 2 * Rat(floor_rat(x / 2));
    if (y < 0 || y >= 2) throw std::logic_error("mod_2z: reduction failed");
    return y;
}

inline bool congruent_mod_2z(const Rat& a, const Rat& b) {
    Rat d = a - b;
    return is_integral(d / 2);
}

inline std::string rat_to_string(const Rat& x) {
    Int n = boost::multiprecision::numerator(x);
    Int d = boost::multiprecision::denominator(x);
    if (d == 1) return n.str();
    return n.str() + "/" + d.str();
}

inline Int factorial(unsigned n) {
    Int f = 1;
    for (unsigned i = 2; i <= n; ++i) f *= i;
    return f;
}

/// Number of distinct primes dividing m (the Euler number rho); rho(1) = 0.
inline int euler_rho(std::int64_t m) {
    if (m < 1) throw std::invalid_argument("euler_rho: m must be >= 1");
    int r = 0;
    for (std::int64_t p = 2; p * p <= m; ++p) {
        if (m % p == 0) {
            ++r;
            while (m % p == 0) m /= p;
        }
    }
    if (m > 1) ++r;
    return r;
}

inline Int isqrt_int(const Int& n) {
    if (n < 0) throw std::invalid_argument("isqrt_int: negative");
    return boost::multiprecision::sqrt(n);
}

inline bool is_perfect_square(const Int& n) {
    if (n < 0) return false;
    Int r = isqrt_int(n);
    return r * r == n;
}

inline std::int64_t to_int64(const Int& x) {
    return static_cast<std::int64_t>(x);
}

}  // namespace k3lat
