#ifndef QUASIGEN_RATIONAL_HPP
#define QUASIGEN_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace quasigen {

using Integer = boost::multiprecision::cpp_int;

/// Exact arbitrary-precision rational. cpp_rational keeps the fraction in
/// lowest terms with positive denominator, which is exactly the canonical
/// form we require.
using Rational = boost::multiprecision::cpp_rational;

inline Integer num(const Rational& q) { return boost::multiprecision::numerator(q); }
inline Integer den(const Rational& q) { return boost::multiprecision::denominator(q); }

inline Rational rat(long long n) { return Rational(n); }
inline Rational rat(long long n, long long d) {
    if (d == 0) throw std::invalid_argument("rational with zero denominator");
    return Rational(n) / Rational(d);
}

inline Rational abs(const Rational& q) { return q < 0 ? Rational(-q) : q; }
inline const Rational& min(const Rational& a, const Rational& b) { return a < b ? a : b; }
inline const Rational& max(const Rational& a, const Rational& b) { return a < b ? b : a; }

/// 2^k for k possibly negative.
inline Rational pow2(long k) {
    Integer one = 1;
    if (k >= 0) return Rational(one << static_cast<unsigned>(k));
    return Rational(one, one << static_cast<unsigned>(-k));
}

inline Rational pow_int(const Rational& base, unsigned e) {
    Rational r = 1, b = base;
    while (e) {
        if (e & 1u) r *= b;
        b *= b;
        e >>= 1u;
    }
    return r;
}

/// Largest multiple of 2^-bits that is <= q.
inline Rational dyadic_floor(const Rational& q, unsigned bits) {
    Integer scaled_num = num(q) << bits;
    Integer d = den(q);
    Integer f = scaled_num / d;
    if (f * d != scaled_num && q < 0) --f;  // truncation rounds toward zero
    return Rational(f, Integer(1) << bits);
}

/// Smallest multiple of 2^-bits that is >= q.
inline Rational dyadic_ceil(const Rational& q, unsigned bits) {
    return -dyadic_floor(-q, bits);
}

inline Integer floor_int(const Rational& q) {
    Integer f = num(q) / den(q);
    if (f * den(q) != num(q) && q < 0) --f;
    return f;
}

inline Integer ceil_int(const Rational& q) { return -floor_int(-q); }

/// ceil(log2(q)) for q > 0.
inline long ceil_log2(const Rational& q) {
    if (q <= 0) throw std::invalid_argument("ceil_log2 of nonpositive value");
    long k = 0;
    Rational v = q;
    while (v > 1) { v /= 2; ++k; }
    while (v <= Rational(1, 2)) { v *= 2; --k; }
    return k;  // 2^(k-1) < q <= 2^k
}

inline Rational parse_rational(const std::string& s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) {
            // Accept plain integers and decimal literals such as "0.25".
            auto dot = s.find('.');
            if (dot == std::string::npos) return Rational(Integer(s));
            std::string head = s.substr(0, dot), tail = s.substr(dot + 1);
            bool neg = !head.empty() && head[0] == '-';
            Integer ipart = head.empty() || head == "-" ? Integer(0) : Integer(head);
            Integer scale = 1;
            for (size_t i = 0; i < tail.size(); ++i) scale *= 10;
            Rational frac(Integer(tail.empty() ? "0" : tail), scale);
            Rational r = Rational(ipart) + (neg ? -frac : frac);
            return r;
        }
        Integer n(s.substr(0, slash)), d(s.substr(slash + 1));
        if (d == 0) throw std::invalid_argument("zero denominator");
        return Rational(n, d);
    } catch (const std::exception&) {
        throw std::invalid_argument("cannot parse rational: '" + s + "'");
    }
}

inline std::string to_string(const Rational& q) {
    if (den(q) == 1) return num(q).str();
    return num(q).str() + "/" + den(q).str();
}

}  // namespace quasigen

#endif
