#ifndef QUASIGEN_COMPLEX_RECT_HPP
#define QUASIGEN_COMPLEX_RECT_HPP

#include "quasigen/interval.hpp"

namespace quasigen {

/// Axis-aligned rectangle in C, identified with an interval box in R^2.
struct ComplexRect {
    Interval re, im;

    ComplexRect() : re(Interval::point(Rational(0))), im(Interval::point(Rational(0))) {}
    ComplexRect(Interval r, Interval i) : re(std::move(r)), im(std::move(i)) {}
    static ComplexRect point(const Rational& r, const Rational& i) {
        return ComplexRect(Interval::point(r), Interval::point(i));
    }
    static ComplexRect real(Interval r) { return ComplexRect(std::move(r), Interval::point(Rational(0))); }

    bool contains(const Rational& r, const Rational& i) const {
        return re.contains(r) && im.contains(i);
    }
};

inline ComplexRect operator+(const ComplexRect& a, const ComplexRect& b) {
    return ComplexRect(a.re + b.re, a.im + b.im);
}
inline ComplexRect operator-(const ComplexRect& a, const ComplexRect& b) {
    return ComplexRect(a.re - b.re, a.im - b.im);
}
inline ComplexRect operator-(const ComplexRect& a) { return ComplexRect(-a.re, -a.im); }
inline ComplexRect operator*(const ComplexRect& a, const ComplexRect& b) {
    return ComplexRect(a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re);
}
inline ComplexRect operator*(const Rational& c, const ComplexRect& a) {
    return ComplexRect(c * a.re, c * a.im);
}

/// |z|^2 enclosure.
inline Interval abs_sq(const ComplexRect& a) {
    Interval r2 = pow_int(a.re, 2), i2 = pow_int(a.im, 2);
    return r2 + i2;
}

/// 1/z for a rectangle certified away from 0 (abs_sq lower bound > 0).
inline ComplexRect reciprocal(const ComplexRect& a) {
    Interval d = abs_sq(a);
    if (*d.lo <= 0) throw std::domain_error("complex reciprocal of rectangle containing 0");
    return ComplexRect(a.re / d, (-a.im) / d);
}

inline ComplexRect operator/(const ComplexRect& a, const ComplexRect& b) {
    return a * reciprocal(b);
}

inline ComplexRect pow_int(const ComplexRect& a, unsigned e) {
    ComplexRect r = ComplexRect::point(Rational(1), Rational(0));
    ComplexRect b = a;
    while (e) {
        if (e & 1u) r = r * b;
        b = b * b;
        e >>= 1u;
    }
    return r;
}

inline ComplexRect hull(const ComplexRect& a, const ComplexRect& b) {
    return ComplexRect(hull(a.re, b.re), hull(a.im, b.im));
}

inline ComplexRect round_out(const ComplexRect& a, unsigned bits) {
    return ComplexRect(round_out(a.re, bits), round_out(a.im, bits));
}

/// Upper bound for |z| over the rectangle (max-corner modulus, rounded up).
inline Rational abs_upper(const ComplexRect& a, unsigned bits = 32) {
    Interval s = abs_sq(a);
    // ceil of sqrt(hi) on the dyadic grid
    Rational hi = *s.hi;
    if (hi == 0) return Rational(0);
    Rational guess = 1;
    while (guess * guess < hi) guess *= 2;
    // bisect down to grid
    Rational lo = guess / 2 < 1 ? Rational(0) : guess / 2;
    for (unsigned i = 0; i < bits + 8; ++i) {
        Rational mid = (lo + guess) / 2;
        if (mid * mid >= hi) guess = mid;
        else lo = mid;
    }
    return dyadic_ceil(guess, bits);
}

inline std::string to_string(const ComplexRect& a) {
    return to_string(a.re) + " + i*" + to_string(a.im);
}

}  // namespace quasigen

#endif
