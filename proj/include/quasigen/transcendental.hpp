#ifndef QUASIGEN_TRANSCENDENTAL_HPP
#define QUASIGEN_TRANSCENDENTAL_HPP

#include "quasigen/complex_rect.hpp"
#include "quasigen/interval.hpp"

namespace quasigen {

/// Certified elementary-function enclosures over exact rationals.  All
/// routines return intervals with rational endpoints that provably contain
/// the exact value set; tightness is controlled by a precision parameter
/// (target tail below 2^-precision).

namespace detail {

/// Number of Taylor terms needed so that sum_{j>N} M^j/j! <= 2^-(prec).
inline unsigned taylor_terms(const Rational& M, unsigned prec) {
    Rational term = 1;  // M^0/0!
    Rational target = pow2(-static_cast<long>(prec));
    unsigned N = 0;
    // tail bound: term_{N+1} * 1/(1 - M/(N+2)) once N+2 > 2M
    while (true) {
        ++N;
        term = term * M / N;
        if (N + 2 > 2 * M && term * 2 <= target) return N;
        if (N > 500) return N;  // hard cap; callers use small arguments
    }
}

}  // namespace detail

/// exp(x) for a rational point, certified to within 2^-prec.  Terms are
/// accumulated as dyadically rounded intervals so the bit-size of the
/// arithmetic stays proportional to the precision.
inline Interval exp_point(const Rational& x, unsigned prec) {
    Rational ax = abs(x);
    unsigned N = detail::taylor_terms(ax, prec + 4);
    while (Rational(N) + 2 <= 2 * ax) ++N;  // keep the tail factor-2 bound valid
    const unsigned bits = prec + 24;  // N rounding slops stay below 2^-(prec+14)
    Interval term = Interval::point(Rational(1));
    Interval sum = term;
    Interval xi = round_out(Interval::point(x), bits);
    for (unsigned j = 1; j <= N; ++j) {
        term = round_out(term * xi, bits);
        term = Interval(*term.lo / j, *term.hi / j);
        term = round_out(term, bits);
        sum = round_out(sum + term, bits);
    }
    // tail: |R| <= |x|^{N+1}/(N+1)! * 1/(1 - |x|/(N+2)), valid since N+2 > 2|x|
    Interval axN = round_out(pow_int(round_out(Interval(ax, ax), bits), N + 1), bits);
    Rational t = *axN.hi;
    Rational fact = 1;
    for (unsigned j = 2; j <= N + 1; ++j) fact *= j;
    Rational tail = dyadic_ceil((t / fact) * 2, bits);
    return round_out(Interval(*sum.lo - tail, *sum.hi + tail), prec + 8);
}

/// exp over an interval; monotone, so endpoint enclosures suffice.
inline Interval exp_interval(const Interval& x, unsigned prec) {
    detail::require_bounded(x, "exp");
    Interval lo = exp_point(*x.lo, prec), hi = exp_point(*x.hi, prec);
    return Interval(*lo.lo, *hi.hi);
}

namespace detail {

/// Simultaneous sin/cos at a rational point via Taylor series with a
/// certified tail bound.
inline void sincos_point(const Rational& x, unsigned prec, Interval& s, Interval& c) {
    Rational ax = abs(x);
    unsigned N = taylor_terms(ax, prec + 4);
    if (N < 2) N = 2;
    while (Rational(N) + 2 <= 2 * ax) ++N;
    const unsigned bits = prec + 24;
    Interval term = Interval::point(Rational(1));
    Interval ssum = Interval::point(Rational(0)), csum = term;
    Interval xi = round_out(Interval::point(x), bits);
    for (unsigned j = 1; j <= N; ++j) {
        term = round_out(term * xi, bits);
        term = Interval(*term.lo / j, *term.hi / j);
        term = round_out(term, bits);
        unsigned rem = j % 4;
        if (rem == 0) csum = round_out(csum + term, bits);
        else if (rem == 1) ssum = round_out(ssum + term, bits);
        else if (rem == 2) csum = round_out(csum - term, bits);
        else ssum = round_out(ssum - term, bits);
    }
    Interval axN = round_out(pow_int(round_out(Interval(ax, ax), bits), N + 1), bits);
    Rational fact = 1;
    for (unsigned j = 2; j <= N + 1; ++j) fact *= j;
    Rational tail = dyadic_ceil((*axN.hi / fact) * 2, bits);
    s = round_out(Interval(*ssum.lo - tail, *ssum.hi + tail), prec + 8);
    c = round_out(Interval(*csum.lo - tail, *csum.hi + tail), prec + 8);
}

}  // namespace detail

inline Interval sin_point(const Rational& x, unsigned prec) {
    Interval s, c;
    detail::sincos_point(x, prec, s, c);
    return meet(s, Interval(Rational(-1), Rational(1)));
}

inline Interval cos_point(const Rational& x, unsigned prec) {
    Interval s, c;
    detail::sincos_point(x, prec, s, c);
    return meet(c, Interval(Rational(-1), Rational(1)));
}

/// sin over an interval: midpoint value plus Lipschitz-1 slop, intersected
/// with the direct series enclosure when the interval is narrow.  Always
/// sound; tight once callers subdivide.
inline Interval sin_interval(const Interval& x, unsigned prec) {
    detail::require_bounded(x, "sin");
    Rational m = x.mid(), h = x.length() / 2;
    Interval at_mid = sin_point(m, prec);
    Interval slop(-h, h);  // |sin'| <= 1
    Interval r = at_mid + slop;
    return meet(r, Interval(Rational(-1), Rational(1)));
}

inline Interval cos_interval(const Interval& x, unsigned prec) {
    detail::require_bounded(x, "cos");
    Rational m = x.mid(), h = x.length() / 2;
    Interval at_mid = cos_point(m, prec);
    Interval slop(-h, h);
    Interval r = at_mid + slop;
    return meet(r, Interval(Rational(-1), Rational(1)));
}

inline Interval sinh_interval(const Interval& x, unsigned prec) {
    Interval e = exp_interval(x, prec + 2), en = exp_interval(-x, prec + 2);
    return Rational(1, 2) * (e - en);
}

inline Interval cosh_interval(const Interval& x, unsigned prec) {
    Interval e = exp_interval(x, prec + 2), en = exp_interval(-x, prec + 2);
    return Rational(1, 2) * (e + en);
}

/// pi enclosure via Machin's formula; alternating series give certified
/// remainder bounds.
inline Interval pi_enclosure(unsigned prec) {
    auto arctan_inv = [&](unsigned k, unsigned p) {
        // arctan(1/k) = sum (-1)^j / ((2j+1) k^{2j+1}), alternating decreasing
        Rational kk = Rational(1, k);
        Rational k2 = kk * kk;
        Rational term = kk, sum = 0;
        Rational target = pow2(-static_cast<long>(p));
        unsigned j = 0;
        while (true) {
            Rational contrib = term / (2 * j + 1);
            if (j % 2 == 0) sum += contrib;
            else sum -= contrib;
            term = term * k2;
            Rational next = term / (2 * j + 3);
            if (next <= target) {
                // alternating: true value between sum and sum -+ next
                if (j % 2 == 0) return Interval(sum - next, sum);
                return Interval(sum, sum + next);
            }
            ++j;
        }
    };
    Interval a5 = arctan_inv(5, prec + 8), a239 = arctan_inv(239, prec + 8);
    Interval pi = Rational(16) * a5 - Rational(4) * a239;
    return round_out(pi, prec + 4);
}

/// Complex exponential: exp(a+bi) = e^a (cos b + i sin b).
inline ComplexRect exp_rect(const ComplexRect& z, unsigned prec) {
    Interval ex = exp_interval(z.re, prec);
    Interval c = cos_interval(z.im, prec), s = sin_interval(z.im, prec);
    return ComplexRect(ex * c, ex * s);
}

/// sin(a+bi) = sin a cosh b + i cos a sinh b.
inline ComplexRect sin_rect(const ComplexRect& z, unsigned prec) {
    Interval sa = sin_interval(z.re, prec), ca = cos_interval(z.re, prec);
    Interval ch = cosh_interval(z.im, prec), sh = sinh_interval(z.im, prec);
    return ComplexRect(sa * ch, ca * sh);
}

/// cos(a+bi) = cos a cosh b - i sin a sinh b.
inline ComplexRect cos_rect(const ComplexRect& z, unsigned prec) {
    Interval sa = sin_interval(z.re, prec), ca = cos_interval(z.re, prec);
    Interval ch = cosh_interval(z.im, prec), sh = sinh_interval(z.im, prec);
    return ComplexRect(ca * ch, -(sa * sh));
}

}  // namespace quasigen

#endif
