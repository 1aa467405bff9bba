#ifndef QUASIGEN_INTERVAL_HPP
#define QUASIGEN_INTERVAL_HPP

#include <optional>
#include <stdexcept>
#include <string>

#include "quasigen/rational.hpp"

namespace quasigen {

/// Closed/open rational interval, possibly unbounded on either side.
/// Endpoints are exact rationals; an absent endpoint means +-infinity
/// (and the corresponding end is necessarily open).  Openness flags are
/// carried explicitly because stratification and the IF statements
/// distinguish open from closed factors.
struct Interval {
    std::optional<Rational> lo, hi;
    bool lo_open = false, hi_open = false;

    Interval() : lo(Rational(0)), hi(Rational(0)) {}
    Interval(Rational a, Rational b, bool ao = false, bool bo = false)
        : lo(std::move(a)), hi(std::move(b)), lo_open(ao), hi_open(bo) {
        if (*lo > *hi) throw std::invalid_argument("interval with lo > hi");
        if (*lo == *hi && (lo_open || hi_open))
            throw std::invalid_argument("degenerate interval cannot be open");
    }

    static Interval point(const Rational& a) { return Interval(a, a); }
    static Interval closed(const Rational& a, const Rational& b) { return Interval(a, b); }
    static Interval open(const Rational& a, const Rational& b) { return Interval(a, b, true, true); }
    static Interval whole_line() {
        Interval i;
        i.lo.reset();
        i.hi.reset();
        i.lo_open = i.hi_open = true;
        return i;
    }
    static Interval ray_above(const Rational& a, bool open_end = true) {
        Interval i;
        i.lo = a;
        i.lo_open = open_end;
        i.hi.reset();
        i.hi_open = true;
        return i;
    }
    static Interval ray_below(const Rational& b, bool open_end = true) {
        Interval i;
        i.hi = b;
        i.hi_open = open_end;
        i.lo.reset();
        i.lo_open = true;
        return i;
    }

    bool bounded() const { return lo.has_value() && hi.has_value(); }
    bool degenerate() const { return bounded() && *lo == *hi; }
    bool is_open_set() const { return (!lo || lo_open) && (!hi || hi_open); }
    bool is_closed_set() const { return (!lo || !lo_open) && (!hi || !hi_open); }

    Rational length() const {
        if (!bounded()) throw std::domain_error("length of unbounded interval");
        return *hi - *lo;
    }

    Rational mid() const {
        if (!bounded()) throw std::domain_error("midpoint of unbounded interval");
        return (*lo + *hi) / 2;
    }

    bool contains(const Rational& x) const {
        if (lo) {
            if (lo_open ? x <= *lo : x < *lo) return false;
        }
        if (hi) {
            if (hi_open ? x >= *hi : x > *hi) return false;
        }
        return true;
    }

    /// Set containment, honoring openness.
    bool contains(const Interval& o) const {
        if (lo) {
            if (!o.lo) return false;
            if (*o.lo < *lo) return false;
            if (*o.lo == *lo && lo_open && !o.lo_open) return false;
        }
        if (hi) {
            if (!o.hi) return false;
            if (*o.hi > *hi) return false;
            if (*o.hi == *hi && hi_open && !o.hi_open) return false;
        }
        return true;
    }

    /// Closed convex hull of the set (drops openness).
    Interval closure() const {
        Interval r = *this;
        r.lo_open = r.hi_open = false;
        if (r.lo && r.hi && *r.lo == *r.hi) return Interval::point(*r.lo);
        return r;
    }

    bool operator==(const Interval& o) const {
        return lo == o.lo && hi == o.hi && lo_open == o.lo_open && hi_open == o.hi_open;
    }
};

namespace detail {
inline void require_bounded(const Interval& a, const char* op) {
    if (!a.bounded()) throw std::domain_error(std::string(op) + " requires bounded intervals");
}
}  // namespace detail

/// Arithmetic below is on the closed hulls; results are closed intervals
/// enclosing the exact image, with exact rational endpoints.

inline Interval operator+(const Interval& a, const Interval& b) {
    detail::require_bounded(a, "add");
    detail::require_bounded(b, "add");
    return Interval(*a.lo + *b.lo, *a.hi + *b.hi);
}

inline Interval operator-(const Interval& a) {
    detail::require_bounded(a, "neg");
    return Interval(-*a.hi, -*a.lo);
}

inline Interval operator-(const Interval& a, const Interval& b) { return a + (-b); }

inline Interval operator*(const Interval& a, const Interval& b) {
    detail::require_bounded(a, "mul");
    detail::require_bounded(b, "mul");
    Rational c1 = *a.lo * *b.lo, c2 = *a.lo * *b.hi, c3 = *a.hi * *b.lo, c4 = *a.hi * *b.hi;
    return Interval(min(min(c1, c2), min(c3, c4)), max(max(c1, c2), max(c3, c4)));
}

inline Interval operator*(const Rational& c, const Interval& a) {
    detail::require_bounded(a, "scale");
    if (c >= 0) return Interval(c * *a.lo, c * *a.hi);
    return Interval(c * *a.hi, c * *a.lo);
}

inline Interval reciprocal(const Interval& a) {
    detail::require_bounded(a, "reciprocal");
    if (*a.lo <= 0 && *a.hi >= 0) throw std::domain_error("division by interval containing 0");
    return Interval(1 / *a.hi, 1 / *a.lo);
}

inline Interval operator/(const Interval& a, const Interval& b) { return a * reciprocal(b); }

inline Interval abs(const Interval& a) {
    detail::require_bounded(a, "abs");
    if (*a.lo >= 0) return a.closure();
    if (*a.hi <= 0) return Interval(-*a.hi, -*a.lo);
    return Interval(Rational(0), max(-*a.lo, *a.hi));
}

inline Interval hull(const Interval& a, const Interval& b) {
    detail::require_bounded(a, "hull");
    detail::require_bounded(b, "hull");
    return Interval(min(*a.lo, *b.lo), max(*a.hi, *b.hi));
}

/// Intersection of closed hulls; empty intersection is an error.
inline Interval meet(const Interval& a, const Interval& b) {
    detail::require_bounded(a, "meet");
    detail::require_bounded(b, "meet");
    Rational lo = max(*a.lo, *b.lo), hi = min(*a.hi, *b.hi);
    if (lo > hi) throw std::domain_error("empty interval intersection");
    return Interval(lo, hi);
}

inline bool overlap(const Interval& a, const Interval& b) {
    detail::require_bounded(a, "overlap");
    detail::require_bounded(b, "overlap");
    return !(*a.hi < *b.lo || *b.hi < *a.lo);
}

inline Interval pow_int(const Interval& a, unsigned e) {
    if (e == 0) return Interval::point(Rational(1));
    detail::require_bounded(a, "pow");
    if (e % 2 == 1) {
        return Interval(pow_int(*a.lo, e), pow_int(*a.hi, e));
    }
    Interval m = abs(a);
    return Interval(pow_int(*m.lo, e), pow_int(*m.hi, e));
}

/// Outward rounding to the dyadic grid 2^-bits; keeps bit-sizes bounded in
/// long enclosure pipelines while preserving soundness.
inline Interval round_out(const Interval& a, unsigned bits) {
    detail::require_bounded(a, "round_out");
    return Interval(dyadic_floor(*a.lo, bits), dyadic_ceil(*a.hi, bits));
}

inline std::string to_string(const Interval& a) {
    std::string s = a.lo_open ? "(" : "[";
    s += a.lo ? to_string(*a.lo) : "-inf";
    s += ", ";
    s += a.hi ? to_string(*a.hi) : "inf";
    s += a.hi_open ? ")" : "]";
    return s;
}

}  // namespace quasigen

#endif
