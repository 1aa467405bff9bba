#ifndef QUASIGEN_BOX_HPP
#define QUASIGEN_BOX_HPP

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "quasigen/interval.hpp"

namespace quasigen {

/// Product of rational intervals, one per coordinate.  Degenerate
/// coordinates are legal.  A zero-dimensional box (the single point of R^0)
/// arises internally in the implicit-function machinery and is permitted.
struct Box {
    std::vector<Interval> coords;

    Box() = default;
    explicit Box(std::vector<Interval> c) : coords(std::move(c)) {}
    static Box point(const std::vector<Rational>& p) {
        std::vector<Interval> c;
        c.reserve(p.size());
        for (const auto& x : p) c.push_back(Interval::point(x));
        return Box(std::move(c));
    }

    size_t dim() const { return coords.size(); }
    const Interval& operator[](size_t i) const { return coords[i]; }
    Interval& operator[](size_t i) { return coords[i]; }

    bool bounded() const {
        return std::all_of(coords.begin(), coords.end(),
                           [](const Interval& i) { return i.bounded(); });
    }

    bool contains(const std::vector<Rational>& p) const {
        if (p.size() != coords.size()) throw std::invalid_argument("point/box arity mismatch");
        for (size_t i = 0; i < coords.size(); ++i)
            if (!coords[i].contains(p[i])) return false;
        return true;
    }

    bool contains(const Box& o) const {
        if (o.dim() != dim()) throw std::invalid_argument("box arity mismatch");
        for (size_t i = 0; i < coords.size(); ++i)
            if (!coords[i].contains(o.coords[i])) return false;
        return true;
    }

    std::vector<Rational> midpoint() const {
        std::vector<Rational> m;
        m.reserve(coords.size());
        for (const auto& c : coords) m.push_back(c.mid());
        return m;
    }

    Box closure() const {
        Box b;
        b.coords.reserve(coords.size());
        for (const auto& c : coords) b.coords.push_back(c.closure());
        return b;
    }

    bool operator==(const Box& o) const { return coords == o.coords; }
};

inline Box hull(const Box& a, const Box& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("box arity mismatch");
    Box r;
    r.coords.reserve(a.dim());
    for (size_t i = 0; i < a.dim(); ++i) r.coords.push_back(hull(a[i], b[i]));
    return r;
}

inline Box meet(const Box& a, const Box& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("box arity mismatch");
    Box r;
    r.coords.reserve(a.dim());
    for (size_t i = 0; i < a.dim(); ++i) r.coords.push_back(meet(a[i], b[i]));
    return r;
}

inline bool overlap(const Box& a, const Box& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("box arity mismatch");
    for (size_t i = 0; i < a.dim(); ++i)
        if (!overlap(a[i], b[i])) return false;
    return true;
}

/// Max coordinate length.
inline Rational width(const Box& b) {
    if (b.dim() == 0) return Rational(0);
    Rational w = 0;
    for (const auto& c : b.coords) {
        if (!c.bounded()) throw std::domain_error("width of unbounded box");
        w = max(w, c.length());
    }
    return w;
}

/// Max-norm distance bound between two boxes: an interval containing
/// ||x - y|| for all x in a, y in b is not needed; this returns a certified
/// lower bound of inf ||x-y|| (0 when they overlap).
inline Rational dist_lower(const Box& a, const Box& b) {
    Rational d = 0;
    for (size_t i = 0; i < a.dim(); ++i) {
        const auto &x = a[i], &y = b[i];
        if (*x.hi < *y.lo) d = max(d, *y.lo - *x.hi);
        else if (*y.hi < *x.lo) d = max(d, *x.lo - *y.hi);
    }
    return d;
}

/// D = U x {u}: a rational box that is a submanifold of R^m.  E lists the
/// coordinates (0-based, increasing) carrying the open factors U; the
/// complementary coordinates are pinned to the rational point u.
struct RationalBoxManifold {
    size_t m = 0;
    std::vector<size_t> E;       // increasing, 0-based
    std::vector<Interval> U;     // one open interval per member of E
    std::vector<Rational> u;     // one value per member of E^c (increasing order)

    RationalBoxManifold() = default;
    RationalBoxManifold(size_t ambient, std::vector<size_t> e, std::vector<Interval> open_part,
                        std::vector<Rational> pinned)
        : m(ambient), E(std::move(e)), U(std::move(open_part)), u(std::move(pinned)) {
        validate();
    }

    /// Fully open box in R^m (E = everything).
    static RationalBoxManifold open_box(std::vector<Interval> c) {
        RationalBoxManifold d;
        d.m = c.size();
        for (size_t i = 0; i < c.size(); ++i) d.E.push_back(i);
        d.U = std::move(c);
        d.validate();
        return d;
    }

    void validate() const {
        if (U.size() != E.size()) throw std::invalid_argument("manifold: |U| != |E|");
        if (u.size() != m - E.size()) throw std::invalid_argument("manifold: |u| != |E^c|");
        for (size_t i = 0; i < E.size(); ++i) {
            if (E[i] >= m) throw std::invalid_argument("manifold: E index out of range");
            if (i > 0 && E[i] <= E[i - 1]) throw std::invalid_argument("manifold: E not increasing");
            if (!U[i].is_open_set()) throw std::invalid_argument("manifold: U factor not open");
            if (U[i].degenerate()) throw std::invalid_argument("manifold: degenerate open factor");
        }
    }

    size_t dim() const { return E.size(); }

    bool is_in_E(size_t coord) const { return std::binary_search(E.begin(), E.end(), coord); }

    /// Full m-dimensional box U x {u}.
    Box ambient_box() const {
        Box b;
        b.coords.resize(m);
        size_t ei = 0, ci = 0;
        for (size_t i = 0; i < m; ++i) {
            if (ei < E.size() && E[ei] == i) b.coords[i] = U[ei++];
            else b.coords[i] = Interval::point(u[ci++]);
        }
        return b;
    }

    /// The open factor as a dim()-dimensional box over the E coordinates.
    Box open_part() const { return Box(U); }

    /// Embed a box over the E coordinates into R^m, pinning E^c to u.
    Box embed(const Box& over_E) const {
        if (over_E.dim() != E.size()) throw std::invalid_argument("embed: arity mismatch");
        Box b;
        b.coords.resize(m);
        size_t ei = 0, ci = 0;
        for (size_t i = 0; i < m; ++i) {
            if (ei < E.size() && E[ei] == i) b.coords[i] = over_E[ei], ++ei;
            else b.coords[i] = Interval::point(u[ci++]);
        }
        return b;
    }

    std::vector<Rational> embed_point(const std::vector<Rational>& over_E) const {
        if (over_E.size() != E.size()) throw std::invalid_argument("embed: arity mismatch");
        std::vector<Rational> p(m);
        size_t ei = 0, ci = 0;
        for (size_t i = 0; i < m; ++i) {
            if (ei < E.size() && E[ei] == i) p[i] = over_E[ei], ++ei;
            else p[i] = u[ci++];
        }
        return p;
    }

    /// Restrict an m-dimensional box to the E coordinates.
    Box project_to_E(const Box& full) const {
        if (full.dim() != m) throw std::invalid_argument("project: arity mismatch");
        Box b;
        b.coords.reserve(E.size());
        for (size_t e : E) b.coords.push_back(full[e]);
        return b;
    }
};

namespace detail {
inline Interval shrink_interval(const Interval& I, const Rational& delta) {
    if (!I.lo && !I.hi) return Interval::closed(-1 / delta, 1 / delta);
    if (!I.hi) {
        Rational lo = *I.lo + delta, hi = 1 / delta;
        if (lo > hi) throw std::domain_error("empty shrink");
        return Interval::closed(lo, hi);
    }
    if (!I.lo) {
        Rational lo = -1 / delta, hi = *I.hi - delta;
        if (lo > hi) throw std::domain_error("empty shrink");
        return Interval::closed(lo, hi);
    }
    Rational lo = *I.lo + delta, hi = *I.hi - delta;
    if (lo > hi) throw std::domain_error("empty shrink");
    return Interval::closed(lo, hi);
}
}  // namespace detail

/// D_delta: each open factor I is replaced by the compact core I_delta; the
/// pinned part {u} is unchanged.  The result is a compact box manifold
/// (closed factors, possibly degenerate).
inline RationalBoxManifold shrink(const RationalBoxManifold& D, const Rational& delta) {
    if (delta <= 0) throw std::invalid_argument("shrink requires delta > 0");
    RationalBoxManifold r = D;
    for (auto& I : r.U) I = detail::shrink_interval(I, delta);
    // Compact cores are closed; skip validate() since U is no longer open.
    return r;
}

/// The compact box D_delta over the E coordinates.
inline Box shrink_to_box(const RationalBoxManifold& D, const Rational& delta) {
    if (delta <= 0) throw std::invalid_argument("shrink requires delta > 0");
    Box b;
    b.coords.reserve(D.U.size());
    for (const auto& I : D.U) b.coords.push_back(detail::shrink_interval(I, delta));
    return b;
}

namespace detail {
inline std::vector<Interval> stratify_interval(const Interval& I) {
    std::vector<Interval> parts;
    if (I.degenerate()) {
        parts.push_back(I);
        return parts;
    }
    if (I.lo && !I.lo_open) parts.push_back(Interval::point(*I.lo));
    Interval inner = I;
    inner.lo_open = I.lo.has_value();
    inner.hi_open = I.hi.has_value();
    parts.push_back(inner);
    if (I.hi && !I.hi_open) parts.push_back(Interval::point(*I.hi));
    return parts;
}
}  // namespace detail

/// Natural stratification: the product of per-coordinate stratifications.
/// Each stratum is returned as a rational box manifold.
inline std::vector<RationalBoxManifold> stratify(const Box& b) {
    if (b.dim() == 0) throw std::invalid_argument("stratify: empty dimension");
    std::vector<std::vector<Interval>> per_coord;
    per_coord.reserve(b.dim());
    for (const auto& c : b.coords) per_coord.push_back(detail::stratify_interval(c));

    std::vector<RationalBoxManifold> strata;
    std::vector<size_t> idx(b.dim(), 0);
    while (true) {
        RationalBoxManifold d;
        d.m = b.dim();
        for (size_t i = 0; i < b.dim(); ++i) {
            const Interval& part = per_coord[i][idx[i]];
            if (part.degenerate()) d.u.push_back(*part.lo);
            else {
                d.E.push_back(i);
                d.U.push_back(part);
            }
        }
        strata.push_back(std::move(d));
        size_t i = 0;
        for (; i < b.dim(); ++i) {
            if (++idx[i] < per_coord[i].size()) break;
            idx[i] = 0;
        }
        if (i == b.dim()) break;
    }
    return strata;
}

inline std::string to_string(const Box& b) {
    std::string s;
    for (size_t i = 0; i < b.dim(); ++i) {
        if (i) s += " x ";
        s += to_string(b[i]);
    }
    return s.empty() ? "()" : s;
}

}  // namespace quasigen

#endif
