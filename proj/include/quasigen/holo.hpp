#ifndef QUASIGEN_HOLO_HPP
#define QUASIGEN_HOLO_HPP

#include <functional>
#include <memory>

#include "quasigen/family.hpp"

namespace quasigen {

/// Enclosure oracle for a computably holomorphic family on the complex
/// neighborhoods C(rho(sigma), R(sigma)).
class HoloEvaluator {
  public:
    virtual ~HoloEvaluator() = default;
    virtual const FamilySpec& spec() const = 0;
    virtual ComplexRect enclose_complex(size_t sigma, const std::vector<ComplexRect>& cell,
                                        unsigned precision) const = 0;
    /// Complex partial derivatives, when the representation supports them;
    /// the quadrature falls back to plain value enclosures otherwise.
    virtual bool has_complex_derivative() const { return false; }
    virtual ComplexRect enclose_complex_derivative(size_t, const MultiIndex&,
                                                   const std::vector<ComplexRect>&,
                                                   unsigned) const {
        throw std::logic_error("complex derivative not available");
    }
};

using HoloPtr = std::shared_ptr<const HoloEvaluator>;

/// Expression families are entire, so they implement the complex interface
/// directly.
class ExprHolo final : public HoloEvaluator {
  public:
    explicit ExprHolo(std::shared_ptr<const ExprFamily> f) : fam_(std::move(f)) {}
    const FamilySpec& spec() const override { return fam_->spec(); }
    ComplexRect enclose_complex(size_t sigma, const std::vector<ComplexRect>& cell,
                                unsigned precision) const override {
        return fam_->enclose_complex(sigma, cell, precision);
    }
    bool has_complex_derivative() const override { return true; }
    ComplexRect enclose_complex_derivative(size_t sigma, const MultiIndex& alpha,
                                           const std::vector<ComplexRect>& cell,
                                           unsigned precision) const override {
        return fam_->enclose_complex_derivative(sigma, alpha, cell, precision);
    }
    const std::shared_ptr<const ExprFamily>& family() const { return fam_; }

  private:
    std::shared_ptr<const ExprFamily> fam_;
};

/// Counterclockwise rectangular contour for one coordinate:
/// re in [-a, a], im in [-h, h], encircling the real segment [-rho, rho].
struct ContourRect {
    Rational a;  // half-width in the real direction (a > rho)
    Rational h;  // half-height
};

/// Per-coordinate rectangular paths plus the shrink factor c placing them
/// strictly inside C(rho, R).
struct ContourSpec {
    std::vector<ContourRect> rects;
    Rational c = Rational(1, 2);

    /// Default contour: w = h = 7cR/10, so corners sit at distance
    /// sqrt(2)*(7/10)*cR < cR from the segment.
    static ContourSpec for_index(const FamilySpec& spec, size_t sigma,
                                 const Rational& c = Rational(1, 2)) {
        if (c <= 0 || c >= 1) throw std::invalid_argument("contour factor c must be in (0,1)");
        ContourSpec cs;
        cs.c = c;
        const auto& e = spec.at(sigma);
        for (unsigned i = 0; i < e.arity; ++i) {
            Rational w = c * e.R[i] * Rational(7, 10);
            cs.rects.push_back(ContourRect{e.rho[i] + w, w});
        }
        return cs;
    }

    void validate(const FamilySpec& spec, size_t sigma) const {
        const auto& e = spec.at(sigma);
        if (rects.size() != e.arity) throw std::invalid_argument("contour arity mismatch");
        for (unsigned i = 0; i < e.arity; ++i) {
            const auto& r = rects[i];
            if (r.a <= e.rho[i] || r.h <= 0)
                throw std::invalid_argument("contour does not encircle the real segment");
            Rational dx = r.a - e.rho[i];
            if (dx * dx + r.h * r.h >= e.R[i] * e.R[i])
                throw std::invalid_argument("contour leaves the holomorphy neighborhood");
        }
    }
};

namespace detail {

/// One directed straight edge of a rectangular path.
struct Edge {
    Rational re0, im0, re1, im1;
};

inline std::vector<Edge> contour_edges(const ContourRect& r) {
    // counterclockwise: bottom, right, top, left
    return {
        Edge{-r.a, -r.h, r.a, -r.h},
        Edge{r.a, -r.h, r.a, r.h},
        Edge{r.a, r.h, -r.a, r.h},
        Edge{-r.a, r.h, -r.a, -r.h},
    };
}

struct Segment {
    ComplexRect span;  // hull of the sub-segment
    Rational mre, mim; // midpoint
    Rational dre, dim; // exact complex increment
};

inline void subdivide(const Edge& e, unsigned pieces, std::vector<Segment>& out) {
    Rational dre = (e.re1 - e.re0) / Rational(pieces), dim = (e.im1 - e.im0) / Rational(pieces);
    for (unsigned k = 0; k < pieces; ++k) {
        Rational r0 = e.re0 + dre * Rational(k), r1 = e.re0 + dre * Rational(k + 1);
        Rational i0 = e.im0 + dim * Rational(k), i1 = e.im0 + dim * Rational(k + 1);
        Segment s;
        s.span = ComplexRect(Interval(min(r0, r1), max(r0, r1)), Interval(min(i0, i1), max(i0, i1)));
        s.mre = (r0 + r1) / 2;
        s.mim = (i0 + i1) / 2;
        s.dre = r1 - r0;
        s.dim = i1 - i0;
        out.push_back(std::move(s));
    }
}

/// Monomial coefficients of k^{(j)} for k(z) = (z-x)^{-(a+1)}:
/// k^{(j)}(z) = sign * (a+1)...(a+j) * (z-x)^{-(a+1+j)}.
inline ComplexRect kernel_derivative(unsigned a, unsigned j, const ComplexRect& zmx) {
    Rational coef = 1;
    for (unsigned t = 1; t <= j; ++t) coef *= Rational(a + t);
    if (j % 2 == 1) coef = -coef;
    // invert first: contour cells never contain x, so 1/(z-x) is always
    // well defined, while powers of wide rectangles may wrap zero
    return coef * pow_int(reciprocal(zmx), a + 1 + j);
}

}  // namespace detail

/// Cauchy-contour derivative estimation:
///   d^alpha f(x) = alpha!/(2 pi i)^n * integral over C of f(z)/(z-x)^{alpha+1} dz.
///
/// Univariate contours use a degree-3 Taylor rule per straight segment: odd
/// terms integrate to zero, the quadratic term integrates to dz^3/12
/// exactly, and the remainder is bounded by sup|g''''| len^5/384 over
/// coarse super-cells.  Multivariate contours use plain per-cell value
/// enclosures, which still converge as the subdivision refines.
inline ComplexRect cauchy_derivative_rect(const HoloEvaluator& f, size_t sigma,
                                          const MultiIndex& alpha,
                                          const std::vector<Rational>& x,
                                          const ContourSpec& contour, unsigned precision) {
    const auto& entry = f.spec().at(sigma);
    const size_t n = entry.arity;
    if (alpha.size() != n || x.size() != n) throw std::invalid_argument("cauchy: arity mismatch");
    if (n == 0) throw std::invalid_argument("cauchy: nullary family index");
    contour.validate(f.spec(), sigma);
    for (size_t i = 0; i < n; ++i) {
        if (abs(x[i]) > entry.rho[i]) throw std::domain_error("cauchy: point outside [-rho, rho]");
        if (abs(x[i]) >= contour.rects[i].a)
            throw std::invalid_argument("cauchy: contour does not enclose the point");
    }
    const unsigned pieces = 1u << std::min(precision, 13u);
    const unsigned eval_prec = precision + 16;
    const bool taylor = n == 1 && f.has_complex_derivative();

    Rational factorial = 1;
    for (unsigned a : alpha)
        for (unsigned j = 2; j <= a; ++j) factorial *= j;
    Interval pi = pi_enclosure(eval_prec);
    Interval two_pi_n = pow_int(Rational(2) * pi, static_cast<unsigned>(n));

    ComplexRect total = ComplexRect::point(Rational(0), Rational(0));
    if (taylor) {
        const unsigned a = alpha[0];
        const ComplexRect xr = ComplexRect::point(x[0], Rational(0));
        MultiIndex d0{0}, d1{1}, d2{2}, d3{3}, d4{4};
        auto g_at = [&](const ComplexRect& z, unsigned order) -> ComplexRect {
            // order-th derivative of g = f * k at z (order 0 or 2)
            ComplexRect zmx = z - xr;
            if (order == 0)
                return f.enclose_complex_derivative(sigma, d0, {z}, eval_prec) *
                       detail::kernel_derivative(a, 0, zmx);
            ComplexRect f0 = f.enclose_complex_derivative(sigma, d0, {z}, eval_prec);
            ComplexRect f1 = f.enclose_complex_derivative(sigma, d1, {z}, eval_prec);
            ComplexRect f2 = f.enclose_complex_derivative(sigma, d2, {z}, eval_prec);
            return f2 * detail::kernel_derivative(a, 0, zmx) +
                   Rational(2) * (f1 * detail::kernel_derivative(a, 1, zmx)) +
                   f0 * detail::kernel_derivative(a, 2, zmx);
        };
        auto g4_bound = [&](const ComplexRect& cell) -> Rational {
            ComplexRect f0 = f.enclose_complex_derivative(sigma, d0, {cell}, eval_prec);
            ComplexRect f1 = f.enclose_complex_derivative(sigma, d1, {cell}, eval_prec);
            ComplexRect f2 = f.enclose_complex_derivative(sigma, d2, {cell}, eval_prec);
            ComplexRect f3 = f.enclose_complex_derivative(sigma, d3, {cell}, eval_prec);
            ComplexRect f4 = f.enclose_complex_derivative(sigma, d4, {cell}, eval_prec);
            ComplexRect zmx = cell - xr;
            ComplexRect g4 = f4 * detail::kernel_derivative(a, 0, zmx) +
                             Rational(4) * (f3 * detail::kernel_derivative(a, 1, zmx)) +
                             Rational(6) * (f2 * detail::kernel_derivative(a, 2, zmx)) +
                             Rational(4) * (f1 * detail::kernel_derivative(a, 3, zmx)) +
                             f0 * detail::kernel_derivative(a, 4, zmx);
            return abs_upper(g4, 48);
        };
        Rational rem = 0;
        for (const auto& edge : detail::contour_edges(contour.rects[0])) {
            std::vector<detail::Segment> segs;
            detail::subdivide(edge, pieces, segs);
            // remainder bound on coarse super-cells of 16 segments
            const unsigned group = 16;
            for (size_t s0 = 0; s0 < segs.size(); s0 += group) {
                size_t s1 = std::min(segs.size(), s0 + group);
                ComplexRect super = segs[s0].span;
                for (size_t t = s0 + 1; t < s1; ++t) super = hull(super, segs[t].span);
                Rational g4 = g4_bound(super);
                for (size_t t = s0; t < s1; ++t) {
                    const auto& sg = segs[t];
                    ComplexRect m = ComplexRect::point(sg.mre, sg.mim);
                    ComplexRect dz = ComplexRect::point(sg.dre, sg.dim);
                    ComplexRect term = g_at(m, 0) * dz;
                    ComplexRect dz3 = pow_int(dz, 3);
                    term = term + Rational(1, 24) * (g_at(m, 2) * dz3);
                    total = round_out(total + term, eval_prec + 16);
                    Rational len = max(abs(sg.dre), abs(sg.dim));
                    rem += g4 * pow_int(len, 5) / 384;
                }
            }
        }
        Interval pad(-rem, rem);
        total = ComplexRect(total.re + pad, total.im + pad);
    } else {
        // plain product-cell Riemann enclosure
        std::vector<std::vector<detail::Segment>> segs(n);
        const unsigned pieces_nd = 1u << std::min(precision, 8u);
        for (size_t i = 0; i < n; ++i)
            for (const auto& e : detail::contour_edges(contour.rects[i]))
                detail::subdivide(e, pieces_nd, segs[i]);
        std::vector<size_t> idx(n, 0);
        while (true) {
            std::vector<ComplexRect> span(n);
            ComplexRect dz = ComplexRect::point(Rational(1), Rational(0));
            for (size_t i = 0; i < n; ++i) {
                const auto& s = segs[i][idx[i]];
                span[i] = s.span;
                dz = dz * ComplexRect::point(s.dre, s.dim);
            }
            ComplexRect k = ComplexRect::point(Rational(1), Rational(0));
            for (size_t i = 0; i < n; ++i) {
                ComplexRect d = span[i] - ComplexRect::point(x[i], Rational(0));
                k = k * pow_int(reciprocal(d), alpha[i] + 1);
            }
            ComplexRect val = f.enclose_complex(sigma, span, eval_prec) * k;
            total = round_out(total + val * dz, eval_prec + 16);
            size_t i = 0;
            for (; i < n; ++i) {
                if (++idx[i] < segs[i].size()) break;
                idx[i] = 0;
            }
            if (i == n) break;
        }
    }

    ComplexRect scaled = total / ComplexRect(two_pi_n, Interval::point(Rational(0)));
    // divide by i^n: multiply by i^{(4 - n mod 4) mod 4}
    unsigned rot = (4 - (n % 4)) % 4;
    ComplexRect i_unit(Interval::point(Rational(0)), Interval::point(Rational(1)));
    for (unsigned r = 0; r < rot; ++r) scaled = scaled * i_unit;
    scaled = factorial * scaled;
    return round_out(scaled, precision + 24);
}

/// Real-valued wrapper for real-on-real families; the imaginary part of the
/// full enclosure straddles zero and is dropped.
inline Interval cauchy_derivative(const HoloEvaluator& f, size_t sigma, const MultiIndex& alpha,
                                  const std::vector<Rational>& x, const ContourSpec& contour,
                                  unsigned precision) {
    return cauchy_derivative_rect(f, sigma, alpha, x, contour, precision).re;
}

/// Computable convergence modulus K(sigma, eps), monotone in eps.
struct ConvergenceModulus {
    std::function<unsigned(size_t, const Rational&)> K;

    unsigned operator()(size_t sigma, const Rational& eps) const {
        if (eps <= 0) throw std::invalid_argument("modulus requires eps > 0");
        return K(sigma, eps);
    }

    /// K(sigma, eps) = max(0, ceil(log2(A/eps)) + b)
    static ConvergenceModulus log2_form(const Rational& A, long b = 0) {
        return ConvergenceModulus{[A, b](size_t, const Rational& eps) -> unsigned {
            long k = ceil_log2(A / eps) + b;
            return k < 0 ? 0u : static_cast<unsigned>(k);
        }};
    }
};

/// K-infinity for derivative convergence:
///   K(sigma, c^{|alpha|} R(sigma)^alpha eps / alpha!).
inline unsigned derivative_convergence_index(const ConvergenceModulus& K, size_t sigma,
                                             const MultiIndex& alpha, const Rational& eps,
                                             const Rational& c, const std::vector<Rational>& R) {
    if (eps <= 0) throw std::invalid_argument("eps must be positive");
    if (c <= 0 || c >= 1) throw std::invalid_argument("c must lie in (0,1)");
    if (R.size() != alpha.size()) throw std::invalid_argument("R/alpha arity mismatch");
    Rational factor = pow_int(c, order_of(alpha));
    Rational fact = 1;
    for (size_t i = 0; i < alpha.size(); ++i) {
        factor *= pow_int(R[i], alpha[i]);
        for (unsigned j = 2; j <= alpha[i]; ++j) fact *= j;
    }
    return K(sigma, factor * eps / fact);
}

/// Sequence of holomorphic families indexed by k.
using HoloSequence = std::function<HoloPtr(unsigned)>;

/// Evaluator for the computable limit of a computably Cauchy sequence: at
/// precision p, evaluate the K(sigma, 2^-(p+1))-th member and widen by
/// 2^-(p+1).
class CauchyLimitEvaluator final : public HoloEvaluator {
  public:
    CauchyLimitEvaluator(HoloSequence seq, ConvergenceModulus K)
        : seq_(std::move(seq)), K_(std::move(K)), spec_holder_(seq_(0)) {}

    const FamilySpec& spec() const override { return spec_holder_->spec(); }

    ComplexRect enclose_complex(size_t sigma, const std::vector<ComplexRect>& cell,
                                unsigned precision) const override {
        Rational half = pow2(-static_cast<long>(precision) - 1);
        unsigned k = K_(sigma, half);
        ComplexRect v = seq_(k)->enclose_complex(sigma, cell, precision + 1);
        Interval pad(-half, half);
        return ComplexRect(v.re + pad, v.im + pad);
    }

  private:
    HoloSequence seq_;
    ConvergenceModulus K_;
    HoloPtr spec_holder_;
};

inline HoloPtr cauchy_limit(HoloSequence seq, ConvergenceModulus K) {
    return std::make_shared<CauchyLimitEvaluator>(std::move(seq), std::move(K));
}

}  // namespace quasigen

#endif
