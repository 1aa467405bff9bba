#ifndef QUASIGEN_FAMILY_HPP
#define QUASIGEN_FAMILY_HPP

#include <deque>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "quasigen/expr.hpp"
#include "quasigen/poly.hpp"

namespace quasigen {

using MultiIndex = std::vector<unsigned>;

inline unsigned order_of(const MultiIndex& a) {
    unsigned d = 0;
    for (unsigned e : a) d += e;
    return d;
}

/// Index data of a family {S_sigma}: symbolic names, arities, domain radii
/// rho, and holomorphy margins R.
struct FamilySpec {
    struct Entry {
        std::string sigma;
        unsigned arity = 0;
        std::vector<Rational> rho;  // componentwise > 0, length = arity
        std::vector<Rational> R;    // componentwise > 0, length = arity
    };
    std::vector<Entry> entries;

    size_t size() const { return entries.size(); }
    const Entry& at(size_t i) const { return entries.at(i); }

    size_t index_of(const std::string& sigma) const {
        for (size_t i = 0; i < entries.size(); ++i)
            if (entries[i].sigma == sigma) return i;
        throw std::invalid_argument("unknown family index: " + sigma);
    }

    /// [-rho, rho] as a closed box.
    Box domain_box(size_t i) const {
        Box b;
        for (const auto& r : entries[i].rho) b.coords.push_back(Interval(-r, r));
        return b;
    }

    void validate() const {
        for (const auto& e : entries) {
            if (e.rho.size() != e.arity || e.R.size() != e.arity)
                throw std::invalid_argument("family spec: rho/R length != arity");
            for (const auto& r : e.rho)
                if (r <= 0) throw std::invalid_argument("family spec: rho must be positive");
            for (const auto& r : e.R)
                if (r <= 0) throw std::invalid_argument("family spec: R must be positive");
        }
    }
};

struct DerivativeIndex {
    size_t sigma = 0;   // index into FamilySpec
    MultiIndex alpha;   // length = arity of sigma
};

/// Small closed-form epsilon expressions: sums of terms
///   coef * weight(sigma) * 2^{-(a*|alpha| + b)}.
/// Strictly positive by construction (all coefficients positive).
struct EpsilonMap {
    struct Term {
        Rational coef = 1;
        unsigned a = 0;  // multiplies |alpha| in the exponent
        long b = 0;      // constant exponent offset
    };
    std::vector<Term> terms{Term{}};
    std::map<size_t, Rational> weights;  // default weight 1

    static EpsilonMap constant(const Rational& c) {
        EpsilonMap e;
        e.terms = {Term{c, 0, 0}};
        return e;
    }
    /// 2^{-(a|alpha| + b)}
    static EpsilonMap two_pow_alpha(unsigned a, long b) {
        EpsilonMap e;
        e.terms = {Term{Rational(1), a, b}};
        return e;
    }

    Rational operator()(size_t sigma, const MultiIndex& alpha) const {
        Rational w = 1;
        auto it = weights.find(sigma);
        if (it != weights.end()) w = it->second;
        Rational s = 0;
        unsigned d = order_of(alpha);
        for (const auto& t : terms)
            s += t.coef * w * pow2(-(static_cast<long>(t.a) * d + t.b));
        if (s <= 0) throw std::domain_error("epsilon map not positive");
        return s;
    }
};

/// Precision-indexed enclosure oracle for a family and all its partial
/// derivatives: the approximation oracle made total.  Enclosures contain
/// the exact range and tighten (nested) as precision grows.
class FamilyEvaluator {
  public:
    virtual ~FamilyEvaluator() = default;
    virtual const FamilySpec& spec() const = 0;
    virtual Interval enclose_raw(size_t sigma, const MultiIndex& alpha, const Box& B,
                                 unsigned precision) const = 0;
};

using FamilyPtr = std::shared_ptr<const FamilyEvaluator>;

/// Family whose members are builtin-expression functions plus an optional
/// exact polynomial part (the shape the perturbation pipeline produces).
class ExprFamily final : public FamilyEvaluator {
  public:
    ExprFamily(FamilySpec spec, std::vector<ExprPtr> defs)
        : spec_(std::move(spec)), defs_(std::move(defs)), polys_(defs_.size()) {
        spec_.validate();
        if (defs_.size() != spec_.size())
            throw std::invalid_argument("family: one definition per index required");
        for (size_t i = 0; i < defs_.size(); ++i)
            polys_[i] = MultiPoly::zero(spec_.at(i).arity);
    }
    ExprFamily(FamilySpec spec, std::vector<ExprPtr> defs, std::vector<MultiPoly> polys)
        : ExprFamily(std::move(spec), std::move(defs)) {
        if (polys.size() != defs_.size()) throw std::invalid_argument("family: poly part size");
        for (size_t i = 0; i < polys.size(); ++i) {
            if (polys[i].nvars != spec_.at(i).arity)
                throw std::invalid_argument("family: poly arity mismatch");
            polys_[i] = std::move(polys[i]);
        }
    }

    const FamilySpec& spec() const override { return spec_; }
    const ExprPtr& definition(size_t sigma) const { return defs_.at(sigma); }
    const MultiPoly& poly_part(size_t sigma) const { return polys_.at(sigma); }

    /// Same base expressions with an extra polynomial added to one member.
    std::shared_ptr<ExprFamily> with_added_poly(size_t sigma, const MultiPoly& g) const {
        auto polys = polys_;
        polys[sigma] = polys[sigma] + g;
        auto f = std::make_shared<ExprFamily>(spec_, defs_, std::move(polys));
        f->base_tag_ = base_tag_;
        return f;
    }

    /// Identity of the non-polynomial part; two ExprFamily instances with
    /// equal tags differ by exact polynomials only.
    const void* base_tag() const { return base_tag_; }

    Interval enclose_raw(size_t sigma, const MultiIndex& alpha, const Box& B,
                         unsigned precision) const override {
        const auto& entry = spec_.at(sigma);
        if (alpha.size() != entry.arity) throw std::invalid_argument("alpha arity mismatch");
        if (B.dim() != entry.arity) throw std::invalid_argument("box arity mismatch");
        const ExprWithGradient& d = derivative(sigma, alpha);
        Interval base = is_zero_expr(d.root()) ? Interval::point(Rational(0))
                                               : enclose_expr(d, B, precision);
        MultiPoly dp = differentiate(polys_[sigma], alpha);
        if (dp.is_zero()) return base;
        return base + evaluate_tight(dp, B);
    }

    /// Complex enclosure of S_sigma (value only) on a complex cell.
    ComplexRect enclose_complex(size_t sigma, const std::vector<ComplexRect>& cell,
                                unsigned precision) const {
        ComplexRect v = eval_complex(defs_.at(sigma), cell, precision);
        if (!polys_[sigma].is_zero()) v = v + evaluate(polys_[sigma], cell);
        return v;
    }

    ComplexRect enclose_complex_derivative(size_t sigma, const MultiIndex& alpha,
                                           const std::vector<ComplexRect>& cell,
                                           unsigned precision) const {
        const ExprWithGradient& d = derivative(sigma, alpha);
        ComplexRect v = eval_complex(d.root(), cell, precision);
        MultiPoly dp = differentiate(polys_[sigma], alpha);
        if (!dp.is_zero()) v = v + evaluate(dp, cell);
        return v;
    }

  private:
    const ExprWithGradient& derivative(size_t sigma, const MultiIndex& alpha) const {
        std::string key = std::to_string(sigma);
        for (unsigned a : alpha) key += "," + std::to_string(a);
        auto it = dcache_.find(key);
        if (it != dcache_.end()) return it->second;
        ExprPtr d = differentiate_multi(defs_[sigma], alpha);
        auto [pos, ok] = dcache_.emplace(key, ExprWithGradient(d, spec_.at(sigma).arity));
        return pos->second;
    }

    FamilySpec spec_;
    std::vector<ExprPtr> defs_;
    std::vector<MultiPoly> polys_;
    const void* base_tag_ = this;
    mutable std::map<std::string, ExprWithGradient> dcache_;
};

/// ---- operations --------------------------------------------------------

inline void check_in_domain(const FamilyEvaluator& f, size_t sigma, const Box& B) {
    Box dom = f.spec().domain_box(sigma);
    if (!dom.contains(B.closure())) throw std::domain_error("box outside family domain");
}

inline Interval enclose(const FamilyEvaluator& f, const DerivativeIndex& d, const Box& B,
                        unsigned precision) {
    check_in_domain(f, d.sigma, B);
    return f.enclose_raw(d.sigma, d.alpha, B, precision);
}

/// Certified min/max enclosures by branch and bound: first-widest-coordinate
/// subdivision, midpoint samples for inner bounds; deterministic.
struct Extremes {
    Interval min_enclosure, max_enclosure;
};

inline Extremes extremes(const FamilyEvaluator& f, const DerivativeIndex& d, const Box& B,
                         const Rational& tol, unsigned max_iter = 200000) {
    check_in_domain(f, d.sigma, B);
    if (tol <= 0) throw std::invalid_argument("tolerance must be positive");
    struct Cell {
        Box box;
        Interval range;
    };
    unsigned prec = 8;
    auto eval_cell = [&](const Box& b) { return f.enclose_raw(d.sigma, d.alpha, b, prec); };
    std::deque<Cell> cells{{B.closure(), eval_cell(B)}};
    // inner bounds from midpoints
    auto sample = [&](const Box& b) { return f.enclose_raw(d.sigma, d.alpha, Box::point(b.midpoint()), prec + 8); };
    Interval s0 = sample(B);
    Rational best_max_lo = *s0.lo, best_min_hi = *s0.hi;

    for (unsigned iter = 0; iter < max_iter; ++iter) {
        Rational glob_hi = *cells.front().range.hi, glob_lo = *cells.front().range.lo;
        for (const auto& c : cells) {
            glob_hi = max(glob_hi, *c.range.hi);
            glob_lo = min(glob_lo, *c.range.lo);
        }
        if (glob_hi - best_max_lo < tol && best_min_hi - glob_lo < tol) {
            return Extremes{Interval(glob_lo, best_min_hi), Interval(best_max_lo, glob_hi)};
        }
        // split the cell that limits either bound, widest coordinate first
        size_t pick = 0;
        bool found = false;
        for (size_t i = 0; i < cells.size(); ++i) {
            if (*cells[i].range.hi == glob_hi || *cells[i].range.lo == glob_lo) {
                if (width(cells[i].box) > 0) {
                    pick = i;
                    found = true;
                    break;
                }
            }
        }
        if (!found) {
            // all extremal cells degenerate: bounds are exact
            return Extremes{Interval(glob_lo, best_min_hi), Interval(best_max_lo, glob_hi)};
        }
        Cell c = cells[pick];
        cells.erase(cells.begin() + static_cast<long>(pick));
        size_t axis = 0;
        Rational w = 0;
        for (size_t v = 0; v < c.box.dim(); ++v)
            if (c.box[v].length() > w) w = c.box[v].length(), axis = v;
        Rational mid = c.box[axis].mid();
        for (int half = 0; half < 2; ++half) {
            Box nb = c.box;
            nb[axis] = half == 0 ? Interval(*c.box[axis].lo, mid) : Interval(mid, *c.box[axis].hi);
            Cell nc{nb, eval_cell(nb)};
            Interval s = sample(nb);
            best_max_lo = max(best_max_lo, *s.lo);
            best_min_hi = min(best_min_hi, *s.hi);
            cells.push_back(std::move(nc));
        }
        if (iter % 64 == 63 && prec < 48) prec += 4;
    }
    throw std::runtime_error("extremes: iteration budget exhausted");
}

/// Uniform-continuity modulus via a certified derivative (Lipschitz) bound:
/// returns delta with |f(x)-f(y)| < eps whenever ||x-y|| < delta on K.
inline Rational modulus(const FamilyEvaluator& f, const DerivativeIndex& d, const Box& K,
                        const Rational& eps) {
    check_in_domain(f, d.sigma, K);
    if (eps <= 0) throw std::invalid_argument("modulus requires eps > 0");
    Rational lip_sum = 0;
    const unsigned arity = f.spec().at(d.sigma).arity;
    for (unsigned v = 0; v < arity; ++v) {
        MultiIndex a = d.alpha;
        ++a[v];
        Interval g = f.enclose_raw(d.sigma, a, K.closure(), 12);
        lip_sum += max(abs(*g.lo), abs(*g.hi));
    }
    return eps / (lip_sum + 1);
}

/// Enclosure of the norm ||d^p(f_sigma)||: max over |alpha| <= p of
/// sup |d^alpha S_sigma| on A.
inline Interval sup_norm(const FamilyEvaluator& f, size_t sigma, unsigned p, const Box& A,
                         const Rational& tol) {
    const unsigned arity = f.spec().at(sigma).arity;
    std::vector<MultiIndex> alphas;
    MultiIndex cur(arity, 0);
    std::function<void(unsigned, unsigned)> gen = [&](unsigned pos, unsigned left) {
        if (pos == arity) {
            alphas.push_back(cur);
            return;
        }
        for (unsigned e = 0; e <= left; ++e) {
            cur[pos] = e;
            gen(pos + 1, left - e);
        }
        cur[pos] = 0;
    };
    if (arity == 0) alphas.push_back({});
    else gen(0, p);
    Interval norm = Interval::point(Rational(0));
    bool first = true;
    for (const auto& a : alphas) {
        Extremes e = extremes(f, DerivativeIndex{sigma, a}, A, tol);
        Interval m = hull(abs(e.min_enclosure), abs(e.max_enclosure));
        Interval top(max(*abs(e.min_enclosure).lo, *abs(e.max_enclosure).lo), *m.hi);
        norm = first ? top : Interval(max(*norm.lo, *top.lo), max(*norm.hi, *top.hi));
        first = false;
    }
    return norm;
}

enum class Verdict { True, False, Undecided };

/// Enclosure of sup |p| over a box by branch and bound with exact
/// polynomial arithmetic.
inline Interval poly_abs_sup(const MultiPoly& p, const Box& B, const Rational& tol,
                             unsigned max_iter = 20000) {
    if (p.is_zero()) return Interval::point(Rational(0));
    std::deque<Box> cells{B.closure()};
    auto cell_abs = [&](const Box& b) { return abs(evaluate_tight(p, b)); };
    Rational inner = *cell_abs(Box::point(B.midpoint())).lo;
    for (unsigned iter = 0; iter < max_iter; ++iter) {
        Rational hi = 0;
        size_t pick = cells.size();
        for (size_t i = 0; i < cells.size(); ++i) {
            Interval r = cell_abs(cells[i]);
            if (*r.hi > hi) hi = *r.hi;
            if (*r.hi > inner + tol && pick == cells.size() && width(cells[i]) > 0) pick = i;
        }
        if (hi - inner <= tol || pick == cells.size()) return Interval(inner, hi);
        Box c = cells[pick];
        cells.erase(cells.begin() + static_cast<long>(pick));
        size_t axis = 0;
        Rational w = 0;
        for (size_t v = 0; v < c.dim(); ++v)
            if (c[v].length() > w) w = c[v].length(), axis = v;
        Rational mid = c[axis].mid();
        for (int half = 0; half < 2; ++half) {
            Box nb = c;
            nb[axis] = half == 0 ? Interval(*c[axis].lo, mid) : Interval(mid, *c[axis].hi);
            inner = max(inner, *cell_abs(Box::point(nb.midpoint())).lo);
            cells.push_back(nb);
        }
    }
    // sound but possibly loose if the budget ran out
    Rational hi = 0;
    for (const auto& c : cells) hi = max(hi, *cell_abs(c).hi);
    return Interval(inner, hi);
}

/// Ball membership check: certified sup |d^alpha T - d^alpha S| < eps for
/// every listed derivative index.  Exact when S and T share base
/// expressions (the difference is then a known polynomial).
inline Verdict verify_ball(const FamilyPtr& S, const FamilyPtr& T, const EpsilonMap& eps,
                           const std::vector<DerivativeIndex>& indices, unsigned effort = 16) {
    if (S->spec().size() != T->spec().size())
        throw std::invalid_argument("verify_ball: family specs differ");
    auto se = std::dynamic_pointer_cast<const ExprFamily>(S);
    auto te = std::dynamic_pointer_cast<const ExprFamily>(T);
    bool exact = se && te && se->base_tag() == te->base_tag();
    bool undecided = false;
    for (const auto& d : indices) {
        Rational bound = eps(d.sigma, d.alpha);
        Box dom = S->spec().domain_box(d.sigma);
        if (exact) {
            MultiPoly diff = differentiate(te->poly_part(d.sigma) - se->poly_part(d.sigma), d.alpha);
            if (diff.is_zero()) continue;
            Interval sup = poly_abs_sup(diff, dom, bound / 16);
            if (*sup.hi < bound) continue;
            if (*sup.lo >= bound) return Verdict::False;
            undecided = true;
            continue;
        }
        bool ok = false, bad = false;
        for (unsigned prec = 6; prec <= effort && !ok && !bad; prec += 2) {
            Interval at_mid_T = T->enclose_raw(d.sigma, d.alpha, Box::point(dom.midpoint()), prec + 8);
            Interval at_mid_S = S->enclose_raw(d.sigma, d.alpha, Box::point(dom.midpoint()), prec + 8);
            Interval diff_mid = at_mid_T - at_mid_S;
            if (*diff_mid.lo >= bound || *diff_mid.hi <= -bound) {
                bad = true;
                break;
            }
            Interval rT = T->enclose_raw(d.sigma, d.alpha, dom, prec);
            Interval rS = S->enclose_raw(d.sigma, d.alpha, dom, prec);
            Interval diff = rT - rS;
            if (max(abs(*diff.lo), abs(*diff.hi)) < bound) ok = true;
        }
        if (bad) return Verdict::False;
        if (!ok) undecided = true;
    }
    return undecided ? Verdict::Undecided : Verdict::True;
}

/// Evaluation of the clamped extension: S_sigma inside [-rho, rho]
/// (boundary included), exactly zero outside.
inline Interval clamp_extend(const FamilyEvaluator& f, size_t sigma,
                             const std::vector<Rational>& x, unsigned precision = 16) {
    Box dom = f.spec().domain_box(sigma);
    if (x.size() != dom.dim()) throw std::invalid_argument("clamp_extend arity mismatch");
    if (!dom.contains(x)) return Interval::point(Rational(0));
    MultiIndex alpha(dom.dim(), 0);
    return f.enclose_raw(sigma, alpha, Box::point(x), precision);
}

}  // namespace quasigen

#endif
