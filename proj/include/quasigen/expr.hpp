#ifndef QUASIGEN_EXPR_HPP
#define QUASIGEN_EXPR_HPP

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "quasigen/box.hpp"
#include "quasigen/transcendental.hpp"

namespace quasigen {

/// Small certified-analytic expression language: the builtin definitions a
/// family spec may use.  Every operation is entire, so expressions are
/// holomorphic on all of C^n and closed under partial differentiation.
enum class ExprOp { Const, Var, Add, Sub, Mul, Neg, Pow, Exp, Sin, Cos };

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
    ExprOp op;
    Rational cval;              // Const
    size_t var = 0;             // Var
    unsigned k = 0;             // Pow exponent
    std::vector<ExprPtr> args;  // operands
};

inline ExprPtr e_const(Rational c) {
    auto e = std::make_shared<Expr>();
    e->op = ExprOp::Const;
    e->cval = std::move(c);
    return e;
}
inline ExprPtr e_var(size_t i) {
    auto e = std::make_shared<Expr>();
    e->op = ExprOp::Var;
    e->var = i;
    return e;
}
inline bool is_const(const ExprPtr& e, const Rational& v) {
    return e->op == ExprOp::Const && e->cval == v;
}
inline ExprPtr e_add(ExprPtr a, ExprPtr b) {
    if (is_const(a, 0)) return b;
    if (is_const(b, 0)) return a;
    if (a->op == ExprOp::Const && b->op == ExprOp::Const) return e_const(a->cval + b->cval);
    auto e = std::make_shared<Expr>();
    e->op = ExprOp::Add;
    e->args = {std::move(a), std::move(b)};
    return e;
}
inline ExprPtr e_sub(ExprPtr a, ExprPtr b) {
    if (is_const(b, 0)) return a;
    if (a->op == ExprOp::Const && b->op == ExprOp::Const) return e_const(a->cval - b->cval);
    auto e = std::make_shared<Expr>();
    e->op = ExprOp::Sub;
    e->args = {std::move(a), std::move(b)};
    return e;
}
inline ExprPtr e_neg(ExprPtr a) {
    if (a->op == ExprOp::Const) return e_const(-a->cval);
    auto e = std::make_shared<Expr>();
    e->op = ExprOp::Neg;
    e->args = {std::move(a)};
    return e;
}
inline ExprPtr e_mul(ExprPtr a, ExprPtr b) {
    if (is_const(a, 0) || is_const(b, 0)) return e_const(Rational(0));
    if (is_const(a, 1)) return b;
    if (is_const(b, 1)) return a;
    if (a->op == ExprOp::Const && b->op == ExprOp::Const) return e_const(a->cval * b->cval);
    auto e = std::make_shared<Expr>();
    e->op = ExprOp::Mul;
    e->args = {std::move(a), std::move(b)};
    return e;
}
inline ExprPtr e_pow(ExprPtr a, unsigned k) {
    if (k == 0) return e_const(Rational(1));
    if (k == 1) return a;
    if (a->op == ExprOp::Const) return e_const(pow_int(a->cval, k));
    auto e = std::make_shared<Expr>();
    e->op = ExprOp::Pow;
    e->k = k;
    e->args = {std::move(a)};
    return e;
}
inline ExprPtr e_exp(ExprPtr a) {
    auto e = std::make_shared<Expr>();
    e->op = ExprOp::Exp;
    e->args = {std::move(a)};
    return e;
}
inline ExprPtr e_sin(ExprPtr a) {
    auto e = std::make_shared<Expr>();
    e->op = ExprOp::Sin;
    e->args = {std::move(a)};
    return e;
}
inline ExprPtr e_cos(ExprPtr a) {
    auto e = std::make_shared<Expr>();
    e->op = ExprOp::Cos;
    e->args = {std::move(a)};
    return e;
}

inline ExprPtr differentiate(const ExprPtr& e, size_t var) {
    switch (e->op) {
        case ExprOp::Const: return e_const(Rational(0));
        case ExprOp::Var: return e_const(Rational(e->var == var ? 1 : 0));
        case ExprOp::Add: return e_add(differentiate(e->args[0], var), differentiate(e->args[1], var));
        case ExprOp::Sub: return e_sub(differentiate(e->args[0], var), differentiate(e->args[1], var));
        case ExprOp::Neg: return e_neg(differentiate(e->args[0], var));
        case ExprOp::Mul:
            return e_add(e_mul(differentiate(e->args[0], var), e->args[1]),
                         e_mul(e->args[0], differentiate(e->args[1], var)));
        case ExprOp::Pow:
            return e_mul(e_mul(e_const(Rational(e->k)), e_pow(e->args[0], e->k - 1)),
                         differentiate(e->args[0], var));
        case ExprOp::Exp: return e_mul(e_exp(e->args[0]), differentiate(e->args[0], var));
        case ExprOp::Sin: return e_mul(e_cos(e->args[0]), differentiate(e->args[0], var));
        case ExprOp::Cos: return e_mul(e_neg(e_sin(e->args[0])), differentiate(e->args[0], var));
    }
    throw std::logic_error("unreachable");
}

/// d^alpha e for a multi-index alpha.
inline ExprPtr differentiate_multi(ExprPtr e, const std::vector<unsigned>& alpha) {
    for (size_t v = 0; v < alpha.size(); ++v)
        for (unsigned j = 0; j < alpha[v]; ++j) e = differentiate(e, v);
    return e;
}

inline bool is_zero_expr(const ExprPtr& e) { return is_const(e, 0); }

/// Plain interval evaluation over a box (natural extension, outward-rounded).
inline Interval eval_interval(const ExprPtr& e, const Box& B, unsigned prec) {
    switch (e->op) {
        case ExprOp::Const: return Interval::point(e->cval);
        case ExprOp::Var: return B[e->var].closure();
        case ExprOp::Add: return round_out(eval_interval(e->args[0], B, prec) + eval_interval(e->args[1], B, prec), prec + 16);
        case ExprOp::Sub: return round_out(eval_interval(e->args[0], B, prec) - eval_interval(e->args[1], B, prec), prec + 16);
        case ExprOp::Neg: return -eval_interval(e->args[0], B, prec);
        case ExprOp::Mul: return round_out(eval_interval(e->args[0], B, prec) * eval_interval(e->args[1], B, prec), prec + 16);
        case ExprOp::Pow: return round_out(pow_int(eval_interval(e->args[0], B, prec), e->k), prec + 16);
        case ExprOp::Exp: return exp_interval(eval_interval(e->args[0], B, prec), prec + 8);
        case ExprOp::Sin: return sin_interval(eval_interval(e->args[0], B, prec), prec + 8);
        case ExprOp::Cos: return cos_interval(eval_interval(e->args[0], B, prec), prec + 8);
    }
    throw std::logic_error("unreachable");
}

/// Complex rectangle evaluation; sound since every builtin is entire.
inline ComplexRect eval_complex(const ExprPtr& e, const std::vector<ComplexRect>& z, unsigned prec) {
    switch (e->op) {
        case ExprOp::Const: return ComplexRect::point(e->cval, Rational(0));
        case ExprOp::Var: return z[e->var];
        case ExprOp::Add: return round_out(eval_complex(e->args[0], z, prec) + eval_complex(e->args[1], z, prec), prec + 16);
        case ExprOp::Sub: return round_out(eval_complex(e->args[0], z, prec) - eval_complex(e->args[1], z, prec), prec + 16);
        case ExprOp::Neg: return -eval_complex(e->args[0], z, prec);
        case ExprOp::Mul: return round_out(eval_complex(e->args[0], z, prec) * eval_complex(e->args[1], z, prec), prec + 16);
        case ExprOp::Pow: return round_out(pow_int(eval_complex(e->args[0], z, prec), e->k), prec + 16);
        case ExprOp::Exp: return exp_rect(eval_complex(e->args[0], z, prec), prec + 8);
        case ExprOp::Sin: return sin_rect(eval_complex(e->args[0], z, prec), prec + 8);
        case ExprOp::Cos: return cos_rect(eval_complex(e->args[0], z, prec), prec + 8);
    }
    throw std::logic_error("unreachable");
}

/// Derivative cache for one expression, shared by the enclosure engine.
class ExprWithGradient {
  public:
    ExprWithGradient(ExprPtr e, size_t arity) : root_(std::move(e)), arity_(arity) {}

    const ExprPtr& root() const { return root_; }
    size_t arity() const { return arity_; }

    const ExprPtr& partial(size_t v) const {
        if (grads_.empty()) {
            grads_.reserve(arity_);
            for (size_t i = 0; i < arity_; ++i) grads_.push_back(differentiate(root_, i));
        }
        return grads_.at(v);
    }

  private:
    ExprPtr root_;
    size_t arity_;
    mutable std::vector<ExprPtr> grads_;
};

namespace detail {

/// Direct evaluation intersected with the mean-value form
/// f(mid) + grad(B).(B - mid) on one cell.
inline Interval cell_enclosure(const ExprWithGradient& f, const Box& cell, unsigned prec) {
    Interval direct = eval_interval(f.root(), cell, prec);
    if (cell.dim() == 0) return direct;
    bool degenerate = true;
    for (const auto& c : cell.coords) degenerate = degenerate && c.degenerate();
    if (degenerate) return direct;
    Box mid = Box::point(cell.midpoint());
    Interval mv = eval_interval(f.root(), mid, prec);
    for (size_t v = 0; v < cell.dim(); ++v) {
        if (cell[v].degenerate()) continue;
        Interval g = eval_interval(f.partial(v), cell, prec);
        Rational h = cell[v].length() / 2;
        mv = mv + g * Interval(-h, h);
    }
    return meet(direct, round_out(mv, prec + 16));
}

inline unsigned grid_cells_per_axis(unsigned level, size_t dim) {
    if (dim == 0) return 1;
    unsigned bits = level / 4 + 1;
    unsigned cap = dim == 1 ? 7 : (dim == 2 ? 4 : 2);
    if (bits > cap) bits = cap;
    return 1u << bits;
}

inline Interval grid_enclosure(const ExprWithGradient& f, const Box& B, unsigned level) {
    size_t dim = B.dim();
    unsigned g = grid_cells_per_axis(level, dim);
    std::vector<size_t> idx(dim, 0);
    bool first = true;
    Interval acc;
    while (true) {
        Box cell;
        cell.coords.reserve(dim);
        for (size_t v = 0; v < dim; ++v) {
            const Interval& c = B[v];
            if (c.degenerate()) {
                cell.coords.push_back(c);
                continue;
            }
            Rational step = c.length() / g;
            Rational lo = *c.lo + step * Rational(static_cast<long>(idx[v]));
            Rational hi = idx[v] + 1 == g ? *c.hi : lo + step;
            cell.coords.push_back(Interval(lo, hi));
        }
        Interval enc = cell_enclosure(f, cell, level);
        acc = first ? enc : hull(acc, enc);
        first = false;
        size_t v = 0;
        for (; v < dim; ++v) {
            const Interval& c = B[v];
            unsigned lim = c.degenerate() ? 1 : g;
            if (++idx[v] < lim) break;
            idx[v] = 0;
        }
        if (v == dim) break;
    }
    return acc;
}

}  // namespace detail

/// Enclosure of f over B with the refinement contract: the result at
/// precision p' >= p is contained in the result at precision p.  Levels
/// 0,4,8,... up to p are evaluated and intersected; per-level cost is
/// geometric, so the total is within a small factor of the top level.
inline Interval enclose_expr(const ExprWithGradient& f, const Box& B, unsigned precision) {
    Interval acc = detail::grid_enclosure(f, B, 0);
    for (unsigned level = 4; level <= precision; level += 4)
        acc = meet(acc, detail::grid_enclosure(f, B, level));
    return acc;
}

}  // namespace quasigen

#endif
