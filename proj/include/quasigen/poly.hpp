#ifndef QUASIGEN_POLY_HPP
#define QUASIGEN_POLY_HPP

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "quasigen/box.hpp"
#include "quasigen/complex_rect.hpp"

namespace quasigen {

using Monomial = std::vector<unsigned>;  // exponent vector

inline unsigned total_degree(const Monomial& m) {
    unsigned d = 0;
    for (unsigned e : m) d += e;
    return d;
}

/// Graded lexicographic: first by total degree, then lex on exponents.
struct GradedLexLess {
    bool operator()(const Monomial& a, const Monomial& b) const {
        unsigned da = total_degree(a), db = total_degree(b);
        if (da != db) return da < db;
        return a < b;
    }
};

/// Sparse multivariate polynomial over Q with a fixed variable count.
/// Zero coefficients are never stored; the monomial map is kept in graded
/// lexicographic order, so equality is structural.
struct MultiPoly {
    size_t nvars = 0;
    std::map<Monomial, Rational, GradedLexLess> terms;

    MultiPoly() = default;
    explicit MultiPoly(size_t n) : nvars(n) {}

    static MultiPoly zero(size_t n) { return MultiPoly(n); }
    static MultiPoly constant(size_t n, const Rational& c) {
        MultiPoly p(n);
        if (c != 0) p.terms.emplace(Monomial(n, 0), c);
        return p;
    }
    static MultiPoly var(size_t n, size_t i) {
        if (i >= n) throw std::invalid_argument("poly var index out of range");
        MultiPoly p(n);
        Monomial m(n, 0);
        m[i] = 1;
        p.terms.emplace(std::move(m), Rational(1));
        return p;
    }
    static MultiPoly monomial(size_t n, Monomial m, const Rational& c) {
        MultiPoly p(n);
        if (c != 0) p.terms.emplace(std::move(m), c);
        return p;
    }

    bool is_zero() const { return terms.empty(); }
    bool is_constant() const {
        return terms.empty() || (terms.size() == 1 && total_degree(terms.begin()->first) == 0);
    }
    Rational constant_value() const {
        if (terms.empty()) return Rational(0);
        if (!is_constant()) throw std::domain_error("not a constant polynomial");
        return terms.begin()->second;
    }

    unsigned degree() const {
        unsigned d = 0;
        for (const auto& [m, c] : terms) d = std::max(d, total_degree(m));
        return d;
    }
    unsigned degree_in(size_t v) const {
        unsigned d = 0;
        for (const auto& [m, c] : terms) d = std::max(d, m[v]);
        return d;
    }

    void add_term(const Monomial& m, const Rational& c) {
        if (c == 0) return;
        auto it = terms.find(m);
        if (it == terms.end()) terms.emplace(m, c);
        else {
            it->second += c;
            if (it->second == 0) terms.erase(it);
        }
    }

    bool depends_on(size_t v) const {
        for (const auto& [m, c] : terms)
            if (m[v] > 0) return true;
        return false;
    }

    bool operator==(const MultiPoly& o) const { return nvars == o.nvars && terms == o.terms; }
};

inline MultiPoly operator+(const MultiPoly& a, const MultiPoly& b) {
    if (a.nvars != b.nvars) throw std::invalid_argument("poly arity mismatch");
    MultiPoly r = a;
    for (const auto& [m, c] : b.terms) r.add_term(m, c);
    return r;
}
inline MultiPoly operator-(const MultiPoly& a) {
    MultiPoly r(a.nvars);
    for (const auto& [m, c] : a.terms) r.terms.emplace(m, -c);
    return r;
}
inline MultiPoly operator-(const MultiPoly& a, const MultiPoly& b) { return a + (-b); }
inline MultiPoly operator*(const Rational& c, const MultiPoly& a) {
    MultiPoly r(a.nvars);
    if (c == 0) return r;
    for (const auto& [m, k] : a.terms) r.terms.emplace(m, c * k);
    return r;
}
inline MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
    if (a.nvars != b.nvars) throw std::invalid_argument("poly arity mismatch");
    MultiPoly r(a.nvars);
    for (const auto& [ma, ca] : a.terms)
        for (const auto& [mb, cb] : b.terms) {
            Monomial m(a.nvars);
            for (size_t i = 0; i < a.nvars; ++i) m[i] = ma[i] + mb[i];
            r.add_term(m, ca * cb);
        }
    return r;
}
inline MultiPoly pow_int(const MultiPoly& a, unsigned e) {
    MultiPoly r = MultiPoly::constant(a.nvars, Rational(1));
    MultiPoly b = a;
    while (e) {
        if (e & 1u) r = r * b;
        if (e >>= 1u) b = b * b;
    }
    return r;
}

/// Exact partial derivative by a multi-index.
inline MultiPoly differentiate(const MultiPoly& p, const std::vector<unsigned>& alpha) {
    if (alpha.size() != p.nvars) throw std::invalid_argument("derivative index arity mismatch");
    MultiPoly r(p.nvars);
    for (const auto& [m, c] : p.terms) {
        Rational coef = c;
        Monomial mm = m;
        bool dead = false;
        for (size_t v = 0; v < p.nvars && !dead; ++v) {
            for (unsigned j = 0; j < alpha[v]; ++j) {
                if (mm[v] == 0) {
                    dead = true;
                    break;
                }
                coef *= Rational(mm[v]);
                --mm[v];
            }
        }
        if (!dead) r.add_term(mm, coef);
    }
    return r;
}

inline MultiPoly differentiate_once(const MultiPoly& p, size_t v) {
    std::vector<unsigned> alpha(p.nvars, 0);
    alpha[v] = 1;
    return differentiate(p, alpha);
}

inline Rational evaluate(const MultiPoly& p, const std::vector<Rational>& x) {
    if (x.size() != p.nvars) throw std::invalid_argument("poly eval arity mismatch");
    Rational s = 0;
    for (const auto& [m, c] : p.terms) {
        Rational t = c;
        for (size_t v = 0; v < p.nvars; ++v)
            if (m[v]) t *= pow_int(x[v], m[v]);
        s += t;
    }
    return s;
}

/// Natural interval extension over a box.
inline Interval evaluate(const MultiPoly& p, const Box& B) {
    if (B.dim() != p.nvars) throw std::invalid_argument("poly eval arity mismatch");
    Interval s = Interval::point(Rational(0));
    for (const auto& [m, c] : p.terms) {
        Interval t = Interval::point(c);
        for (size_t v = 0; v < p.nvars; ++v)
            if (m[v]) t = t * pow_int(B[v].closure(), m[v]);
        s = s + t;
    }
    return s;
}

/// Interval extension intersected with a first-order mean-value form; much
/// tighter on narrow boxes.
inline Interval evaluate_tight(const MultiPoly& p, const Box& B) {
    Interval direct = evaluate(p, B);
    bool degenerate = true;
    for (const auto& c : B.coords) {
        if (!c.bounded()) return direct;
        degenerate = degenerate && c.degenerate();
    }
    if (degenerate || B.dim() == 0) return direct;
    Interval mv = Interval::point(evaluate(p, B.midpoint()));
    for (size_t v = 0; v < B.dim(); ++v) {
        if (B[v].degenerate()) continue;
        Interval g = evaluate(differentiate_once(p, v), B);
        Rational h = B[v].length() / 2;
        mv = mv + g * Interval(-h, h);
    }
    return meet(direct, mv);
}

inline ComplexRect evaluate(const MultiPoly& p, const std::vector<ComplexRect>& z) {
    if (z.size() != p.nvars) throw std::invalid_argument("poly eval arity mismatch");
    ComplexRect s = ComplexRect::point(Rational(0), Rational(0));
    for (const auto& [m, c] : p.terms) {
        ComplexRect t = ComplexRect::point(c, Rational(0));
        for (size_t v = 0; v < p.nvars; ++v)
            if (m[v]) t = t * pow_int(z[v], m[v]);
        s = s + t;
    }
    return s;
}

/// sup |p| bound on the polydisk of the given radii (sum of |coeff| r^deg).
inline Rational abs_sup_on_polydisk(const MultiPoly& p, const std::vector<Rational>& radii) {
    if (radii.size() != p.nvars) throw std::invalid_argument("radius arity mismatch");
    Rational s = 0;
    for (const auto& [m, c] : p.terms) {
        Rational t = abs(c);
        for (size_t v = 0; v < p.nvars; ++v)
            if (m[v]) t *= pow_int(radii[v], m[v]);
        s += t;
    }
    return s;
}

/// Substitute variable v := value, keeping the ambient variable list.
inline MultiPoly substitute_value(const MultiPoly& p, size_t v, const Rational& value) {
    MultiPoly r(p.nvars);
    for (const auto& [m, c] : p.terms) {
        Monomial mm = m;
        Rational coef = c * pow_int(value, mm[v]);
        mm[v] = 0;
        r.add_term(mm, coef);
    }
    return r;
}

/// Rename/duplicate variables: result(y) = p(y_{map[0]}, ..., y_{map[n-1]}).
inline MultiPoly compose_vars(const MultiPoly& p, const std::vector<size_t>& map, size_t new_nvars) {
    if (map.size() != p.nvars) throw std::invalid_argument("compose_vars arity mismatch");
    MultiPoly r(new_nvars);
    for (const auto& [m, c] : p.terms) {
        Monomial mm(new_nvars, 0);
        for (size_t v = 0; v < p.nvars; ++v) {
            if (map[v] >= new_nvars) throw std::invalid_argument("compose_vars index out of range");
            mm[map[v]] += m[v];
        }
        r.add_term(mm, c);
    }
    return r;
}

/// Remove a set of variables that the polynomial does not depend on.
/// keep[i] gives the new index of old variable i, or SIZE_MAX to drop.
inline MultiPoly restrict_vars(const MultiPoly& p, const std::vector<size_t>& keep, size_t new_nvars) {
    MultiPoly r(new_nvars);
    for (const auto& [m, c] : p.terms) {
        Monomial mm(new_nvars, 0);
        for (size_t v = 0; v < p.nvars; ++v) {
            if (m[v] == 0) continue;
            if (keep[v] == SIZE_MAX) throw std::invalid_argument("restrict_vars drops a used variable");
            mm[keep[v]] = m[v];
        }
        r.add_term(mm, c);
    }
    return r;
}

/// General polynomial composition: substitute args[i] for variable i.
inline MultiPoly compose(const MultiPoly& p, const std::vector<MultiPoly>& args) {
    if (args.size() != p.nvars) throw std::invalid_argument("compose arity mismatch");
    size_t n = args.empty() ? 0 : args[0].nvars;
    for (const auto& a : args)
        if (a.nvars != n) throw std::invalid_argument("compose argument arity mismatch");
    MultiPoly r(n);
    for (const auto& [m, c] : p.terms) {
        MultiPoly t = MultiPoly::constant(n, c);
        for (size_t v = 0; v < p.nvars; ++v)
            if (m[v]) t = t * pow_int(args[v], m[v]);
        r = r + t;
    }
    return r;
}

inline std::string to_string(const MultiPoly& p) {
    if (p.terms.empty()) return "0";
    std::string s;
    for (auto it = p.terms.rbegin(); it != p.terms.rend(); ++it) {
        if (!s.empty()) s += " + ";
        s += to_string(it->second);
        for (size_t v = 0; v < p.nvars; ++v) {
            if (it->first[v] == 0) continue;
            s += "*x" + std::to_string(v + 1);
            if (it->first[v] > 1) s += "^" + std::to_string(it->first[v]);
        }
    }
    return s;
}

}  // namespace quasigen

#endif
