#include <catch2/catch_amalgamated.hpp>

#include <memory>

#include "quasigen/holo.hpp"

using namespace quasigen;

namespace {

std::shared_ptr<ExprFamily> single(const std::string& name, unsigned arity, ExprPtr def,
                                   Rational rho_val = Rational(1), Rational R_val = Rational(1)) {
    FamilySpec spec;
    FamilySpec::Entry e;
    e.sigma = name;
    e.arity = arity;
    e.rho.assign(arity, rho_val);
    e.R.assign(arity, R_val);
    spec.entries.push_back(e);
    return std::make_shared<ExprFamily>(spec, std::vector<ExprPtr>{std::move(def)});
}

Interval refine_cauchy(const HoloEvaluator& h, const MultiIndex& alpha,
                       const std::vector<Rational>& x, const Rational& target_width) {
    ContourSpec cs = ContourSpec::for_index(h.spec(), 0);
    for (unsigned p = 6; p <= 13; ++p) {
        Interval r = cauchy_derivative(h, 0, alpha, x, cs, p);
        if (r.length() < target_width) return r;
    }
    return cauchy_derivative(h, 0, alpha, x, cs, 13);
}

}  // namespace

TEST_CASE("cauchy derivative: z^2, constant, exp") {
    ExprHolo sq(single("sq", 1, e_pow(e_var(0), 2)));
    Interval d1 = refine_cauchy(sq, {1}, {rat(1, 2)}, rat(1, 1000000));
    CHECK(d1.contains(rat(1)));  // (z^2)' = 2z at 1/2
    CHECK(d1.length() < rat(1, 1000000));

    ExprHolo c7(single("c", 1, e_const(rat(7))));
    Interval d3 = refine_cauchy(c7, {3}, {rat(0)}, rat(1, 1000));
    CHECK(d3.contains(rat(0)));

    ExprHolo ex(single("exp", 1, e_exp(e_var(0))));
    Interval d2 = refine_cauchy(ex, {2}, {rat(0)}, rat(1, 1000000));
    CHECK(d2.contains(rat(1)));  // exp'' (0) = 1
    CHECK(d2.length() < rat(1, 1000000));
}

TEST_CASE("cauchy derivative vs central finite difference") {
    auto fam = single("f", 1, e_mul(e_sin(e_var(0)), e_exp(e_var(0))));
    ExprHolo h(fam);
    Rational x0 = rat(1, 3), step = rat(1, 10000);
    Interval d = refine_cauchy(h, {1}, {x0}, rat(1, 100000));
    Interval fp = enclose(*fam, {0, {0}}, Box::point({x0 + step}), 30);
    Interval fm = enclose(*fam, {0, {0}}, Box::point({x0 - step}), 30);
    Interval central = (fp - fm) / Interval::point(2 * step);
    Rational tol = 10 * step * step + d.length() + central.length();
    CHECK(abs(*d.lo - *central.lo) <= tol + step);
    // enclosures must overlap within the finite-difference error budget
    CHECK(*d.lo <= *central.hi + tol);
    CHECK(*central.lo <= *d.hi + tol);
}

TEST_CASE("contour independence") {
    ExprHolo h(single("f", 1, e_exp(e_var(0))));
    ContourSpec c1 = ContourSpec::for_index(h.spec(), 0, rat(1, 2));
    ContourSpec c2;
    c2.c = rat(3, 4);
    c2.rects = {ContourRect{rat(13, 10), rat(1, 2)}};
    Interval r1 = cauchy_derivative(h, 0, {1}, {rat(1, 4)}, c1, 9);
    Interval r2 = cauchy_derivative(h, 0, {1}, {rat(1, 4)}, c2, 9);
    CHECK(overlap(r1, r2));
}

TEST_CASE("contour validation errors") {
    ExprHolo h(single("f", 1, e_var(0)));
    ContourSpec bad;
    bad.rects = {ContourRect{rat(1, 2), rat(1, 4)}};  // does not encircle [-1,1]
    CHECK_THROWS_AS(cauchy_derivative(h, 0, {0}, {rat(0)}, bad, 6), std::invalid_argument);
    ContourSpec escape;
    escape.rects = {ContourRect{rat(3), rat(3)}};  // leaves C(1,1)
    CHECK_THROWS_AS(cauchy_derivative(h, 0, {0}, {rat(0)}, escape, 6), std::invalid_argument);
    ContourSpec ok = ContourSpec::for_index(h.spec(), 0);
    CHECK_THROWS_AS(cauchy_derivative(h, 0, {0}, {rat(2)}, ok, 6), std::domain_error);
}

TEST_CASE("real-on-real: imaginary part straddles zero") {
    ExprHolo h(single("f", 1, e_sin(e_var(0))));
    ContourSpec cs = ContourSpec::for_index(h.spec(), 0);
    ComplexRect r = cauchy_derivative_rect(h, 0, {2}, {rat(1, 3)}, cs, 9);
    CHECK(*r.im.lo <= 0);
    CHECK(*r.im.hi >= 0);
    // and the evaluator itself is exactly real on real rectangles
    ComplexRect v = h.enclose_complex(0, {ComplexRect::real(Interval(rat(0), rat(1, 2)))}, 16);
    CHECK(*v.im.lo == 0);
    CHECK(*v.im.hi == 0);
}

TEST_CASE("derivative convergence index formula") {
    ConvergenceModulus K = ConvergenceModulus::log2_form(rat(1));  // ceil(log2(1/eps))
    // |alpha| = 0: factor 1
    CHECK(derivative_convergence_index(K, 0, {0}, rat(1, 8), rat(1, 2), {rat(1)}) == K(0, rat(1, 8)));
    // R=(1), c=1/2, alpha=(1), eps=1 -> K(sigma, 1/2)
    CHECK(derivative_convergence_index(K, 0, {1}, rat(1), rat(1, 2), {rat(1)}) == K(0, rat(1, 2)));
    // R=(2), c=1/2, alpha=(2), eps=1 -> K(sigma, (1/4)*4*1/2) = K(sigma, 1/2)
    CHECK(derivative_convergence_index(K, 0, {2}, rat(1), rat(1, 2), {rat(2)}) == K(0, rat(1, 2)));
}

TEST_CASE("K-infinity bound holds end to end") {
    // S^(k) = S + 2^-k g with ||g|| <= 1 on C(1,1); K(sigma,eps) = ceil(log2(1/eps)) + 1
    auto S = single("s", 1, e_sin(e_var(0)));
    std::vector<MultiPoly> gs;
    gs.push_back(rat(1, 2) * MultiPoly::var(1, 0));                                   // z/2
    gs.push_back(rat(1, 8) * (pow_int(MultiPoly::var(1, 0), 2) - MultiPoly::constant(1, rat(1))));
    gs.push_back(rat(1, 16) * pow_int(MultiPoly::var(1, 0), 3));                      // z^3/16
    ConvergenceModulus K = ConvergenceModulus::log2_form(rat(1), 1);
    std::vector<Rational> R{rat(1)};
    for (const auto& g : gs) {
        for (unsigned ord = 0; ord <= 3; ++ord) {
            MultiIndex alpha{ord};
            Rational eps = rat(1, 50);
            unsigned kinf = derivative_convergence_index(K, 0, alpha, eps, rat(1, 2), R);
            MultiPoly dg = differentiate(g, alpha);
            for (unsigned k = kinf; k < kinf + 4; ++k) {
                for (int i = 0; i < 50; ++i) {
                    Rational x = rat(-1) + rat(2 * i, 49);
                    Rational diff = abs(pow2(-static_cast<long>(k)) * evaluate(dg, {x}));
                    CHECK(diff < eps);
                }
            }
        }
    }
}

TEST_CASE("cauchy limit evaluator") {
    // constant sequence
    auto S = single("s", 1, e_exp(e_var(0)));
    HoloPtr base = std::make_shared<ExprHolo>(S);
    ConvergenceModulus trivial{[](size_t, const Rational&) { return 0u; }};
    HoloPtr lim = cauchy_limit([&](unsigned) { return base; }, trivial);
    ComplexRect v = lim->enclose_complex(0, {ComplexRect::point(rat(1, 2), rat(0))}, 12);
    Interval truth = exp_point(rat(1, 2), 30);
    CHECK(*v.re.lo <= *truth.lo);
    CHECK(*v.re.hi >= *truth.hi);
    CHECK(v.re.length() <= pow2(-10));

    // S^(k)(z) = z + 2^-k with K(sigma, eps) = ceil(log2(2/eps))
    std::vector<HoloPtr> members;
    for (unsigned k = 0; k < 40; ++k) {
        auto fk = single("s", 1, e_add(e_var(0), e_const(pow2(-static_cast<long>(k)))));
        members.push_back(std::make_shared<ExprHolo>(fk));
    }
    ConvergenceModulus K2 = ConvergenceModulus::log2_form(rat(2));
    HoloPtr lim2 = cauchy_limit(
        [&](unsigned k) { return members.at(std::min<size_t>(k, members.size() - 1)); }, K2);
    ComplexRect v2 = lim2->enclose_complex(0, {ComplexRect::point(rat(1, 3), rat(0))}, 14);
    CHECK(v2.re.contains(rat(1, 3)));  // the limit is the identity
    CHECK(v2.re.length() <= pow2(-11));

    // Taylor partial sums of exp converge to exp on the real segment
    std::vector<HoloPtr> taylor;
    for (unsigned k = 0; k < 30; ++k) {
        MultiPoly p(1);
        Rational fact = 1;
        for (unsigned j = 0; j <= k + 4; ++j) {
            if (j > 0) fact *= j;
            p = p + MultiPoly::monomial(1, {j}, Rational(1) / fact);
        }
        auto fk = std::make_shared<ExprFamily>(S->spec(), std::vector<ExprPtr>{e_const(rat(0))},
                                               std::vector<MultiPoly>{p});
        taylor.push_back(std::make_shared<ExprHolo>(fk));
    }
    // |z| <= 2 on C(1,1); tail of exp from term k+5: 2^{k+5}/(k+5)! <= 2^-k for k >= 0
    ConvergenceModulus K3 = ConvergenceModulus::log2_form(rat(1));
    HoloPtr lim3 = cauchy_limit(
        [&](unsigned k) { return taylor.at(std::min<size_t>(k, taylor.size() - 1)); }, K3);
    ComplexRect v3 = lim3->enclose_complex(0, {ComplexRect::point(rat(1), rat(0))}, 12);
    Interval e1 = exp_point(rat(1), 30);
    CHECK(*v3.re.lo <= *e1.lo);
    CHECK(*v3.re.hi >= *e1.hi);
}
