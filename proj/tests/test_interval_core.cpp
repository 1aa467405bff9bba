#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "quasigen/box.hpp"
#include "quasigen/interval.hpp"
#include "quasigen/rational.hpp"

using namespace quasigen;

namespace {

Rational rand_rational(std::mt19937& rng, int lo = -20, int hi = 20, int max_den = 12) {
    std::uniform_int_distribution<int> n(lo, hi), d(1, max_den);
    return Rational(n(rng)) / Rational(d(rng));
}

Interval rand_interval(std::mt19937& rng) {
    Rational a = rand_rational(rng), b = rand_rational(rng);
    if (b < a) std::swap(a, b);
    return Interval(a, b);
}

Rational rand_in(std::mt19937& rng, const Interval& i) {
    std::uniform_int_distribution<int> t(0, 1000);
    return *i.lo + (i.length() * t(rng)) / 1000;
}

}  // namespace

TEST_CASE("rational parsing and formatting") {
    CHECK(parse_rational("3/4") == rat(3, 4));
    CHECK(parse_rational("-7") == rat(-7));
    CHECK(parse_rational("0.25") == rat(1, 4));
    CHECK(to_string(rat(-3, 6)) == "-1/2");
    CHECK(pow2(-3) == rat(1, 8));
    CHECK(dyadic_floor(rat(1, 3), 2) == rat(1, 4));
    CHECK(dyadic_ceil(rat(1, 3), 2) == rat(1, 2));
    CHECK(ceil_log2(rat(1, 3)) == -1);
    CHECK(ceil_log2(rat(8)) == 3);
}

TEST_CASE("interval arithmetic basics") {
    Interval a(rat(1), rat(2)), b(rat(3), rat(4));
    CHECK((a + b) == Interval(rat(4), rat(6)));

    Interval c(rat(-1), rat(2));
    CHECK((c * c) == Interval(rat(-2), rat(4)));

    Interval d(rat(2), rat(4));
    CHECK(reciprocal(d) == Interval(rat(1, 4), rat(1, 2)));

    CHECK_THROWS_AS(reciprocal(c), std::domain_error);
    CHECK(abs(Interval(rat(-3), rat(1))) == Interval(rat(0), rat(3)));
    CHECK(pow_int(Interval(rat(-2), rat(1)), 2) == Interval(rat(0), rat(4)));
}

TEST_CASE("interval arithmetic: inclusion monotonicity and containment") {
    std::mt19937 rng(12345);
    for (int trial = 0; trial < 1000; ++trial) {
        Interval A = rand_interval(rng), B = rand_interval(rng);
        // wider copies
        Interval A2(*A.lo - rat(1, 7), *A.hi + rat(1, 5));
        Interval B2(*B.lo - rat(1, 3), *B.hi + rat(1, 9));
        Rational x = rand_in(rng, A), y = rand_in(rng, B);

        Interval s = A + B;
        CHECK(s.contains(x + y));
        CHECK((A2 + B2).contains(s));

        Interval m = A * B;
        CHECK(m.contains(x * y));
        CHECK((A2 * B2).contains(m));

        Interval d = A - B;
        CHECK(d.contains(x - y));
        CHECK((A2 - B2).contains(d));

        if (*B.lo > 0 || *B.hi < 0) {
            Interval q = A / B;
            CHECK(q.contains(x / (y == 0 ? *B.lo : y)));
        }
        CHECK(abs(A).contains(abs(x)));
    }
}

TEST_CASE("box width") {
    Box b({Interval(rat(0), rat(1)), Interval(rat(0), rat(3))});
    CHECK(width(b) == rat(3));
    CHECK(width(Box::point({rat(2), rat(5)})) == rat(0));
    CHECK(width(Box({Interval(rat(-1), rat(2)), Interval(rat(0), rat(1))})) == rat(3));
    Box ub({Interval::ray_above(rat(0))});
    CHECK_THROWS_AS(width(ub), std::domain_error);
}

TEST_CASE("shrink: the four interval type cases") {
    // (0,1) with delta 1/10
    RationalBoxManifold d1 = RationalBoxManifold::open_box({Interval::open(rat(0), rat(1))});
    auto s1 = shrink(d1, rat(1, 10));
    CHECK(s1.U[0] == Interval::closed(rat(1, 10), rat(9, 10)));

    // R with delta 1/2
    RationalBoxManifold d2 = RationalBoxManifold::open_box({Interval::whole_line()});
    auto s2 = shrink(d2, rat(1, 2));
    CHECK(s2.U[0] == Interval::closed(rat(-2), rat(2)));

    // (0, +inf) with delta 1/4
    RationalBoxManifold d3 = RationalBoxManifold::open_box({Interval::ray_above(rat(0))});
    auto s3 = shrink(d3, rat(1, 4));
    CHECK(s3.U[0] == Interval::closed(rat(1, 4), rat(4)));

    // (-inf, 2) with delta 1/4
    RationalBoxManifold d4 = RationalBoxManifold::open_box({Interval::ray_below(rat(2))});
    auto s4 = shrink(d4, rat(1, 4));
    CHECK(s4.U[0] == Interval::closed(rat(-4), rat(7, 4)));

    // empty shrink
    CHECK_THROWS_AS(shrink(d1, rat(2)), std::domain_error);
}

TEST_CASE("shrink nesting") {
    std::mt19937 rng(777);
    for (int trial = 0; trial < 50; ++trial) {
        Rational a = rand_rational(rng), w = abs(rand_rational(rng)) + 1;
        RationalBoxManifold d =
            RationalBoxManifold::open_box({Interval::open(a, a + w), Interval::whole_line()});
        Rational d1 = rat(1, 20), d2 = rat(1, 5);
        if (d2 > w / 2) continue;
        Box s1 = shrink_to_box(d, d1), s2 = shrink_to_box(d, d2);
        CHECK(s1.contains(s2));  // larger delta shrinks more
        for (size_t i = 0; i < s1.dim(); ++i) {
            if (d.U[i].bounded()) CHECK(d.U[i].closure().contains(s1[i]));
        }
    }
}

TEST_CASE("stratify examples") {
    // [a,b] -> {a}, (a,b), {b}
    Box b1({Interval::closed(rat(0), rat(1))});
    auto s1 = stratify(b1);
    REQUIRE(s1.size() == 3);
    int points = 0, opens = 0;
    for (const auto& s : s1) {
        if (s.dim() == 0) ++points;
        else {
            ++opens;
            CHECK(s.U[0] == Interval::open(rat(0), rat(1)));
        }
    }
    CHECK(points == 2);
    CHECK(opens == 1);

    // {a} -> {{a}}
    auto s2 = stratify(Box::point({rat(5)}));
    REQUIRE(s2.size() == 1);
    CHECK(s2[0].dim() == 0);

    // [0,1] x (0,1) -> three strata
    Box b3({Interval::closed(rat(0), rat(1)), Interval::open(rat(0), rat(1))});
    auto s3 = stratify(b3);
    CHECK(s3.size() == 3);
}

TEST_CASE("stratify partitions the box") {
    // strata pairwise disjoint, union covers: checked on rational samples
    Box b({Interval::closed(rat(-1), rat(1)), Interval(rat(0), rat(2), false, true)});
    auto strata = stratify(b);
    std::mt19937 rng(999);
    for (int trial = 0; trial < 500; ++trial) {
        std::uniform_int_distribution<int> pick(0, 8);
        // include boundary values with positive probability
        auto coord = [&](const Interval& c) {
            int p = pick(rng);
            if (p == 0) return *c.lo;
            if (p == 1) return *c.hi;
            return rand_in(rng, c);
        };
        std::vector<Rational> pt{coord(b[0]), coord(b[1])};
        if (!b.contains(pt)) continue;
        int hits = 0;
        for (const auto& s : strata)
            if (s.ambient_box().contains(pt)) ++hits;
        CHECK(hits == 1);
    }
}

TEST_CASE("manifold embedding") {
    RationalBoxManifold d(3, {0, 2}, {Interval::open(rat(0), rat(1)), Interval::open(rat(-1), rat(1))},
                          {rat(5)});
    CHECK(d.dim() == 2);
    Box amb = d.ambient_box();
    CHECK(amb[1] == Interval::point(rat(5)));
    auto p = d.embed_point({rat(1, 2), rat(0)});
    CHECK(p == std::vector<Rational>{rat(1, 2), rat(5), rat(0)});
}
