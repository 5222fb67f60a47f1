#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "nvsc/superpotential.hpp"
#include "nvsc/wallcross.hpp"
#include "prop_util.hpp"

using namespace nvsc;
using namespace nvsc::wc;
using sp::Chamber;
using sp::Surface;

namespace {

const Valuation kNu{Rat(2), Rat(1)};
const Rat kCut(20);

const Monomial kQf3{AreaExponent{Rat(1), Rat(0)}, 0, -1};       // T^A / y
const Monomial kQdiag{AreaExponent{Rat(1, 2), Rat(0)}, 1, -1};  // T^(A/2) x / y

} // namespace

TEST_CASE("the F3 wall transform maps the left chart to the right chart") {
    Series left = sp::build({Surface::F3, Chamber::F3Left}, kNu, kCut);
    Series right = sp::build({Surface::F3, Chamber::F3Right}, kNu, kCut);
    WallTransform t{kQf3, {Rat(1)}, 1, 0};
    CHECK(apply(t, left) == right);
    CHECK(apply_inverse(t, right) == left);
}

TEST_CASE("the trivial transform is the identity") {
    propgen::Rng rng(31);
    Series s = propgen::random_series(rng, kNu, kCut);
    WallTransform t{kQf3, {}, 1, 0};
    CHECK(apply(t, s) == s);
}

TEST_CASE("the F2-to-F4 wall transform produces the alternative chart") {
    Rat cut(16);
    Series f2 = sp::build({Surface::F2, Chamber::Default}, kNu, cut);
    Series alt = sp::build({Surface::F4, Chamber::F4Alt}, kNu, cut);
    WallTransform t{kQdiag, {Rat(1)}, -1, -1};
    CHECK(apply(t, f2) == alt);
}

TEST_CASE("solving the F3 wall function") {
    Series right = sp::build({Surface::F3, Chamber::F3Right}, kNu, kCut);
    Series left = sp::build({Surface::F3, Chamber::F3Left}, kNu, kCut);
    auto c = solve_wall_function(right, left, kQf3, 1, 0, 6);
    CHECK(c == std::vector<Rat>{Rat(1), Rat(0), Rat(0), Rat(0), Rat(0), Rat(0)});
}

TEST_CASE("solving against itself gives the zero function") {
    Series w = sp::build({Surface::F0, Chamber::Default}, kNu, kCut);
    auto c = solve_wall_function(w, w, kQf3, 1, 0, 6);
    CHECK(c == std::vector<Rat>(6, Rat(0)));
}

TEST_CASE("solve recovers the F2-to-F4 transform with the roles inverted") {
    // oracle: the printed transform applied to the F2 chart (previous test)
    Rat cut(16);
    Series f2 = sp::build({Surface::F2, Chamber::Default}, kNu, cut);
    Series alt = sp::build({Surface::F4, Chamber::F4Alt}, kNu, cut);
    auto c = solve_wall_function(alt, f2, kQdiag, -1, -1, 6);
    CHECK(c == std::vector<Rat>{Rat(1), Rat(0), Rat(0), Rat(0), Rat(0), Rat(0)});
}

TEST_CASE("unreachable targets are inconsistent") {
    Series right = sp::build({Surface::F3, Chamber::F3Right}, kNu, kCut);
    Series left = sp::build({Surface::F3, Chamber::F3Left}, kNu, kCut);
    // perturb a y-only term; a transform with exp_y = 0 cannot touch it
    Series bad_src = add(right, Series(kNu, kCut).add_term(1, 0, 1, 0, -1));
    CHECK_THROWS_AS(solve_wall_function(bad_src, left, kQf3, 1, 0, 6), Error);
    try {
        solve_wall_function(bad_src, left, kQf3, 1, 0, 6);
    } catch (const Error& e) {
        CHECK(e.code() == Error::Code::Inconsistent);
    }
}

TEST_CASE("coefficients beyond the cutoff are underdetermined") {
    Rat cut(4); // q = T^A/y has valuation 2, so order 2 is invisible
    Series right = sp::build({Surface::F3, Chamber::F3Right}, kNu, cut);
    Series left = sp::build({Surface::F3, Chamber::F3Left}, kNu, cut);
    CHECK_THROWS_AS(solve_wall_function(right, left, kQf3, 1, 0, 2), Error);
    try {
        solve_wall_function(right, left, kQf3, 1, 0, 2);
    } catch (const Error& e) {
        CHECK(e.code() == Error::Code::Underdetermined);
    }
}

TEST_CASE("gluing of the F3 mirror charts") {
    CHECK(verify_gluing(kNu, Rat(10)));
    CHECK_FALSE(gluing_holds(kNu, Rat(10), {}));          // h = 1, no wall
    CHECK_FALSE(gluing_holds(kNu, Rat(10), {Rat(2)}));    // h = 1 + 2T^A/y
}

TEST_CASE("transforms are invertible and multiplicative") {
    propgen::Rng rng(77);
    for (int i = 0; i < 25; ++i) {
        // orthogonal exponent pair: the shape every wall crossing has
        int mx = rng.uniform(-2, 2);
        int my = rng.uniform(-2, 2);
        AreaExponent t{Rat(rng.uniform(1, 4), 2), Rat(rng.uniform(0, 2))};
        int k = rng.uniform(1, 2);
        WallTransform wt{Monomial{t, mx, my},
                         {propgen::random_coeff(rng), propgen::random_coeff(rng)},
                         -k * my, k * mx};
        Series a = propgen::random_series(rng, kNu, kCut, 4);
        Series b = propgen::random_series(rng, kNu, kCut, 4);
        CHECK(apply_inverse(wt, apply(wt, a)) == a);
        CHECK(apply(wt, mul(a, b)) == mul(apply(wt, a), apply(wt, b)));
    }
}

TEST_CASE("solve inverts apply on random transforms") {
    propgen::Rng rng(101);
    for (int i = 0; i < 15; ++i) {
        int mx = rng.uniform(-1, 1);
        int my = -rng.uniform(1, 2);
        int k = rng.uniform(1, 2);
        int ex = -k * my, ey = k * mx;
        if (ex == 0 && ey == 0)
            continue;
        std::vector<Rat> cs{propgen::random_coeff(rng), propgen::random_coeff(rng), Rat(0)};
        WallTransform wt{Monomial{AreaExponent{Rat(rng.uniform(1, 3), 2), Rat(0)}, mx, my}, cs,
                         ex, ey};
        Series w = Series(kNu, kCut).add_term(1, 0, 0, 1, 0).add_term(1, 0, 0, 0, 1);
        Series image = apply(wt, w);
        auto solved = solve_wall_function(image, w, wt.wall_monomial, ex, ey, 3);
        CHECK(solved == cs);
    }
}
