#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "nvsc/scattering.hpp"
#include "nvsc/superpotential.hpp"

using namespace nvsc;
using namespace nvsc::sc;

namespace {

const Valuation kNu{Rat(2), Rat(1)};

Series x_of(const Valuation& nu, const Rat& cut) {
    return Series::monomial(1, Monomial{AreaExponent{}, 1, 0}, nu, cut);
}
Series y_of(const Valuation& nu, const Rat& cut) {
    return Series::monomial(1, Monomial{AreaExponent{}, 0, 1}, nu, cut);
}

const Diagram& completed12() {
    static const Diagram d = complete(initial_diagram(kNu, Rat(12)), Rat(12));
    return d;
}

const Wall* find_wall(const Diagram& d, IVec dir, bool line) {
    for (const auto& w : d.walls)
        if (w.dir == dir && w.full_line == line)
            return &w;
    return nullptr;
}

Series expected_ray_fn(const Valuation& nu, const Rat& cut, int sx, int k) {
    // 1 + T^((2k-1)A/2) x^(+-1) y^(-(2k-1))
    return Series::one(nu, cut).add_term(
        1, Monomial{AreaExponent{Rat(2 * k - 1, 2), Rat(0)}, sx, -(2 * k - 1)});
}

} // namespace

TEST_CASE("empty diagram loop is the identity") {
    Diagram d(kNu, Rat(8));
    auto [px, py] = path_ordered_product(d, Orientation::Clockwise);
    CHECK(px == x_of(kNu, Rat(8)));
    CHECK(py == y_of(kNu, Rat(8)));
}

TEST_CASE("initial walls alone fail at the first mixed order") {
    Diagram d = initial_diagram(kNu, Rat(4)); // 2 * nu_A
    auto [px, py] = path_ordered_product(d, Orientation::Clockwise);
    Series fx = mul_monomial(px, 1, Monomial{AreaExponent{}, -1, 0});
    fx.add_term(-1, Monomial{});
    Series fy = mul_monomial(py, 1, Monomial{AreaExponent{}, 0, -1});
    fy.add_term(-1, Monomial{});

    // hand-composed commutator: P(x) = x(1 - 4 T^A/y^2) + higher order
    REQUIRE(!fx.is_zero());
    CHECK(fx.min_val() == kNu.nu_a);
    CHECK(fx.coeff(Monomial{AreaExponent{Rat(1), Rat(0)}, 0, -2}) == Rat(-4));
    for (const auto& t : fx.terms())
        if (!(t.m == Monomial{AreaExponent{Rat(1), Rat(0)}, 0, -2}))
            CHECK(t.v == Rat(3));
    for (const auto& t : fy.terms())
        CHECK(t.v > kNu.nu_a);
}

TEST_CASE("completion produces the printed wall set") {
    Rat cut(12); // 6 * nu_A
    const Diagram& d = completed12();

    // lines, scattered rays of slope -(2k-1) and mirrors, one vertical ray
    CHECK(d.walls.size() == 13);
    CHECK(find_wall(d, {1, -1}, true));
    CHECK(find_wall(d, {-1, -1}, true));
    for (int k = 2; 2 * k - 1 < 12; ++k) {
        const Wall* right = find_wall(d, {1, -(2 * k - 1)}, false);
        const Wall* left = find_wall(d, {-1, -(2 * k - 1)}, false);
        REQUIRE(right);
        REQUIRE(left);
        CHECK(right->fn == expected_ray_fn(kNu, cut, 1, k));
        CHECK(left->fn == expected_ray_fn(kNu, cut, -1, k));
    }

    const Wall* vert = find_wall(d, {0, -1}, false);
    REQUIRE(vert);
    // crossing from the -infinity side to the +infinity side multiplies x by
    // (1 - T^A/y^2)^4
    Series one = Series::one(kNu, cut);
    Series q = Series(kNu, cut).add_term(1, 1, 0, 0, -2);
    CHECK(invert_unit(vert->fn) == pow(sub(one, q), 4));
    // stored as two coinciding copies of x -> x (1 - T^A/y^2)^-2
    CHECK(vert->coinciding == 2);
    REQUIRE(vert->factor.has_value());
    CHECK(mul(*vert->factor, *vert->factor) == vert->fn);
    CHECK(*vert->factor == pow(sub(one, q), -2));
}

TEST_CASE("completed diagrams are consistent") {
    // cutoffs 2 and 4 nu_A here, 6 nu_A via the shared diagram below,
    // 9 and 10 nu_A in the limits test and the acceptance suite; consistency
    // at a larger cutoff implies it at every smaller one
    for (int mult : {4, 8}) {
        Rat cut = Rat(mult) * kNu.nu_a / Rat(2);
        Diagram d = complete(initial_diagram(kNu, cut), cut);
        for (auto o : {Orientation::Clockwise, Orientation::Counterclockwise}) {
            auto [px, py] = path_ordered_product(d, o);
            CHECK(px == x_of(kNu, cut));
            CHECK(py == y_of(kNu, cut));
        }
    }
    auto [px, py] = path_ordered_product(completed12(), Orientation::Counterclockwise);
    CHECK(px == x_of(kNu, Rat(12)));
    CHECK(py == y_of(kNu, Rat(12)));
}

TEST_CASE("walls are stable under cutoff increase") {
    Rat small(8), big(12);
    Diagram ds = complete(initial_diagram(kNu, small), small);
    const Diagram& db = completed12();
    std::size_t checked = 0;
    for (const auto& wb : db.walls) {
        if (!(wb.grading() < small))
            continue;
        const Wall* ws = find_wall(ds, wb.dir, wb.full_line);
        REQUIRE(ws);
        CHECK(eq_up_to_cutoff(ws->fn, wb.fn, small));
        ++checked;
    }
    CHECK(checked == ds.walls.size());
}

TEST_CASE("chamber transforms match the printed coordinate changes") {
    Rat cut(12);
    const Diagram& d = completed12();

    auto [x0, y0] = chamber_transform(d, 0);
    CHECK(x0 == x_of(kNu, cut));
    CHECK(y0 == y_of(kNu, cut));

    Series one = Series::one(kNu, cut);
    Series qa = Series(kNu, cut).add_term(1, Rat(1, 2), 0, -1, -1); // T^(A/2)/(xy)
    Series qb = Series(kNu, cut).add_term(1, Rat(1, 2), 0, 1, -1);  // T^(A/2) x/y

    auto [x1, y1] = chamber_transform(d, 1);
    CHECK(x1 == mul(x_of(kNu, cut), pow(add(one, qa), -1)));
    CHECK(y1 == mul(y_of(kNu, cut), add(one, qa)));

    auto [xm1, ym1] = chamber_transform(d, -1);
    CHECK(xm1 == mul(x_of(kNu, cut), add(one, qb)));
    CHECK(ym1 == mul(y_of(kNu, cut), add(one, qb)));
}

TEST_CASE("chamber transforms telescope") {
    Rat cut(12);
    const Diagram& d = completed12();
    for (int k : {-3, -2, -1, 0, 1, 2, 3}) {
        int next = k + (k >= 0 ? 1 : -1);
        auto [xk, yk] = chamber_transform(d, k);
        auto [xn, yn] = chamber_transform(d, next);
        Orientation o = k >= 0 ? Orientation::Clockwise : Orientation::Counterclockwise;
        auto events = loop_crossings(d, o);
        const Crossing& c = events[static_cast<std::size_t>(std::abs(k))];
        IVec n = crossing_exponents(c, o);
        Series f = substitute(truncate(c.wall->fn, cut), xk, yk);
        CHECK(xn == mul(xk, pow(f, n.x)));
        CHECK(yn == mul(yk, pow(f, n.y)));
    }
}

TEST_CASE("chamber superpotentials reproduce the printed formulas") {
    Rat cut(12);
    const Diagram& d = completed12();
    for (int k : {-2, -1, 0, 1, 2}) {
        Series got = chamber_superpotential(d, k, cut);
        Series want = sp::build({sp::Surface::F4, sp::Chamber::ChamberK, k}, kNu, cut);
        CHECK(got == want);
    }
}

TEST_CASE("chamber superpotentials carry the same content as chamber zero") {
    Rat cut(12);
    const Diagram& d = completed12();
    Series w0 = chamber_superpotential(d, 0, cut);
    for (int k : {-3, -2, -1, 1, 2, 3}) {
        Series wk = chamber_superpotential(d, k, cut);
        auto [xk, yk] = chamber_transform(d, k);
        CHECK(substitute(wk, xk, yk) == w0);
    }
}

TEST_CASE("limits stabilize onto the series chart with the vertical twist") {
    Rat cut(16); // 8 * nu_A
    Rat dcut(18); // holds the first crossing whose grading clears the cutoff
    Diagram d = complete(initial_diagram(kNu, dcut), dcut);

    Series wplus = limit_superpotential(d, +1, cut);
    Series wminus = limit_superpotential(d, -1, cut);
    CHECK(wplus == sp::build({sp::Surface::F4, sp::Chamber::PlusInfinity}, kNu, cut));
    CHECK(wminus == sp::build({sp::Surface::F4, sp::Chamber::MinusInfinity}, kNu, cut));

    // W_plus and W_minus differ by x -> x (1 - T^A/y^2)^4
    Series one = Series::one(kNu, cut);
    Series q = Series(kNu, cut).add_term(1, 1, 0, 0, -2);
    Series img_x = mul(x_of(kNu, cut), pow(sub(one, q), 4));
    CHECK(substitute(wplus, img_x, y_of(kNu, cut)) == wminus);
}

TEST_CASE("cutoff guards") {
    Rat cut(6);
    Diagram d = complete(initial_diagram(kNu, cut), cut);
    CHECK_THROWS_AS(chamber_transform(d, 25), Error);
    CHECK_THROWS_AS(chamber_superpotential(d, 0, Rat(40)), Error);
}

TEST_CASE("json and svg emission are deterministic") {
    Rat cut(12);
    const Diagram& d = completed12();
    Diagram d2 = complete(initial_diagram(kNu, cut), cut);
    Json j2 = diagram_to_json(d2);
    Json j1 = diagram_to_json(d);
    CHECK(j1.dump() == j2.dump());
    CHECK(j1["walls"].size() == d.walls.size());
    for (const auto& jw : j1["walls"])
        CHECK(series_from_json(jw["fn"]).size() >= 1);

    std::string svg = diagram_to_svg(d);
    CHECK(svg == diagram_to_svg(d2));
    CHECK(svg.find("vertical") != std::string::npos);
    CHECK(svg.find("slope -3") != std::string::npos);
    CHECK(svg.find("slope 5") != std::string::npos);

    Diagram empty(kNu, cut);
    std::string bare = diagram_to_svg(empty);
    CHECK(bare.find("<line") != std::string::npos); // the axes
    CHECK(bare.find("ray") == std::string::npos);
}

TEST_CASE("non-graded walls take the generic loop and stay consistent") {
    // a single full line: the two crossings are inverse to each other
    Diagram d(kNu, Rat(10));
    Series fn = Series::one(kNu, Rat(10))
                    .add_term(2, Monomial{AreaExponent{Rat(0), Rat(1)}, 1, -1});
    d.walls.emplace_back(IVec{1, -1}, true, fn); // 1 + 2 T^B x/y: B-graded
    for (auto o : {Orientation::Clockwise, Orientation::Counterclockwise}) {
        auto [px, py] = path_ordered_product(d, o);
        CHECK(px == x_of(kNu, Rat(10)));
        CHECK(py == y_of(kNu, Rat(10)));
    }
}

TEST_CASE("completion works at other valuations") {
    for (auto nu : {Valuation{Rat(3), Rat(1)}, Valuation{Rat(5), Rat(2)}}) {
        Rat cut = Rat(5) * nu.nu_a;
        Diagram d = complete(initial_diagram(nu, cut), cut);
        auto [px, py] = path_ordered_product(d, Orientation::Clockwise);
        CHECK(px == x_of(nu, cut));
        CHECK(py == y_of(nu, cut));
        // wall slopes match the grading bound (2k-1) nu_A/2 < cutoff
        int expected_rays = 0;
        for (int k = 2; Rat(2 * k - 1) * nu.nu_a < Rat(2) * cut; ++k)
            expected_rays += 2;
        CHECK(d.walls.size() == 2 + expected_rays + 1);
        // chamber 1 carries the printed superpotential at this valuation too
        Series w1 = chamber_superpotential(d, 1, cut);
        CHECK(w1 == sp::build({sp::Surface::F4, sp::Chamber::ChamberK, 1}, nu, cut));
    }
}

TEST_CASE("walls outside the dense lattice fall back to the generic loop") {
    // x-exponent above the level: 1 + T^(A/2) x^3/y
    Diagram d(kNu, Rat(8));
    Series fn = Series::one(kNu, Rat(8))
                    .add_term(1, Monomial{AreaExponent{Rat(1, 2), Rat(0)}, 3, -1});
    d.walls.emplace_back(IVec{3, -1}, true, fn);
    for (auto o : {Orientation::Clockwise, Orientation::Counterclockwise}) {
        auto [px, py] = path_ordered_product(d, o);
        CHECK(px == x_of(kNu, Rat(8)));
        CHECK(py == y_of(kNu, Rat(8)));
    }
}

TEST_CASE("limits report no stabilization when the diagram ends too early") {
    Rat cut(8);
    Diagram d = complete(initial_diagram(kNu, cut), cut);
    // every wall grading sits below the requested cutoff, so the walk runs
    // out of crossings before the superpotential can settle
    CHECK_THROWS_AS(limit_superpotential(d, +1, cut), Error);
    try {
        limit_superpotential(d, +1, cut);
    } catch (const Error& e) {
        CHECK(e.code() == Error::Code::NoStabilization);
    }
}
