#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "nvsc/hirzebruch.hpp"
#include "nvsc/superpotential.hpp"

using namespace nvsc;
using namespace nvsc::sp;

namespace {

const Valuation kNu{Rat(2), Rat(1)};
const Rat kCut(20);

Series S(Rat cut = kCut) { return Series(kNu, cut); }

} // namespace

TEST_CASE("finite superpotentials come out term-exact") {
    Series f0 = build({Surface::F0, Chamber::Default}, kNu, kCut);
    Series f0_expect = S()
                           .add_term(1, 0, 0, 0, 1)
                           .add_term(1, 0, 1, 0, -1)
                           .add_term(1, Rat(1, 2), 0, 1, 0)
                           .add_term(1, Rat(1, 2), 0, -1, 0);
    CHECK(f0 == f0_expect);

    Series right = build({Surface::F3, Chamber::F3Right}, kNu, kCut);
    CHECK(right.size() == 6);
    CHECK(right.coeff(Monomial{AreaExponent{Rat(1), Rat(1)}, 0, -2}) == Rat(2));
    CHECK(right.coeff(Monomial{AreaExponent{Rat(1), Rat(0)}, 1, -1}) == Rat(1));

    Series left = build({Surface::F3, Chamber::F3Left}, kNu, kCut);
    CHECK(left.size() == 6);
    CHECK(left.coeff(Monomial{AreaExponent{Rat(2), Rat(2)}, -1, -4}) == Rat(1));
    CHECK(sub(right, left).size() == 2); // the charts differ in exactly one term each

    Series alt = build({Surface::F4, Chamber::F4Alt}, kNu, kCut);
    CHECK(alt.size() == 9);
    CHECK(alt.coeff(Monomial{AreaExponent{Rat(1), Rat(1)}, 0, -3}) == Rat(3));
    CHECK(alt.coeff(Monomial{AreaExponent{Rat(2), Rat(1)}, 2, -5}) == Rat(1));
}

TEST_CASE("illegal chambers are rejected") {
    CHECK_THROWS_AS(build({Surface::F0, Chamber::F3Left}, kNu, kCut), Error);
    CHECK_THROWS_AS(build({Surface::F3, Chamber::Default}, kNu, kCut), Error);
    CHECK_THROWS_AS(build({Surface::F4, Chamber::ChamberK, 5}, kNu, kCut), Error);
}

TEST_CASE("F4 series chart coefficients") {
    Series w = build({Surface::F4, Chamber::F4Series}, kNu, kCut);
    for (int k = 0; k <= 8; ++k) {
        CHECK(w.coeff(Monomial{AreaExponent{Rat(k), Rat(1)}, 0, -2 * k - 1}) == Rat(2 * k + 1));
        CHECK(w.coeff(Monomial{AreaExponent{Rat(k) + Rat(1, 2), Rat(1)}, 1, -2 * k - 2}) ==
              Rat(k + 1));
        CHECK(w.coeff(Monomial{AreaExponent{Rat(k) + Rat(1, 2), Rat(1)}, -1, -2 * k - 2}) ==
              Rat(k + 1));
    }
    CHECK(w.coeff(Monomial{AreaExponent{Rat(1), Rat(0)}, 0, -1}) == Rat(1));
}

TEST_CASE("series chart equals its rational closed form") {
    CHECK(closed_form_equal({Surface::F4, Chamber::F4Series}, kNu, kCut));
    CHECK_THROWS_AS(closed_form_equal({Surface::F0, Chamber::Default}, kNu, kCut), Error);
}

TEST_CASE("generating function identities behind the disc counts") {
    Series one = Series::one(kNu, kCut);
    Series q = S().add_term(1, 1, 0, 0, -2); // T^A / y^2

    Series odd = S(); // sum (2k+1) q^k
    Series binom3 = S(); // sum C(k+3,3) q^k
    for (long k = 0; 2 * k < 20; ++k) {
        odd.add_term(Rat(2 * k + 1), Rat(k), 0, 0, -2 * k);
        binom3.add_term(Rat((k + 1) * (k + 2) * (k + 3) / 6), Rat(k), 0, 0, -2 * k);
    }
    CHECK(odd == mul(add(one, q), pow(sub(one, q), -2)));
    CHECK(binom3 == pow(sub(one, q), -4));
}

TEST_CASE("monomial change relates the two F4 series forms") {
    // the series chart in the coordinates where the x-terms become
    // x * sum (k+1) q^k and T^(A+2B)/(x y^4) * sum (k+1) q^k
    Rat pad(2); // worst valuation shift of the change below
    Series w = build({Surface::F4, Chamber::F4Series}, kNu, kCut + pad);

    Series other = Series(kNu, kCut + pad)
                       .add_term(1, 0, 0, 0, 1)
                       .add_term(1, 1, 0, 0, -1);
    for (long k = 0; Rat(2 * k + 1) < kCut + pad; ++k)
        other.add_term(Rat(2 * k + 1), Rat(k), 1, 0, -2 * static_cast<int>(k) - 1);
    for (long k = 0; Rat(2 * k) < kCut + pad; ++k) {
        other.add_term(Rat(k + 1), Rat(k), 0, 1, -2 * static_cast<int>(k));
        other.add_term(Rat(k + 1), Rat(k + 1), 2, -1, -2 * static_cast<int>(k) - 4);
    }

    Monomial ax{AreaExponent{Rat(-1, 2), Rat(-1)}, 1, 2}; // x -> T^(-A/2-B) x y^2
    Monomial ay{AreaExponent{}, 0, 1};
    Series changed = monomial_change(w, ax, ay);
    CHECK(eq_up_to_cutoff(changed, other, kCut));

    // inverse change restores the series chart
    Monomial ax_inv{AreaExponent{Rat(1, 2), Rat(1)}, 1, -2};
    CHECK(eq_up_to_cutoff(monomial_change(changed, ax_inv, ay), w, kCut - pad));

    // identity and non-unimodular rejection
    Monomial idx{AreaExponent{}, 1, 0}, idy{AreaExponent{}, 0, 1};
    CHECK(monomial_change(w, idx, idy) == w);
    Monomial squash{AreaExponent{}, 2, 0};
    CHECK_THROWS_AS(monomial_change(w, squash, idy), Error);
}

TEST_CASE("F0 chart is symmetric exactly when the two areas agree") {
    auto set_a_equal_b = [](const Series& s) {
        Series out(s.nu(), s.cutoff());
        for (const auto& t : s.terms())
            out.add_term(t.c, Monomial{AreaExponent{Rat(0), t.m.t.a + t.m.t.b}, t.m.xe, t.m.ye});
        return out;
    };
    Series f0 = build({Surface::F0, Chamber::Default}, kNu, kCut);
    Monomial ax{AreaExponent{Rat(0), Rat(-1, 2)}, 0, 1}; // x -> T^(-B/2) y
    Monomial ay{AreaExponent{Rat(0), Rat(1, 2)}, 1, 0};  // y -> T^(B/2) x
    CHECK(set_a_equal_b(monomial_change(f0, ax, ay)) == set_a_equal_b(f0));
    CHECK(monomial_change(f0, ax, ay) != f0);
}

TEST_CASE("right-chart term classes match the enumeration") {
    Series right = build({Surface::F3, Chamber::F3Right}, kNu, kCut);
    std::vector<hirz::DiscClass> decoded;
    for (const auto& t : right.terms())
        decoded.push_back(hirz::f3_class_of_term(t.m.t.a, t.m.t.b, t.m.xe, t.m.ye));
    std::sort(decoded.begin(), decoded.end());
    CHECK(decoded == hirz::enumerate_classes(hirz::f3_index2_right_system(), 6));

    // every decoded class has Maslov index 2
    for (const auto& c : decoded)
        CHECK(hirz::maslov(c) == 2);
}

TEST_CASE("critical values of the F4 series and F0 charts coincide") {
    auto expect_vals = [](double t, const Valuation& nu) {
        double a = 2 * std::pow(t, nu.nu_a.to_double() / 2);
        double b = 2 * std::pow(t, nu.nu_b.to_double() / 2);
        std::vector<double> v{a + b, a - b, -a + b, -a - b};
        std::sort(v.begin(), v.end());
        return v;
    };
    struct Config {
        double t;
        Valuation nu;
    };
    const Config configs[] = {{0.25, Valuation{Rat(2), Rat(1)}}, {0.1, Valuation{Rat(3), Rat(1)}}};
    for (const auto& cfg : configs) {
        auto want = expect_vals(cfg.t, cfg.nu);
        auto f4 = critical_values_numeric({Surface::F4, Chamber::F4Series}, cfg.nu, cfg.t, 1e-8);
        auto f0 = critical_values_numeric({Surface::F0, Chamber::Default}, cfg.nu, cfg.t, 1e-8);
        REQUIRE(f4.size() == 4);
        REQUIRE(f0.size() == 4);
        for (int i = 0; i < 4; ++i) {
            CHECK(std::abs(f4[i] - want[i]) < 1e-8);
            CHECK(std::abs(f0[i] - want[i]) < 1e-8);
            CHECK(std::abs(f4[i] - f0[i]) < 1e-8);
        }
    }
}

TEST_CASE("gradient of the numeric specialization matches finite differences") {
    Series w = build({Surface::F4, Chamber::F4Series}, kNu, Rat(36));
    NumericPoly p = specialize(w, 0.25);
    NumericPoly px = p.dx(), py = p.dy();
    const double pts[][2] = {{1.0, 0.5}, {-1.0, 0.5}, {0.8, -0.6}, {1.3, 0.9}};
    for (auto& pt : pts) {
        double x = pt[0], y = pt[1];
        double h = 1e-6;
        double fdx = (p.eval(x + h, y) - p.eval(x - h, y)) / (2 * h);
        double fdy = (p.eval(x, y + h) - p.eval(x, y - h)) / (2 * h);
        CHECK(std::abs(fdx - px.eval(x, y)) <= 1e-6 * (1 + std::abs(px.eval(x, y))));
        CHECK(std::abs(fdy - py.eval(x, y)) <= 1e-6 * (1 + std::abs(py.eval(x, y))));
    }
}

TEST_CASE("infinite tolerance disables the filters") {
    auto vals =
        critical_values_numeric({Surface::F0, Chamber::Default}, kNu, 0.25,
                                std::numeric_limits<double>::infinity());
    CHECK(vals.size() >= 4);
}

TEST_CASE("chamber 2 and chamber -2 are mirror images under x -> 1/x") {
    Series w2 = build({Surface::F4, Chamber::ChamberK, 2}, kNu, kCut);
    Series wm2 = build({Surface::F4, Chamber::ChamberK, -2}, kNu, kCut);
    Monomial inv_x{AreaExponent{}, -1, 0}, idy{AreaExponent{}, 0, 1};
    CHECK(monomial_change(w2, inv_x, idy) == wm2);
}

TEST_CASE("the closed-form identity is valuation independent") {
    for (auto nu : {Valuation{Rat(3), Rat(1)}, Valuation{Rat(5), Rat(2)}, Valuation{Rat(7, 2), Rat(1, 3)}})
        CHECK(closed_form_equal({Surface::F4, Chamber::F4Series}, nu, Rat(12) * nu.nu_b));
}
