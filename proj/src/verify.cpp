#include "nvsc/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>

#include "nvsc/hirzebruch.hpp"
#include "nvsc/scattering.hpp"
#include "nvsc/superpotential.hpp"
#include "nvsc/wallcross.hpp"

namespace nvsc::verify {

namespace {

using sp::Chamber;
using sp::Surface;

const Valuation kNu{Rat(2), Rat(1)};

struct Failure {
    std::string detail;
};

void expect(bool ok, const std::string& what) {
    if (!ok)
        throw Failure{what};
}

/* 1. the F3 wall function solves to 1 + T^A/y */
void check_f3_wall_function() {
    Series right = sp::build({Surface::F3, Chamber::F3Right}, kNu, Rat(20));
    Series left = sp::build({Surface::F3, Chamber::F3Left}, kNu, Rat(20));
    Monomial q{AreaExponent{Rat(1), Rat(0)}, 0, -1};
    auto c = wc::solve_wall_function(right, left, q, 1, 0, 6);
    expect(c == std::vector<Rat>{Rat(1), Rat(0), Rat(0), Rat(0), Rat(0), Rat(0)},
           "solve returned a different coefficient vector");
}

/* 2. the glued chart relation u v = 1 + T^A w at cutoff 10 nu_B */
void check_f3_gluing() {
    expect(wc::verify_gluing(kNu, Rat(10)), "chart gluing failed");
}

/* 3. F4 series chart vs its closed rational form at cutoff 20 nu_B, plus the
 * printed coefficient families */
void check_f4_series_closed_form() {
    expect(sp::closed_form_equal({Surface::F4, Chamber::F4Series}, kNu, Rat(20)),
           "series does not match the closed form");
    Series w = sp::build({Surface::F4, Chamber::F4Series}, kNu, Rat(20));
    for (int k = 0; k <= 8; ++k) {
        expect(w.coeff(Monomial{AreaExponent{Rat(k), Rat(1)}, 0, -2 * k - 1}) == Rat(2 * k + 1),
               "coefficient of T^(B+" + std::to_string(k) + "A) y^-" +
                   std::to_string(2 * k + 1) + " is not " + std::to_string(2 * k + 1));
        for (int sx : {1, -1})
            expect(w.coeff(Monomial{AreaExponent{Rat(k) + Rat(1, 2), Rat(1)}, sx,
                                    -2 * k - 2}) == Rat(k + 1),
                   "x^" + std::to_string(sx) + " family coefficient at k = " +
                       std::to_string(k) + " is not " + std::to_string(k + 1));
    }
}

/* 4. the printed wall crossing carries the F2 chart to the F4 alternative
 * chart at cutoff 16 nu_B */
void check_f2_to_f4() {
    Rat cut(16);
    Series f2 = sp::build({Surface::F2, Chamber::Default}, kNu, cut);
    Series alt = sp::build({Surface::F4, Chamber::F4Alt}, kNu, cut);
    wc::WallTransform t{Monomial{AreaExponent{Rat(1, 2), Rat(0)}, 1, -1}, {Rat(1)}, -1, -1};
    expect(wc::apply(t, f2) == alt, "transformed F2 chart differs from the F4 chart");
}

/* 5. scattering completion at cutoff 10 nu_A: consistent loop and the
 * printed wall set */
void check_scattering_completion() {
    Rat cut(20); // 10 nu_A
    sc::Diagram d = sc::complete(sc::initial_diagram(kNu, cut), cut);

    auto [px, py] = sc::path_ordered_product(d, sc::Orientation::Clockwise);
    Series x = Series::monomial(1, Monomial{AreaExponent{}, 1, 0}, kNu, cut);
    Series y = Series::monomial(1, Monomial{AreaExponent{}, 0, 1}, kNu, cut);
    expect(px == x && py == y, "path-ordered product is not the identity");

    auto find = [&](sc::IVec dir, bool line) -> const sc::Wall* {
        for (const auto& w : d.walls)
            if (w.dir == dir && w.full_line == line)
                return &w;
        return nullptr;
    };
    for (int k = 1; Rat(2 * k - 1) * kNu.nu_a < Rat(2) * cut; ++k) {
        int s = 2 * k - 1;
        Series fplus = Series::one(kNu, cut).add_term(
            1, Monomial{AreaExponent{Rat(s, 2), Rat(0)}, 1, -s});
        Series fminus = Series::one(kNu, cut).add_term(
            1, Monomial{AreaExponent{Rat(s, 2), Rat(0)}, -1, -s});
        const sc::Wall* right = find({1, -s}, k == 1);
        const sc::Wall* left = find({-1, -s}, k == 1);
        expect(right && right->fn == fplus,
               "wall of slope -" + std::to_string(s) + " is missing or wrong");
        expect(left && left->fn == fminus,
               "wall of slope " + std::to_string(s) + " is missing or wrong");
    }
    const sc::Wall* vert = find({0, -1}, false);
    expect(vert != nullptr, "no vertical wall");
    Series one = Series::one(kNu, cut);
    Series q = Series(kNu, cut).add_term(1, 1, 0, 0, -2);
    expect(invert_unit(vert->fn) == pow(sub(one, q), 4),
           "vertical wall transform is not x -> x (1 - T^A/y^2)^4");
}

/* 6. chamber superpotentials at cutoff 12 nu_A; chambers |k| <= 2 cross only
 * the two initial lines, so the initial diagram already holds every needed
 * wall (completion consistency is criterion 5) */
void check_chamber_superpotentials() {
    Rat cut(24); // 12 nu_A
    sc::Diagram d = sc::initial_diagram(kNu, cut);
    for (int k : {-2, -1, 0, 1, 2}) {
        Series got = sc::chamber_superpotential(d, k, cut);
        Series want = sp::build({Surface::F4, Chamber::ChamberK, k}, kNu, cut);
        expect(got == want,
               "chamber " + std::to_string(k) + " superpotential differs from the printed one");
    }
}

/* 7. limit superpotentials at cutoff 8 nu_A and the vertical twist between
 * them */
void check_limit_identities() {
    Rat cut(16);  // 8 nu_A
    Rat dcut(18); // holds the first crossing whose grading clears the cutoff
    sc::Diagram d = sc::complete(sc::initial_diagram(kNu, dcut), dcut);
    Series wplus = sc::limit_superpotential(d, +1, cut);
    Series wminus = sc::limit_superpotential(d, -1, cut);
    expect(wplus == sp::build({Surface::F4, Chamber::PlusInfinity}, kNu, cut),
           "plus limit differs from W(x (1 - T^A/y^2)^-2, y)");
    expect(wminus == sp::build({Surface::F4, Chamber::MinusInfinity}, kNu, cut),
           "minus limit differs from W(x (1 - T^A/y^2)^2, y)");
    Series one = Series::one(kNu, cut);
    Series q = Series(kNu, cut).add_term(1, 1, 0, 0, -2);
    Series img_x = mul(Series::monomial(1, Monomial{AreaExponent{}, 1, 0}, kNu, cut),
                       pow(sub(one, q), 4));
    Series img_y = Series::monomial(1, Monomial{AreaExponent{}, 0, 1}, kNu, cut);
    expect(substitute(wplus, img_x, img_y) == wminus,
           "limits do not differ by x -> x (1 - T^A/y^2)^4");
}

/* 8. enumeration fixtures at bound 8 with pattern stability at bound 16 */
void check_enumerations() {
    using namespace hirz;
    struct Fixture {
        const char* name;
        ConstraintSystem sys;
        std::vector<DiscClass> expected;
    };
    const Fixture fixtures[] = {
        {"F3 index 0", f3_index0_system(), f3_index0_expected(8)},
        {"F3 index 2", f3_index2_right_system(), f3_index2_expected()},
        {"F4 index 0", f4_index0_system(), f4_index0_expected(8)},
        {"F4 index 2", f4_index2_system(), f4_index2_expected(8)},
    };
    for (const auto& f : fixtures) {
        auto got = enumerate_classes(f.sys, 8);
        expect(got == f.expected, std::string(f.name) + ": enumeration differs at bound 8");
        auto big = enumerate_classes(f.sys, 16);
        std::vector<DiscClass> restricted;
        for (const auto& c : big) {
            bool in = true;
            for (int v : c.c)
                if (v < -8 || v > 8)
                    in = false;
            if (in)
                restricted.push_back(c);
        }
        expect(restricted == got, std::string(f.name) + ": pattern not stable at bound 16");
    }
}

/* 9. the intersection table and both anticanonical pairings */
void check_intersection_table() {
    using namespace hirz;
    const DiscClass basis[] = {{Basis::F0Chart, {1, 0, 0, 0}},
                               {Basis::F0Chart, {0, 1, 0, 0}},
                               {Basis::F0Chart, {0, 0, 1, 0}},
                               {Basis::F0Chart, {0, 0, 0, 1}}};
    const long table[4][5] = {
        {-2, 1, 0, 0, 0}, {0, 0, 0, 0, 1}, {0, 1, 0, 1, 2}, {1, 0, 1, 0, 1}};
    const long mu[4] = {-2, 2, 4, 4};
    const SphereFunctional fns[] = {chart_A0(), chart_B0(), chart_Ainf(), chart_Binf(),
                                    chart_Deps()};
    for (int r = 0; r < 4; ++r) {
        for (int c = 0; c < 5; ++c)
            expect(intersect(basis[r], fns[c]) == table[r][c],
                   "intersection entry (" + std::to_string(r) + "," + std::to_string(c) +
                       ") mismatch");
        expect(maslov(basis[r]) == mu[r], "Maslov index mismatch on row " + std::to_string(r));
        long via_sections = 2 * (intersect(basis[r], chart_Deps()) -
                                 intersect(basis[r], chart_B0()) +
                                 intersect(basis[r], chart_Ainf()) +
                                 intersect(basis[r], chart_Binf()));
        long via_halves = 2 * intersect(basis[r], chart_Deps()) +
                          intersect(basis[r], chart_A0()) + intersect(basis[r], chart_Ainf());
        expect(via_sections == via_halves && via_sections == mu[r],
               "anticanonical pairings disagree on row " + std::to_string(r));
    }
}

/* 10. obstruction bundle degrees and the backing cohomology dimension */
void check_obstruction_degrees() {
    expect(hirz::obstruction_degree(1, 1) == std::vector<int>{1},
           "one-point family degree is not +1");
    expect(hirz::obstruction_degree(2, 2) == std::vector<int>{1, 1},
           "two-point family bidegree is not (1,1)");
    expect(hirz::h_dim(-2, 1) == 1, "h^1 of degree -2 is not 1");
    expect(-hirz::obstruction_dual_degree_via_transition() == hirz::obstruction_degree(1, 1)[0],
           "transition route disagrees with the coefficient map");
}

/* 11. branched-cover feasibility */
void check_riemann_hurwitz() {
    for (long m = 1; m <= 10; ++m) {
        expect(!hirz::rh_feasible(2 * m, 2 * m),
               "degree 2m cover with 2m forced ramification should not exist (m = " +
                   std::to_string(m) + ")");
        expect(hirz::rh_feasible(2 * m + 1, 2 * m),
               "degree 2m+1 cover with 2m forced ramification should exist (m = " +
                   std::to_string(m) + ")");
    }
    expect(hirz::rh_feasible(1, 0), "the identity cover must be feasible");
}

/* 12. numeric critical values on both surfaces at two parameter sets */
void check_critical_values() {
    struct Config {
        double t;
        Valuation nu;
    };
    const Config configs[] = {{0.25, Valuation{Rat(2), Rat(1)}},
                              {0.1, Valuation{Rat(3), Rat(1)}}};
    for (const auto& cfg : configs) {
        double a = 2 * std::pow(cfg.t, cfg.nu.nu_a.to_double() / 2);
        double b = 2 * std::pow(cfg.t, cfg.nu.nu_b.to_double() / 2);
        std::vector<double> want{-a - b, -b + a, b - a, a + b};
        std::sort(want.begin(), want.end());
        auto f4 = sp::critical_values_numeric({Surface::F4, Chamber::F4Series}, cfg.nu, cfg.t,
                                              1e-8);
        auto f0 = sp::critical_values_numeric({Surface::F0, Chamber::Default}, cfg.nu, cfg.t,
                                              1e-8);
        expect(f4.size() == 4, "F4 chart produced " + std::to_string(f4.size()) + " values");
        expect(f0.size() == 4, "F0 produced " + std::to_string(f0.size()) + " values");
        for (int i = 0; i < 4; ++i) {
            expect(std::abs(f4[i] - want[i]) < 1e-8, "F4 value off at T = " + std::to_string(cfg.t));
            expect(std::abs(f0[i] - want[i]) < 1e-8, "F0 value off at T = " + std::to_string(cfg.t));
            expect(std::abs(f4[i] - f0[i]) < 1e-8, "value sets do not coincide");
        }
    }
}

/* 13. randomized kernel laws, 1000 cases each, exact */
struct Rng {
    std::uint64_t state;
    explicit Rng(std::uint64_t seed) : state(seed) {}
    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    int uniform(int lo, int hi) {
        return lo + static_cast<int>(next() % static_cast<std::uint64_t>(hi - lo + 1));
    }
};

void check_kernel_properties() {
    const Rat cut(20);
    Rng rng(20260808);
    auto coeff = [&] {
        int n = rng.uniform(-5, 5);
        return Rat(n == 0 ? 1 : n, rng.uniform(1, 3));
    };
    auto series = [&](int max_terms) {
        Series s(kNu, cut);
        int n = rng.uniform(0, max_terms);
        for (int i = 0; i < n; ++i)
            s.add_term(coeff(), Monomial{AreaExponent{Rat(rng.uniform(0, 6), 2),
                                                      Rat(rng.uniform(0, 4), 2)},
                                         rng.uniform(-3, 3), rng.uniform(-3, 3)});
        return s;
    };
    auto unit = [&](int max_terms) {
        Series s = Series::one(kNu, cut);
        int n = rng.uniform(0, max_terms);
        for (int i = 0; i < n; ++i)
            s.add_term(coeff(), Monomial{AreaExponent{Rat(rng.uniform(1, 6), 2),
                                                      Rat(rng.uniform(0, 4), 2)},
                                         rng.uniform(-2, 2), rng.uniform(-2, 2)});
        return s;
    };

    const Series one = Series::one(kNu, cut);
    const Series zero = Series(kNu, cut);
    for (int i = 0; i < 1000; ++i) {
        Series a = series(5), b = series(5), c = series(5);
        expect(add(a, b) == add(b, a), "addition is not commutative");
        expect(mul(a, b) == mul(b, a), "multiplication is not commutative");
        expect(add(add(a, b), c) == add(a, add(b, c)), "addition is not associative");
        expect(mul(mul(a, b), c) == mul(a, mul(b, c)), "multiplication is not associative");
        expect(mul(a, add(b, c)) == add(mul(a, b), mul(a, c)), "distributivity fails");
        expect(add(a, zero) == a && mul(a, one) == a, "neutral elements fail");
        expect(add(a, neg(a)) == zero, "additive inverse fails");
    }
    for (int i = 0; i < 1000; ++i) {
        Series u = unit(3);
        expect(mul(u, invert_unit(u)) == one, "invert_unit is not an inverse");
        Series p = one;
        for (int n = 0; n <= 6; ++n) {
            expect(pow(u, n) == p, "pow disagrees with repeated multiplication");
            p = mul(p, u);
        }
        int n = rng.uniform(1, 4);
        expect(pow(u, -n) == invert_unit(pow(u, n)), "negative pow is not the inverse");
    }
    for (int i = 0; i < 1000; ++i) {
        Series img_x = mul_monomial(unit(2), 1, Monomial{AreaExponent{}, 1, 0});
        Series img_y = mul_monomial(unit(2), 1, Monomial{AreaExponent{}, 0, 1});
        Series a = series(4), b = series(4);
        expect(substitute(add(a, b), img_x, img_y) ==
                   add(substitute(a, img_x, img_y), substitute(b, img_x, img_y)),
               "substitution is not additive");
        expect(substitute(mul(a, b), img_x, img_y) ==
                   mul(substitute(a, img_x, img_y), substitute(b, img_x, img_y)),
               "substitution is not multiplicative");
    }
    for (int i = 0; i < 1000; ++i) {
        Series a = series(5), b = series(5);
        Rat small(rng.uniform(1, 10));
        expect(truncate(mul(a, b), small) == mul(truncate(a, small), truncate(b, small)),
               "truncation does not commute with multiplication");
        expect(truncate(add(a, b), small) == add(truncate(a, small), truncate(b, small)),
               "truncation does not commute with addition");
    }
}

struct Check {
    const char* id;
    const char* claim;
    std::function<void()> run;
};

} // namespace

std::vector<CheckResult> run_all() {
    const Check checks[] = {
        {"f3-wall-function", "F3 wall function solves to h(T^A/y) = 1 + T^A/y",
         check_f3_wall_function},
        {"f3-gluing", "F3 charts glue along u v = 1 + T^A w (cutoff 10 nu_B)",
         check_f3_gluing},
        {"f4-series-closed-form",
         "F4 series chart equals its closed form; families (2k+1), (k+1) for k <= 8",
         check_f4_series_closed_form},
        {"f2-to-f4-wall-crossing",
         "printed wall crossing carries the F2 chart to the F4 chart (cutoff 16 nu_B)",
         check_f2_to_f4},
        {"scattering-completion",
         "completion at 10 nu_A: identity loop, rays (1+T^((2k-1)A/2) x y^-(2k-1))^(2k-1), "
         "mirrors, vertical x -> x (1 - T^A/y^2)^4",
         check_scattering_completion},
        {"chamber-superpotentials",
         "chambers -2..2 reproduce the five printed superpotentials (cutoff 12 nu_A)",
         check_chamber_superpotentials},
        {"limit-identities",
         "W(+-inf) = W(x (1 - T^A/y^2)^(-+2), y), differing by the fourth power (cutoff 8 nu_A)",
         check_limit_identities},
        {"enumeration-fixtures",
         "disc-class enumerations at bound 8, pattern-stable at bound 16",
         check_enumerations},
        {"intersection-table", "all 20 intersection numbers, 4 Maslov indices, both pairings",
         check_intersection_table},
        {"obstruction-degrees", "obstruction degrees +1 and (1,1); h^1(O(-2)) = 1",
         check_obstruction_degrees},
        {"riemann-hurwitz", "no degree-2m cover with 2m ramification; 2m+1 with 2m exists",
         check_riemann_hurwitz},
        {"critical-values",
         "critical values +-2T^(A/2) +- 2T^(B/2) on both surfaces, two parameter sets, 1e-8",
         check_critical_values},
        {"kernel-property-suite", "1000 randomized cases per kernel law, exact",
         check_kernel_properties},
    };

    std::vector<CheckResult> results;
    for (const auto& c : checks) {
        CheckResult r;
        r.id = c.id;
        r.claim = c.claim;
        auto t0 = std::chrono::steady_clock::now();
        try {
            c.run();
            r.pass = true;
        } catch (const Failure& f) {
            r.pass = false;
            r.detail = f.detail;
        } catch (const std::exception& e) {
            r.pass = false;
            r.detail = std::string("exception: ") + e.what();
        }
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        results.push_back(std::move(r));
    }
    return results;
}

} // namespace nvsc::verify
