#include "nvsc/hirzebruch.hpp"

#include <algorithm>
#include <map>

namespace nvsc::hirz {

std::string basis_name(Basis b) {
    switch (b) {
    case Basis::F3:
        return "f3";
    case Basis::F4:
        return "f4";
    case Basis::F0Chart:
        return "f0_chart";
    }
    return "?";
}

Basis basis_from_name(const std::string& name) {
    if (name == "f3")
        return Basis::F3;
    if (name == "f4")
        return Basis::F4;
    if (name == "f0_chart")
        return Basis::F0Chart;
    throw Error(Error::Code::Parse, "unknown basis: " + name);
}

std::string DiscClass::str() const {
    std::string out = "(";
    for (int i = 0; i < 4; ++i) {
        if (i)
            out += ",";
        out += std::to_string(c[i]);
    }
    return out + ")";
}

long intersect(const DiscClass& c, const SphereFunctional& s) {
    if (c.basis != s.basis)
        throw Error(Error::Code::BasisMismatch,
                    "class in " + basis_name(c.basis) + " paired with functional on " +
                        basis_name(s.basis));
    long out = 0;
    for (int i = 0; i < 4; ++i)
        out += static_cast<long>(c.c[i]) * s.form[i];
    return out;
}

namespace {

SphereFunctional functional(std::string name, Basis basis, std::array<int, 4> form,
                            bool strict = false) {
    return SphereFunctional{std::move(name), basis, form, strict};
}

long dot(const std::array<int, 4>& f, const std::array<int, 4>& c) {
    long out = 0;
    for (int i = 0; i < 4; ++i)
        out += static_cast<long>(f[i]) * c[i];
    return out;
}

} // namespace

SphereFunctional chart_A0() { return functional("A0", Basis::F0Chart, {-2, 0, 0, 1}); }
SphereFunctional chart_B0() { return functional("B0", Basis::F0Chart, {1, 0, 1, 0}); }
SphereFunctional chart_Ainf() { return functional("Ainf", Basis::F0Chart, {0, 0, 0, 1}); }
SphereFunctional chart_Binf() { return functional("Binf", Basis::F0Chart, {0, 0, 1, 0}); }
SphereFunctional chart_Deps() { return functional("Deps", Basis::F0Chart, {0, 1, 2, 1}); }

long maslov(const DiscClass& c) {
    switch (c.basis) {
    case Basis::F3:
        return 2 * dot({1, 1, -1, 2}, c.c);
    case Basis::F4:
        return 2 * dot({1, 1, -2, 2}, c.c);
    case Basis::F0Chart: {
        // two anticanonical representatives: Deps - B0 + Ainf + Binf
        // and Deps + (A0 + Ainf)/2; they must pair identically
        long via_sections = 2 * (intersect(c, chart_Deps()) - intersect(c, chart_B0()) +
                                 intersect(c, chart_Ainf()) + intersect(c, chart_Binf()));
        long via_halves = 2 * intersect(c, chart_Deps()) + intersect(c, chart_A0()) +
                          intersect(c, chart_Ainf());
        if (via_sections != via_halves)
            throw Error(Error::Code::Inconsistent,
                        "anticanonical pairings disagree on " + c.str());
        return via_sections;
    }
    }
    return 0;
}

std::vector<DiscClass> enumerate_classes(const ConstraintSystem& sys, int bound) {
    if (bound < 1)
        throw std::invalid_argument("bound must be >= 1");
    for (const auto& f : sys.inequalities)
        if (f.basis != sys.basis)
            throw Error(Error::Code::BasisMismatch, "inequality on wrong basis: " + f.name);
    if (sys.maslov_half.basis != sys.basis)
        throw Error(Error::Code::BasisMismatch, "Maslov functional on wrong basis");

    std::vector<DiscClass> out;
    std::array<int, 4> v{};
    for (v[0] = -bound; v[0] <= bound; ++v[0])
        for (v[1] = -bound; v[1] <= bound; ++v[1])
            for (v[2] = -bound; v[2] <= bound; ++v[2])
                for (v[3] = -bound; v[3] <= bound; ++v[3]) {
                    if (sys.require_nonzero && v == std::array<int, 4>{0, 0, 0, 0})
                        continue;
                    if (dot(sys.maslov_half.form, v) != sys.maslov_target)
                        continue;
                    bool ok = true;
                    for (const auto& f : sys.inequalities) {
                        long p = dot(f.form, v);
                        if (f.strict ? p <= 0 : p < 0) {
                            ok = false;
                            break;
                        }
                    }
                    if (ok)
                        out.push_back(DiscClass{sys.basis, v});
                }
    return out;
}

bool rh_feasible(long degree, long forced_ramification) {
    if (degree < 1)
        throw std::invalid_argument("degree must be positive");
    return forced_ramification <= degree - 1;
}

long h_dim(long degree, int i) {
    if (i == 0)
        return std::max(degree + 1, 0L);
    if (i == 1)
        return std::max(-degree - 1, 0L);
    throw std::invalid_argument("i must be 0 or 1");
}

namespace {

// polynomials over Z in z_1..z_p, exponent vector -> coefficient
using MPoly = std::map<std::vector<int>, long>;

MPoly mpoly_mul(const MPoly& a, const MPoly& b, int p) {
    MPoly out;
    for (const auto& [ea, ca] : a)
        for (const auto& [eb, cb] : b) {
            std::vector<int> e(p, 0);
            for (int i = 0; i < p; ++i)
                e[i] = ea[i] + eb[i];
            out[e] += ca * cb;
            if (out[e] == 0)
                out.erase(e);
        }
    return out;
}

} // namespace

std::vector<int> obstruction_degree(int n, int marked_points) {
    if (n < 1 || marked_points < 0)
        throw std::invalid_argument("need n >= 1, marked_points >= 0");
    long h0 = h_dim(n, 0) - marked_points; // n+1-p on the open locus
    if (h0 != 1)
        throw Error(Error::Code::NotALineFamily,
                    "family of sections has rank " + std::to_string(h0) + ", not a line");
    int p = marked_points;

    // coefficients of prod_i (z' - z_i) in the monomial basis 1, z', ..., z'^n
    std::vector<MPoly> coeff(static_cast<std::size_t>(n) + 1);
    coeff[0][std::vector<int>(p, 0)] = 1; // the polynomial 1 in degree 0
    int deg = 0;
    for (int i = 0; i < p; ++i) {
        std::vector<MPoly> next(static_cast<std::size_t>(n) + 1);
        MPoly root; // -z_i
        std::vector<int> e(p, 0);
        e[i] = 1;
        root[e] = -1;
        for (int d = 0; d <= deg; ++d) {
            if (coeff[d].empty())
                continue;
            for (const auto& [em, cm] : mpoly_mul(coeff[d], root, p)) {
                next[d][em] += cm;
                if (next[d][em] == 0)
                    next[d].erase(em);
            }
            for (const auto& [em, cm] : coeff[d]) {
                next[d + 1][em] += cm;
                if (next[d + 1][em] == 0)
                    next[d + 1].erase(em);
            }
        }
        coeff = std::move(next);
        ++deg;
    }

    // multidegree of the classifying map into P(H^0(O(n)))
    std::vector<int> out(p, 0);
    for (int i = 0; i < p; ++i) {
        int d = 0;
        for (const auto& poly : coeff)
            for (const auto& [e, c] : poly)
                d = std::max(d, e[i]);
        out[i] = d; // deg Ob = -deg Ob_dual = +d
    }
    return out;
}

int obstruction_dual_degree_via_transition() {
    // Frames of the dual family for n = 1, one point.
    // Over z != infinity: s0(z) = z' - z with coefficient vector (-z, 1);
    // over z != 0 (coordinate zeta = 1/z): sinf(zeta) = zeta*z' - 1 with
    // coefficient vector (-1, zeta). Writing sinf in z gives (-1, 1/z),
    // so sinf = z^-1 * s0 componentwise. A line bundle whose frames satisfy
    // sinf = z^w s0 has degree w (w = -1 reproduces the tautological bundle).
    struct LaurentMono {
        long c;
        int e;
    };
    LaurentMono s0[2] = {{-1, 1}, {1, 0}};   // -z, 1
    LaurentMono sinf[2] = {{-1, 0}, {1, -1}}; // -1, z^-1
    int w = sinf[0].e - s0[0].e;
    for (int i = 0; i < 2; ++i) {
        if (sinf[i].c != s0[i].c || sinf[i].e - s0[i].e != w)
            throw Error(Error::Code::Inconsistent, "transition is not a single monomial");
    }
    return w;
}

namespace {

// columns: images of (beta1, beta2, sigma, phi) in (alpha0, beta0, A, B),
// fixed by sigma = A - 2B, phi = B, beta0 = B - beta2 and the matching of
// basic classes between the two pictures
constexpr int kF4ToChart[4][4] = {
    {1, 0, 0, 0},
    {-2, -1, 0, 0},
    {0, 0, 1, 0},
    {2, 1, -2, 1},
};

// inverse: alpha0 = beta1 - 2 beta2, beta0 = phi - beta2, A = sigma + 2 phi, B = phi
constexpr int kChartToF4[4][4] = {
    {1, 0, 0, 0},
    {-2, -1, 0, 0},
    {0, 0, 1, 0},
    {0, 1, 2, 1},
};

std::array<int, 4> apply_matrix(const int m[4][4], const std::array<int, 4>& v) {
    std::array<int, 4> out{};
    for (int r = 0; r < 4; ++r)
        for (int k = 0; k < 4; ++k)
            out[r] += m[r][k] * v[k];
    return out;
}

} // namespace

DiscClass convert(const DiscClass& c, Basis target) {
    if (c.basis == target)
        return c;
    if (c.basis == Basis::F4 && target == Basis::F0Chart)
        return DiscClass{target, apply_matrix(kF4ToChart, c.c)};
    if (c.basis == Basis::F0Chart && target == Basis::F4)
        return DiscClass{target, apply_matrix(kChartToF4, c.c)};
    throw Error(Error::Code::BasisMismatch,
                "no conversion " + basis_name(c.basis) + " -> " + basis_name(target));
}

DiscClass f3_class_of_term(const Rat& ta, const Rat& tb, int xe, int ye) {
    if (!ta.is_integer() || !tb.is_integer())
        throw Error(Error::Code::Parse, "term does not lie in the F3 coordinate lattice");
    long m1 = xe;
    long m2 = -ye;
    long m3 = ta.num_long();
    long m4 = tb.num_long() + ye + m3;
    return DiscClass{Basis::F3,
                     {static_cast<int>(m1), static_cast<int>(m2), static_cast<int>(m3),
                      static_cast<int>(m4)}};
}

ConstraintSystem f3_index0_system() {
    ConstraintSystem sys;
    sys.basis = Basis::F3;
    sys.inequalities = {
        functional("F0", Basis::F3, {1, 0, 1, 0}),
        functional("Finf", Basis::F3, {0, 0, 1, 0}),
        functional("S+3", Basis::F3, {0, 0, 0, 1}),
        functional("E(0,0)", Basis::F3, {2, 1, -1, 1}),
        functional("E(inf,inf)", Basis::F3, {0, 1, -1, 1}),
    };
    sys.maslov_half = functional("maslov/2", Basis::F3, {1, 1, -1, 2});
    sys.maslov_target = 0;
    sys.require_nonzero = true; // index 0 discs are non-constant
    return sys;
}

ConstraintSystem f3_index2_right_system() {
    ConstraintSystem sys;
    sys.basis = Basis::F3;
    sys.inequalities = {
        functional("F0", Basis::F3, {1, 0, 1, 0}),
        functional("Finf", Basis::F3, {0, 0, 1, 0}),
        functional("S+3", Basis::F3, {0, 0, 0, 1}),
        functional("E", Basis::F3, {1, 1, -2, 1}),
        functional("E(0,0)", Basis::F3, {2, 1, -1, 1}),
        functional("E(inf,inf)", Basis::F3, {0, 1, -1, 1}),
    };
    sys.maslov_half = functional("maslov/2", Basis::F3, {1, 1, -1, 2});
    sys.maslov_target = 1;
    return sys;
}

ConstraintSystem f3_index2_right_raw_system() {
    ConstraintSystem sys = f3_index2_right_system();
    sys.inequalities.resize(4); // F0, Finf, S+3, E only
    return sys;
}

ConstraintSystem f4_index0_system() {
    ConstraintSystem sys;
    sys.basis = Basis::F4;
    sys.inequalities = {
        functional("F0", Basis::F4, {1, 0, 1, 0}),
        functional("Finf", Basis::F4, {0, 0, 1, 0}),
        functional("S+4", Basis::F4, {0, 0, 0, 1}),
        functional("E0", Basis::F4, {0, 1, -2, 1}),
        functional("Einf", Basis::F4, {2, 1, -2, 1}),
    };
    sys.maslov_half = functional("maslov/2", Basis::F4, {1, 1, -2, 2});
    sys.maslov_target = 0;
    sys.require_nonzero = true;
    return sys;
}

ConstraintSystem f4_index2_system() {
    ConstraintSystem sys;
    sys.basis = Basis::F0Chart;
    sys.inequalities = {chart_A0(), chart_B0(), chart_Ainf(), chart_Binf(), chart_Deps()};
    sys.maslov_half = functional("maslov/2", Basis::F0Chart, {-1, 1, 2, 2});
    sys.maslov_target = 1;
    return sys;
}

Json system_to_json(const ConstraintSystem& sys) {
    Json j;
    j["basis"] = basis_name(sys.basis);
    Json ineqs = Json::array();
    for (const auto& f : sys.inequalities) {
        Json jf;
        jf["name"] = f.name;
        jf["form"] = Json::array({f.form[0], f.form[1], f.form[2], f.form[3]});
        jf["strict"] = f.strict;
        ineqs.push_back(std::move(jf));
    }
    j["inequalities"] = std::move(ineqs);
    j["maslov_half"] = Json::array({sys.maslov_half.form[0], sys.maslov_half.form[1],
                                    sys.maslov_half.form[2], sys.maslov_half.form[3]});
    j["maslov_target"] = sys.maslov_target;
    j["require_nonzero"] = sys.require_nonzero;
    return j;
}

Json classes_to_json(const std::vector<DiscClass>& classes) {
    Json arr = Json::array();
    for (const auto& c : classes)
        arr.push_back(Json::array({c.c[0], c.c[1], c.c[2], c.c[3]}));
    return arr;
}

std::vector<DiscClass> f3_index0_expected(int bound) {
    std::vector<DiscClass> out;
    for (int m = 1; m <= bound; ++m)
        out.push_back(DiscClass{Basis::F3, {0, m, m, 0}});
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<DiscClass> f3_index2_expected() {
    std::vector<DiscClass> out = {
        DiscClass{Basis::F3, {1, 0, 0, 0}},   // beta1
        DiscClass{Basis::F3, {0, 1, 0, 0}},   // beta2
        DiscClass{Basis::F3, {0, -1, 0, 1}},  // -beta2 + phi
        DiscClass{Basis::F3, {-1, 3, 1, 0}},  // -beta1 + 3 beta2 + sigma
        DiscClass{Basis::F3, {0, 2, 1, 0}},   // 2 beta2 + sigma
        DiscClass{Basis::F3, {1, 1, 1, 0}},   // beta1 + beta2 + sigma
    };
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<DiscClass> f4_index0_expected(int bound) {
    std::vector<DiscClass> out;
    for (int m = 1; 2 * m <= bound; ++m)
        out.push_back(DiscClass{Basis::F4, {0, 2 * m, m, 0}});
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<DiscClass> f4_index2_expected(int bound) {
    std::vector<DiscClass> out;
    auto keep = [&](std::array<int, 4> v) {
        for (int x : v)
            if (x < -bound || x > bound)
                return;
        out.push_back(DiscClass{Basis::F0Chart, v});
    };
    for (int m = 0; m <= bound; ++m) {
        keep({0, 1 - 2 * m, m, 0});      // beta0 + m(A - 2 beta0)
        keep({0, -1 - 2 * m, m, 1});     // (B - beta0) + m(A - 2 beta0)
        keep({1, -2 - 2 * m, m, 2});     // (2B + alpha0 - 2 beta0) + m(A - 2 beta0)
        keep({-1, -2 - 2 * m, m + 1, 0}); // (A - alpha0 - 2 beta0) + m(A - 2 beta0)
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace nvsc::hirz
