#include "nvsc/scattering.hpp"

#include <algorithm>
#include <cstdio>
#include <numeric>

#include "nvsc/superpotential.hpp"

namespace nvsc::sc {

namespace {

long cross(IVec a, IVec b) { return static_cast<long>(a.x) * b.y - static_cast<long>(a.y) * b.x; }
long dot(IVec a, IVec b) { return static_cast<long>(a.x) * b.x + static_cast<long>(a.y) * b.y; }

/* clockwise angle class of r measured from (1,1): 0 on the start ray itself,
 * then 1 for the open clockwise half-plane, 2 opposite, 3 the rest */
int angle_group(IVec r) {
    const IVec s{1, 1};
    long c = cross(s, r);
    if (c == 0)
        return dot(s, r) > 0 ? 0 : 2;
    return c < 0 ? 1 : 3;
}

// strict clockwise-before over rays (group, then exact in-half-plane order)
bool ray_before(IVec a, IVec b) {
    int ga = angle_group(a), gb = angle_group(b);
    if (ga != gb)
        return ga < gb;
    return cross(a, b) < 0;
}

IVec primitive(IVec v) {
    int g = std::gcd(std::abs(v.x), std::abs(v.y));
    return {v.x / g, v.y / g};
}

Series coordinate(const Valuation& nu, const Rat& cutoff, bool is_x) {
    return Series::monomial(1, Monomial{AreaExponent{}, is_x ? 1 : 0, is_x ? 0 : 1}, nu, cutoff);
}

Monomial wall_q(IVec dir, int g) {
    return Monomial{AreaExponent{Rat(g) * Rat(std::abs(dir.y), 2), Rat(0)}, g * dir.x,
                    g * dir.y};
}

} // namespace

Rat Wall::grading() const {
    for (const auto& t : fn.terms())
        if (!(t.m == Monomial{}))
            return t.v;
    return fn.cutoff();
}

std::vector<Crossing> loop_crossings(const Diagram& d, Orientation o) {
    std::vector<Crossing> out;
    for (const auto& w : d.walls) {
        out.push_back({&w, w.dir});
        if (w.full_line)
            out.push_back({&w, -w.dir});
    }
    std::stable_sort(out.begin(), out.end(), [](const Crossing& a, const Crossing& b) {
        if (a.ray == b.ray)
            return a.wall->full_line && !b.wall->full_line;
        return ray_before(a.ray, b.ray);
    });
    if (o == Orientation::Counterclockwise)
        std::reverse(out.begin(), out.end());
    return out;
}

IVec crossing_exponents(const Crossing& c, Orientation o) {
    IVec m = c.wall->dir;
    IVec n = (c.ray == m) ? IVec{-m.y, m.x} : IVec{m.y, -m.x};
    if (o == Orientation::Counterclockwise)
        n = -n;
    return n;
}

Diagram initial_diagram(const Valuation& nu, const Rat& cutoff) {
    Diagram d(nu, cutoff);
    Series f1 = Series::one(nu, cutoff).add_term(1, wall_q({-1, -1}, 1)); // 1 + T^(A/2)/(xy)
    Series f2 = Series::one(nu, cutoff).add_term(1, wall_q({1, -1}, 1));  // 1 + T^(A/2) x/y
    d.walls.emplace_back(IVec{1, -1}, true, std::move(f2));
    d.walls.emplace_back(IVec{-1, -1}, true, std::move(f1));
    return d;
}

namespace {

// accumulated substitution map, extended by one crossing at a time
struct LoopMap {
    Series x, y;

    LoopMap(const Valuation& nu, const Rat& cutoff)
        : x(coordinate(nu, cutoff, true)), y(coordinate(nu, cutoff, false)) {}

    void cross(const Crossing& c, Orientation o) {
        IVec n = crossing_exponents(c, o);
        Series f = substitute(truncate(c.wall->fn, x.cutoff()), x, y);
        if (n.x != 0)
            x = mul(x, pow(f, n.x));
        if (n.y != 0)
            y = mul(y, pow(f, n.y));
    }
};

/* -- dense graded kernel --------------------------------------------------
 * Every wall monomial of this diagram is x^e (T^(A/2)/y)^l with |e| <= l, so
 * the whole loop computation lives in a two-index lattice: level l (powers
 * of T^(A/2)/y) by x-exponent. Dense arrays replace sorted-series maps. */

struct GPoly {
    int jmax;           // levels 0..jmax, x-exponents -jmax..jmax
    std::vector<Rat> c; // row-major [level][x + jmax]

    explicit GPoly(int jm)
        : jmax(jm), c(static_cast<std::size_t>(jm + 1) * (2 * jm + 1)) {}

    Rat& at(int j, int a) {
        return c[static_cast<std::size_t>(j) * (2 * jmax + 1) + (a + jmax)];
    }
    const Rat& at(int j, int a) const {
        return c[static_cast<std::size_t>(j) * (2 * jmax + 1) + (a + jmax)];
    }
    static GPoly one(int jm) {
        GPoly p(jm);
        p.at(0, 0) = Rat(1);
        return p;
    }
    bool is_one() const {
        for (int j = 0; j <= jmax; ++j)
            for (int a = -jmax; a <= jmax; ++a)
                if (at(j, a) != ((j == 0 && a == 0) ? Rat(1) : Rat(0)))
                    return false;
        return true;
    }
};

GPoly gmul(const GPoly& x, const GPoly& y) {
    GPoly out(x.jmax);
    for (int j1 = 0; j1 <= x.jmax; ++j1)
        for (int a1 = -j1; a1 <= j1; ++a1) {
            const Rat& c1 = x.at(j1, a1);
            if (c1.is_zero())
                continue;
            for (int j2 = 0; j1 + j2 <= x.jmax; ++j2)
                for (int a2 = -j2; a2 <= j2; ++a2) {
                    const Rat& c2 = y.at(j2, a2);
                    if (c2.is_zero())
                        continue;
                    out.at(j1 + j2, a1 + a2) += c1 * c2;
                }
        }
    return out;
}

/* inverse of 1 + (positive levels) by the geometric series */
GPoly ginv(const GPoly& p) {
    GPoly negh = p;
    negh.at(0, 0) -= Rat(1);
    for (auto& e : negh.c)
        e = -e;
    GPoly acc = GPoly::one(p.jmax);
    GPoly powk = GPoly::one(p.jmax);
    for (int i = 0; i < p.jmax; ++i) {
        powk = gmul(powk, negh);
        bool zero = true;
        for (const auto& e : powk.c)
            if (!e.is_zero()) {
                zero = false;
                break;
            }
        if (zero)
            break;
        for (std::size_t k = 0; k < acc.c.size(); ++k)
            acc.c[k] += powk.c[k];
    }
    return acc;
}

GPoly gpow(const GPoly& p, int n) {
    if (n < 0)
        return ginv(gpow(p, -n));
    GPoly out = GPoly::one(p.jmax);
    GPoly base = p;
    int e = n;
    while (e) {
        if (e & 1)
            out = gmul(out, base);
        e >>= 1;
        if (e == 0)
            break;
        base = gmul(base, base);
    }
    return out;
}

/* a wall function digested into ((level, x-exponent), coefficient) terms */
struct GradedWall {
    IVec dir;
    std::vector<std::pair<std::pair<int, int>, Rat>> terms;
};

bool graded_wall(const Wall& w, GradedWall& out) {
    out.dir = w.dir;
    out.terms.clear();
    for (const auto& t : w.fn.terms()) {
        if (t.m == Monomial{})
            continue;
        // the dense lattice assumes |x-exponent| <= level
        if (t.m.ye >= 0 || t.m.t.b != Rat(0) || Rat(2) * t.m.t.a != Rat(-t.m.ye) ||
            std::abs(t.m.xe) > -t.m.ye)
            return false;
        out.terms.push_back({{-t.m.ye, t.m.xe}, t.c});
    }
    return true;
}

struct GradedLoop {
    int jmax;
    GPoly u, v; // images x -> x*u, y -> y*v

    explicit GradedLoop(int jm) : jmax(jm), u(GPoly::one(jm)), v(GPoly::one(jm)) {}

    void cross(const GradedWall& gw, IVec n) {
        GPoly f = GPoly::one(jmax);
        std::map<int, GPoly> upow, vpow;
        auto power = [&](std::map<int, GPoly>& cache, const GPoly& base, int e) -> const GPoly& {
            auto it = cache.find(e);
            if (it == cache.end())
                it = cache.emplace(e, gpow(base, e)).first;
            return it->second;
        };
        bool any = false;
        for (const auto& [le, coeff] : gw.terms) {
            auto [l, e] = le;
            if (l > jmax)
                continue;
            any = true;
            GPoly img = gmul(power(upow, u, e), power(vpow, v, -l));
            // shift by the lattice monomial x^e (T^(A/2)/y)^l
            for (int j = 0; j + l <= jmax; ++j)
                for (int a = -j; a <= j; ++a) {
                    const Rat& c = img.at(j, a);
                    if (!c.is_zero())
                        f.at(j + l, a + e) += coeff * c;
                }
        }
        if (!any)
            return;
        if (n.x != 0)
            u = gmul(u, gpow(f, n.x));
        if (n.y != 0)
            v = gmul(v, gpow(f, n.y));
    }
};

bool graded_compatible(const Diagram& d) {
    GradedWall scratch;
    for (const auto& w : d.walls)
        if (!graded_wall(w, scratch))
            return false;
    return true;
}

int level_bound(const Valuation& nu, const Rat& cutoff) {
    Rat half_a = nu.nu_a / Rat(2);
    int j = 0;
    while (Rat(j + 1) * half_a < cutoff)
        ++j;
    return j;
}

Series graded_to_series(const GPoly& p, const Valuation& nu, const Rat& cutoff, bool around_x) {
    Series::Terms out;
    for (int j = 0; j <= p.jmax; ++j)
        for (int a = -j; a <= j; ++a) {
            const Rat& c = p.at(j, a);
            if (c.is_zero())
                continue;
            Monomial m{AreaExponent{Rat(j, 2), Rat(0)}, a + (around_x ? 1 : 0),
                       -j + (around_x ? 0 : 1)};
            Rat v = val(m, nu);
            if (v < cutoff)
                out.push_back({m, c, v});
        }
    return Series::from_raw(nu, cutoff, std::move(out));
}

std::pair<GPoly, GPoly> graded_loop_product(const Diagram& d, Orientation o, int jmax) {
    GradedLoop m(jmax);
    GradedWall gw;
    for (const auto& c : loop_crossings(d, o)) {
        if (!graded_wall(*c.wall, gw))
            throw std::logic_error("graded loop over a non-graded wall");
        m.cross(gw, crossing_exponents(c, o));
    }
    return {std::move(m.u), std::move(m.v)};
}

} // namespace

std::pair<Series, Series> path_ordered_product(const Diagram& d, Orientation o) {
    if (graded_compatible(d)) {
        auto [u, v] = graded_loop_product(d, o, level_bound(d.nu, d.cutoff));
        return {graded_to_series(u, d.nu, d.cutoff, true),
                graded_to_series(v, d.nu, d.cutoff, false)};
    }
    LoopMap m(d.nu, d.cutoff);
    for (const auto& c : loop_crossings(d, o))
        m.cross(c, o);
    return {m.x, m.y};
}

Diagram complete(const Diagram& initial, const Rat& cutoff) {
    {
        const Diagram ref = initial_diagram(initial.nu, initial.cutoff);
        bool ok = initial.walls.size() == 2;
        for (std::size_t i = 0; ok && i < 2; ++i)
            ok = initial.walls[i].dir == ref.walls[i].dir && initial.walls[i].full_line &&
                 initial.walls[i].fn == ref.walls[i].fn;
        if (!ok)
            throw std::invalid_argument("completion expects exactly the two initial lines");
    }

    const Valuation& nu = initial.nu;
    Rat half_a = nu.nu_a / Rat(2); // grading step: the valuation of T^(A/2)
    Diagram d(nu, cutoff);
    for (const auto& w : initial.walls)
        d.walls.emplace_back(w.dir, true, truncate(w.fn, cutoff));

    if (!graded_compatible(d))
        throw std::invalid_argument("completion expects exactly the two initial lines");

    for (long order = 2; Rat(order) * half_a < cutoff; ++order) {
        int jm = static_cast<int>(order);
        auto [u, v] = graded_loop_product(d, Orientation::Clockwise, jm);

        // orders below the current one must already have closed
        for (int j = 0; j < jm; ++j)
            for (int a = -j; a <= j; ++a) {
                bool id = j == 0 && a == 0;
                if (u.at(j, a) != (id ? Rat(1) : Rat(0)) ||
                    v.at(j, a) != (id ? Rat(1) : Rat(0)))
                    throw Error(Error::Code::NonTerminating,
                                "failure below the current order " + std::to_string(order));
            }

        // one ray per failing x-exponent of this order
        for (int a = -jm; a <= jm; ++a) {
            Rat fa = u.at(jm, a), fb = v.at(jm, a);
            if (fa.is_zero() && fb.is_zero())
                continue;
            IVec dir = primitive({a, -jm});
            int g = -jm / dir.y;
            IVec n{-dir.y, dir.x};
            // n.x = -dir.y > 0 since scattered rays point down
            Rat c = -fa / Rat(n.x);
            if (Rat(n.y) * c != -fb)
                throw Error(Error::Code::NonTerminating,
                            "failing terms are not normal to the ray");
            if (c.is_zero())
                continue;
            auto it = std::find_if(d.walls.begin(), d.walls.end(), [&](const Wall& w) {
                return !w.full_line && w.dir == dir;
            });
            if (it == d.walls.end()) {
                Series f = Series::one(nu, cutoff).add_term(c, wall_q(dir, g));
                d.walls.emplace_back(dir, false, std::move(f));
            } else {
                it->fn = add(it->fn, Series::monomial(c, wall_q(dir, g), nu, cutoff));
            }
        }
        // the next order's guard verifies this order closed; the final full
        // product below verifies the last one
    }

    {
        auto [u, v] = graded_loop_product(d, Orientation::Clockwise, level_bound(nu, cutoff));
        if (!u.is_one() || !v.is_one())
            throw Error(Error::Code::NonTerminating, "completed diagram is not consistent");
    }

    // canonical order; recognize the coinciding vertical wall
    std::stable_sort(d.walls.begin(), d.walls.end(), [](const Wall& a, const Wall& b) {
        if (a.dir == b.dir)
            return a.full_line && !b.full_line;
        return ray_before(a.dir, b.dir);
    });
    for (auto& w : d.walls) {
        if (w.full_line || !(w.dir == IVec{0, -1}))
            continue;
        try {
            Series root = sqrt_unit(w.fn);
            w.factor = root;
            w.coinciding = 2;
        } catch (const Error&) {
            // not a perfect square; leave it unannotated
        }
    }
    return d;
}

namespace {

/* crossings strictly between the start ray region and the next unused one,
 * walking clockwise for k > 0 and counterclockwise for k < 0 */
std::vector<Crossing> chamber_path(const Diagram& d, int k, Orientation& o) {
    o = k >= 0 ? Orientation::Clockwise : Orientation::Counterclockwise;
    auto events = loop_crossings(d, o);
    // the chambers of one side live strictly before the vertical ray; when
    // the diagram has no scattered walls yet, the side still ends where the
    // opposite half-plane's rays begin
    std::size_t limit = 0;
    while (limit < events.size() && (k >= 0 ? events[limit].ray.x > 0 : events[limit].ray.x < 0))
        ++limit;
    std::size_t need = static_cast<std::size_t>(k >= 0 ? k : -k);
    if (need > limit)
        throw Error(Error::Code::CutoffTooLow,
                    "diagram holds " + std::to_string(limit) + " crossings on that side, need " +
                        std::to_string(need));
    return {events.begin(), events.begin() + static_cast<std::ptrdiff_t>(need)};
}

} // namespace

std::pair<Series, Series> chamber_transform(const Diagram& d, int k) {
    Orientation o;
    auto path = chamber_path(d, k, o);
    LoopMap m(d.nu, d.cutoff);
    for (const auto& c : path)
        m.cross(c, o);
    return {m.x, m.y};
}

Series chamber_superpotential(const Diagram& d, int k, const Rat& cutoff) {
    if (cutoff > d.cutoff)
        throw Error(Error::Code::CutoffTooLow, "diagram cutoff below the requested cutoff");
    Orientation o;
    auto path = chamber_path(d, k, o);

    // chamber-0 superpotential, then W <- theta_i^{-1}(W) along the path
    Series w = sp::build({sp::Surface::F4, sp::Chamber::ChamberK, 0}, d.nu, cutoff);
    for (const auto& c : path) {
        IVec n = crossing_exponents(c, o);
        Series f = truncate(c.wall->fn, cutoff);
        Series img_x = coordinate(d.nu, cutoff, true);
        Series img_y = coordinate(d.nu, cutoff, false);
        if (n.x != 0)
            img_x = mul(img_x, pow(f, -n.x));
        if (n.y != 0)
            img_y = mul(img_y, pow(f, -n.y));
        w = substitute(w, img_x, img_y);
    }
    return w;
}

Series limit_superpotential(const Diagram& d, int sign, const Rat& cutoff) {
    if (cutoff > d.cutoff)
        throw Error(Error::Code::CutoffTooLow, "diagram cutoff below the requested cutoff");
    Orientation o = sign >= 0 ? Orientation::Clockwise : Orientation::Counterclockwise;
    auto events = loop_crossings(d, o);
    long bound = 4 + 2 * static_cast<long>((cutoff / (d.nu.nu_a / Rat(2))).to_double());

    Series w = chamber_superpotential(d, 0, cutoff);
    long k = 0;
    for (const auto& c : events) {
        if (sign >= 0 ? c.ray.x <= 0 : c.ray.x >= 0)
            break;
        if (++k > bound)
            throw Error(Error::Code::NoStabilization,
                        "no stabilization within " + std::to_string(bound) + " chambers");
        IVec n = crossing_exponents(c, o);
        Series f = truncate(c.wall->fn, cutoff);
        Series img_x = coordinate(d.nu, cutoff, true);
        Series img_y = coordinate(d.nu, cutoff, false);
        if (n.x != 0)
            img_x = mul(img_x, pow(f, -n.x));
        if (n.y != 0)
            img_y = mul(img_y, pow(f, -n.y));
        Series next = substitute(w, img_x, img_y);
        if (next == w)
            return next;
        // a crossing whose grading clears the cutoff cannot change W further
        if (!(c.wall->grading() < cutoff))
            return next;
        w = next;
    }
    throw Error(Error::Code::NoStabilization, "diagram ends before the superpotential settles");
}

Json diagram_to_json(const Diagram& d) {
    Json j;
    j["cutoff"] = d.cutoff.str();
    j["nu"] = Json{{"A", d.nu.nu_a.str()}, {"B", d.nu.nu_b.str()}};
    Json walls = Json::array();
    for (const auto& w : d.walls) {
        Json jw;
        jw["dir"] = Json::array({w.dir.x, w.dir.y});
        jw["line"] = w.full_line;
        jw["fn"] = series_to_json(w.fn);
        if (w.coinciding > 1 && w.factor) {
            jw["coinciding"] = w.coinciding;
            jw["factor"] = series_to_json(*w.factor);
        }
        walls.push_back(std::move(jw));
    }
    j["walls"] = std::move(walls);
    // flag scattered rays that share a slope with an initial line
    Json collisions = Json::array();
    for (const auto& w : d.walls) {
        if (w.full_line)
            continue;
        for (const auto& l : d.walls)
            if (l.full_line && (l.dir == w.dir || l.dir == -w.dir))
                collisions.push_back(Json::array({w.dir.x, w.dir.y}));
    }
    j["collisions"] = std::move(collisions);
    return j;
}

namespace {

std::string fmt1(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.1f", v);
    return buf;
}

std::string caption(const Wall& w) {
    if (w.fn.size() <= 3)
        return w.fn.str();
    Series head(w.fn.nu(), w.fn.cutoff());
    int kept = 0;
    for (const auto& t : w.fn.terms()) {
        if (kept++ == 3)
            break;
        head.add_term(t.c, t.m);
    }
    return head.str() + " + ...";
}

} // namespace

std::string diagram_to_svg(const Diagram& d) {
    const double r = 100;
    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"-120 -120 240 260\" "
           "font-size=\"6\" font-family=\"monospace\">\n";
    svg += "  <line x1=\"-110\" y1=\"0\" x2=\"110\" y2=\"0\" stroke=\"#ccc\" "
           "stroke-width=\"0.5\"/>\n";
    svg += "  <line x1=\"0\" y1=\"-110\" x2=\"0\" y2=\"110\" stroke=\"#ccc\" "
           "stroke-width=\"0.5\"/>\n";
    int row = 0;
    for (const auto& w : d.walls) {
        double n = std::hypot(static_cast<double>(w.dir.x), static_cast<double>(w.dir.y));
        double ex = r * w.dir.x / n, ey = -r * w.dir.y / n; // svg y points down
        std::string color = w.full_line ? "#444" : "#c22";
        svg += "  <line x1=\"" + (w.full_line ? fmt1(-ex) : std::string("0")) + "\" y1=\"" +
               (w.full_line ? fmt1(-ey) : std::string("0")) + "\" x2=\"" + fmt1(ex) +
               "\" y2=\"" + fmt1(ey) + "\" stroke=\"" + color + "\" stroke-width=\"1\"/>\n";
        std::string slope = w.dir.x == 0 ? std::string("vertical")
                                         : "slope " + std::to_string(-(-w.dir.y) / w.dir.x);
        svg += "  <text x=\"-115\" y=\"" + fmt1(125.0 + 7 * row) + "\">" +
               (w.full_line ? "line " : "ray  ") + "(" + std::to_string(w.dir.x) + "," +
               std::to_string(w.dir.y) + ") " + slope + ": " + caption(w) + "</text>\n";
        ++row;
    }
    svg += "</svg>\n";
    return svg;
}

} // namespace nvsc::sc
