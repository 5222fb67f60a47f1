// nvsc: exact Novikov-series computations for the F3/F4 mirror
// superpotentials, wall crossings, and the rank-2 scattering diagram.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>

#include "nvsc/hirzebruch.hpp"
#include "nvsc/scattering.hpp"
#include "nvsc/series_io.hpp"
#include "nvsc/superpotential.hpp"
#include "nvsc/verify.hpp"
#include "nvsc/wallcross.hpp"

namespace {

using namespace nvsc;

struct RunConfig {
    std::string nu_a = "2";
    std::string nu_b = "1";
    std::string cutoff; // empty: 20 * nu_B
    std::string out = "-";

    Valuation nu() const { return Valuation{Rat::parse(nu_a), Rat::parse(nu_b)}; }
    Rat cut() const {
        Rat c = cutoff.empty() ? Rat(20) * Rat::parse(nu_b) : Rat::parse(cutoff);
        if (!(c > Rat(0)))
            throw Error(Error::Code::Parse, "cutoff must be positive");
        return c;
    }
};

void emit(const RunConfig& cfg, const std::string& text) {
    if (cfg.out == "-" || cfg.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(cfg.out, std::ios::binary);
    if (!f)
        throw Error(Error::Code::Parse, "cannot open output file " + cfg.out);
    f << text;
}

sp::SurfaceSpec parse_spec(const std::string& surface, const std::string& chamber, int k) {
    sp::SurfaceSpec spec;
    spec.surface = sp::surface_from_name(surface);
    spec.k = k;
    if (chamber == "default" || chamber.empty())
        spec.chamber = sp::Chamber::Default;
    else if (chamber == "left")
        spec.chamber = sp::Chamber::F3Left;
    else if (chamber == "right")
        spec.chamber = sp::Chamber::F3Right;
    else if (chamber == "series")
        spec.chamber = sp::Chamber::F4Series;
    else if (chamber == "alt")
        spec.chamber = sp::Chamber::F4Alt;
    else if (chamber == "k")
        spec.chamber = sp::Chamber::ChamberK;
    else if (chamber == "plus_inf")
        spec.chamber = sp::Chamber::PlusInfinity;
    else if (chamber == "minus_inf")
        spec.chamber = sp::Chamber::MinusInfinity;
    else
        throw Error(Error::Code::Parse, "unknown chamber: " + chamber);
    return spec;
}

// compact chart names used by `wallcross solve`
sp::SurfaceSpec parse_chart(const std::string& name) {
    if (name == "f0")
        return {sp::Surface::F0, sp::Chamber::Default};
    if (name == "f2")
        return {sp::Surface::F2, sp::Chamber::Default};
    if (name == "f3_left")
        return {sp::Surface::F3, sp::Chamber::F3Left};
    if (name == "f3_right")
        return {sp::Surface::F3, sp::Chamber::F3Right};
    if (name == "f4_series")
        return {sp::Surface::F4, sp::Chamber::F4Series};
    if (name == "f4_alt")
        return {sp::Surface::F4, sp::Chamber::F4Alt};
    throw Error(Error::Code::Parse, "unknown chart: " + name);
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

int cmd_superpotential(const RunConfig& cfg, const std::string& surface,
                       const std::string& chamber, int k, bool json) {
    sp::SurfaceSpec spec = parse_spec(surface, chamber, k);
    Series w = sp::build(spec, cfg.nu(), cfg.cut());
    if (json) {
        Json j;
        j["surface"] = spec.str();
        j["series"] = series_to_json(w);
        emit(cfg, dump(j));
    } else {
        emit(cfg, "W(" + spec.str() + ") = " + w.str() + "\n");
    }
    return 0;
}

int cmd_wallcross_solve(const RunConfig& cfg, const std::string& src, const std::string& dst,
                        const std::string& monomial, int expx, int expy, int order, bool json) {
    Valuation nu = cfg.nu();
    Rat cut = cfg.cut();
    Series w_src = sp::build(parse_chart(src), nu, cut);
    Series w_dst = sp::build(parse_chart(dst), nu, cut);
    auto [c, m] = parse_monomial(monomial);
    if (c != Rat(1))
        throw Error(Error::Code::Parse, "wall monomial must have coefficient 1");
    auto coeffs = wc::solve_wall_function(w_src, w_dst, m, expx, expy, order);
    if (json) {
        Json j;
        j["monomial"] = monomial;
        j["exp"] = Json::array({expx, expy});
        Json cs = Json::array();
        for (const auto& ck : coeffs)
            cs.push_back(ck.str());
        j["coefficients"] = std::move(cs);
        emit(cfg, dump(j));
    } else {
        std::string line = "f = 1";
        for (std::size_t i = 0; i < coeffs.size(); ++i)
            if (!coeffs[i].is_zero())
                line += " + " + coeffs[i].str() + "*q^" + std::to_string(i + 1);
        emit(cfg, line + ",  q = " + monomial + "\n");
    }
    return 0;
}

int cmd_scatter(const RunConfig& cfg, const std::string& fmt) {
    Valuation nu = cfg.nu();
    Rat cut = cfg.cut();
    sc::Diagram d = sc::complete(sc::initial_diagram(nu, cut), cut);
    if (fmt == "svg")
        emit(cfg, sc::diagram_to_svg(d));
    else
        emit(cfg, dump(sc::diagram_to_json(d)));
    return 0;
}

int cmd_scatter_chamber(const RunConfig& cfg, int k, bool json) {
    Valuation nu = cfg.nu();
    Rat cut = cfg.cut();
    sc::Diagram d = sc::complete(sc::initial_diagram(nu, cut), cut);
    Series w = sc::chamber_superpotential(d, k, cut);
    if (json) {
        Json j;
        j["chamber"] = k;
        j["series"] = series_to_json(w);
        emit(cfg, dump(j));
    } else {
        emit(cfg, "W_" + std::to_string(k) + " = " + w.str() + "\n");
    }
    return 0;
}

int cmd_scatter_limit(const RunConfig& cfg, const std::string& sign, bool json) {
    if (sign != "plus" && sign != "minus")
        throw Error(Error::Code::Parse, "sign must be plus or minus");
    Valuation nu = cfg.nu();
    Rat cut = cfg.cut();
    // the diagram needs one crossing whose grading clears the cutoff
    Rat dcut = cut + nu.nu_a;
    sc::Diagram d = sc::complete(sc::initial_diagram(nu, dcut), dcut);
    Series w = sc::limit_superpotential(d, sign == "plus" ? 1 : -1, cut);
    if (json) {
        Json j;
        j["sign"] = sign;
        j["series"] = series_to_json(w);
        emit(cfg, dump(j));
    } else {
        emit(cfg, "W_" + std::string(sign == "plus" ? "+inf" : "-inf") + " = " + w.str() + "\n");
    }
    return 0;
}

int cmd_enumerate(const RunConfig& cfg, const std::string& surface, int index,
                  const std::string& side, int bound, bool json) {
    using namespace hirz;
    if (bound < 1)
        throw Error(Error::Code::Parse, "bound must be >= 1");

    std::vector<DiscClass> classes;
    std::string basis;
    std::optional<ConstraintSystem> system;
    if (surface == "f3" && index == 0) {
        system = f3_index0_system();
        basis = "f3";
    } else if (surface == "f3" && index == 2 && side != "left") {
        system = f3_index2_right_system();
        basis = "f3";
    } else if (surface == "f3" && index == 2) {
        // left of the wall: classes read off the left chart, which is the
        // wall-crossing image of the right one
        Series left = sp::build({sp::Surface::F3, sp::Chamber::F3Left}, cfg.nu(), cfg.cut());
        for (const auto& t : left.terms())
            classes.push_back(f3_class_of_term(t.m.t.a, t.m.t.b, t.m.xe, t.m.ye));
        std::sort(classes.begin(), classes.end());
        basis = "f3";
    } else if (surface == "f4" && index == 0) {
        system = f4_index0_system();
        basis = "f4";
    } else if (surface == "f4" && index == 2) {
        system = f4_index2_system(); // no wall: side ignored
        basis = "f0_chart";
    } else {
        throw Error(Error::Code::Parse, "no enumeration for that surface/index");
    }
    if (system)
        classes = enumerate_classes(*system, bound);

    if (json) {
        Json j;
        j["surface"] = surface;
        j["index"] = index;
        j["basis"] = basis;
        j["bound"] = bound;
        if (system)
            j["system"] = system_to_json(*system);
        j["classes"] = classes_to_json(classes);
        emit(cfg, dump(j));
    } else {
        std::string text;
        for (const auto& c : classes)
            text += c.str() + "\n";
        emit(cfg, text);
    }
    return 0;
}

int cmd_critical_values(const RunConfig& cfg, const std::string& surface,
                        const std::string& chamber, double t, double tol, bool json) {
    sp::SurfaceSpec spec = parse_spec(
        surface, chamber.empty() ? (surface == "f4" ? "series" : "default") : chamber, 0);
    auto vals = sp::critical_values_numeric(spec, cfg.nu(), t, tol);
    if (json) {
        Json j;
        j["surface"] = spec.str();
        j["T"] = t;
        j["tol"] = tol;
        Json arr = Json::array();
        for (double v : vals)
            arr.push_back(v);
        j["values"] = std::move(arr);
        j["count"] = vals.size();
        j["fewer_than_four"] = vals.size() < 4;
        emit(cfg, dump(j));
    } else {
        std::string text = "critical values of " + spec.str() + " at T = " + std::to_string(t) +
                           " (" + std::to_string(vals.size()) + " found";
        if (vals.size() < 4)
            text += ", fewer than four";
        text += "):\n";
        for (double v : vals) {
            char buf[32];
            std::snprintf(buf, sizeof buf, "  %+.12f\n", v);
            text += buf;
        }
        emit(cfg, text);
    }
    return 0;
}

int cmd_obstruction(const RunConfig& cfg, int n, int points, bool json) {
    auto deg = hirz::obstruction_degree(n, points);
    Json j;
    j["n"] = n;
    j["points"] = points;
    j["ob_degree"] = deg;
    if (n == 1 && points == 1)
        j["dual_degree_via_transition"] = hirz::obstruction_dual_degree_via_transition();
    if (json) {
        emit(cfg, dump(j));
    } else {
        std::string text = "deg Ob = (";
        for (std::size_t i = 0; i < deg.size(); ++i)
            text += (i ? "," : "") + std::to_string(deg[i]);
        emit(cfg, text + ")\n");
    }
    return 0;
}

int cmd_verify_all(const RunConfig& cfg) {
    (void)cfg.cut(); // validated; the checks themselves pin their own cutoffs
    auto results = nvsc::verify::run_all();
    std::string table;
    int failures = 0;
    int i = 0;
    for (const auto& r : results) {
        char head[64];
        std::snprintf(head, sizeof head, "[%2d/%2zu] %s  %-24s", ++i, results.size(),
                      r.pass ? "PASS" : "FAIL", r.id.c_str());
        table += head;
        table += " " + r.claim + "\n";
        if (!r.pass) {
            table += "        -> " + r.detail + "\n";
            ++failures;
        }
    }
    table += std::to_string(results.size() - failures) + "/" +
             std::to_string(results.size()) + " checks passed\n";
    emit(cfg, table);
    return failures == 0 ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact Novikov-series computations: Hirzebruch superpotentials, "
                 "wall crossings, scattering diagrams"};
    app.require_subcommand(1);

    RunConfig cfg;
    app.add_option("--nuA", cfg.nu_a, "valuation of the area symbol A")->envname("NVSC_NU_A");
    app.add_option("--nuB", cfg.nu_b, "valuation of the area symbol B")->envname("NVSC_NU_B");
    app.add_option("--cutoff", cfg.cutoff, "valuation cutoff (rational; default 20*nuB)")
        ->envname("NVSC_CUTOFF");
    app.add_option("--out", cfg.out, "output path, - for stdout");

    std::string surface = "f4", chamber, side = "right", src, dst, monomial, sign = "plus";
    std::string fmt = "json";
    int k = 0, expx = 1, expy = 0, order = 6, index = 2, bound = 8, obs_n = 1, obs_p = 1;
    double t_val = 0.25, tol = 1e-8;
    bool json = false;

    auto* sp_cmd = app.add_subcommand("superpotential", "print a superpotential chart");
    sp_cmd->add_option("--surface", surface)->required();
    sp_cmd->add_option("--chamber", chamber);
    sp_cmd->add_option("--k", k, "chamber index when --chamber k");
    sp_cmd->add_flag("--json", json);

    auto* wc_cmd = app.add_subcommand("wallcross", "wall-crossing computations");
    auto* wc_solve = wc_cmd->add_subcommand("solve", "solve for a wall function order by order");
    wc_solve->add_option("--src", src)->required();
    wc_solve->add_option("--dst", dst)->required();
    wc_solve->add_option("--monomial", monomial)->required();
    wc_solve->add_option("--expx", expx);
    wc_solve->add_option("--expy", expy);
    wc_solve->add_option("--order", order);
    wc_solve->add_flag("--json", json);

    auto* sc_cmd = app.add_subcommand("scatter", "scattering diagram computations");
    sc_cmd->add_option("--emit", fmt)->check(CLI::IsMember({"json", "svg"}));
    auto* sc_chamber = sc_cmd->add_subcommand("chamber-w", "chamber superpotential");
    sc_chamber->add_option("--k", k)->required();
    sc_chamber->add_flag("--json", json);
    auto* sc_limit = sc_cmd->add_subcommand("limit", "limit superpotential");
    sc_limit->add_option("--sign", sign)->check(CLI::IsMember({"plus", "minus"}));
    sc_limit->add_flag("--json", json);

    auto* en_cmd = app.add_subcommand("enumerate-classes", "disc classes from inequalities");
    en_cmd->add_option("--surface", surface)->check(CLI::IsMember({"f3", "f4"}))->required();
    en_cmd->add_option("--index", index)->check(CLI::IsMember({0, 2}));
    en_cmd->add_option("--side", side)->check(CLI::IsMember({"left", "right"}));
    en_cmd->add_option("--bound", bound);
    en_cmd->add_flag("--json", json);

    auto* cv_cmd = app.add_subcommand("critical-values", "numeric critical values");
    cv_cmd->add_option("--surface", surface)->required();
    cv_cmd->add_option("--chamber", chamber);
    cv_cmd->add_option("--T", t_val)->required();
    cv_cmd->add_option("--tol", tol);
    cv_cmd->add_flag("--json", json);

    auto* ob_cmd = app.add_subcommand("obstruction", "obstruction bundle degree");
    ob_cmd->add_option("--n", obs_n)->required();
    ob_cmd->add_option("--points", obs_p)->required();
    ob_cmd->add_flag("--json", json);

    auto* va_cmd = app.add_subcommand("verify-all", "run the full verification table");

    // global flags (--cutoff, --nuA, ...) may follow the subcommand name
    for (auto* cmd : app.get_subcommands({})) {
        cmd->fallthrough();
        for (auto* sub : cmd->get_subcommands({}))
            sub->fallthrough();
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_name() == "CallForHelp" || e.get_name() == "CallForAllHelp") {
            app.exit(e);
            return 0;
        }
        std::fprintf(stderr, "usage error: %s\n", e.what());
        return 2;
    }

    try {
        if (sp_cmd->parsed())
            return cmd_superpotential(cfg, surface, chamber, k, json);
        if (wc_cmd->parsed()) {
            if (wc_solve->parsed())
                return cmd_wallcross_solve(cfg, src, dst, monomial, expx, expy, order, json);
            std::fprintf(stderr, "usage error: wallcross requires a subcommand\n");
            return 2;
        }
        if (sc_cmd->parsed()) {
            if (sc_chamber->parsed())
                return cmd_scatter_chamber(cfg, k, json);
            if (sc_limit->parsed())
                return cmd_scatter_limit(cfg, sign, json);
            return cmd_scatter(cfg, fmt);
        }
        if (en_cmd->parsed())
            return cmd_enumerate(cfg, surface, index, side, bound, json);
        if (cv_cmd->parsed())
            return cmd_critical_values(cfg, surface, chamber, t_val, tol, json);
        if (ob_cmd->parsed())
            return cmd_obstruction(cfg, obs_n, obs_p, json);
        if (va_cmd->parsed())
            return cmd_verify_all(cfg);
    } catch (const Error& e) {
        bool usage = e.code() == Error::Code::Parse || e.code() == Error::Code::IllegalChamber ||
                     e.code() == Error::Code::NonUnimodular;
        std::fprintf(stderr, "%s: %s\n", usage ? "usage error" : "error", e.what());
        return usage ? 2 : 1;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "usage error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 2;
}
