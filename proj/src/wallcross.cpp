#include "nvsc/wallcross.hpp"

#include "nvsc/superpotential.hpp"

namespace nvsc::wc {

namespace {

Series power_series_in(const Monomial& q, const std::vector<Rat>& coeffs, const Valuation& nu,
                       const Rat& cutoff) {
    Series f = Series::one(nu, cutoff);
    Monomial qk = q;
    for (const Rat& c : coeffs) {
        f.add_term(c, qk);
        qk = qk + q;
    }
    return f;
}

Series image(const Series& f, int exp, bool around_x, const Valuation& nu, const Rat& cutoff) {
    Series var = Series::monomial(1, Monomial{AreaExponent{}, around_x ? 1 : 0, around_x ? 0 : 1},
                                  nu, cutoff);
    if (exp == 0)
        return var;
    return mul(var, pow(f, exp));
}

} // namespace

Series wall_function(const WallTransform& t, const Valuation& nu, const Rat& cutoff) {
    if (!(val(t.wall_monomial, nu) > Rat(0)))
        throw std::invalid_argument("wall monomial must have positive valuation");
    return power_series_in(t.wall_monomial, t.fn_coeffs, nu, cutoff);
}

Series apply(const WallTransform& t, const Series& s) {
    Series f = wall_function(t, s.nu(), s.cutoff());
    return substitute(s, image(f, t.exp_x, true, s.nu(), s.cutoff()),
                      image(f, t.exp_y, false, s.nu(), s.cutoff()));
}

Series apply_inverse(const WallTransform& t, const Series& s) {
    Series f = wall_function(t, s.nu(), s.cutoff());
    return substitute(s, image(f, -t.exp_x, true, s.nu(), s.cutoff()),
                      image(f, -t.exp_y, false, s.nu(), s.cutoff()));
}

std::vector<Rat> solve_wall_function(const Series& w_src, const Series& w_dst,
                                     const Monomial& wall_monomial, int exp_x, int exp_y,
                                     int max_order) {
    if (w_src.nu() != w_dst.nu())
        throw std::invalid_argument("superpotentials with different valuation maps");
    if (max_order < 1)
        throw std::invalid_argument("max_order must be >= 1");
    const Valuation& nu = w_src.nu();
    Rat cutoff = std::min(w_src.cutoff(), w_dst.cutoff());

    std::vector<Rat> coeffs;
    for (int k = 1; k <= max_order; ++k) {
        auto residue = [&](const Rat& ck) {
            std::vector<Rat> trial = coeffs;
            trial.push_back(ck);
            WallTransform t{wall_monomial, trial, exp_x, exp_y};
            return sub(apply(t, w_dst), w_src);
        };
        Series e0 = residue(Rat(0));
        Series lin = sub(residue(Rat(1)), e0);
        if (lin.is_zero())
            throw Error(Error::Code::Underdetermined,
                        "order " + std::to_string(k) + " coefficient is invisible below cutoff " +
                            cutoff.str());
        Rat frontier = lin.min_val();
        if (!e0.is_zero() && e0.min_val() < frontier)
            throw Error(Error::Code::Inconsistent,
                        "mismatch below the reach of the order-" + std::to_string(k) +
                            " coefficient: " + e0.str());

        // affine solve on the frontier stratum, then recheck exactly
        const auto& lead = lin.terms().front();
        Rat ck = -e0.coeff(lead.m) / lead.c;
        Series check = residue(ck);
        if (!check.is_zero() && !(check.min_val() > frontier))
            throw Error(Error::Code::Inconsistent,
                        "no consistent order-" + std::to_string(k) + " coefficient");
        coeffs.push_back(ck);
    }
    return coeffs;
}

bool gluing_holds(const Valuation& nu, const Rat& cutoff, const std::vector<Rat>& h_coeffs) {
    using sp::Chamber;
    using sp::Surface;
    Series w_right = sp::build({Surface::F3, Chamber::F3Right}, nu, cutoff);
    Series w_left = sp::build({Surface::F3, Chamber::F3Left}, nu, cutoff);

    Monomial q{AreaExponent{Rat(1), Rat(0)}, 0, -1}; // T^A / y
    WallTransform t{q, h_coeffs, 1, 0};

    // u v = x'/x must equal 1 + T^A w = 1 + T^A/y as series
    Series uv = power_series_in(q, h_coeffs, nu, cutoff);
    Series expected_uv = Series::one(nu, cutoff).add_term(1, q);
    if (!(uv == expected_uv))
        return false;

    // and the two chart restrictions of the superpotential must glue
    return apply(t, w_left) == w_right;
}

bool verify_gluing(const Valuation& nu, const Rat& cutoff) {
    return gluing_holds(nu, cutoff, {Rat(1)});
}

} // namespace nvsc::wc
