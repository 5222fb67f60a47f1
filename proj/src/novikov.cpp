#include "nvsc/novikov.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace nvsc {

Valuation::Valuation(Rat a, Rat b) : nu_a(std::move(a)), nu_b(std::move(b)) {
    if (!(nu_b > Rat(0)) || !(nu_a > nu_b))
        throw std::invalid_argument("valuation requires nu_A > nu_B > 0");
}

Series::Series(Valuation nu, Rat cutoff) : nu_(std::move(nu)), cutoff_(std::move(cutoff)) {
    if (!(cutoff_ > Rat(0)))
        throw std::invalid_argument("cutoff must be positive");
}

int Series::cmp_terms(const Term& x, const Term& y) {
    if (x.v != y.v)
        return x.v < y.v ? -1 : 1;
    if (x.m.t.a != y.m.t.a)
        return x.m.t.a < y.m.t.a ? -1 : 1;
    if (x.m.t.b != y.m.t.b)
        return x.m.t.b < y.m.t.b ? -1 : 1;
    if (x.m.xe != y.m.xe)
        return x.m.xe < y.m.xe ? -1 : 1;
    if (x.m.ye != y.m.ye)
        return x.m.ye < y.m.ye ? -1 : 1;
    return 0;
}

Series Series::from_raw(Valuation nu, Rat cutoff, Terms raw) {
    std::sort(raw.begin(), raw.end(),
              [](const Term& a, const Term& b) { return cmp_terms(a, b) < 0; });
    Series out(std::move(nu), std::move(cutoff));
    out.terms_.reserve(raw.size());
    for (auto& t : raw) {
        if (!out.terms_.empty() && cmp_terms(out.terms_.back(), t) == 0) {
            out.terms_.back().c += t.c;
            if (out.terms_.back().c.is_zero())
                out.terms_.pop_back();
        } else if (!t.c.is_zero()) {
            out.terms_.push_back(std::move(t));
        }
    }
    return out;
}

Series Series::one(const Valuation& nu, const Rat& cutoff) {
    Series s(nu, cutoff);
    s.add_term(Rat(1), Monomial{});
    return s;
}

Series Series::monomial(const Rat& c, const Monomial& m, const Valuation& nu,
                        const Rat& cutoff) {
    Series s(nu, cutoff);
    s.add_term(c, m);
    return s;
}

Series& Series::add_term(const Rat& c, const Monomial& m) {
    if (c.is_zero())
        return *this;
    Term t{m, c, val(m, nu_)};
    if (!(t.v < cutoff_))
        return *this;
    auto it = std::lower_bound(terms_.begin(), terms_.end(), t,
                               [](const Term& a, const Term& b) { return cmp_terms(a, b) < 0; });
    if (it != terms_.end() && cmp_terms(*it, t) == 0) {
        it->c += c;
        if (it->c.is_zero())
            terms_.erase(it);
    } else {
        terms_.insert(it, std::move(t));
    }
    return *this;
}

Rat Series::coeff(const Monomial& m) const {
    Term probe{m, Rat(1), val(m, nu_)};
    auto it = std::lower_bound(terms_.begin(), terms_.end(), probe,
                               [](const Term& a, const Term& b) { return cmp_terms(a, b) < 0; });
    if (it != terms_.end() && cmp_terms(*it, probe) == 0)
        return it->c;
    return Rat(0);
}

Rat Series::min_val() const {
    if (terms_.empty())
        throw std::logic_error("min_val of zero series");
    return terms_.front().v;
}

namespace {

void require_same_nu(const Series& a, const Series& b) {
    if (a.nu() != b.nu())
        throw std::invalid_argument("series with different valuation maps");
}

std::string format_area(const AreaExponent& t) {
    auto piece = [](const Rat& c, char sym, bool lead) {
        std::string out;
        if (c.sign() < 0)
            out += '-';
        else if (!lead)
            out += '+';
        Rat mag = c.sign() < 0 ? -c : c;
        long num = mag.num_long(), den = mag.den_long();
        if (num != 1)
            out += std::to_string(num);
        out += sym;
        if (den != 1)
            out += '/' + std::to_string(den);
        return out;
    };
    std::string body;
    if (!t.a.is_zero())
        body += piece(t.a, 'A', true);
    if (!t.b.is_zero())
        body += piece(t.b, 'B', body.empty());
    bool simple = body == "A" || body == "B";
    return simple ? "T^" + body : "T^(" + body + ")";
}

std::string format_power(char var, int e) {
    std::string out(1, var);
    if (e != 1)
        out += '^' + std::to_string(e);
    return out;
}

} // namespace

std::string Series::str() const {
    if (terms_.empty())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& t : terms_) {
        Rat mag = t.c.sign() < 0 ? -t.c : t.c;
        if (first) {
            if (t.c.sign() < 0)
                os << '-';
            first = false;
        } else {
            os << (t.c.sign() < 0 ? " - " : " + ");
        }
        std::vector<std::string> factors;
        if (!t.m.t.is_zero())
            factors.push_back(format_area(t.m.t));
        if (t.m.xe != 0)
            factors.push_back(format_power('x', t.m.xe));
        if (t.m.ye != 0)
            factors.push_back(format_power('y', t.m.ye));
        if (factors.empty() || mag != Rat(1))
            factors.insert(factors.begin(), mag.str());
        for (std::size_t i = 0; i < factors.size(); ++i) {
            if (i)
                os << '*';
            os << factors[i];
        }
    }
    return os.str();
}

Series truncate(const Series& s, const Rat& new_cutoff) {
    Rat c = std::min(s.cutoff(), new_cutoff);
    Series::Terms kept;
    for (const auto& t : s.terms()) {
        if (!(t.v < c))
            break; // terms are sorted by valuation
        kept.push_back(t);
    }
    return Series::from_raw(s.nu(), c, std::move(kept));
}

Series add(const Series& a, const Series& b) {
    require_same_nu(a, b);
    Rat cut = std::min(a.cutoff(), b.cutoff());
    Series::Terms out;
    out.reserve(a.size() + b.size());
    auto ia = a.terms().begin(), ea = a.terms().end();
    auto ib = b.terms().begin(), eb = b.terms().end();
    while (ia != ea || ib != eb) {
        int which;
        if (ia == ea)
            which = 1;
        else if (ib == eb)
            which = -1;
        else
            which = Series::cmp_terms(*ia, *ib);
        if (which < 0) {
            if (ia->v < cut)
                out.push_back(*ia);
            ++ia;
        } else if (which > 0) {
            if (ib->v < cut)
                out.push_back(*ib);
            ++ib;
        } else {
            Rat c = ia->c + ib->c;
            if (!c.is_zero() && ia->v < cut)
                out.push_back({ia->m, std::move(c), ia->v});
            ++ia;
            ++ib;
        }
    }
    return Series::from_raw(a.nu(), cut, std::move(out));
}

Series sub(const Series& a, const Series& b) { return add(a, neg(b)); }

Series neg(const Series& a) {
    Series::Terms out = a.terms();
    for (auto& t : out)
        t.c = -t.c;
    return Series::from_raw(a.nu(), a.cutoff(), std::move(out));
}

Series mul(const Series& a, const Series& b) {
    require_same_nu(a, b);
    Rat cut = std::min(a.cutoff(), b.cutoff());
    Series::Terms out;
    out.reserve(a.size() * b.size() / 2 + 4);
    for (const auto& ta : a.terms()) {
        for (const auto& tb : b.terms()) {
            Rat v = ta.v + tb.v;
            if (!(v < cut))
                continue;
            out.push_back({ta.m + tb.m, ta.c * tb.c, std::move(v)});
        }
    }
    return Series::from_raw(a.nu(), std::move(cut), std::move(out));
}

Series mul(const Rat& c, const Series& a) {
    if (c.is_zero())
        return Series(a.nu(), a.cutoff());
    Series::Terms out = a.terms();
    for (auto& t : out)
        t.c *= c;
    return Series::from_raw(a.nu(), a.cutoff(), std::move(out));
}

Series mul_monomial(const Series& a, const Rat& c, const Monomial& m) {
    if (c.is_zero())
        return Series(a.nu(), a.cutoff());
    // translating every key by the same shift preserves the term order
    Rat dv = val(m, a.nu());
    Series::Terms out;
    out.reserve(a.size());
    for (const auto& t : a.terms()) {
        Rat v = t.v + dv;
        if (!(v < a.cutoff()))
            continue;
        out.push_back({t.m + m, t.c * c, std::move(v)});
    }
    return Series::from_raw(a.nu(), a.cutoff(), std::move(out));
}

bool eq_up_to_cutoff(const Series& a, const Series& b, const Rat& c) {
    require_same_nu(a, b);
    Rat bound = std::min({c, a.cutoff(), b.cutoff()});
    auto ia = a.terms().begin(), ea = a.terms().end();
    auto ib = b.terms().begin(), eb = b.terms().end();
    while (true) {
        bool da = ia == ea || !(ia->v < bound);
        bool db = ib == eb || !(ib->v < bound);
        if (da || db)
            return da && db;
        if (Series::cmp_terms(*ia, *ib) != 0 || ia->c != ib->c)
            return false;
        ++ia;
        ++ib;
    }
}

bool operator==(const Series& a, const Series& b) {
    if (a.nu() != b.nu())
        return false;
    return eq_up_to_cutoff(a, b, std::min(a.cutoff(), b.cutoff()));
}

Series invert_unit(const Series& s) {
    if (s.is_zero())
        throw Error(Error::Code::NotAUnit, "cannot invert the zero series");
    const Valuation& nu = s.nu();
    const auto& lead = s.terms().front();
    Rat v0 = lead.v;
    if (s.size() > 1 && s.terms()[1].v == v0)
        throw Error(Error::Code::NotAUnit,
                    "least-valuation part is not a single term: " + s.str());
    const Rat& c = lead.c;
    const Monomial m = lead.m;

    // u = s / (c*m) = 1 + h with every term of h of positive valuation
    Rat cu = s.cutoff() - v0;
    Series h(nu, cu);
    {
        Series::Terms ht;
        ht.reserve(s.size() - 1);
        for (std::size_t i = 1; i < s.size(); ++i) {
            const auto& t = s.terms()[i];
            Rat v = t.v - v0;
            if (v < cu)
                ht.push_back({t.m + (-m), t.c / c, std::move(v)});
        }
        h = Series::from_raw(nu, cu, std::move(ht));
    }
    if (!h.is_zero() && !(h.min_val() > Rat(0)))
        throw Error(Error::Code::NonNilpotentRemainder,
                    "remainder has a term of non-positive valuation: " + s.str());

    Series inv_u = Series::one(nu, cu);
    Series powk = Series::one(nu, cu);
    Series negh = neg(h);
    while (true) {
        powk = mul(powk, negh);
        if (powk.is_zero())
            break;
        inv_u = add(inv_u, powk);
    }

    Series::Terms out;
    out.reserve(inv_u.size());
    Rat out_cut = s.cutoff() - v0 - v0;
    for (const auto& t : inv_u.terms()) {
        Rat v = t.v - v0;
        if (v < out_cut)
            out.push_back({t.m + (-m), t.c / c, std::move(v)});
    }
    return Series::from_raw(nu, std::move(out_cut), std::move(out));
}

Series pow(const Series& s, long n) {
    if (n == 0)
        return Series::one(s.nu(), s.cutoff());
    if (n < 0)
        return invert_unit(pow(s, -n));
    Series base = s;
    Series out = Series::one(s.nu(), s.cutoff());
    long e = n;
    while (true) {
        if (e & 1)
            out = mul(out, base);
        e >>= 1;
        if (e == 0)
            break;
        base = mul(base, base);
    }
    return out;
}

namespace {

// img is x*u (resp. y*v) with u a unit of the form 1 + (positive valuation)
bool unit_shaped(const Series& img, bool around_x) {
    Monomial var{AreaExponent{}, around_x ? 1 : 0, around_x ? 0 : 1};
    if (img.coeff(var) != Rat(1))
        return false;
    for (const auto& t : img.terms())
        if (!(t.m == var) && !(t.v > Rat(0)))
            return false;
    return true;
}

Series substitute_units(const Series& s, const Series& img_x, const Series& img_y) {
    const Valuation& nu = s.nu();
    Rat cut = std::min({s.cutoff(), img_x.cutoff(), img_y.cutoff()});
    Series u = mul_monomial(truncate(img_x, cut), Rat(1), Monomial{AreaExponent{}, -1, 0});
    Series v = mul_monomial(truncate(img_y, cut), Rat(1), Monomial{AreaExponent{}, 0, -1});

    std::map<int, Series> upow, vpow;
    std::map<std::pair<int, int>, Series> pairpow;
    auto power_of = [&](std::map<int, Series>& cache, const Series& base, int e) -> const Series& {
        auto it = cache.find(e);
        if (it == cache.end())
            it = cache.emplace(e, pow(base, e)).first;
        return it->second;
    };

    Series::Terms out;
    for (const auto& t : s.terms()) {
        auto key = std::make_pair(t.m.xe, t.m.ye);
        auto it = pairpow.find(key);
        if (it == pairpow.end())
            it = pairpow
                     .emplace(key,
                              mul(power_of(upow, u, t.m.xe), power_of(vpow, v, t.m.ye)))
                     .first;
        for (const auto& p : it->second.terms()) {
            Rat vv = p.v + t.v;
            if (!(vv < cut))
                continue;
            out.push_back({p.m + t.m, p.c * t.c, std::move(vv)});
        }
    }
    return Series::from_raw(nu, std::move(cut), std::move(out));
}

Series substitute_monomials(const Series& s, const Series& img_x, const Series& img_y) {
    const Monomial& mx = img_x.terms().front().m;
    const Monomial& my = img_y.terms().front().m;
    const Rat& cx = img_x.terms().front().c;
    const Rat& cy = img_y.terms().front().c;
    const Valuation& nu = s.nu();

    auto rat_pow = [](const Rat& c, int e) {
        Rat out(1);
        Rat base = e < 0 ? Rat(1) / c : c;
        for (int i = 0; i < std::abs(e); ++i)
            out *= base;
        return out;
    };

    // Conservative cutoff: worst valuation shift over the stored terms; the
    // unseen tail is assumed to stay inside the same exponent range.
    Rat vx = nu(mx.t), vy = nu(my.t);
    Rat shift(0);
    for (const auto& t : s.terms())
        shift = std::min(shift, Rat(t.m.xe) * vx + Rat(t.m.ye) * vy);
    Rat cut = s.cutoff() + shift;
    Series::Terms out;
    out.reserve(s.size());
    for (const auto& t : s.terms()) {
        Monomial img{t.m.t + Rat(t.m.xe) * mx.t + Rat(t.m.ye) * my.t,
                     t.m.xe * mx.xe + t.m.ye * my.xe, t.m.xe * mx.ye + t.m.ye * my.ye};
        Rat v = nu(img.t);
        if (!(v < cut))
            continue;
        out.push_back({img, t.c * rat_pow(cx, t.m.xe) * rat_pow(cy, t.m.ye), std::move(v)});
    }
    return Series::from_raw(nu, std::move(cut), std::move(out));
}

} // namespace

Series substitute(const Series& s, const Series& img_x, const Series& img_y) {
    require_same_nu(s, img_x);
    require_same_nu(s, img_y);
    if (unit_shaped(img_x, true) && unit_shaped(img_y, false))
        return substitute_units(s, img_x, img_y);
    if (img_x.size() == 1 && img_y.size() == 1)
        return substitute_monomials(s, img_x, img_y);
    throw Error(Error::Code::UnsupportedSubstitution,
                "images must be x*unit, y*unit or a pair of single monomials");
}

Series sqrt_unit(const Series& s) {
    if (s.coeff(Monomial{}) != Rat(1))
        throw Error(Error::Code::NotAUnit, "sqrt requires leading term 1");
    for (const auto& t : s.terms())
        if (!(t.m == Monomial{}) && !(t.v > Rat(0)))
            throw Error(Error::Code::NotAUnit, "sqrt requires 1 + (positive valuation)");
    Series g = Series::one(s.nu(), s.cutoff());
    Rat half(1, 2);
    for (int i = 0; i < 64; ++i) {
        Series gn = mul(half, add(g, mul(s, invert_unit(g))));
        if (gn == g)
            break;
        g = gn;
    }
    if (!(mul(g, g) == s))
        throw Error(Error::Code::Inconsistent, "series has no unit square root: " + s.str());
    return g;
}

} // namespace nvsc
