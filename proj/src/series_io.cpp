#include "nvsc/series_io.hpp"

#include <cctype>

namespace nvsc {

Json series_to_json(const Series& s) {
    Json j;
    j["cutoff"] = s.cutoff().str();
    j["nu"] = Json{{"A", s.nu().nu_a.str()}, {"B", s.nu().nu_b.str()}};
    Json terms = Json::array();
    for (const auto& term : s.terms()) {
        Json t;
        t["c"] = term.c.str();
        t["tA"] = term.m.t.a.str();
        t["tB"] = term.m.t.b.str();
        t["x"] = term.m.xe;
        t["y"] = term.m.ye;
        terms.push_back(std::move(t));
    }
    j["terms"] = std::move(terms);
    return j;
}

Series series_from_json(const Json& j) {
    try {
        Valuation nu{Rat::parse(j.at("nu").at("A").get<std::string>()),
                     Rat::parse(j.at("nu").at("B").get<std::string>())};
        Series s(nu, Rat::parse(j.at("cutoff").get<std::string>()));
        for (const auto& t : j.at("terms")) {
            Monomial m{AreaExponent{Rat::parse(t.at("tA").get<std::string>()),
                                    Rat::parse(t.at("tB").get<std::string>())},
                       t.at("x").get<int>(), t.at("y").get<int>()};
            s.add_term(Rat::parse(t.at("c").get<std::string>()), m);
        }
        return s;
    } catch (const Json::exception& e) {
        throw Error(Error::Code::Parse, std::string("bad series json: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw Error(Error::Code::Parse, std::string("bad series json: ") + e.what());
    }
}

std::string area_str(const AreaExponent& t) {
    auto piece = [](const Rat& c, char sym, bool lead) {
        std::string out;
        if (c.sign() < 0)
            out += '-';
        else if (!lead)
            out += '+';
        Rat mag = c.sign() < 0 ? -c : c;
        if (mag.num_long() != 1)
            out += std::to_string(mag.num_long());
        out += sym;
        if (mag.den_long() != 1)
            out += '/' + std::to_string(mag.den_long());
        return out;
    };
    if (t.is_zero())
        return "0";
    std::string body;
    if (!t.a.is_zero())
        body += piece(t.a, 'A', true);
    if (!t.b.is_zero())
        body += piece(t.b, 'B', body.empty());
    return body;
}

namespace {

struct Cursor {
    const std::string& text;
    std::size_t pos = 0;

    bool done() const { return pos >= text.size(); }
    char peek() const { return text[pos]; }
    void skip_ws() {
        while (!done() && std::isspace(static_cast<unsigned char>(peek())))
            ++pos;
    }
    bool eat(char c) {
        skip_ws();
        if (!done() && peek() == c) {
            ++pos;
            return true;
        }
        return false;
    }
    [[noreturn]] void fail(const std::string& what) const {
        throw Error(Error::Code::Parse,
                    "monomial parse error at position " + std::to_string(pos) + ": " + what +
                        " in \"" + text + "\"");
    }
};

long parse_integer(Cursor& c) {
    c.skip_ws();
    std::size_t start = c.pos;
    if (!c.done() && (c.peek() == '-' || c.peek() == '+'))
        ++c.pos;
    while (!c.done() && std::isdigit(static_cast<unsigned char>(c.peek())))
        ++c.pos;
    if (c.pos == start || (c.pos == start + 1 && !std::isdigit(static_cast<unsigned char>(c.text[start]))))
        c.fail("expected integer");
    return std::stol(c.text.substr(start, c.pos - start));
}

bool digit_after_slash(const Cursor& c) {
    std::size_t p = c.pos;
    while (p < c.text.size() && std::isspace(static_cast<unsigned char>(c.text[p])))
        ++p;
    if (p >= c.text.size() || c.text[p] != '/')
        return false;
    ++p;
    while (p < c.text.size() && std::isspace(static_cast<unsigned char>(c.text[p])))
        ++p;
    return p < c.text.size() && std::isdigit(static_cast<unsigned char>(c.text[p]));
}

Rat parse_rat(Cursor& c) {
    long num = parse_integer(c);
    if (digit_after_slash(c)) {
        c.eat('/');
        return Rat(num, parse_integer(c));
    }
    return Rat(num);
}

// signed combination of A and B symbols: "A", "A/2", "A+2B", "3A/2-B"
AreaExponent parse_area_body(Cursor& c, char terminator) {
    AreaExponent out;
    bool any = false;
    while (true) {
        c.skip_ws();
        if (c.done() || c.peek() == terminator)
            break;
        int sign = 1;
        if (c.eat('-'))
            sign = -1;
        else
            c.eat('+');
        c.skip_ws();
        Rat mult(1);
        if (!c.done() && std::isdigit(static_cast<unsigned char>(c.peek())))
            mult = parse_rat(c);
        c.eat('*');
        c.skip_ws();
        if (c.done())
            c.fail("expected symbol A or B");
        char sym = c.peek();
        if (sym != 'A' && sym != 'B')
            c.fail("expected symbol A or B");
        ++c.pos;
        if (c.eat('/'))
            mult = mult / Rat(parse_integer(c));
        if (sym == 'A')
            out.a += Rat(sign) * mult;
        else
            out.b += Rat(sign) * mult;
        any = true;
    }
    if (!any)
        c.fail("empty exponent");
    return out;
}

// one factor: "T^...", "x", "y", "x^3", possibly with a leading rational
void parse_factor(Cursor& c, int sign_exp, Rat& coeff, Monomial& m) {
    c.skip_ws();
    if (c.done())
        c.fail("expected factor");
    char ch = c.peek();
    if (std::isdigit(static_cast<unsigned char>(ch))) {
        Rat r = parse_rat(c);
        coeff = sign_exp < 0 ? coeff / r : coeff * r;
        return;
    }
    if (ch == 'T') {
        ++c.pos;
        if (!c.eat('^'))
            c.fail("expected ^ after T");
        c.skip_ws();
        AreaExponent t;
        if (c.eat('{')) {
            t = parse_area_body(c, '}');
            if (!c.eat('}'))
                c.fail("expected }");
        } else if (c.eat('(')) {
            t = parse_area_body(c, ')');
            if (!c.eat(')'))
                c.fail("expected )");
        } else {
            // bare exponent: a single piece like A, 2B, A/2
            std::size_t stop = c.pos;
            while (stop < c.text.size() && std::isdigit(static_cast<unsigned char>(c.text[stop])))
                ++stop;
            if (stop >= c.text.size() || (c.text[stop] != 'A' && c.text[stop] != 'B'))
                c.fail("expected symbol A or B");
            ++stop;
            if (stop + 1 < c.text.size() && c.text[stop] == '/' &&
                std::isdigit(static_cast<unsigned char>(c.text[stop + 1]))) {
                ++stop;
                while (stop < c.text.size() &&
                       std::isdigit(static_cast<unsigned char>(c.text[stop])))
                    ++stop;
            }
            std::string body = c.text.substr(c.pos, stop - c.pos);
            Cursor inner{body, 0};
            t = parse_area_body(inner, '\0');
            c.pos = stop;
        }
        m.t = m.t + (sign_exp < 0 ? -t : t);
        return;
    }
    if (ch == 'x' || ch == 'y') {
        ++c.pos;
        long e = 1;
        if (c.eat('^'))
            e = parse_integer(c);
        e *= sign_exp;
        if (ch == 'x')
            m.xe += static_cast<int>(e);
        else
            m.ye += static_cast<int>(e);
        return;
    }
    c.fail("unexpected character");
}

} // namespace

std::pair<Rat, Monomial> parse_monomial(const std::string& text) {
    Cursor c{text, 0};
    Rat coeff(1);
    Monomial m;
    int sign_exp = 1;
    bool any = false;
    c.skip_ws();
    if (c.eat('-'))
        coeff = -coeff;
    else
        c.eat('+');
    while (true) {
        c.skip_ws();
        if (c.done())
            break;
        if (c.eat('*'))
            continue;
        if (c.eat('/')) {
            sign_exp = -1;
            continue;
        }
        parse_factor(c, sign_exp, coeff, m);
        sign_exp = 1;
        any = true;
    }
    if (!any)
        c.fail("empty monomial");
    return {coeff, m};
}

} // namespace nvsc
