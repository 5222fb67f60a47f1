#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "nvsc/rational.hpp"

namespace nvsc {

class Error : public std::runtime_error {
  public:
    enum class Code {
        NotAUnit,
        NonNilpotentRemainder,
        UnsupportedSubstitution,
        BasisMismatch,
        NotALineFamily,
        IllegalChamber,
        NoClosedForm,
        NoConvergence,
        NonUnimodular,
        Inconsistent,
        Underdetermined,
        CutoffTooLow,
        NoStabilization,
        NonTerminating,
        Parse,
    };

    Error(Code code, const std::string& msg) : std::runtime_error(msg), code_(code) {}
    Code code() const { return code_; }

  private:
    Code code_;
};

/* Formal Q-linear combination a*A + b*B of the two symplectic-area symbols.
 * These are the exponents of the Novikov parameter T. */
struct AreaExponent {
    Rat a; // multiplier of symbol A
    Rat b; // multiplier of symbol B

    AreaExponent() = default;
    AreaExponent(Rat a_, Rat b_) : a(std::move(a_)), b(std::move(b_)) {}

    bool is_zero() const { return a.is_zero() && b.is_zero(); }

    friend AreaExponent operator+(const AreaExponent& x, const AreaExponent& y) {
        return {x.a + y.a, x.b + y.b};
    }
    friend AreaExponent operator-(const AreaExponent& x, const AreaExponent& y) {
        return {x.a - y.a, x.b - y.b};
    }
    AreaExponent operator-() const { return {-a, -b}; }
    friend AreaExponent operator*(const Rat& c, const AreaExponent& x) {
        return {c * x.a, c * x.b};
    }
    friend bool operator==(const AreaExponent& x, const AreaExponent& y) {
        return x.a == y.a && x.b == y.b;
    }
    friend bool operator!=(const AreaExponent& x, const AreaExponent& y) { return !(x == y); }
};

/* Numeric weights for the symbols A and B; realizes the valuation that orders
 * and truncates series. Requires nu_a > nu_b > 0. */
struct Valuation {
    Rat nu_a;
    Rat nu_b;

    Valuation() : nu_a(2), nu_b(1) {}
    Valuation(Rat a, Rat b);

    Rat operator()(const AreaExponent& t) const { return t.a * nu_a + t.b * nu_b; }

    friend bool operator==(const Valuation& x, const Valuation& y) {
        return x.nu_a == y.nu_a && x.nu_b == y.nu_b;
    }
    friend bool operator!=(const Valuation& x, const Valuation& y) { return !(x == y); }
};

/* A single term shape T^t x^xe y^ye (without coefficient). */
struct Monomial {
    AreaExponent t;
    int xe = 0;
    int ye = 0;

    Monomial() = default;
    Monomial(AreaExponent t_, int x, int y) : t(std::move(t_)), xe(x), ye(y) {}

    friend Monomial operator+(const Monomial& m, const Monomial& n) {
        return {m.t + n.t, m.xe + n.xe, m.ye + n.ye};
    }
    Monomial operator-() const { return {-t, -xe, -ye}; }
    friend bool operator==(const Monomial& m, const Monomial& n) {
        return m.t == n.t && m.xe == n.xe && m.ye == n.ye;
    }
};

inline Rat val(const Monomial& m, const Valuation& nu) { return nu(m.t); }

/* Sparse truncated Laurent series in x, y over Q, with Novikov T-powers that
 * are Q-combinations of the area symbols A and B.
 *
 * Terms are kept sorted by the total order (valuation, then t.a, t.b, xe, ye
 * lexicographically), with the valuation cached per term, no zero
 * coefficients, and every stored valuation strictly below the cutoff.
 * Operations never mutate their inputs. */
class Series {
  public:
    struct Term {
        Monomial m;
        Rat c;
        Rat v; // cached val(m) under the series' valuation map
    };
    using Terms = std::vector<Term>;

    Series(Valuation nu, Rat cutoff);

    static Series zero(const Valuation& nu, const Rat& cutoff) { return Series(nu, cutoff); }
    static Series one(const Valuation& nu, const Rat& cutoff);
    static Series monomial(const Rat& c, const Monomial& m, const Valuation& nu,
                           const Rat& cutoff);

    /* Adds c*T^(ta*A+tb*B) x^xe y^ye, dropping it if it is zero or beyond the
     * cutoff. Returns *this for chaining. */
    Series& add_term(const Rat& c, const Monomial& m);
    Series& add_term(const Rat& c, const Rat& ta, const Rat& tb, int xe, int ye) {
        return add_term(c, Monomial{AreaExponent{ta, tb}, xe, ye});
    }

    const Valuation& nu() const { return nu_; }
    const Rat& cutoff() const { return cutoff_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    Rat coeff(const Monomial& m) const;

    /* Least valuation over stored terms; only valid when not zero. */
    Rat min_val() const;

    std::string str() const;

    /* strict total order on terms: valuation, then lexicographic */
    static int cmp_terms(const Term& a, const Term& b);

    /* assumes `raw` respects the cutoff; sorts, folds equal monomials,
     * drops zeros */
    static Series from_raw(Valuation nu, Rat cutoff, Terms raw);

  private:
    Valuation nu_;
    Rat cutoff_;
    Terms terms_;
};

Series truncate(const Series& s, const Rat& new_cutoff);

Series add(const Series& a, const Series& b);
Series sub(const Series& a, const Series& b);
Series neg(const Series& a);
Series mul(const Series& a, const Series& b);
Series mul(const Rat& c, const Series& a);
Series mul_monomial(const Series& a, const Rat& c, const Monomial& m);

inline Series operator+(const Series& a, const Series& b) { return add(a, b); }
inline Series operator-(const Series& a, const Series& b) { return sub(a, b); }
inline Series operator-(const Series& a) { return neg(a); }
inline Series operator*(const Series& a, const Series& b) { return mul(a, b); }
inline Series operator*(const Rat& c, const Series& a) { return mul(c, a); }

/* True iff the two series have identical term lists below min(c, both cutoffs). */
bool eq_up_to_cutoff(const Series& a, const Series& b, const Rat& c);

/* Equality after truncating to the smaller cutoff. */
bool operator==(const Series& a, const Series& b);
inline bool operator!=(const Series& a, const Series& b) { return !(a == b); }

/* Inverse of a series of the shape c*m*(1 + h) where c*m is the unique term
 * of least valuation and every term of h has strictly positive valuation.
 * Computed as a geometric series. The result is sound up to
 * cutoff - 2*val(m), which is where the unknown tail of s first shows up.
 *
 * Throws NotAUnit when the least-valuation part is not a single term,
 * NonNilpotentRemainder when the remainder fails to gain valuation. */
Series invert_unit(const Series& s);

/* s^n by repeated squaring; n < 0 routes through invert_unit. */
Series pow(const Series& s, long n);

/* Substitutes x -> img_x, y -> img_y. Two supported shapes:
 *   - img_x = x*u and img_y = y*v with u, v units with leading term 1 and
 *     every other term of strictly positive valuation (cutoff is preserved);
 *   - both images single monomials (monomial coordinate change; the cutoff
 *     shifts conservatively by the worst valuation shift over stored terms).
 * Anything else throws UnsupportedSubstitution. */
Series substitute(const Series& s, const Series& img_x, const Series& img_y);

/* sqrt of a unit series with leading term 1; exact Newton iteration. */
Series sqrt_unit(const Series& s);

} // namespace nvsc
