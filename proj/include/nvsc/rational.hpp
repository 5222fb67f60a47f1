#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <ostream>
#include <string>

namespace nvsc {

/* Exact rational numbers, always kept in lowest terms.
 * Thin value wrapper around GMP's mpq_class so the rest of the library
 * never touches GMP directly. */
class Rat {
  public:
    Rat() : v_(0) {}
    Rat(long n) : v_(static_cast<long>(n)) {}
    Rat(int n) : v_(static_cast<long>(n)) {}
    Rat(long num, long den) : v_(num, den) { v_.canonicalize(); }

    /* Accepts "p" or "p/q". Throws std::invalid_argument on malformed input. */
    static Rat parse(const std::string& s);

    Rat operator-() const { return Rat(mpq_class(-v_)); }
    Rat& operator+=(const Rat& o) { v_ += o.v_; return *this; }
    Rat& operator-=(const Rat& o) { v_ -= o.v_; return *this; }
    Rat& operator*=(const Rat& o) { v_ *= o.v_; return *this; }
    Rat& operator/=(const Rat& o); // throws on division by zero

    friend Rat operator+(Rat a, const Rat& b) { return a += b; }
    friend Rat operator-(Rat a, const Rat& b) { return a -= b; }
    friend Rat operator*(Rat a, const Rat& b) { return a *= b; }
    friend Rat operator/(Rat a, const Rat& b) { return a /= b; }

    friend bool operator==(const Rat& a, const Rat& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Rat& a, const Rat& b) { return a.v_ != b.v_; }
    friend bool operator<(const Rat& a, const Rat& b) { return a.v_ < b.v_; }
    friend bool operator<=(const Rat& a, const Rat& b) { return a.v_ <= b.v_; }
    friend bool operator>(const Rat& a, const Rat& b) { return a.v_ > b.v_; }
    friend bool operator>=(const Rat& a, const Rat& b) { return a.v_ >= b.v_; }

    bool is_zero() const { return sgn(v_) == 0; }
    int sign() const { return sgn(v_); }
    bool is_integer() const { return v_.get_den() == 1; }

    /* Canonical string form: "p" when the denominator is 1, else "p/q". */
    std::string str() const { return v_.get_str(); }
    double to_double() const { return v_.get_d(); }

    long num_long() const { return v_.get_num().get_si(); }
    long den_long() const { return v_.get_den().get_si(); }

  private:
    explicit Rat(mpq_class v) : v_(std::move(v)) {}
    mpq_class v_;
};

inline std::ostream& operator<<(std::ostream& os, const Rat& r) { return os << r.str(); }

inline Rat Rat::parse(const std::string& s) {
    if (s.empty())
        throw std::invalid_argument("empty rational literal");
    mpq_class v;
    if (v.set_str(s, 10) != 0)
        throw std::invalid_argument("bad rational literal: " + s);
    if (sgn(v.get_den()) == 0)
        throw std::invalid_argument("zero denominator: " + s);
    v.canonicalize();
    return Rat(std::move(v));
}

inline Rat& Rat::operator/=(const Rat& o) {
    if (o.is_zero())
        throw std::invalid_argument("rational division by zero");
    v_ /= o.v_;
    return *this;
}

} // namespace nvsc
