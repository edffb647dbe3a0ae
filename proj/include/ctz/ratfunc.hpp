#ifndef CTZ_RATFUNC_HPP
#define CTZ_RATFUNC_HPP

// Exact rational functions num/den in (p, X, Y).  Equality is decided by
// cross-multiplication; gcd normalization is never needed for correctness.

#include "ctz/poly.hpp"

#include <stdexcept>
#include <string>

namespace ctz::exact {

class RatFunc {
  public:
    RatFunc() : num_(Poly::zero()), den_(Poly::constant(1)) {}
    RatFunc(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
        if (den_.is_zero()) throw std::domain_error("RatFunc: zero denominator");
    }
    RatFunc(const Poly& num) : num_(num), den_(Poly::constant(1)) {}

    static RatFunc constant(long c) { return RatFunc(Poly::constant(c)); }
    static RatFunc constant(const Rat& c) { return RatFunc(Poly::constant(c)); }
    static RatFunc p() { return RatFunc(Poly::p()); }
    static RatFunc x() { return RatFunc(Poly::x()); }
    static RatFunc y() { return RatFunc(Poly::y()); }
    // p^a X^b Y^c with exponents of either sign; negative exponents go to
    // the denominator.
    static RatFunc monomial(long a, long b, long c) {
        auto part = [](int e, Poly (*var)()) {
            return e >= 0 ? var().pow(static_cast<unsigned>(e))
                          : Poly::constant(1);
        };
        Poly n = part(static_cast<int>(a), Poly::p) *
                 part(static_cast<int>(b), Poly::x) *
                 part(static_cast<int>(c), Poly::y);
        auto anti = [](int e, Poly (*var)()) {
            return e < 0 ? var().pow(static_cast<unsigned>(-e))
                         : Poly::constant(1);
        };
        Poly d = anti(static_cast<int>(a), Poly::p) *
                 anti(static_cast<int>(b), Poly::x) *
                 anti(static_cast<int>(c), Poly::y);
        return RatFunc(n, d);
    }

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }

    friend RatFunc operator+(const RatFunc& a, const RatFunc& b) {
        return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RatFunc operator-(const RatFunc& a, const RatFunc& b) {
        return RatFunc(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RatFunc operator-(const RatFunc& a) {
        return RatFunc(-a.num_, a.den_);
    }
    friend RatFunc operator*(const RatFunc& a, const RatFunc& b) {
        return RatFunc(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend RatFunc operator/(const RatFunc& a, const RatFunc& b) {
        if (b.num_.is_zero())
            throw std::domain_error("RatFunc: division by zero function");
        return RatFunc(a.num_ * b.den_, a.den_ * b.num_);
    }
    RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
    RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
    RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }
    RatFunc& operator/=(const RatFunc& o) { return *this = *this / o; }

    RatFunc pow(unsigned e) const {
        RatFunc r = constant(1);
        for (unsigned i = 0; i < e; ++i) r *= *this;
        return r;
    }
    RatFunc inv() const { return constant(1) / *this; }

    // a/b == c/d  iff  a*d - c*b == 0.
    friend bool operator==(const RatFunc& a, const RatFunc& b) {
        return (a.num_ * b.den_ - b.num_ * a.den_).is_zero();
    }

    RatFunc subst_y_zero() const {
        return RatFunc(num_.subst_y_zero(), den_.subst_y_zero());
    }
    RatFunc subst_y_to_x() const {
        return RatFunc(num_.subst_y_to_x(), den_.subst_y_to_x());
    }
    RatFunc specialize_p(long p0) const {
        return RatFunc(num_.specialize_p(p0), den_.specialize_p(p0));
    }

    Rat eval(const Rat& vp, const Rat& vx, const Rat& vy) const {
        Rat d = den_.eval(vp, vx, vy);
        if (d == 0) throw std::domain_error("RatFunc::eval: pole");
        return num_.eval(vp, vx, vy) / d;
    }

    // Scale num and den by 1/content(den) so the denominator is a primitive
    // integer polynomial whose canonical-first coefficient is positive.
    // A pure representation change; used for stable printing.
    RatFunc canonical_scaled() const {
        Rat cd = den_.content_signed();
        Rat inv = 1 / cd;
        return RatFunc(inv * num_, inv * den_);
    }

    std::string to_string() const {
        RatFunc c = canonical_scaled();
        std::string n = c.num_.to_string();
        std::string d = c.den_.to_string();
        if (d == "1") return n;
        return "(" + n + ") / (" + d + ")";
    }

  private:
    Poly num_;
    Poly den_;
};

inline bool rat_eq(const RatFunc& f, const RatFunc& g) { return f == g; }

inline RatFunc operator+(long a, const RatFunc& b) {
    return RatFunc::constant(a) + b;
}
inline RatFunc operator-(long a, const RatFunc& b) {
    return RatFunc::constant(a) - b;
}
inline RatFunc operator*(long a, const RatFunc& b) {
    return RatFunc::constant(a) * b;
}
inline RatFunc operator+(const RatFunc& a, long b) {
    return a + RatFunc::constant(b);
}
inline RatFunc operator-(const RatFunc& a, long b) {
    return a - RatFunc::constant(b);
}
inline RatFunc operator*(const RatFunc& a, long b) {
    return a * RatFunc::constant(b);
}
inline RatFunc operator/(long a, const RatFunc& b) {
    return RatFunc::constant(a) / b;
}
inline RatFunc operator/(const RatFunc& a, long b) {
    return a / RatFunc::constant(b);
}

}  // namespace ctz::exact

#endif
