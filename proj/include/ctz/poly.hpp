#ifndef CTZ_POLY_HPP
#define CTZ_POLY_HPP

// Sparse exact polynomials in the three commuting indeterminates p, X, Y
// over the rationals.  Terms are kept in a canonical (degree-lex, p < X < Y)
// order and zero coefficients are never stored, so equal polynomials have
// identical representations.

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>

namespace ctz::exact {

using Int = mpz_class;
using Rat = mpq_class;

inline Rat make_rat(long num, long den) {
    if (den == 0) throw std::domain_error("make_rat: zero denominator");
    Rat q(num, den);
    q.canonicalize();
    return q;
}

inline Int int_pow(const Int& base, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

// Exponent triple (e_p, e_X, e_Y).  Nonnegative by construction.
struct Mono {
    int ep = 0;
    int ex = 0;
    int ey = 0;

    int total() const { return ep + ex + ey; }
    friend bool operator==(const Mono&, const Mono&) = default;
};

struct MonoLess {
    bool operator()(const Mono& a, const Mono& b) const {
        if (a.total() != b.total()) return a.total() < b.total();
        if (a.ep != b.ep) return a.ep < b.ep;
        if (a.ex != b.ex) return a.ex < b.ex;
        return a.ey < b.ey;
    }
};

class Poly {
  public:
    using TermMap = std::map<Mono, Rat, MonoLess>;

    Poly() = default;

    static Poly zero() { return Poly(); }
    static Poly constant(const Rat& c) {
        Poly f;
        f.add_term(Mono{}, c);
        return f;
    }
    static Poly constant(long c) { return constant(Rat(c)); }
    static Poly monomial(const Rat& c, int ep, int ex, int ey) {
        if (ep < 0 || ex < 0 || ey < 0)
            throw std::invalid_argument("Poly: negative exponent");
        Poly f;
        f.add_term(Mono{ep, ex, ey}, c);
        return f;
    }
    static Poly p() { return monomial(Rat(1), 1, 0, 0); }
    static Poly x() { return monomial(Rat(1), 0, 1, 0); }
    static Poly y() { return monomial(Rat(1), 0, 0, 1); }

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const {
        return terms_.empty() ||
               (terms_.size() == 1 && terms_.begin()->first == Mono{});
    }
    // Constant term (zero if absent).
    Rat constant_term() const {
        auto it = terms_.find(Mono{});
        return it == terms_.end() ? Rat(0) : it->second;
    }

    const TermMap& terms() const { return terms_; }
    std::size_t term_count() const { return terms_.size(); }

    int deg_p() const { return deg([](const Mono& m) { return m.ep; }); }
    int deg_x() const { return deg([](const Mono& m) { return m.ex; }); }
    int deg_y() const { return deg([](const Mono& m) { return m.ey; }); }

    void add_term(const Mono& m, const Rat& c) {
        if (c == 0) return;
        auto [it, fresh] = terms_.emplace(m, c);
        if (!fresh) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    friend Poly operator+(const Poly& a, const Poly& b) {
        Poly r = a;
        for (const auto& [m, c] : b.terms_) r.add_term(m, c);
        return r;
    }
    friend Poly operator-(const Poly& a, const Poly& b) {
        Poly r = a;
        for (const auto& [m, c] : b.terms_) r.add_term(m, Rat(-c));
        return r;
    }
    friend Poly operator-(const Poly& a) { return Poly::zero() - a; }
    friend Poly operator*(const Poly& a, const Poly& b) {
        Poly r;
        for (const auto& [ma, ca] : a.terms_)
            for (const auto& [mb, cb] : b.terms_)
                r.add_term(Mono{ma.ep + mb.ep, ma.ex + mb.ex, ma.ey + mb.ey},
                           Rat(ca * cb));
        return r;
    }
    Poly& operator+=(const Poly& o) { return *this = *this + o; }
    Poly& operator-=(const Poly& o) { return *this = *this - o; }
    Poly& operator*=(const Poly& o) { return *this = *this * o; }

    friend bool operator==(const Poly& a, const Poly& b) {
        return a.terms_ == b.terms_;
    }

    Poly pow(unsigned e) const {
        Poly r = constant(1);
        for (unsigned i = 0; i < e; ++i) r *= *this;
        return r;
    }

    // Substitutions used by the zeta-factor specializations.
    Poly subst_y_zero() const {
        Poly r;
        for (const auto& [m, c] : terms_)
            if (m.ey == 0) r.add_term(m, c);
        return r;
    }
    Poly subst_y_to_x() const {  // the diagonal Z = X = Y
        Poly r;
        for (const auto& [m, c] : terms_)
            r.add_term(Mono{m.ep, m.ex + m.ey, 0}, c);
        return r;
    }
    Poly specialize_p(long p0) const {
        if (p0 < 2) throw std::invalid_argument("specialize_p: need p0 >= 2");
        Poly r;
        for (const auto& [m, c] : terms_)
            r.add_term(Mono{0, m.ex, m.ey},
                       Rat(c * int_pow(Int(p0), m.ep)));
        return r;
    }

    Rat eval(const Rat& vp, const Rat& vx, const Rat& vy) const {
        Rat acc(0);
        for (const auto& [m, c] : terms_)
            acc += c * pow_rat(vp, m.ep) * pow_rat(vx, m.ex) * pow_rat(vy, m.ey);
        return acc;
    }

    // Positive rational content (gcd of numerators / lcm of denominators),
    // signed by the canonical-first term.  Zero polynomial has content 0.
    Rat content_signed() const {
        if (terms_.empty()) return Rat(0);
        Int g(0), l(1);
        for (const auto& [m, c] : terms_) {
            g = gcd(g, Int(c.get_num()));
            l = lcm(l, Int(c.get_den()));
        }
        Rat content(g, l);
        content.canonicalize();
        if (terms_.begin()->second < 0) content = -content;
        return content;
    }

    std::string to_string() const {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [m, c] : terms_) {
            Rat a = c;
            if (first) {
                if (a < 0) {
                    os << "-";
                    a = -a;
                }
            } else {
                os << (a < 0 ? " - " : " + ");
                if (a < 0) a = -a;
            }
            first = false;
            bool bare = (m == Mono{});
            if (a != 1 || bare) {
                os << a.get_str();
                if (!bare) os << "*";
            }
            bool star = false;
            auto put = [&](const char* v, int e) {
                if (e == 0) return;
                if (star) os << "*";
                os << v;
                if (e > 1) os << "^" << e;
                star = true;
            };
            put("p", m.ep);
            put("X", m.ex);
            put("Y", m.ey);
        }
        return os.str();
    }

  private:
    template <class F>
    int deg(F&& pick) const {
        int d = 0;
        for (const auto& [m, c] : terms_) d = std::max(d, pick(m));
        return d;
    }
    static Rat pow_rat(const Rat& b, int e) {
        Rat r(1);
        for (int i = 0; i < e; ++i) r *= b;
        return r;
    }

    TermMap terms_;
};

inline Poly operator*(const Rat& c, const Poly& f) {
    return Poly::constant(c) * f;
}
inline Poly operator*(long c, const Poly& f) { return Poly::constant(c) * f; }

// Exact division of univariate (p-only) polynomials; nullopt-style throw when
// the division has a remainder.  Used by the series recurrence when the
// denominator's constant X,Y-term is a nontrivial polynomial in p.
inline Poly divexact_p(const Poly& f, const Poly& g) {
    if (g.is_zero()) throw std::domain_error("divexact_p: zero divisor");
    if (g.deg_x() != 0 || g.deg_y() != 0 || f.deg_x() != 0 || f.deg_y() != 0)
        throw std::invalid_argument("divexact_p: operands must involve p only");
    if (g.is_constant()) {
        Rat inv = 1 / g.constant_term();
        return inv * f;
    }
    // classical long division by descending p-degree
    auto coeff_of = [](const Poly& h, int e) {
        auto it = h.terms().find(Mono{e, 0, 0});
        return it == h.terms().end() ? Rat(0) : it->second;
    };
    int dg = g.deg_p();
    Rat lead = coeff_of(g, dg);
    Poly rem = f, quot;
    while (!rem.is_zero() && rem.deg_p() >= dg) {
        int dr = rem.deg_p();
        Rat c = coeff_of(rem, dr);
        if (c == 0) break;
        Poly t = Poly::monomial(Rat(c / lead), dr - dg, 0, 0);
        quot += t;
        rem -= t * g;
    }
    if (!rem.is_zero())
        throw std::domain_error("divexact_p: inexact division");
    return quot;
}

}  // namespace ctz::exact

#endif
