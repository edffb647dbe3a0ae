#ifndef CTZ_CONESUM_HPP
#define CTZ_CONESUM_HPP

// Symbolic evaluation of sums of p^{Lp(v)} X^{Lx(v)} Y^{Ly(v)} over regions
// of valuation vectors v = (v_x, v_y, v_z) cut out by affine inequalities.
// Each variable is eliminated by a geometric-series step whose bounds are
// affine in the not-yet-eliminated variables, which turns every chamber of
// the p-adic integral into an exact rational function of (p, X, Y).

#include "ctz/ratfunc.hpp"

#include <array>
#include <cstdint>
#include <future>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ctz::cones {

using exact::Poly;
using exact::RatFunc;

constexpr int kVarX = 0;
constexpr int kVarY = 1;
constexpr int kVarZ = 2;
constexpr int kNumVars = 3;

struct NoEliminationOrder : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NonGeometricSum : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DivergentSum : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// c . v + k with integer coefficients over the valuation variables.
struct AffineForm {
    std::array<std::int64_t, kNumVars> c{};
    std::int64_t k = 0;

    static AffineForm constant(std::int64_t v) {
        AffineForm f;
        f.k = v;
        return f;
    }
    static AffineForm var(int v, std::int64_t scale = 1) {
        AffineForm f;
        f.c[v] = scale;
        return f;
    }

    std::int64_t eval(const std::array<std::int64_t, kNumVars>& v) const {
        std::int64_t r = k;
        for (int i = 0; i < kNumVars; ++i) r += c[i] * v[i];
        return r;
    }
    bool involves(int v) const { return c[v] != 0; }
    bool is_constant() const { return !c[0] && !c[1] && !c[2]; }

    friend AffineForm operator+(const AffineForm& a, const AffineForm& b) {
        AffineForm r;
        for (int i = 0; i < kNumVars; ++i) r.c[i] = a.c[i] + b.c[i];
        r.k = a.k + b.k;
        return r;
    }
    friend AffineForm operator-(const AffineForm& a, const AffineForm& b) {
        AffineForm r;
        for (int i = 0; i < kNumVars; ++i) r.c[i] = a.c[i] - b.c[i];
        r.k = a.k - b.k;
        return r;
    }
    AffineForm scaled(std::int64_t s) const {
        AffineForm r = *this;
        for (auto& ci : r.c) ci *= s;
        r.k *= s;
        return r;
    }
    AffineForm plus(std::int64_t d) const {
        AffineForm r = *this;
        r.k += d;
        return r;
    }
    // substitute variable v by the given form
    AffineForm subst(int v, const AffineForm& f) const {
        AffineForm r = *this;
        std::int64_t s = r.c[v];
        r.c[v] = 0;
        return r + f.scaled(s);
    }
};

// Rational Fourier-Motzkin infeasibility of {f >= 0 for all f}.  Rational
// infeasibility implies there is no integer point either, which is the
// direction the dominance checks need.
inline bool fm_infeasible(std::vector<AffineForm> cons) {
    for (int v = 0; v < kNumVars; ++v) {
        std::vector<AffineForm> lows, ups, rest;
        for (const auto& f : cons) {
            if (f.c[v] > 0)
                lows.push_back(f);
            else if (f.c[v] < 0)
                ups.push_back(f);
            else
                rest.push_back(f);
        }
        for (const auto& lo : lows)
            for (const auto& up : ups)
                rest.push_back(lo.scaled(-up.c[v]) + up.scaled(lo.c[v]));
        cons = std::move(rest);
    }
    for (const auto& f : cons)
        if (f.k < 0) return true;
    return false;
}

// True if f >= 0 at every integer point of the region (conservative).
inline bool region_implies(const std::vector<AffineForm>& cons,
                           const AffineForm& f) {
    std::vector<AffineForm> sys = cons;
    AffineForm neg = AffineForm::constant(-1) - f;  // f <= -1
    sys.push_back(neg);
    return fm_infeasible(sys);
}

// A region of valuation vectors: the listed forms are >= 0, and the
// coordinate nonnegativity constraints are appended at construction.
// Strict inequalities are encoded as >= 1 before construction.
struct Chamber {
    std::string name;
    std::vector<AffineForm> constraints;
    int max_abs_var = kVarX;  // coordinate of maximal absolute value

    Chamber(std::string nm, std::vector<AffineForm> cons, int max_var)
        : name(std::move(nm)), constraints(std::move(cons)),
          max_abs_var(max_var) {
        for (int v = 0; v < kNumVars; ++v)
            constraints.push_back(AffineForm::var(v));
    }

    bool contains(const std::array<std::int64_t, kNumVars>& pt) const {
        for (const auto& f : constraints)
            if (f.eval(pt) < 0) return false;
        return true;
    }
};

// Exponent data of the summand: each lattice point contributes
// prefactor * p^{lp(v)} X^{lx(v)} Y^{ly(v)}.  The X and Y forms must be
// nonnegative on the chamber; the p form may take either sign (negative
// powers of p are cleared when the sum is assembled into a RatFunc).
struct MonomialWeight {
    AffineForm lp, lx, ly;
    RatFunc prefactor = RatFunc::constant(1);
};

// Summand of the subring integral on a chamber whose maximal absolute value
// sits at coordinate m: the integrand monomial, the Haar measure factor
// p^{-v_x-v_y-v_z} per point, and the single surviving 1 - 1/p prefactor.
inline MonomialWeight subring_weight(int max_abs_var) {
    MonomialWeight w;
    w.lp = AffineForm::var(kVarX) - AffineForm::var(kVarY);
    w.lx = AffineForm::var(kVarX) + AffineForm::var(kVarZ) -
           AffineForm::var(max_abs_var);
    w.ly = AffineForm::var(max_abs_var);
    w.prefactor = 1 - RatFunc::p().inv();
    return w;
}

inline bool weight_nonneg_on_samples(const Chamber& ch,
                                     const MonomialWeight& w, int box = 8) {
    std::array<std::int64_t, kNumVars> v{};
    for (v[0] = 0; v[0] <= box; ++v[0])
        for (v[1] = 0; v[1] <= box; ++v[1])
            for (v[2] = 0; v[2] <= box; ++v[2]) {
                if (!ch.contains(v)) continue;
                if (w.lx.eval(v) < 0 || w.ly.eval(v) < 0) return false;
            }
    return true;
}

// One symbolic term: coeff * p^{lp} X^{lx} Y^{ly}, forms affine in the
// variables that have not been summed yet.
struct SymTerm {
    RatFunc coeff;
    AffineForm lp, lx, ly;

    SymTerm subst(int v, const AffineForm& f) const {
        return SymTerm{coeff, lp.subst(v, f), lx.subst(v, f), ly.subst(v, f)};
    }
};

// Closed form of sum_{v = lo}^{hi} (or to infinity) of the term, as a
// difference of boundary terms over 1 - ratio.  The empty range hi = lo - 1
// cancels exactly; the caller keeps ranges from underrunning further.
inline std::vector<SymTerm> geom_sum(const SymTerm& term, int var,
                                     const AffineForm& lo,
                                     const std::optional<AffineForm>& hi) {
    const std::int64_t ap = term.lp.c[var];
    const std::int64_t ax = term.lx.c[var];
    const std::int64_t ay = term.ly.c[var];
    if (ap == 0 && ax == 0 && ay == 0)
        throw NonGeometricSum("geom_sum: ratio is identically 1");
    RatFunc ratio = RatFunc::monomial(ap, ax, ay);
    RatFunc scale = term.coeff / (1 - ratio);

    std::vector<SymTerm> out;
    SymTerm head = term.subst(var, lo);
    head.coeff = scale;
    out.push_back(head);
    if (hi) {
        SymTerm tail = term.subst(var, hi->plus(1));
        tail.coeff = RatFunc::constant(0) - scale;
        out.push_back(tail);
    } else {
        if (ax < 0 || ay < 0 || (ax == 0 && ay == 0 && ap >= 0))
            throw DivergentSum(
                "geom_sum: infinite tail with non-contracting ratio");
    }
    return out;
}

namespace detail {

struct ElimStep {
    int var;
    AffineForm lo;
    std::optional<AffineForm> hi;
};

// Find, permutation by permutation, an order in which each variable has a
// unique dominant lower bound and (if bounded) a unique dominant upper
// bound, all with unit coefficient.  n = 3 keeps the search trivial.
inline std::vector<ElimStep> plan_elimination(std::vector<AffineForm> cons0) {
    static const int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                                    {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
    std::string why;
    for (const auto& perm : perms) {
        std::vector<AffineForm> cons = cons0;
        std::vector<ElimStep> steps;
        bool ok = true;
        for (int pi = 0; pi < kNumVars && ok; ++pi) {
            int v = perm[pi];
            std::vector<AffineForm> lows, ups, rest;
            for (const auto& f : cons) {
                if (f.c[v] == 0) {
                    rest.push_back(f);
                } else if (f.c[v] == 1) {
                    AffineForm a = AffineForm::constant(0) - f;  // v >= a
                    a.c[v] = 0;
                    lows.push_back(a);
                } else if (f.c[v] == -1) {
                    AffineForm b = f;  // v <= b
                    b.c[v] = 0;
                    ups.push_back(b);
                } else {
                    ok = false;  // bound not affine when solved for v
                    why = "variable " + std::to_string(v) +
                          " appears with coefficient " +
                          std::to_string(f.c[v]);
                    break;
                }
            }
            if (!ok) break;
            auto dominant = [&](const std::vector<AffineForm>& cands,
                                bool lower) -> std::optional<AffineForm> {
                for (const auto& cand : cands) {
                    bool all = true;
                    for (const auto& other : cands) {
                        AffineForm diff =
                            lower ? cand - other : other - cand;
                        if (!region_implies(cons, diff)) {
                            all = false;
                            break;
                        }
                    }
                    if (all) return cand;
                }
                return std::nullopt;
            };
            auto lo = dominant(lows, true);
            if (!lo) {
                ok = false;
                why = "no dominant lower bound for variable " +
                      std::to_string(v);
                break;
            }
            std::optional<AffineForm> hi;
            if (!ups.empty()) {
                hi = dominant(ups, false);
                if (!hi) {
                    ok = false;
                    why = "no dominant upper bound for variable " +
                          std::to_string(v);
                    break;
                }
                rest.push_back(*hi - *lo);  // nonempty-range projection
            }
            steps.push_back(ElimStep{v, *lo, hi});
            cons = std::move(rest);
        }
        if (ok) return steps;
    }
    throw NoEliminationOrder("chamber_sum: no admissible elimination order (" +
                             why + ")");
}

inline RatFunc finalize(const SymTerm& t) {
    if (!t.lp.is_constant() || !t.lx.is_constant() || !t.ly.is_constant())
        throw std::logic_error("conesum: unresolved variable in term");
    return t.coeff * RatFunc::monomial(t.lp.k, t.lx.k, t.ly.k);
}

}  // namespace detail

// Exact sum of prefactor * p^{lp} X^{lx} Y^{ly} over the integer points of
// the chamber.
inline RatFunc chamber_sum(const Chamber& ch, const MonomialWeight& w) {
    auto plan = detail::plan_elimination(ch.constraints);
    std::vector<SymTerm> terms{SymTerm{w.prefactor, w.lp, w.lx, w.ly}};
    for (const auto& step : plan) {
        std::vector<SymTerm> next;
        for (const auto& t : terms)
            for (auto& piece : geom_sum(t, step.var, step.lo, step.hi))
                next.push_back(std::move(piece));
        terms = std::move(next);
    }
    RatFunc total = RatFunc::constant(0);
    for (const auto& t : terms) total += detail::finalize(t);
    return total;
}

// The six case regions of the subring integral for Z[t]/(t^3), written in
// valuations (|a| <= |b| iff v_a >= v_b) and intersected with the closure
// constraint v_x <= 2 v_z (x divides z^2 in the lattice picture).  They
// partition { v >= 0 : v_x <= 2 v_z }.
inline std::vector<std::pair<Chamber, MonomialWeight>> case_chambers() {
    using A = AffineForm;
    auto ge = [](A a, A b) { return a - b; };           // a >= b
    auto gt = [](A a, A b) { return (a - b).plus(-1); };  // a > b
    const A x = A::var(kVarX), y = A::var(kVarY), z = A::var(kVarZ);
    const A closure = ge(A::var(kVarZ, 2), x);

    std::vector<std::pair<Chamber, MonomialWeight>> cases;
    cases.emplace_back(Chamber("J1", {ge(y, x), ge(z, y), closure}, kVarX),
                       subring_weight(kVarX));
    cases.emplace_back(Chamber("J2", {ge(z, x), gt(y, z), closure}, kVarX),
                       subring_weight(kVarX));
    cases.emplace_back(Chamber("J3", {ge(x, z), gt(z, y), closure}, kVarY),
                       subring_weight(kVarY));
    cases.emplace_back(Chamber("J4", {gt(x, y), gt(z, x), closure}, kVarY),
                       subring_weight(kVarY));
    cases.emplace_back(Chamber("J5", {gt(x, y), ge(y, z), closure}, kVarZ),
                       subring_weight(kVarZ));
    cases.emplace_back(Chamber("J6", {gt(x, z), ge(y, x), closure}, kVarZ),
                       subring_weight(kVarZ));
    return cases;
}

// Case 6 split along |z|^2 <= |y| versus |y| < |z|^2.
inline std::vector<std::pair<Chamber, MonomialWeight>> case6_subchambers() {
    using A = AffineForm;
    auto ge = [](A a, A b) { return a - b; };
    auto gt = [](A a, A b) { return (a - b).plus(-1); };
    const A x = A::var(kVarX), y = A::var(kVarY), z = A::var(kVarZ);
    const A closure = ge(A::var(kVarZ, 2), x);

    std::vector<std::pair<Chamber, MonomialWeight>> subs;
    subs.emplace_back(
        Chamber("J6_1", {gt(x, z), ge(y, x), closure, ge(A::var(kVarZ, 2), y)},
                kVarZ),
        subring_weight(kVarZ));
    subs.emplace_back(
        Chamber("J6_2", {gt(x, z), ge(y, x), closure, gt(y, A::var(kVarZ, 2))},
                kVarZ),
        subring_weight(kVarZ));
    return subs;
}

// Sum of the six chamber sums; equals the bivariate local zeta factor.
inline RatFunc integral_total(int jobs = 1) {
    auto cases = case_chambers();
    std::vector<RatFunc> parts(cases.size());
    if (jobs <= 1) {
        for (std::size_t i = 0; i < cases.size(); ++i)
            parts[i] = chamber_sum(cases[i].first, cases[i].second);
    } else {
        std::vector<std::future<RatFunc>> fut;
        for (std::size_t i = 0; i < cases.size(); ++i)
            fut.push_back(std::async(std::launch::async, [&cases, i] {
                return chamber_sum(cases[i].first, cases[i].second);
            }));
        for (std::size_t i = 0; i < cases.size(); ++i) parts[i] = fut[i].get();
    }
    RatFunc total = RatFunc::constant(0);
    for (const auto& f : parts) total += f;
    return total;
}

// Reference closed forms of the six case sums and the two case-6 subcases.
inline RatFunc case_closed_form(const std::string& name) {
    const RatFunc p = RatFunc::p(), X = RatFunc::x(), Y = RatFunc::y();
    const RatFunc u = p.inv();
    if (name == "J1")
        return (1 - u) / ((1 - X) * (1 - u * X) * (1 - X * Y));
    if (name == "J2") return u / ((1 - X * Y) * (1 - u * X));
    if (name == "J3")
        return ((1 - p) * X.pow(2) *
                (p.pow(2) * X.pow(3) + p * X.pow(2) * Y - p * X - 1)) /
               ((1 - p * X.pow(2)) * (1 - X * Y) * (1 - p.pow(2) * X.pow(3)) *
                (1 - p * X.pow(2) * Y));
    if (name == "J4")
        return ((p - 1) * X.pow(3)) /
               ((1 - X) * (1 - p * X.pow(2)) * (1 - X * Y));
    if (name == "J5")
        return ((p - 1) * X.pow(2) * Y) /
               ((1 - X * Y) * (1 - X.pow(2) * Y) * (1 - p * X.pow(2) * Y));
    if (name == "J6")
        return (X.pow(2) * Y) / ((1 - X.pow(2) * Y) * (1 - X * Y));
    if (name == "J6_1")
        return (X.pow(2) * Y * (1 - u)) /
               ((1 - X * Y) * (1 - X.pow(2) * Y) * (1 - u * X * Y));
    if (name == "J6_2")
        return (u * X.pow(2) * Y) / ((1 - u * X * Y) * (1 - X.pow(2) * Y));
    throw std::invalid_argument("case_closed_form: unknown case " + name);
}

struct PartitionReport {
    std::int64_t region_points = 0;
    std::int64_t uncovered = 0;
    std::int64_t multiply_covered = 0;
    std::int64_t outside_covered = 0;

    bool exact_partition() const {
        return uncovered == 0 && multiply_covered == 0 && outside_covered == 0;
    }
};

// Finite certificate over [0, box]^3 that the six chambers tile exactly
// { v_x <= 2 v_z } with no gaps and no overlaps.
inline PartitionReport scan_partition(int box = 12) {
    auto cases = case_chambers();
    PartitionReport rep;
    std::array<std::int64_t, kNumVars> v{};
    for (v[0] = 0; v[0] <= box; ++v[0])
        for (v[1] = 0; v[1] <= box; ++v[1])
            for (v[2] = 0; v[2] <= box; ++v[2]) {
                int hits = 0;
                for (const auto& [ch, w] : cases)
                    if (ch.contains(v)) ++hits;
                if (v[0] <= 2 * v[2]) {
                    ++rep.region_points;
                    if (hits == 0) ++rep.uncovered;
                    if (hits > 1) ++rep.multiply_covered;
                } else if (hits > 0) {
                    ++rep.outside_covered;
                }
            }
    return rep;
}

}  // namespace ctz::cones

#endif
