#ifndef CTZ_ZETA_HPP
#define CTZ_ZETA_HPP

// Closed-form local factors of the subring zeta functions of Z[t]/(t^3),
// multiplicative assembly of Dirichlet coefficients, Euler-product constants
// with rigorous tail enclosures, and desk-scale asymptotic fits.
//
// Numeric results are reported as intervals: long double arithmetic plus
// explicit slack for rounding, truncation bounded by integral tests, and
// Euler-product tails summed through prime zeta values.

#include "ctz/series.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace ctz::zeta {

using exact::Poly;
using exact::Rat;
using exact::RatFunc;
using exact::SeriesTable;
using std::int64_t;

// ---------------------------------------------------------------------------
// Local factors.  Univariate families use X in the role of Z = p^{-s}.
// ---------------------------------------------------------------------------

enum class FactorKind {
    TheoremBivariate,      // bivariate factor in X = p^{-s1}, Y = p^{-s2}
    DiagonalTotal,         // total subring factor, Z = X = Y
    Cocyclic,              // cocyclic subring factor (Y = 0 specialization)
    SublatticeReference,   // all sublattices of Z^3, for cross-checks
    Ones,                  // constant coefficient 1 sanity family
};

inline const char* factor_name(FactorKind k) {
    switch (k) {
        case FactorKind::TheoremBivariate: return "theorem";
        case FactorKind::DiagonalTotal: return "diagonal";
        case FactorKind::Cocyclic: return "cocyclic";
        case FactorKind::SublatticeReference: return "sublattice";
        case FactorKind::Ones: return "ones";
    }
    return "?";
}

inline RatFunc local_factor(FactorKind kind) {
    const RatFunc p = RatFunc::p(), X = RatFunc::x(), Y = RatFunc::y();
    switch (kind) {
        case FactorKind::TheoremBivariate:
            return (1 + X + p * X.pow(2) - p * X.pow(3) * Y -
                    p.pow(2) * X.pow(4) * Y - p.pow(2) * X.pow(5) * Y) /
                   ((1 - X * Y) * (1 - p * X.pow(2) * Y) *
                    (1 - p.pow(2) * X.pow(3)));
        case FactorKind::DiagonalTotal:
            return (1 + p * X.pow(2)) /
                   ((1 - X) * (1 - p.pow(2) * X.pow(3)));
        case FactorKind::Cocyclic:
            return (1 + X + p * X.pow(2)) / (1 - p.pow(2) * X.pow(3));
        case FactorKind::SublatticeReference:
            return RatFunc::constant(1) /
                   ((1 - X) * (1 - p * X) * (1 - p.pow(2) * X));
        case FactorKind::Ones:
            return RatFunc::constant(1) / (1 - X);
    }
    throw std::invalid_argument("local_factor: unknown kind");
}

// The cocyclic Euler factor as displayed in terms of Z = p^{-s}:
// 1 - Z^2 - p Z^3 + p Z^4 - p^2 Z^4 + p^2 Z^5.
inline Poly cocyclic_display_poly() {
    Poly Z = Poly::x(), p = Poly::p(), one = Poly::constant(1);
    return one - Z.pow(2) - p * Z.pow(3) + p * Z.pow(4) - p.pow(2) * Z.pow(4) +
           p.pow(2) * Z.pow(5);
}

// Local factor of zeta(s) zeta(2s-1) zeta(3s-2), Z = p^{-s}.
inline RatFunc zeta_triple_local() {
    const RatFunc p = RatFunc::p(), Z = RatFunc::x();
    return RatFunc::constant(1) /
           ((1 - Z) * (1 - p * Z.pow(2)) * (1 - p.pow(2) * Z.pow(3)));
}

// ---------------------------------------------------------------------------
// Exact local and global Dirichlet coefficients.
// ---------------------------------------------------------------------------

inline std::vector<Poly> local_coeff_polys(FactorKind kind, int emax) {
    SeriesTable t = exact::series_expand(local_factor(kind), emax, 0);
    std::vector<Poly> out;
    out.reserve(emax + 1);
    for (int e = 0; e <= emax; ++e) out.push_back(t.at(e, 0));
    return out;
}

inline int64_t poly_p_to_i64(const Poly& f, int64_t p0) {
    Rat v = f.eval(Rat(static_cast<long>(p0)), Rat(1), Rat(1));
    if (v.get_den() != 1) throw std::domain_error("coefficient not integral");
    mpz_class z = v.get_num();
    if (!z.fits_slong_p()) throw std::overflow_error("coefficient overflow");
    return z.get_si();
}

inline std::vector<int64_t> local_coeffs(FactorKind kind, int64_t p0,
                                         int emax) {
    auto polys = local_coeff_polys(kind, emax);
    std::vector<int64_t> out;
    out.reserve(polys.size());
    for (const auto& f : polys) out.push_back(poly_p_to_i64(f, p0));
    return out;
}

inline std::vector<int64_t> primes_up_to(int64_t n) {
    std::vector<bool> comp(n + 1, false);
    std::vector<int64_t> primes;
    for (int64_t i = 2; i <= n; ++i) {
        if (comp[i]) continue;
        primes.push_back(i);
        for (int64_t j = i * i; j <= n; j += i) comp[j] = true;
    }
    return primes;
}

constexpr int64_t kCoeffTableCap = 20'000'000;

// a[n] for n <= B assembled multiplicatively from the local factor.
inline std::vector<int64_t> dirichlet_coeffs(FactorKind kind, int64_t B) {
    if (B < 1) throw std::invalid_argument("dirichlet_coeffs: B < 1");
    if (B > kCoeffTableCap)
        throw std::invalid_argument("dirichlet_coeffs: B exceeds memory guard");
    int emax = 0;
    while ((int64_t(1) << (emax + 1)) <= B) ++emax;
    auto polys = local_coeff_polys(kind, emax);

    std::vector<bool> is_const(polys.size());
    std::vector<int64_t> const_val(polys.size(), 0);
    for (std::size_t e = 0; e < polys.size(); ++e)
        if (polys[e].is_constant()) {
            is_const[e] = true;
            const_val[e] = poly_p_to_i64(polys[e], 2);
        }

    std::vector<int64_t> a(B + 1, 1);
    a[0] = 0;
    for (int64_t p : primes_up_to(B)) {
        int64_t q = p;
        for (int e = 1; q <= B; ++e) {
            int64_t c = is_const[e] ? const_val[e] : poly_p_to_i64(polys[e], p);
            if (c != 1) {
                for (int64_t m = q; m <= B; m += q)
                    if ((m / q) % p != 0) a[m] *= c;
            }
            if (q > B / p) break;
            q *= p;
        }
    }
    return a;
}

// ---------------------------------------------------------------------------
// Interval scaffolding (long double endpoints, explicit slack).
// ---------------------------------------------------------------------------

struct Ival {
    long double lo = 0, hi = 0;

    static Ival point(long double v) { return {v, v}; }
    static Ival with_abs_error(long double v, long double e) {
        return {v - e, v + e};
    }
    long double mid() const { return (lo + hi) / 2; }
    long double width() const { return hi - lo; }
    bool contains(long double v) const { return lo <= v && v <= hi; }
    bool overlaps(const Ival& o) const { return lo <= o.hi && o.lo <= hi; }

    Ival pad_rel(long double r) const {
        long double m = std::max(std::fabs((double)lo), std::fabs((double)hi));
        return {lo - m * r, hi + m * r};
    }
    friend Ival operator+(const Ival& a, const Ival& b) {
        return Ival{a.lo + b.lo, a.hi + b.hi}.pad_rel(1e-18L);
    }
    friend Ival operator-(const Ival& a, const Ival& b) {
        return Ival{a.lo - b.hi, a.hi - b.lo}.pad_rel(1e-18L);
    }
    friend Ival operator*(const Ival& a, const Ival& b) {
        long double c[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo,
                            a.hi * b.hi};
        return Ival{std::min({c[0], c[1], c[2], c[3]}),
                    std::max({c[0], c[1], c[2], c[3]})}
            .pad_rel(1e-18L);
    }
    friend Ival operator/(const Ival& a, const Ival& b) {
        if (b.lo <= 0 && b.hi >= 0)
            throw std::domain_error("Ival: division by interval through 0");
        long double c[4] = {a.lo / b.lo, a.lo / b.hi, a.hi / b.lo,
                            a.hi / b.hi};
        return Ival{std::min({c[0], c[1], c[2], c[3]}),
                    std::max({c[0], c[1], c[2], c[3]})}
            .pad_rel(1e-18L);
    }
    Ival exp() const {
        return Ival{std::exp(lo), std::exp(hi)}.pad_rel(1e-18L);
    }
    Ival log() const {
        if (lo <= 0) throw std::domain_error("Ival: log of nonpositive");
        return Ival{std::log(lo), std::log(hi)}.pad_rel(1e-18L);
    }
    Ival scale(long double s) const {
        Ival r = s >= 0 ? Ival{lo * s, hi * s} : Ival{hi * s, lo * s};
        return r.pad_rel(1e-18L);
    }
};

// zeta(s) for real s > 1: partial sum to N plus the integral-test tail
// enclosure [(N+1)^{1-s}, N^{1-s}] / (s-1).
inline Ival zeta_ival(long double s, int64_t N = 200000) {
    if (s <= 1) throw std::domain_error("zeta_ival: need s > 1");
    if (s > 12 && N > 4000) N = 4000;
    long double sum = 0;
    for (int64_t n = N; n >= 1; --n) sum += std::pow((long double)n, -s);
    long double t_hi = std::pow((long double)N, 1 - s) / (s - 1);
    long double t_lo = std::pow((long double)N + 1, 1 - s) / (s - 1);
    Ival r{sum + t_lo, sum + t_hi};
    // slack covers the accumulated rounding of up to ~10^6 additions
    return r.pad_rel(2e-19L * N + 1e-17L);
}

// 50 digits of zeta(2) = pi^2/6, used for asymptotic targets.
inline long double zeta2_reference() {
    return 1.6449340668482264364724151666460251892189499012068L;
}
inline Ival zeta2_ival() {
    return Ival::with_abs_error(zeta2_reference(), 1e-17L);
}

namespace detail {

inline const std::vector<int>& moebius_table() {
    static const std::vector<int> mu = [] {
        const int N = 128;
        std::vector<int> m(N + 1, 1), pr;
        std::vector<bool> comp(N + 1, false);
        for (int i = 2; i <= N; ++i) {
            if (!comp[i]) {
                pr.push_back(i);
                m[i] = -1;
            }
            for (int p : pr) {
                if ((int64_t)i * p > N) break;
                comp[i * p] = true;
                if (i % p == 0) {
                    m[i * p] = 0;
                    break;
                }
                m[i * p] = -m[i];
            }
        }
        return m;
    }();
    return mu;
}

}  // namespace detail

// Prime zeta P(s) = sum_p p^{-s} through the Moebius expansion
// P(s) = sum_k mu(k)/k * log zeta(k s); the k-tail is bounded by 2^{3-Km}.
inline Ival prime_zeta_ival(long double s) {
    if (s < 2) throw std::domain_error("prime_zeta_ival: need s >= 2");
    const auto& mu = detail::moebius_table();
    Ival acc = Ival::point(0);
    int K = std::max<int>(2, (int)(128 / s));
    for (int k = 1; k <= K; ++k) {
        if (mu[k] == 0) continue;
        long double ks = s * k;
        int64_t N = ks < 2.5L ? 200000 : ks < 4 ? 50000 : ks < 8 ? 5000 : 400;
        Ival term = zeta_ival(ks, N).log().scale((long double)mu[k] / k);
        acc = acc + term;
    }
    long double rem = std::pow(2.0L, 3 - (long double)(K + 1) * s);
    return Ival{acc.lo - rem, acc.hi + rem};
}

// ---------------------------------------------------------------------------
// Euler products over primes with rigorous tails.
// ---------------------------------------------------------------------------

struct EulerConstant {
    Ival value;
    int64_t cutoff = 0;

    long double width() const { return value.width(); }
};

namespace detail {

// Coefficients of a univariate rational power series in u = 1/p.
struct USeries {
    std::vector<Rat> c;  // c[m] multiplies u^m
};

inline std::vector<Rat> p_coeffs_ascending(const Poly& f) {
    if (f.deg_x() != 0 || f.deg_y() != 0)
        throw std::invalid_argument("euler factor must involve p only");
    std::vector<Rat> out(f.deg_p() + 1, Rat(0));
    for (const auto& [m, c] : f.terms()) out[m.ep] = c;
    return out;
}

inline std::vector<Rat> mul_trunc(const std::vector<Rat>& a,
                                  const std::vector<Rat>& b, int M) {
    std::vector<Rat> r(M + 1, Rat(0));
    for (int i = 0; i <= M && i < (int)a.size(); ++i) {
        if (a[i] == 0) continue;
        for (int j = 0; j + i <= M && j < (int)b.size(); ++j)
            r[i + j] += a[i] * b[j];
    }
    return r;
}

// log of a power series with constant term 1, truncated at degree M.
inline std::vector<Rat> log_series(const std::vector<Rat>& f, int M) {
    std::vector<Rat> h(M + 1, Rat(0));
    for (int i = 1; i <= M && i < (int)f.size(); ++i) h[i] = f[i];
    std::vector<Rat> out(M + 1, Rat(0)), hp = h;
    for (int k = 1; k <= M; ++k) {
        Rat s(k % 2 == 1 ? 1 : -1, k);
        s.canonicalize();
        bool any = false;
        for (int m = 0; m <= M; ++m)
            if (hp[m] != 0) {
                out[m] += s * hp[m];
                any = true;
            }
        if (!any) break;
        hp = mul_trunc(hp, h, M);
    }
    return out;
}

// ln f(p) = sum_{m >= 2} c_m u^m together with a geometric bound
// |c_m| <= root_count * rho^m / m valid for all m.
struct LogExpansion {
    std::vector<Rat> c;
    long double rho = 0;
    int root_count = 0;
};

inline LogExpansion log_expansion(const RatFunc& factor, int M) {
    auto num = p_coeffs_ascending(factor.num());
    auto den = p_coeffs_ascending(factor.den());
    int da = (int)num.size() - 1, db = (int)den.size() - 1;
    if (da != db || num[da] == 0 || den[db] == 0 || num[da] != den[db])
        throw std::domain_error(
            "euler_product: factor does not tend to 1 at large p");
    // reverse into series in u and normalize the unit constant term
    std::vector<Rat> F(da + 1), G(db + 1);
    for (int i = 0; i <= da; ++i) F[i] = num[da - i] / num[da];
    for (int i = 0; i <= db; ++i) G[i] = den[db - i] / den[db];
    auto lf = log_series(F, M), lg = log_series(G, M);
    LogExpansion ex;
    ex.c.assign(M + 1, Rat(0));
    for (int m = 0; m <= M; ++m) ex.c[m] = lf[m] - lg[m];
    if (ex.c[0] != 0) throw std::logic_error("euler_product: log constant");
    if (ex.c[1] != 0)
        throw std::domain_error(
            "euler_product: factor must approach 1 at rate O(p^-2)");
    long double amax = 1;
    for (const auto& v : F)
        amax = std::max(amax, (long double)std::fabs(v.get_d()));
    for (const auto& v : G)
        amax = std::max(amax, (long double)std::fabs(v.get_d()));
    ex.rho = 1 + amax;
    ex.root_count = da + db;
    return ex;
}

}  // namespace detail

// Enclosure of prod_p factor(p) over all primes: exact product over p <= P,
// tail restored from the u-expansion of log factor against prime zeta
// values.  The factor must be a rational function of p tending to 1 with
// c_1 = 0 (deviation O(p^-2)); anything slower is refused.
inline EulerConstant euler_product(const RatFunc& factor, int64_t cutoff) {
    if (cutoff < 100) throw std::invalid_argument("euler_product: cutoff < 100");
    if (factor == RatFunc::constant(1))
        return EulerConstant{Ival{1.0L, 1.0L}, cutoff};
    const int M = 40;
    auto ex = detail::log_expansion(factor, M);
    if ((long double)cutoff < 2 * ex.rho)
        throw std::invalid_argument("euler_product: cutoff below 2*rho");

    auto num = detail::p_coeffs_ascending(factor.num());
    auto den = detail::p_coeffs_ascending(factor.den());
    auto eval_ld = [](const std::vector<Rat>& cs, long double v) {
        long double r = 0;
        for (int i = (int)cs.size() - 1; i >= 0; --i)
            r = r * v + (long double)cs[i].get_d();
        return r;
    };

    auto primes = primes_up_to(cutoff);
    long double prod = 1;
    std::vector<long double> S(M + 1, 0);  // S[m] = sum_{p<=P} p^{-m}
    for (int64_t p : primes) {
        long double fp = eval_ld(num, p) / eval_ld(den, p);
        if (!(fp > 0))
            throw std::domain_error("euler_product: nonpositive factor value");
        prod *= fp;
        long double u = 1.0L / p, um = u;
        for (int m = 2; m <= M; ++m) {
            um *= u;
            S[m] += um;
            if (um < 1e-24L) break;  // dropped terms covered by Sm slack
        }
    }

    Ival log_tail = Ival::point(0);
    for (int m = 2; m <= M; ++m) {
        if (ex.c[m] == 0) continue;
        Ival Sm = Ival::with_abs_error(
            S[m], S[m] * 1e-16L * primes.size() + primes.size() * 1e-24L);
        Ival Tm = prime_zeta_ival(m) - Sm;
        // intersect with the integral-test enclosure 0 <= T_m <= P^{1-m}/(m-1);
        // without it the c_m ~ 2^m growth amplifies interval noise
        long double cap =
            std::pow((long double)cutoff, (long double)(1 - m)) / (m - 1);
        Tm.lo = std::max(Tm.lo, 0.0L);
        Tm.hi = std::min(Tm.hi, cap);
        if (Tm.lo > Tm.hi) Tm.lo = Tm.hi;
        log_tail = log_tail + Tm.scale((long double)ex.c[m].get_d())
                                  .pad_rel(1e-16L);
    }
    // terms beyond M: |c_m| <= root_count * rho^m / m and
    // sum_{p>P} p^{-m} <= P^{1-m}/(m-1)
    long double q = ex.rho / cutoff;
    long double rem = ex.root_count * cutoff * std::pow(q, M + 1) / (1 - q);
    log_tail = Ival{log_tail.lo - rem, log_tail.hi + rem};

    Ival prod_i = Ival::with_abs_error(
        prod, std::fabs((double)prod) * (1e-17L * primes.size() + 1e-16L));
    Ival value = prod_i * log_tail.exp();
    // monotone padding keeps enclosures at increasing cutoffs nested
    long double pad = std::fabs((double)value.mid()) *
                      (8.0L / ((long double)cutoff * cutoff) + 1e-14L);
    EulerConstant out;
    out.value = Ival{value.lo - pad, value.hi + pad};
    out.cutoff = cutoff;
    return out;
}

// The cocyclic asymptotic constant C = (1/12) prod_p (1 - 3p^-2 + 2p^-3).
inline RatFunc cocyclic_density_factor() {
    const RatFunc p = RatFunc::p();
    return 1 - 3 * p.pow(2).inv() + 2 * p.pow(3).inv();
}

inline EulerConstant cocyclic_asymptotic_constant(int64_t cutoff = 1000000) {
    EulerConstant prod = euler_product(cocyclic_density_factor(), cutoff);
    prod.value = prod.value.scale(1.0L / 12.0L);
    return prod;
}

// ---------------------------------------------------------------------------
// Dirichlet values at real s with truncation bounds.
// ---------------------------------------------------------------------------

// zeta(s) by truncated Euler product with tail ln-bound 2 P^{1-s}/(s-1).
inline Ival zeta_euler_ival(long double s, int64_t P,
                            const std::vector<int64_t>& primes) {
    if (s <= 1) throw std::domain_error("zeta_euler_ival: need s > 1");
    long double prod = 1;
    for (int64_t p : primes) prod /= (1 - std::pow((long double)p, -s));
    long double ln_tail = 2 * std::pow((long double)P, 1 - s) / (s - 1);
    Ival base = Ival::with_abs_error(prod, prod * 1e-16L * primes.size());
    return base * Ival{1, std::exp(ln_tail)};
}

struct DirichletValue {
    long double truncated_sum = 0;
    long double tail_bound = 0;  // rigorous bound on the omitted tail
    Ival enclosure;              // truncated sum + [0, tail] + rounding slack
    int64_t B = 0;
};

// sum_{n<=B} a_n n^{-s}.  The tail is bounded by Rankin's trick at
// sigma = 3/2: sum_{n>B} a_n n^{-s} <= B^{3/2-s} * Z(3/2) with
// Z(sigma) = zeta(sigma) zeta(2 sigma - 1) zeta(3 sigma - 2), an upper bound
// for the coefficient Dirichlet series of every family handled here.
inline DirichletValue dirichlet_value(FactorKind kind, long double s,
                                      int64_t B) {
    if (s < 3)
        throw std::domain_error(
            "dirichlet_value: s below 3 is too close to the abscissa");
    if (B < 10000) throw std::invalid_argument("dirichlet_value: B < 10^4");
    auto a = dirichlet_coeffs(kind, B);
    long double sum = 0;
    for (int64_t n = B; n >= 1; --n)
        sum += (long double)a[n] * std::pow((long double)n, -s);

    Ival Z = zeta_ival(1.5L) * zeta_ival(2.0L) * zeta_ival(2.5L);
    long double tail = Z.hi * std::pow((long double)B, 1.5L - s);
    DirichletValue out;
    out.truncated_sum = sum;
    out.tail_bound = tail;
    long double slack = sum * (2e-19L * B + 1e-17L) + 1e-20L;
    out.enclosure = Ival{sum - slack, sum + tail + slack};
    out.B = B;
    return out;
}

// Independent truncated-Euler-product value of the global Dirichlet series,
// evaluated at integer s >= 3 over primes p <= P.
inline Ival global_value_by_euler_product(FactorKind kind, int s, int64_t P) {
    if (s < 3) throw std::domain_error("global value: need s >= 3");
    auto primes = primes_up_to(P);
    Ival zs = zeta_euler_ival(s, P, primes);
    Ival z2 = zeta_euler_ival(2.0L * s - 1, P, primes);
    Ival z3 = zeta_euler_ival(3.0L * s - 2, P, primes);
    if (kind == FactorKind::DiagonalTotal) {
        Ival z4 = zeta_euler_ival(4.0L * s - 2, P, primes);
        return zs * z2 * z3 / z4;
    }
    if (kind == FactorKind::Cocyclic) {
        // display polynomial 1 - p^{-2s} - p^{1-3s} + p^{1-4s} - p^{2-4s}
        // + p^{2-5s} as a rational function of p
        RatFunc p = RatFunc::p();
        RatFunc disp = 1 - p.pow(2 * s).inv() - p.pow(3 * s - 1).inv() +
                       p.pow(4 * s - 1).inv() - p.pow(4 * s - 2).inv() +
                       p.pow(5 * s - 2).inv();
        Ival g = euler_product(disp, P).value;
        return zs * z2 * z3 * g;
    }
    throw std::invalid_argument("global value: unsupported kind");
}

// ---------------------------------------------------------------------------
// Desk-scale asymptotics: least-squares fit of S(B) against
// B (c2 ln^2 B + c1 ln B + c0).
// ---------------------------------------------------------------------------

struct AsymptoticReport {
    FactorKind kind;
    double c2 = 0, c1 = 0, c0 = 0;
    double target_c2 = 0;
    double rel_err = 0;       // |c2 - target| / |target| (absolute for ones)
    double fit_rms = 0;       // rms residual of S/B against the model
    std::vector<std::pair<int64_t, int64_t>> samples;  // (B, S(B))
};

inline std::vector<int64_t> log_spaced_grid(int64_t bmin, int64_t bmax,
                                            int count) {
    std::vector<int64_t> grid;
    for (int i = 0; i < count; ++i) {
        long double t = count == 1 ? 0
                                   : (long double)i / (count - 1);
        long double lg = std::log10((long double)bmin) +
                         t * (std::log10((long double)bmax) -
                              std::log10((long double)bmin));
        int64_t b = (int64_t)std::llroundl(std::pow(10.0L, lg));
        if (grid.empty() || b > grid.back()) grid.push_back(b);
    }
    return grid;
}

inline AsymptoticReport asymptotic_check(FactorKind kind,
                                         const std::vector<int64_t>& b_list,
                                         double target_c2) {
    if (b_list.empty() || !std::is_sorted(b_list.begin(), b_list.end()))
        throw std::invalid_argument("asymptotic_check: B list must increase");
    const int64_t bmax = b_list.back();
    auto a = dirichlet_coeffs(kind, bmax);

    AsymptoticReport rep;
    rep.kind = kind;
    rep.target_c2 = target_c2;
    __int128 run = 0;
    std::size_t gi = 0;
    for (int64_t n = 1; n <= bmax && gi < b_list.size(); ++n) {
        run += a[n];
        while (gi < b_list.size() && b_list[gi] == n) {
            if (run > INT64_MAX) throw std::overflow_error("asymptotics: S(B)");
            rep.samples.emplace_back(n, (int64_t)run);
            ++gi;
        }
    }

    // normal equations for y = S/B against (u^2, u, 1), u = ln B
    long double A[3][3] = {}, rhs[3] = {};
    for (auto [B, S] : rep.samples) {
        long double u = std::log((long double)B);
        long double y = (long double)S / B;
        long double base[3] = {u * u, u, 1};
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) A[i][j] += base[i] * base[j];
            rhs[i] += base[i] * y;
        }
    }
    // 3x3 Gaussian elimination with partial pivoting
    int perm[3] = {0, 1, 2};
    for (int col = 0; col < 3; ++col) {
        int piv = col;
        for (int r = col + 1; r < 3; ++r)
            if (std::fabs((double)A[perm[r]][col]) >
                std::fabs((double)A[perm[piv]][col]))
                piv = r;
        std::swap(perm[col], perm[piv]);
        for (int r = col + 1; r < 3; ++r) {
            long double f = A[perm[r]][col] / A[perm[col]][col];
            for (int c = col; c < 3; ++c) A[perm[r]][c] -= f * A[perm[col]][c];
            rhs[perm[r]] -= f * rhs[perm[col]];
        }
    }
    long double sol[3];
    for (int r = 2; r >= 0; --r) {
        long double acc = rhs[perm[r]];
        for (int c = r + 1; c < 3; ++c) acc -= A[perm[r]][c] * sol[c];
        sol[r] = acc / A[perm[r]][r];
    }
    rep.c2 = (double)sol[0];
    rep.c1 = (double)sol[1];
    rep.c0 = (double)sol[2];

    long double ss = 0;
    for (auto [B, S] : rep.samples) {
        long double u = std::log((long double)B);
        long double fit = sol[0] * u * u + sol[1] * u + sol[2];
        long double res = (long double)S / B - fit;
        ss += res * res;
    }
    rep.fit_rms = (double)std::sqrt((double)(ss / rep.samples.size()));
    rep.rel_err = target_c2 != 0
                      ? std::fabs(rep.c2 - target_c2) / std::fabs(target_c2)
                      : std::fabs(rep.c2);
    return rep;
}

inline double target_total_c2() {
    return (double)(1.0L / (12.0L * zeta2_reference()));
}

}  // namespace ctz::zeta

#endif
