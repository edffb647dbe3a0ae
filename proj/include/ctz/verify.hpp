#ifndef CTZ_VERIFY_HPP
#define CTZ_VERIFY_HPP

// Named identity checks shared by the CLI `verify` command and the test
// suites.  Each check is independent; results are reported in a fixed order
// regardless of how many workers execute them.

#include "ctz/conesum.hpp"
#include "ctz/lattice.hpp"
#include "ctz/zeta.hpp"

#include <future>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace ctz::verify {

using exact::RatFunc;
using std::int64_t;

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct VerifyOptions {
    std::vector<int64_t> primes{2, 3, 5};
    int emax = 6;
    int box = 12;
    int jobs = 1;
    int64_t budget = lattice::kDefaultCandidateBudget;
    std::string corrupt;  // test hook: name of a reference form to damage
};

inline const std::vector<std::string>& check_names() {
    static const std::vector<std::string> names = {
        "partition",       "j_forms",        "j3_form",
        "total_identity",  "specializations", "enum_vs_series",
        "snf_vs_minors",   "zn_cocyclic"};
    return names;
}

namespace detail {

inline CheckResult check_partition(const VerifyOptions& o) {
    auto rep = cones::scan_partition(o.box);
    std::ostringstream os;
    os << "box=[0," << o.box << "]^3 region_points=" << rep.region_points
       << " uncovered=" << rep.uncovered << " multiply_covered="
       << rep.multiply_covered << " outside_covered=" << rep.outside_covered;
    return {"partition", rep.exact_partition(), os.str()};
}

inline CheckResult check_j_forms(const VerifyOptions& o) {
    bool all = true;
    std::ostringstream os;
    auto run_case = [&](const cones::Chamber& ch,
                        const cones::MonomialWeight& w) {
        RatFunc ref = cones::case_closed_form(ch.name);
        if (o.corrupt == ch.name) ref += RatFunc::constant(1);
        bool ok = cones::chamber_sum(ch, w) == ref;
        all = all && ok;
        os << ch.name << (ok ? ":ok " : ":MISMATCH ");
    };
    for (const auto& [ch, w] : cones::case_chambers())
        if (ch.name != "J3") run_case(ch, w);
    for (const auto& [ch, w] : cones::case6_subchambers()) run_case(ch, w);
    return {"j_forms", all, os.str()};
}

inline CheckResult check_j3_form(const VerifyOptions& o) {
    for (const auto& [ch, w] : cones::case_chambers()) {
        if (ch.name != "J3") continue;
        RatFunc ref = cones::case_closed_form("J3");
        if (o.corrupt == "J3") ref += RatFunc::constant(1);
        bool ok = cones::chamber_sum(ch, w) == ref;
        return {"j3_form", ok,
                ok ? "printed J3 closed form agrees with the chamber sum"
                   : "printed J3 closed form DISAGREES; chamber sum is "
                     "authoritative (erratum candidate)"};
    }
    return {"j3_form", false, "J3 chamber missing"};
}

inline CheckResult check_total_identity(const VerifyOptions& o) {
    RatFunc total = cones::integral_total(o.jobs);
    RatFunc ref = zeta::local_factor(zeta::FactorKind::TheoremBivariate);
    if (o.corrupt == "total") ref += RatFunc::constant(1);
    bool ok = total == ref;
    return {"total_identity", ok,
            ok ? "sum of six chamber sums equals the bivariate closed form"
               : "sum of chamber sums differs from the bivariate closed form"};
}

inline CheckResult check_specializations(const VerifyOptions&) {
    using zeta::FactorKind;
    RatFunc theorem = zeta::local_factor(FactorKind::TheoremBivariate);
    bool diag_ok = theorem.subst_y_to_x() ==
                   zeta::local_factor(FactorKind::DiagonalTotal);
    bool y0_ok =
        theorem.subst_y_zero() == zeta::local_factor(FactorKind::Cocyclic);
    // cocyclic factor times the triple-zeta local factor inverse equals the
    // displayed polynomial
    RatFunc display(zeta::cocyclic_display_poly());
    bool disp_ok = zeta::local_factor(FactorKind::Cocyclic) ==
                   display * zeta::zeta_triple_local();
    // total: diagonal factor equals (1 - p^2 Z^4) times the triple factor
    RatFunc p = RatFunc::p(), Z = RatFunc::x();
    bool quot_ok =
        zeta::local_factor(FactorKind::DiagonalTotal) ==
        (1 - p.pow(2) * Z.pow(4)) * zeta::zeta_triple_local();
    std::ostringstream os;
    os << "diagonal:" << (diag_ok ? "ok" : "MISMATCH")
       << " y0:" << (y0_ok ? "ok" : "MISMATCH")
       << " cocyclic_display:" << (disp_ok ? "ok" : "MISMATCH")
       << " zeta_quotient:" << (quot_ok ? "ok" : "MISMATCH");
    return {"specializations", diag_ok && y0_ok && disp_ok && quot_ok,
            os.str()};
}

inline CheckResult check_enum_vs_series(const VerifyOptions& o) {
    using zeta::FactorKind;
    auto zt3 = lattice::zt3_structure();
    auto series =
        exact::series_expand(zeta::local_factor(FactorKind::TheoremBivariate),
                             o.emax, o.emax);
    auto diag = zeta::local_coeff_polys(FactorKind::DiagonalTotal, o.emax);
    auto cocy = zeta::local_coeff_polys(FactorKind::Cocyclic, o.emax);

    bool all = true;
    std::ostringstream os;
    for (int64_t p : o.primes) {
        bool ok = true;
        for (int e = 0; e <= o.emax && ok; ++e) {
            auto census = lattice::count_by_cotype(zt3, p, e, o.budget, o.jobs);
            int64_t total = 0, cocyclic = 0;
            for (int a = 0; a <= e && ok; ++a) {
                int b = e - a;
                if (b > o.emax) continue;
                int64_t coeff = zeta::poly_p_to_i64(series.at(a, b), p);
                auto it = census.find({a, b});
                int64_t got = it == census.end() ? 0 : it->second;
                if (b > a && (coeff != 0 || got != 0)) ok = false;
                if (coeff != got) ok = false;
            }
            for (const auto& [key, cnt] : census) {
                total += cnt;
                if (key.second == 0) cocyclic += cnt;
            }
            if (total != zeta::poly_p_to_i64(diag[e], p)) ok = false;
            if (cocyclic != zeta::poly_p_to_i64(cocy[e], p)) ok = false;
        }
        all = all && ok;
        os << "p=" << p << ":" << (ok ? "ok " : "MISMATCH ");
    }
    os << "(e<=" << o.emax << ", cotype-by-cotype + totals + cocyclic)";
    return {"enum_vs_series", all, os.str()};
}

inline CheckResult check_snf_vs_minors(const VerifyOptions&) {
    bool all = true;
    int64_t tested = 0;
    for (int64_t idx : {2, 3, 4, 8, 12, 16, 27, 30}) {
        lattice::enumerate_hnf(3, idx, [&](const lattice::HnfMatrix& h) {
            if (!(lattice::cotype_snf(h) == lattice::cotype_minors(h)))
                all = false;
            ++tested;
        });
    }
    std::mt19937_64 rng(20240817);
    for (int t = 0; t < 1000; ++t) {
        lattice::HnfMatrix h;
        h.n = 3;
        for (int i = 0; i < 3; ++i)
            h.at(i, i) = (int64_t)(rng() % 1000000) + 1;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < i; ++j) h.at(i, j) = (int64_t)(rng() % h.at(j, j));
        auto a = lattice::cotype_snf(h), b = lattice::cotype_minors(h);
        if (!(a == b) || !a.chain_ok() || a.product() != h.index()) all = false;
        ++tested;
    }
    std::ostringstream os;
    os << tested << " matrices (enumerated + random up to 10^6)";
    return {"snf_vs_minors", all, os.str()};
}

inline CheckResult check_zn_cocyclic(const VerifyOptions& o) {
    auto z3 = lattice::zn_structure(3);
    bool all = true;
    std::ostringstream os;
    int emax = std::min(o.emax, 5);
    for (int64_t p : o.primes) {
        for (int e = 1; e <= emax; ++e) {
            int64_t got = lattice::count_cocyclic(z3, p, e, o.budget, o.jobs);
            if (got != 3) {
                all = false;
                os << "p=" << p << ",e=" << e << " got " << got << " ";
            }
        }
    }
    if (all) os << "cocyclic subring count of Z^3 is 3 for all tested (p,e)";
    return {"zn_cocyclic", all, os.str()};
}

}  // namespace detail

inline std::vector<CheckResult> run_checks(const VerifyOptions& opts,
                                           const std::string& only = "") {
    using Runner = CheckResult (*)(const VerifyOptions&);
    static const std::pair<const char*, Runner> table[] = {
        {"partition", detail::check_partition},
        {"j_forms", detail::check_j_forms},
        {"j3_form", detail::check_j3_form},
        {"total_identity", detail::check_total_identity},
        {"specializations", detail::check_specializations},
        {"enum_vs_series", detail::check_enum_vs_series},
        {"snf_vs_minors", detail::check_snf_vs_minors},
        {"zn_cocyclic", detail::check_zn_cocyclic},
    };
    std::vector<std::pair<std::string, Runner>> todo;
    for (const auto& [name, fn] : table)
        if (only.empty() || only == name) todo.emplace_back(name, fn);
    if (todo.empty())
        throw std::invalid_argument("verify: unknown check name " + only);

    std::vector<CheckResult> results(todo.size());
    if (opts.jobs <= 1) {
        for (std::size_t i = 0; i < todo.size(); ++i)
            results[i] = todo[i].second(opts);
    } else {
        std::vector<std::future<CheckResult>> fut;
        for (std::size_t i = 0; i < todo.size(); ++i)
            fut.push_back(std::async(std::launch::async, todo[i].second, opts));
        for (std::size_t i = 0; i < todo.size(); ++i) results[i] = fut[i].get();
    }
    return results;
}

// A J3 mismatch alone does not fail the suite when the total identity and
// the enumeration agreement both hold; it is reported as an erratum
// candidate instead.
inline bool suite_passes(const std::vector<CheckResult>& results) {
    bool total_ok = false, enum_ok = false;
    for (const auto& r : results) {
        if (r.name == "total_identity" && r.pass) total_ok = true;
        if (r.name == "enum_vs_series" && r.pass) enum_ok = true;
    }
    for (const auto& r : results) {
        if (r.pass) continue;
        if (r.name == "j3_form" && total_ok && enum_ok) continue;
        return false;
    }
    return true;
}

}  // namespace ctz::verify

#endif
