#include <catch2/catch_amalgamated.hpp>

#include "ctz/zeta.hpp"

#include <numeric>

using namespace ctz::zeta;
using ctz::exact::Poly;
using ctz::exact::Rat;
using ctz::exact::RatFunc;

TEST_CASE("local factor specializations") {
    RatFunc theorem = local_factor(FactorKind::TheoremBivariate);
    CHECK(theorem.subst_y_to_x() == local_factor(FactorKind::DiagonalTotal));
    CHECK(theorem.subst_y_zero() == local_factor(FactorKind::Cocyclic));

    // cocyclic factor against the displayed polynomial over the triple
    // zeta local factor
    CHECK(local_factor(FactorKind::Cocyclic) ==
          RatFunc(cocyclic_display_poly()) * zeta_triple_local());

    // diagonal factor against the zeta-quotient local factor
    RatFunc p = RatFunc::p(), Z = RatFunc::x();
    CHECK(local_factor(FactorKind::DiagonalTotal) ==
          (1 - p.pow(2) * Z.pow(4)) * zeta_triple_local());
}

TEST_CASE("local coefficients at small primes") {
    CHECK(local_coeffs(FactorKind::DiagonalTotal, 2, 3) ==
          std::vector<int64_t>{1, 1, 3, 7});
    CHECK(local_coeffs(FactorKind::Cocyclic, 2, 4) ==
          std::vector<int64_t>{1, 1, 2, 4, 4});
    for (auto kind : {FactorKind::DiagonalTotal, FactorKind::Cocyclic,
                      FactorKind::SublatticeReference, FactorKind::Ones})
        CHECK(local_coeffs(kind, 7, 0) == std::vector<int64_t>{1});

    // nonnegative integers for every family and tested prime
    for (int64_t p : {2, 3, 5, 7})
        for (auto kind : {FactorKind::DiagonalTotal, FactorKind::Cocyclic,
                          FactorKind::SublatticeReference})
            for (int64_t c : local_coeffs(kind, p, 8)) CHECK(c >= 0);
    auto biv = ctz::exact::series_expand(
        local_factor(FactorKind::TheoremBivariate), 6, 6);
    for (int64_t p : {2, 3, 5, 7})
        for (int a = 0; a <= 6; ++a)
            for (int b = 0; b <= 6; ++b)
                CHECK(poly_p_to_i64(biv.at(a, b), p) >= 0);
}

TEST_CASE("bivariate coefficient support respects cotype divisibility") {
    auto t = ctz::exact::series_expand(local_factor(FactorKind::TheoremBivariate),
                                       8, 8);
    for (int a = 0; a <= 8; ++a)
        for (int b = a + 1; b <= 8; ++b) CHECK(t.at(a, b) == Poly::zero());
}

TEST_CASE("Dirichlet coefficients are multiplicative") {
    auto a = dirichlet_coeffs(FactorKind::DiagonalTotal, 10000);
    CHECK(a[1] == 1);
    CHECK(a[2] == 1);
    CHECK(a[4] == 3);
    CHECK(a[6] == 1);  // a[2] * a[3]
    CHECK(a[8] == 7);

    for (int64_t m : {4, 9, 25, 8, 27}) {
        for (int64_t n : {3, 5, 7, 11, 49}) {
            if (std::gcd(m, n) != 1 || m * n > 10000) continue;
            CHECK(a[m * n] == a[m] * a[n]);
        }
    }

    auto cyc = dirichlet_coeffs(FactorKind::Cocyclic, 5000);
    for (int64_t n = 1; n <= 5000; ++n) {
        CHECK(cyc[n] <= a[n]);
        CHECK(cyc[n] >= 0);
    }
    auto ones = dirichlet_coeffs(FactorKind::Ones, 300);
    for (int64_t n = 1; n <= 300; ++n) CHECK(ones[n] == 1);
}

TEST_CASE("zeta enclosures contain reference values") {
    CHECK(zeta_ival(2.0L).contains(zeta2_reference()));
    CHECK(zeta_ival(3.0L).contains(1.2020569031595942854L));
    CHECK(zeta_ival(2.0L).width() < 1e-9L);
    CHECK(prime_zeta_ival(2.0L).contains(0.45224742004106549850654L));
    CHECK(prime_zeta_ival(3.0L).contains(0.17476263929944353642312L));
}

TEST_CASE("Dirichlet value against the independent Euler-product value") {
    auto dv = dirichlet_value(FactorKind::DiagonalTotal, 3.0L, 100000);
    auto qv = global_value_by_euler_product(FactorKind::DiagonalTotal, 3,
                                            20000);
    CHECK(dv.tail_bound < 1e-6L);
    CHECK(qv.width() < 1e-6L);
    CHECK(dv.enclosure.overlaps(qv));

    auto cv = dirichlet_value(FactorKind::Cocyclic, 3.0L, 100000);
    auto cq = global_value_by_euler_product(FactorKind::Cocyclic, 3, 20000);
    CHECK(cv.enclosure.overlaps(cq));

    // all-ones sanity mode reproduces zeta(3)
    auto ov = dirichlet_value(FactorKind::Ones, 3.0L, 100000);
    CHECK(ov.enclosure.contains(zeta_ival(3.0L).mid()));

    CHECK_THROWS_AS(dirichlet_value(FactorKind::DiagonalTotal, 2.5L, 100000),
                    std::domain_error);
}

TEST_CASE("Euler products with rigorous tails") {
    // constant factor gives exactly 1
    auto one = euler_product(RatFunc::constant(1), 10000);
    CHECK(one.value.contains(1.0L));
    CHECK(one.value.width() < 1e-10L);

    // nested intervals at growing cutoffs
    auto c3 = cocyclic_asymptotic_constant(1000);
    auto c4 = cocyclic_asymptotic_constant(10000);
    auto c5 = cocyclic_asymptotic_constant(100000);
    auto c6 = cocyclic_asymptotic_constant(1000000);
    CHECK(c3.value.lo <= c4.value.lo);
    CHECK(c4.value.hi <= c3.value.hi);
    CHECK(c4.value.lo <= c5.value.lo);
    CHECK(c5.value.hi <= c4.value.hi);
    CHECK(c5.value.lo <= c6.value.lo);
    CHECK(c6.value.hi <= c5.value.hi);
    CHECK(c4.width() < c3.width());
    CHECK(c6.width() < 1e-8L);

    // O(p^-1) deviation is refused
    RatFunc slow = 1 - RatFunc::p().inv();
    CHECK_THROWS_AS(euler_product(slow, 10000), std::domain_error);

    // factor value at p = 2 is 1/2
    CHECK(cocyclic_density_factor().eval(Rat(2), Rat(1), Rat(1)) ==
          ctz::exact::make_rat(1, 2));
}

TEST_CASE("ratio constant consistency") {
    auto c5 = cocyclic_asymptotic_constant(100000);
    auto c4 = cocyclic_asymptotic_constant(10000);
    // C * 12 * zeta(2) computed at one cutoff against
    // zeta(2) * prod_p(...) at another
    Ival lhs = c5.value.scale(12.0L) * zeta2_ival();
    Ival rhs = euler_product(cocyclic_density_factor(), 10000).value *
               zeta2_ival();
    CHECK(std::fabs((double)(lhs.mid() - rhs.mid())) <=
          2 * std::max(lhs.width(), rhs.width()));
    CHECK(lhs.overlaps(rhs));
    (void)c4;
}

TEST_CASE("asymptotic fit sanity") {
    // constant coefficients: S(B) = B exactly, so c2 = 0 and c0 = 1
    auto grid = log_spaced_grid(10000, 100000, 8);
    auto ones = asymptotic_check(FactorKind::Ones, grid, 0.0);
    CHECK(std::fabs(ones.c2) < 1e-9);
    CHECK(std::fabs(ones.c0 - 1.0) < 1e-6);

    // quick desk fit at small scale, loose bound
    auto tot = asymptotic_check(FactorKind::DiagonalTotal, grid,
                                target_total_c2());
    CHECK(tot.rel_err < 0.6);
    CHECK(tot.samples.size() == grid.size());
}

TEST_CASE("input validation") {
    CHECK_THROWS_AS(zeta_ival(1.0L), std::domain_error);
    CHECK_THROWS_AS(dirichlet_coeffs(FactorKind::Ones, 0),
                    std::invalid_argument);
    CHECK_THROWS_AS(asymptotic_check(FactorKind::Ones, {100, 50}, 0.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(euler_product(cocyclic_density_factor(), 10),
                    std::invalid_argument);
}
