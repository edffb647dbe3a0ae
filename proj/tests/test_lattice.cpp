#include <catch2/catch_amalgamated.hpp>

#include "ctz/lattice.hpp"
#include "ctz/series.hpp"
#include "ctz/zeta.hpp"

#include <random>

using namespace ctz::lattice;

namespace {

HnfMatrix mat3(std::initializer_list<std::initializer_list<int64_t>> rows) {
    HnfMatrix h;
    h.n = 3;
    int i = 0;
    for (auto& r : rows) {
        int j = 0;
        for (auto v : r) h.at(i, j++) = v;
        ++i;
    }
    return h;
}

}  // namespace

TEST_CASE("structure constants of Z[t]/(t^3) in the basis (t^2, t, 1)") {
    auto s = zt3_structure();
    Vec t{0, 1, 0}, tsq{1, 0, 0}, one{0, 0, 1}, v{5, -2, 7};
    CHECK(ring_mul(s, t, t) == tsq);        // t * t = t^2
    CHECK(ring_mul(s, one, v) == v);        // identity law
    CHECK(ring_mul(s, v, one) == v);
    CHECK(ring_mul(s, tsq, t) == Vec{0, 0, 0});  // t^3 vanishes
    CHECK(ring_mul(s, tsq, tsq) == Vec{0, 0, 0});
    CHECK(s.identity_is_last_basis_vector());
}

TEST_CASE("structure constants of Z^n") {
    auto s = zn_structure(3);
    Vec e1{1, 0, 0}, e2{0, 1, 0}, one{1, 1, 1}, v{4, -1, 9};
    CHECK(ring_mul(s, e1, e1) == e1);
    CHECK(ring_mul(s, e1, e2) == Vec{0, 0, 0});
    CHECK(ring_mul(s, one, v) == v);
    CHECK_FALSE(s.identity_is_last_basis_vector());
    CHECK_THROWS_AS(zn_structure(9), std::invalid_argument);
}

TEST_CASE("structure constants are commutative") {
    for (const auto& s : {zt3_structure(), zn_structure(2), zn_structure(4)}) {
        for (int i = 0; i < s.n; ++i)
            for (int j = 0; j < s.n; ++j)
                for (int k = 0; k < s.n; ++k)
                    CHECK(s.c[i][j][k] == s.c[j][i][k]);
        for (int i = 0; i < s.n; ++i) {
            Vec e{};
            e[i] = 1;
            CHECK(ring_mul(s, s.identity, e) == e);
        }
    }
}

TEST_CASE("HNF enumeration counts and determinism") {
    auto only = enumerate_hnf_list(3, 1);
    REQUIRE(only.size() == 1);
    CHECK(only[0] == hnf_identity(3));

    CHECK(enumerate_hnf_list(3, 2).size() == 7);   // 1 + 2 + 4 at p = 2
    CHECK(enumerate_hnf_list(3, 3).size() == 13);  // 1 + 3 + 9 at p = 3

    auto l2 = enumerate_hnf_list(3, 2);
    CHECK(l2.front() == mat3({{1, 0, 0}, {0, 1, 0}, {0, 0, 2}}));
    CHECK(l2.back() == mat3({{2, 0, 0}, {1, 1, 0}, {1, 0, 1}}));
    for (const auto& h : l2) {
        CHECK(h.valid());
        CHECK(h.index() == 2);
    }

    CHECK(sublattice_count(3, 2) == 7);
    CHECK(sublattice_count(3, 1) == 1);
}

TEST_CASE("HNF reduction is the identity on unimodular images") {
    std::mt19937_64 rng(42);
    for (const auto& h : enumerate_hnf_list(3, 12)) {
        std::vector<std::vector<mpz_class>> g(3, std::vector<mpz_class>(3));
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) g[i][j] = h.at(i, j);
        for (int step = 0; step < 12; ++step) {
            int i = (int)(rng() % 3), j = (int)(rng() % 3);
            long c = (long)(rng() % 7) - 3;
            if (i == j) continue;
            for (int k = 0; k < 3; ++k) g[i][k] += c * g[j][k];
        }
        std::swap(g[0], g[2]);
        CHECK(hnf_reduce(g) == h);
    }
}

TEST_CASE("subring test by back-substitution") {
    auto s = zt3_structure();
    for (int64_t p : {2, 3, 5}) {
        // Z t^2 + p Z t + Z: closed since (pt)^2 = p^2 t^2
        CHECK(is_subring(mat3({{1, 0, 0}, {0, p, 0}, {0, 0, 1}}), s));
        // contains t but not t^2, so t*t fails membership
        CHECK_FALSE(is_subring(mat3({{p, 0, 0}, {0, 1, 0}, {0, 0, 1}}), s));
    }
    CHECK(is_subring(hnf_identity(3), s));
    CHECK(is_subring(hnf_identity(3), zn_structure(3)));
    // identity (1,1,1) must lie in the lattice for Z^3
    CHECK_FALSE(is_subring(mat3({{2, 0, 0}, {0, 1, 0}, {0, 0, 1}}),
                           zn_structure(3)));
}

TEST_CASE("cotype by SNF and by gcds of minors") {
    auto id = hnf_identity(3);
    CHECK(cotype_snf(id).alphas == std::vector<int64_t>{1, 1, 1});
    CHECK(cotype_minors(id).alphas == std::vector<int64_t>{1, 1, 1});

    for (int64_t p : {2, 5}) {
        auto d = mat3({{1, 0, 0}, {0, p, 0}, {0, 0, 1}});
        CHECK(cotype_snf(d).alphas == std::vector<int64_t>{p, 1, 1});
        CHECK(cotype_minors(d).alphas == std::vector<int64_t>{p, 1, 1});

        // below-diagonal entry coprime to p collapses the quotient to cyclic
        auto c1 = mat3({{p, 0, 0}, {3 % p == 0 ? 1 : 3, p, 0}, {0, 0, 1}});
        CHECK(cotype_snf(c1).alphas == std::vector<int64_t>{p * p, 1, 1});
        auto c0 = mat3({{p, 0, 0}, {0, p, 0}, {0, 0, 1}});
        CHECK(cotype_snf(c0).alphas == std::vector<int64_t>{p, p, 1});
        CHECK(cotype_minors(c0).alphas == std::vector<int64_t>{p, p, 1});
    }
}

TEST_CASE("SNF and minors agree on enumerated and random matrices") {
    for (int64_t idx : {4, 6, 8, 9, 12}) {
        for (const auto& h : enumerate_hnf_list(3, idx)) {
            auto a = cotype_snf(h), b = cotype_minors(h);
            CHECK(a == b);
            CHECK(a.chain_ok());
            CHECK(a.product() == idx);
        }
    }
    std::mt19937_64 rng(12345);
    for (int t = 0; t < 1000; ++t) {
        HnfMatrix h;
        h.n = 3;
        for (int i = 0; i < 3; ++i) h.at(i, i) = (int64_t)(rng() % 1000000) + 1;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < i; ++j)
                h.at(i, j) = (int64_t)(rng() % h.at(j, j));
        REQUIRE(h.valid());
        auto a = cotype_snf(h), b = cotype_minors(h);
        CHECK(a == b);
        CHECK(a.chain_ok());
        CHECK(a.product() == h.index());
    }
}

TEST_CASE("cotype census of Z[t]/(t^3)") {
    auto s = zt3_structure();
    CHECK(count_by_cotype(s, 2, 0) == CotypeCensus{{{0, 0}, 1}});
    CHECK(count_by_cotype(s, 2, 1) == CotypeCensus{{{1, 0}, 1}});
    CHECK(count_by_cotype(s, 2, 2) ==
          CotypeCensus{{{1, 1}, 1}, {{2, 0}, 2}});
    CHECK(count_by_cotype(s, 3, 2) ==
          CotypeCensus{{{1, 1}, 1}, {{2, 0}, 3}});

    // pinned last-row enumeration agrees with the generic sublattice filter
    for (int64_t p : {2, 3}) {
        for (int e = 0; e <= 4; ++e) {
            auto fast = count_by_cotype(s, p, e);
            auto slow = count_by_cotype(s, p, e, kDefaultCandidateBudget, 1,
                                        /*force_generic=*/true);
            CHECK(fast == slow);
        }
    }

    // divisibility support: no bucket with b > a
    for (int e = 0; e <= 6; ++e)
        for (const auto& [key, cnt] : count_by_cotype(s, 2, e)) {
            CHECK(key.second <= key.first);
            CHECK(cnt > 0);
        }
}

TEST_CASE("cocyclic counts") {
    CHECK(count_cocyclic(zn_structure(3), 2, 3) == 3);
    CHECK(count_cocyclic(zt3_structure(), 2, 2) == 2);
    CHECK(count_cocyclic(zt3_structure(), 7, 0) == 1);
    CHECK(count_cocyclic(zn_structure(3), 5, 0) == 1);

    // the n-choose-2 count holds in other dimensions too
    for (int e = 1; e <= 3; ++e) {
        CHECK(count_cocyclic(zn_structure(2), 2, e) == 1);
        CHECK(count_cocyclic(zn_structure(4), 2, e) == 6);
    }
}

TEST_CASE("census respects the candidate budget") {
    CHECK_THROWS_AS(count_by_cotype(zt3_structure(), 2, 10, /*budget=*/5),
                    BudgetExceeded);
    CHECK_THROWS_AS(count_by_cotype(zn_structure(3), 2, 6, /*budget=*/100),
                    BudgetExceeded);
}

TEST_CASE("census is deterministic under parallel execution") {
    auto s = zt3_structure();
    auto z3 = zn_structure(3);
    CHECK(count_by_cotype(s, 2, 6, kDefaultCandidateBudget, 1) ==
          count_by_cotype(s, 2, 6, kDefaultCandidateBudget, 4));
    CHECK(count_by_cotype(z3, 3, 3, kDefaultCandidateBudget, 1) ==
          count_by_cotype(z3, 3, 3, kDefaultCandidateBudget, 4));
}

TEST_CASE("sublattice totals match the classical generating function") {
    using namespace ctz::exact;
    auto factor =
        ctz::zeta::local_factor(ctz::zeta::FactorKind::SublatticeReference);
    auto t = series_expand(factor, 6, 0);
    for (int64_t p : {2, 3}) {
        for (int e = 0; e <= 6; ++e) {
            int64_t expect = ctz::zeta::poly_p_to_i64(t.at(e, 0), p);
            int64_t idx = pow_i64(p, e);
            CHECK(sublattice_count(3, idx) == expect);
            if (idx <= 4096) {
                int64_t n = 0;
                enumerate_hnf(3, idx, [&](const HnfMatrix&) { ++n; });
                CHECK(n == expect);
            }
        }
    }
    for (int e = 0; e <= 6; ++e)
        CHECK(sublattice_count(3, pow_i64(5, e)) ==
              ctz::zeta::poly_p_to_i64(t.at(e, 0), 5));
}

TEST_CASE("subring verdict is basis-convention independent") {
    auto s = zt3_structure();
    std::mt19937_64 rng(777);
    for (const auto& h : enumerate_hnf_list(3, 8)) {
        bool verdict = is_subring(h, s);
        std::vector<std::vector<mpz_class>> g(3, std::vector<mpz_class>(3));
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) g[i][j] = h.at(i, j);
        for (int step = 0; step < 10; ++step) {
            int i = (int)(rng() % 3), j = (int)(rng() % 3);
            if (i == j) continue;
            long c = (long)(rng() % 5) - 2;
            for (int k = 0; k < 3; ++k) g[i][k] += c * g[j][k];
        }
        auto back = hnf_reduce(g);
        CHECK(back == h);
        CHECK(is_subring(back, s) == verdict);
    }
}
