#ifndef CTZ_LATTICE_HPP
#define CTZ_LATTICE_HPP

// Finite-index sublattices of Z^n in row-style Hermite normal form,
// their cotypes, and the subring test against a set of structure constants.
//
// Conventions: matrices are lower triangular with strictly positive diagonal
// and each below-diagonal entry reduced modulo its column's diagonal entry,
// so every sublattice has exactly one representative.  Row i carries the
// pivot for column i.

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <future>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ctz::lattice {

using std::int64_t;

constexpr int kMaxDim = 4;
constexpr int64_t kDefaultCandidateBudget = 100'000'000;

struct BudgetExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct HnfMatrix {
    int n = 0;
    std::array<std::array<int64_t, kMaxDim>, kMaxDim> m{};

    int64_t at(int i, int j) const { return m[i][j]; }
    int64_t& at(int i, int j) { return m[i][j]; }

    int64_t index() const {
        int64_t d = 1;
        for (int i = 0; i < n; ++i) d *= m[i][i];
        return d;
    }

    bool valid() const {
        if (n < 1 || n > kMaxDim) return false;
        for (int i = 0; i < n; ++i) {
            if (m[i][i] <= 0) return false;
            for (int j = i + 1; j < n; ++j)
                if (m[i][j] != 0) return false;
            for (int j = 0; j < i; ++j)
                if (m[i][j] < 0 || m[i][j] >= m[j][j]) return false;
        }
        return true;
    }

    friend bool operator==(const HnfMatrix& a, const HnfMatrix& b) {
        if (a.n != b.n) return false;
        for (int i = 0; i < a.n; ++i)
            for (int j = 0; j < a.n; ++j)
                if (a.m[i][j] != b.m[i][j]) return false;
        return true;
    }
};

inline HnfMatrix hnf_identity(int n) {
    HnfMatrix h;
    h.n = n;
    for (int i = 0; i < n; ++i) h.at(i, i) = 1;
    return h;
}

// Elementary-divisor tuple (alpha_1, ..., alpha_n), alpha_{i+1} | alpha_i.
struct Cotype {
    std::vector<int64_t> alphas;

    bool chain_ok() const {
        for (std::size_t i = 0; i + 1 < alphas.size(); ++i) {
            if (alphas[i + 1] <= 0) return false;
            if (alphas[i] % alphas[i + 1] != 0) return false;
        }
        return !alphas.empty() && alphas.back() > 0;
    }
    int64_t product() const {
        int64_t r = 1;
        for (int64_t a : alphas) r *= a;
        return r;
    }
    friend bool operator==(const Cotype&, const Cotype&) = default;
};

// Structure constants c[i][j][k] of a commutative bi-additive product on Z^n,
// e_i o e_j = sum_k c[i][j][k] e_k, together with the identity's coordinates.
struct StructureConstants {
    int n = 0;
    std::array<std::array<std::array<int64_t, kMaxDim>, kMaxDim>, kMaxDim> c{};
    std::array<int64_t, kMaxDim> identity{};
    std::string name;

    bool identity_is_last_basis_vector() const {
        for (int k = 0; k < n; ++k)
            if (identity[k] != (k == n - 1 ? 1 : 0)) return false;
        return true;
    }
};

// Z[t]/(t^3) in the basis (t^2, t, 1): e3 is the ring identity, t*t = t^2,
// and every product carrying t^3 vanishes.
inline StructureConstants zt3_structure() {
    StructureConstants s;
    s.n = 3;
    s.name = "zt3";
    s.c[1][1][0] = 1;  // t o t = t^2
    for (int k = 0; k < 3; ++k) {
        s.c[2][k][k] += 1;  // 1 o e_k = e_k
        if (k != 2) s.c[k][2][k] += 1;
    }
    s.identity = {0, 0, 1};
    return s;
}

// Z^n with the componentwise product; identity (1, ..., 1).
inline StructureConstants zn_structure(int n) {
    if (n < 1 || n > kMaxDim)
        throw std::invalid_argument("zn_structure: dimension out of range");
    StructureConstants s;
    s.n = n;
    s.name = "zn";
    for (int i = 0; i < n; ++i) {
        s.c[i][i][i] = 1;
        s.identity[i] = 1;
    }
    return s;
}

using Vec = std::array<int64_t, kMaxDim>;

inline Vec ring_mul(const StructureConstants& s, const Vec& u, const Vec& v) {
    Vec w{};
    for (int k = 0; k < s.n; ++k) {
        __int128 acc = 0;
        for (int i = 0; i < s.n; ++i) {
            if (u[i] == 0) continue;
            for (int j = 0; j < s.n; ++j) {
                if (v[j] == 0 || s.c[i][j][k] == 0) continue;
                acc += static_cast<__int128>(u[i]) * v[j] * s.c[i][j][k];
            }
        }
        if (acc > INT64_MAX || acc < INT64_MIN)
            throw std::overflow_error("ring_mul: coordinate overflow");
        w[k] = static_cast<int64_t>(acc);
    }
    return w;
}

// Membership of w in the row span of M over Z, by exact back-substitution on
// the triangular basis.  A divisibility failure at any pivot means w is not
// a member; no rational arithmetic is involved.
inline bool member(const HnfMatrix& M, const Vec& w) {
    std::array<__int128, kMaxDim> r{};
    for (int k = 0; k < M.n; ++k) r[k] = w[k];
    for (int col = M.n - 1; col >= 0; --col) {
        __int128 d = M.at(col, col);
        if (r[col] % d != 0) return false;
        __int128 q = r[col] / d;
        for (int j = 0; j <= col; ++j) r[j] -= q * M.at(col, j);
    }
    return true;
}

inline bool is_subring(const HnfMatrix& M, const StructureConstants& s) {
    if (M.n != s.n) throw std::invalid_argument("is_subring: dimension mismatch");
    if (!member(M, s.identity)) return false;
    for (int i = 0; i < M.n; ++i) {
        Vec vi{};
        for (int k = 0; k < M.n; ++k) vi[k] = M.at(i, k);
        for (int j = i; j < M.n; ++j) {
            Vec vj{};
            for (int k = 0; k < M.n; ++k) vj[k] = M.at(j, k);
            if (!member(M, ring_mul(s, vi, vj))) return false;
        }
    }
    return true;
}

namespace detail {

using Mz = std::array<std::array<mpz_class, kMaxDim>, kMaxDim>;

inline Mz to_mpz(const HnfMatrix& M) {
    Mz a;
    for (int i = 0; i < M.n; ++i)
        for (int j = 0; j < M.n; ++j) a[i][j] = M.at(i, j);
    return a;
}

inline mpz_class det_minor(const Mz& a, const std::vector<int>& rows,
                           const std::vector<int>& cols) {
    const int k = static_cast<int>(rows.size());
    if (k == 1) return a[rows[0]][cols[0]];
    mpz_class acc = 0;
    std::vector<int> sub(rows.begin() + 1, rows.end());
    for (int t = 0; t < k; ++t) {
        std::vector<int> rest;
        for (int u = 0; u < k; ++u)
            if (u != t) rest.push_back(cols[u]);
        mpz_class term = a[rows[0]][cols[t]] * det_minor(a, sub, rest);
        if (t % 2 == 0)
            acc += term;
        else
            acc -= term;
    }
    return acc;
}

inline void subsets(int n, int k, std::vector<std::vector<int>>& out) {
    std::vector<int> cur(k);
    auto rec = [&](auto&& self, int start, int depth) -> void {
        if (depth == k) {
            out.push_back(cur);
            return;
        }
        for (int i = start; i <= n - (k - depth); ++i) {
            cur[depth] = i;
            self(self, i + 1, depth + 1);
        }
    };
    rec(rec, 0, 0);
}

inline int64_t to_i64(const mpz_class& z, const char* what) {
    if (!z.fits_slong_p()) throw std::overflow_error(what);
    return z.get_si();
}

}  // namespace detail

// Cotype via integer Smith normal form reduction.
inline Cotype cotype_snf(const HnfMatrix& M) {
    auto a = detail::to_mpz(M);
    const int n = M.n;
    for (int t = 0; t < n; ++t) {
        for (;;) {
            int pi = -1, pj = -1;
            for (int i = t; i < n; ++i)
                for (int j = t; j < n; ++j)
                    if (a[i][j] != 0 &&
                        (pi < 0 || cmp(abs(a[i][j]), abs(a[pi][pj])) < 0)) {
                        pi = i;
                        pj = j;
                    }
            if (pi < 0) throw std::domain_error("cotype_snf: singular matrix");
            std::swap(a[pi], a[t]);
            for (int i = 0; i < n; ++i) std::swap(a[i][pj], a[i][t]);
            if (a[t][t] < 0)
                for (int j = 0; j < n; ++j) a[t][j] = -a[t][j];

            bool clean = true;
            for (int i = t + 1; i < n; ++i) {
                if (a[i][t] == 0) continue;
                mpz_class q = a[i][t] / a[t][t];
                for (int j = 0; j < n; ++j) a[i][j] -= q * a[t][j];
                if (a[i][t] != 0) clean = false;
            }
            for (int j = t + 1; j < n; ++j) {
                if (a[t][j] == 0) continue;
                mpz_class q = a[t][j] / a[t][t];
                for (int i = 0; i < n; ++i) a[i][j] -= q * a[i][t];
                if (a[t][j] != 0) clean = false;
            }
            if (!clean) continue;

            // enforce divisibility into the trailing block
            bool fixed = true;
            for (int i = t + 1; i < n && fixed; ++i)
                for (int j = t + 1; j < n && fixed; ++j)
                    if (a[i][j] % a[t][t] != 0) {
                        for (int k = 0; k < n; ++k) a[t][k] += a[i][k];
                        fixed = false;
                    }
            if (fixed) break;
        }
    }
    Cotype ct;
    ct.alphas.resize(n);
    for (int i = 0; i < n; ++i)
        ct.alphas[i] = detail::to_i64(a[n - 1 - i][n - 1 - i], "cotype_snf");
    return ct;
}

// Cotype via gcds of k x k minors: d_k = gcd of all k x k minors (d_0 = 1)
// and alpha_{n-k+1} = d_k / d_{k-1}.  Mutual oracle with cotype_snf.
inline Cotype cotype_minors(const HnfMatrix& M) {
    auto a = detail::to_mpz(M);
    const int n = M.n;
    std::vector<mpz_class> d(n + 1);
    d[0] = 1;
    for (int k = 1; k <= n; ++k) {
        std::vector<std::vector<int>> sel;
        detail::subsets(n, k, sel);
        mpz_class g = 0;
        for (const auto& rows : sel)
            for (const auto& cols : sel) g = gcd(g, detail::det_minor(a, rows, cols));
        if (g == 0) throw std::domain_error("cotype_minors: singular matrix");
        d[k] = g;
    }
    Cotype ct;
    ct.alphas.resize(n);
    for (int k = 1; k <= n; ++k) {
        mpz_class alpha = d[k] / d[k - 1];
        ct.alphas[n - k] = detail::to_i64(alpha, "cotype_minors");
    }
    return ct;
}

// Reduce an arbitrary full-rank integer matrix (rows generate the lattice)
// to the unique lower-triangular HNF representative.
inline HnfMatrix hnf_reduce(const std::vector<std::vector<mpz_class>>& gen) {
    const int n = static_cast<int>(gen.size());
    if (n < 1 || n > kMaxDim) throw std::invalid_argument("hnf_reduce: dimension");
    detail::Mz a;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a[i][j] = gen[i][j];

    for (int col = n - 1; col >= 0; --col) {
        for (;;) {
            int best = -1;
            for (int r = 0; r <= col; ++r)
                if (a[r][col] != 0 &&
                    (best < 0 || cmp(abs(a[r][col]), abs(a[best][col])) < 0))
                    best = r;
            if (best < 0) throw std::domain_error("hnf_reduce: singular matrix");
            std::swap(a[best], a[col]);
            bool done = true;
            for (int r = 0; r < col; ++r) {
                if (a[r][col] == 0) continue;
                mpz_class q = a[r][col] / a[col][col];
                for (int j = 0; j < n; ++j) a[r][j] -= q * a[col][j];
                if (a[r][col] != 0) done = false;
            }
            if (done) break;
        }
        if (a[col][col] < 0)
            for (int j = 0; j < n; ++j) a[col][j] = -a[col][j];
    }
    for (int i = 0; i < n; ++i)
        for (int j = i - 1; j >= 0; --j) {
            mpz_class q;
            mpz_fdiv_q(q.get_mpz_t(), a[i][j].get_mpz_t(), a[j][j].get_mpz_t());
            if (q != 0)
                for (int k = 0; k <= j; ++k) a[i][k] -= q * a[j][k];
        }

    HnfMatrix h;
    h.n = n;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            h.at(i, j) = detail::to_i64(a[i][j], "hnf_reduce: entry overflow");
    if (!h.valid()) throw std::logic_error("hnf_reduce: reduction failed");
    return h;
}

namespace detail {

inline std::vector<int64_t> divisors_ascending(int64_t v) {
    std::vector<int64_t> small, large;
    for (int64_t d = 1; d * d <= v; ++d) {
        if (v % d) continue;
        small.push_back(d);
        if (d != v / d) large.push_back(v / d);
    }
    small.insert(small.end(), large.rbegin(), large.rend());
    return small;
}

inline void diagonal_tuples(int n, int64_t index,
                            std::vector<std::array<int64_t, kMaxDim>>& out) {
    std::array<int64_t, kMaxDim> cur{};
    auto rec = [&](auto&& self, int pos, int64_t rest) -> void {
        if (pos == n - 1) {
            cur[pos] = rest;
            out.push_back(cur);
            return;
        }
        for (int64_t d : divisors_ascending(rest)) {
            cur[pos] = d;
            self(self, pos + 1, rest / d);
        }
    };
    rec(rec, 0, index);
}

}  // namespace detail

// Number of sublattices of Z^n of the given index: one HNF matrix per
// sublattice, with column j contributing (n-1-j) free below-diagonal entries.
inline int64_t sublattice_count(int n, int64_t index) {
    std::vector<std::array<int64_t, kMaxDim>> diags;
    detail::diagonal_tuples(n, index, diags);
    __int128 total = 0;
    for (const auto& d : diags) {
        __int128 c = 1;
        for (int j = 0; j < n; ++j)
            for (int k = j + 1; k < n; ++k) c *= d[j];
        total += c;
    }
    if (total > INT64_MAX) throw std::overflow_error("sublattice_count");
    return static_cast<int64_t>(total);
}

// Visit every HNF matrix of the given index exactly once, in a deterministic
// order: diagonal tuples lexicographically, then below-diagonal entries as an
// ascending odometer over positions (1,0), (2,0), (2,1), ...
template <class F>
void enumerate_hnf(int n, int64_t index, F&& visit) {
    if (n < 1 || n > kMaxDim) throw std::invalid_argument("enumerate_hnf: dimension");
    if (index < 1) throw std::invalid_argument("enumerate_hnf: index must be >= 1");
    std::vector<std::array<int64_t, kMaxDim>> diags;
    detail::diagonal_tuples(n, index, diags);
    std::vector<std::pair<int, int>> pos;
    for (int i = 1; i < n; ++i)
        for (int j = 0; j < i; ++j) pos.emplace_back(i, j);
    for (const auto& d : diags) {
        HnfMatrix h;
        h.n = n;
        for (int i = 0; i < n; ++i) h.at(i, i) = d[i];
        auto rec = [&](auto&& self, std::size_t k) -> void {
            if (k == pos.size()) {
                visit(const_cast<const HnfMatrix&>(h));
                return;
            }
            auto [i, j] = pos[k];
            for (int64_t v = 0; v < d[j]; ++v) {
                h.at(i, j) = v;
                self(self, k + 1);
            }
            h.at(i, j) = 0;
        };
        rec(rec, 0);
    }
}

inline std::vector<HnfMatrix> enumerate_hnf_list(int n, int64_t index) {
    std::vector<HnfMatrix> out;
    enumerate_hnf(n, index, [&](const HnfMatrix& h) { out.push_back(h); });
    return out;
}

// Census of subrings of index p^e keyed by the p-exponents (a, b) of the
// first two cotype entries.  The third entry is always 1 for a subring with
// identity and is asserted, not reported.
using CotypeCensus = std::map<std::pair<int, int>, int64_t>;

inline int64_t pow_i64(int64_t b, int e) {
    int64_t r = 1;
    while (e-- > 0) {
        if (r > INT64_MAX / b) throw std::overflow_error("pow_i64");
        r *= b;
    }
    return r;
}

inline int p_exponent(int64_t v, int64_t p) {
    int e = 0;
    while (v % p == 0) {
        v /= p;
        ++e;
    }
    if (v != 1) throw std::logic_error("p_exponent: not a power of p");
    return e;
}

namespace detail {

inline void census_accumulate(const StructureConstants& s, const HnfMatrix& h,
                              int64_t p, CotypeCensus& out) {
    if (!is_subring(h, s)) return;
    Cotype ct = cotype_snf(h);
    if (ct.alphas[s.n - 1] != 1)
        throw std::logic_error("census: subring with nontrivial last divisor");
    int a = p_exponent(ct.alphas[0], p);
    int b = s.n >= 2 ? p_exponent(ct.alphas[1], p) : 0;
    out[{a, b}] += 1;
}

}  // namespace detail

// Exhaustive cotype census of the subrings of index p^e.  When the ring
// identity is the last standard basis vector (true for Z[t]/(t^3) in the
// basis (t^2, t, 1)), every subring's HNF has last row e_n, which prunes the
// candidate space from ~p^{2e} to ~p^e matrices.  The generic path
// enumerates every sublattice and filters.
inline CotypeCensus count_by_cotype(const StructureConstants& s, int64_t p,
                                    int e,
                                    int64_t budget = kDefaultCandidateBudget,
                                    int jobs = 1, bool force_generic = false) {
    if (e < 0) throw std::invalid_argument("count_by_cotype: e < 0");
    const int64_t index = pow_i64(p, e);
    const int n = s.n;

    std::vector<CotypeCensus> parts;
    if (n == 3 && s.identity_is_last_basis_vector() && !force_generic) {
        // candidates: diag (p^i, p^{e-i}, 1), second-row entry in [0, p^i)
        __int128 cand = 0;
        for (int i = 0; i <= e; ++i) cand += pow_i64(p, i);
        if (cand > budget)
            throw BudgetExceeded("count_by_cotype: candidate count " +
                                 std::to_string(static_cast<int64_t>(cand)) +
                                 " exceeds budget " + std::to_string(budget));
        auto run = [&](int ilo, int ihi) {
            CotypeCensus local;
            for (int i = ilo; i < ihi; ++i) {
                HnfMatrix h;
                h.n = 3;
                h.at(0, 0) = pow_i64(p, i);
                h.at(1, 1) = pow_i64(p, e - i);
                h.at(2, 2) = 1;
                for (int64_t y = 0; y < h.at(0, 0); ++y) {
                    h.at(1, 0) = y;
                    detail::census_accumulate(s, h, p, local);
                }
            }
            return local;
        };
        if (jobs <= 1) {
            parts.push_back(run(0, e + 1));
        } else {
            std::vector<std::future<CotypeCensus>> fut;
            int per = (e + jobs) / jobs;
            for (int lo = 0; lo <= e; lo += per)
                fut.push_back(std::async(std::launch::async, run, lo,
                                         std::min(lo + per, e + 1)));
            for (auto& f : fut) parts.push_back(f.get());
        }
    } else {
        int64_t cand = sublattice_count(n, index);
        if (cand > budget)
            throw BudgetExceeded("count_by_cotype: candidate count " +
                                 std::to_string(cand) + " exceeds budget " +
                                 std::to_string(budget));
        std::vector<std::array<int64_t, kMaxDim>> diags;
        detail::diagonal_tuples(n, index, diags);
        auto run = [&](std::size_t lo, std::size_t hi) {
            CotypeCensus local;
            for (std::size_t t = lo; t < hi; ++t) {
                const auto& d = diags[t];
                HnfMatrix h;
                h.n = n;
                for (int i = 0; i < n; ++i) h.at(i, i) = d[i];
                std::vector<std::pair<int, int>> pos;
                for (int i = 1; i < n; ++i)
                    for (int j = 0; j < i; ++j) pos.emplace_back(i, j);
                auto rec = [&](auto&& self, std::size_t k) -> void {
                    if (k == pos.size()) {
                        detail::census_accumulate(s, h, p, local);
                        return;
                    }
                    auto [i, j] = pos[k];
                    for (int64_t v = 0; v < d[j]; ++v) {
                        h.at(i, j) = v;
                        self(self, k + 1);
                    }
                    h.at(i, j) = 0;
                };
                rec(rec, 0);
            }
            return local;
        };
        if (jobs <= 1) {
            parts.push_back(run(0, diags.size()));
        } else {
            std::vector<std::future<CotypeCensus>> fut;
            std::size_t per = (diags.size() + jobs - 1) / jobs;
            if (per == 0) per = 1;
            for (std::size_t lo = 0; lo < diags.size(); lo += per)
                fut.push_back(std::async(std::launch::async, run, lo,
                                         std::min(lo + per, diags.size())));
            for (auto& f : fut) parts.push_back(f.get());
        }
    }

    CotypeCensus out;
    for (const auto& part : parts)
        for (const auto& [key, cnt] : part) out[key] += cnt;
    return out;
}

// Subrings of index p^e with cyclic quotient (corank <= 1), i.e. census
// buckets with second exponent 0.
inline int64_t count_cocyclic(const StructureConstants& s, int64_t p, int e,
                              int64_t budget = kDefaultCandidateBudget,
                              int jobs = 1) {
    int64_t total = 0;
    for (const auto& [key, cnt] : count_by_cotype(s, p, e, budget, jobs))
        if (key.second == 0) total += cnt;
    return total;
}

inline int64_t census_total(const CotypeCensus& c) {
    int64_t t = 0;
    for (const auto& [k, v] : c) t += v;
    return t;
}

}  // namespace ctz::lattice

#endif
