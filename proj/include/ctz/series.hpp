#ifndef CTZ_SERIES_HPP
#define CTZ_SERIES_HPP

// Truncated bivariate power series of a rational function around X = Y = 0.
// Coefficients are polynomials in p (or constants once p is specialized).
// Expansion runs the graded recurrence induced by the denominator, so the
// cost is quadratic in the truncation bound and everything stays exact.

#include "ctz/ratfunc.hpp"

#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

namespace ctz::exact {

class SeriesTable {
  public:
    SeriesTable(int max_deg_x, int max_deg_y)
        : maxa_(max_deg_x), maxb_(max_deg_y),
          coeff_(static_cast<std::size_t>(max_deg_x + 1) * (max_deg_y + 1)) {
        if (max_deg_x < 0 || max_deg_y < 0)
            throw std::invalid_argument("SeriesTable: negative truncation");
    }

    int max_deg_x() const { return maxa_; }
    int max_deg_y() const { return maxb_; }

    const Poly& at(int a, int b) const { return coeff_[idx(a, b)]; }
    Poly& at(int a, int b) { return coeff_[idx(a, b)]; }

    SeriesTable specialize_p(long p0) const {
        SeriesTable t(maxa_, maxb_);
        for (int a = 0; a <= maxa_; ++a)
            for (int b = 0; b <= maxb_; ++b)
                t.at(a, b) = at(a, b).specialize_p(p0);
        return t;
    }

    friend SeriesTable operator+(const SeriesTable& s, const SeriesTable& t) {
        if (s.maxa_ != t.maxa_ || s.maxb_ != t.maxb_)
            throw std::invalid_argument("SeriesTable: truncation mismatch");
        SeriesTable r(s.maxa_, s.maxb_);
        for (std::size_t i = 0; i < r.coeff_.size(); ++i)
            r.coeff_[i] = s.coeff_[i] + t.coeff_[i];
        return r;
    }

    friend bool operator==(const SeriesTable& s, const SeriesTable& t) {
        return s.maxa_ == t.maxa_ && s.maxb_ == t.maxb_ && s.coeff_ == t.coeff_;
    }

  private:
    std::size_t idx(int a, int b) const {
        if (a < 0 || a > maxa_ || b < 0 || b > maxb_)
            throw std::out_of_range("SeriesTable: coefficient index");
        return static_cast<std::size_t>(a) * (maxb_ + 1) + b;
    }

    int maxa_, maxb_;
    std::vector<Poly> coeff_;
};

namespace detail {
// Collect a (p,X,Y) polynomial by its X,Y exponents; values are p-only polys.
inline std::map<std::pair<int, int>, Poly> collect_xy(const Poly& f) {
    std::map<std::pair<int, int>, Poly> slices;
    for (const auto& [m, c] : f.terms())
        slices[{m.ex, m.ey}].add_term(Mono{m.ep, 0, 0}, c);
    return slices;
}
}  // namespace detail

inline SeriesTable series_expand(const RatFunc& f, int max_deg_x,
                                 int max_deg_y) {
    auto num = detail::collect_xy(f.num());
    auto den = detail::collect_xy(f.den());
    auto c00 = den.find({0, 0});
    if (c00 == den.end())
        throw std::domain_error("series_expand: not expandable at origin");
    const Poly lead = c00->second;

    SeriesTable out(max_deg_x, max_deg_y);
    for (int total = 0; total <= max_deg_x + max_deg_y; ++total) {
        for (int a = 0; a <= max_deg_x; ++a) {
            int b = total - a;
            if (b < 0 || b > max_deg_y) continue;
            Poly acc;
            if (auto it = num.find({a, b}); it != num.end()) acc = it->second;
            for (const auto& [xy, d] : den) {
                auto [i, j] = xy;
                if (i == 0 && j == 0) continue;
                if (i > a || j > b) continue;
                acc -= d * out.at(a - i, b - j);
            }
            out.at(a, b) = divexact_p(acc, lead);
        }
    }
    return out;
}

// Check the defining recurrence: den * series == num up to the truncation.
// Reused by tests and the verification suite.
inline bool series_matches(const RatFunc& f, const SeriesTable& t) {
    auto num = detail::collect_xy(f.num());
    auto den = detail::collect_xy(f.den());
    for (int a = 0; a <= t.max_deg_x(); ++a) {
        for (int b = 0; b <= t.max_deg_y(); ++b) {
            Poly acc;
            for (const auto& [xy, d] : den) {
                auto [i, j] = xy;
                if (i > a || j > b) continue;
                acc += d * t.at(a - i, b - j);
            }
            Poly expect;
            if (auto it = num.find({a, b}); it != num.end()) expect = it->second;
            if (!(acc == expect)) return false;
        }
    }
    return true;
}

}  // namespace ctz::exact

#endif
