#ifndef CTZ_TEXTIO_HPP
#define CTZ_TEXTIO_HPP

// Census table rows and their CSV form.  Serialization is byte-stable:
// parsing an emitted table and re-serializing reproduces it exactly.

#include "ctz/lattice.hpp"

#include <cstdio>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace ctz::textio {

using std::int64_t;

struct CensusRow {
    int64_t p = 0;
    int e = 0;
    int alpha1_exp = 0;
    int alpha2_exp = 0;
    int64_t count = 0;

    friend bool operator==(const CensusRow&, const CensusRow&) = default;
};

inline std::vector<CensusRow> census_rows(int64_t p, int e,
                                          const lattice::CotypeCensus& c) {
    std::vector<CensusRow> rows;
    for (const auto& [key, cnt] : c)
        rows.push_back(CensusRow{p, e, key.first, key.second, cnt});
    return rows;  // map order is (a, b) ascending already
}

inline const char* kCensusHeader = "p,e,alpha1_exp,alpha2_exp,count";

inline std::string census_csv(const std::vector<CensusRow>& rows) {
    std::ostringstream os;
    os << kCensusHeader << "\n";
    for (const auto& r : rows)
        os << r.p << "," << r.e << "," << r.alpha1_exp << "," << r.alpha2_exp
           << "," << r.count << "\n";
    return os.str();
}

inline std::vector<CensusRow> parse_census_csv(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    if (!std::getline(is, line) || line != kCensusHeader)
        throw std::invalid_argument("census csv: bad header");
    std::vector<CensusRow> rows;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        CensusRow r;
        long long p, e, a, b, cnt;
        int used = -1;
        if (std::sscanf(line.c_str(), "%lld,%lld,%lld,%lld,%lld%n", &p, &e,
                        &a, &b, &cnt, &used) != 5 ||
            used != (int)line.size())
            throw std::invalid_argument("census csv: bad row: " + line);
        r.p = p;
        r.e = (int)e;
        r.alpha1_exp = (int)a;
        r.alpha2_exp = (int)b;
        r.count = cnt;
        rows.push_back(r);
    }
    return rows;
}

// Deterministic decimal rendering for report values.
inline std::string format_real(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.15g", v);
    return buf;
}

}  // namespace ctz::textio

#endif
