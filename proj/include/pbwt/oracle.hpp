#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <span>
#include <stdexcept>
#include <vector>

#include "pbwt/alphabet.hpp"
#include "pbwt/pcore.hpp"

namespace pbwt {

/*!
 * Brute-force reference index: p-encodes every suffix, sorts them, and reads
 * all arrays off the sorted list. Quadratic and proud of it; this is the
 * ground truth the online index is tested against and shares no code with it
 * beyond the p-encoding primitives.
 */
struct OracleIndex {
    std::vector<Code> text;             // includes the sentinel
    std::vector<uint64_t> rinv;         // rank -> start position (1-based both)
    std::vector<uint64_t> rank_of;      // start position -> rank
    std::vector<FceVal> f;              // rank-indexed
    std::vector<FceVal> l;
    std::vector<uint64_t> lcpinf;       // lcpinf[0] belongs to rank 1 and is 0
};

/*! Number of Inf symbols in the longest common prefix of two encodings. */
inline uint64_t naive_lcpinf(const PEnc& x, const PEnc& y) {
    uint64_t cnt = 0;
    size_t m = std::min(x.size(), y.size());
    for (size_t i = 0; i < m && x[i] == y[i]; ++i) {
        if (x[i].is_inf()) ++cnt;
    }
    return cnt;
}

inline OracleIndex oracle_build(std::span<const Code> text, const Alphabet& a) {
    const size_t n = text.size();
    if (n == 0 || text[n - 1] != a.sentinel()) throw std::invalid_argument("oracle_build: text must end with the sentinel");
    for (size_t i = 0; i + 1 < n; ++i) {
        if (text[i] == a.sentinel()) throw std::invalid_argument("oracle_build: sentinel inside the text");
    }

    std::vector<PEnc> encs(n);
    for (size_t i = 0; i < n; ++i) encs[i] = penc(std::span<const Code>(text).subspan(i), a);

    OracleIndex ix;
    ix.text.assign(text.begin(), text.end());
    ix.rinv.resize(n);
    std::iota(ix.rinv.begin(), ix.rinv.end(), uint64_t{1});
    std::sort(ix.rinv.begin(), ix.rinv.end(),
              [&](uint64_t p, uint64_t q) { return encs[p - 1] < encs[q - 1]; });

    ix.rank_of.assign(n + 1, 0);
    for (size_t r = 0; r < n; ++r) ix.rank_of[ix.rinv[r]] = r + 1;

    ix.f.resize(n);
    ix.l.resize(n);
    ix.lcpinf.assign(n, 0);
    for (size_t r = 0; r < n; ++r) {
        uint64_t start = ix.rinv[r];
        ix.f[r] = fce(std::span<const Code>(text).subspan(start - 1), a);
        if (start == 1) {
            ix.l[r] = FceVal::from_static(a.sentinel());  // the virtual suffix before position 1
        } else {
            ix.l[r] = fce(std::span<const Code>(text).subspan(start - 2), a);
        }
        if (r > 0) ix.lcpinf[r] = naive_lcpinf(encs[ix.rinv[r - 1] - 1], encs[ix.rinv[r] - 1]);
    }
    return ix;
}

/*! Start positions (1-based) of windows of T that p-match w. */
inline std::vector<uint64_t> naive_locate(std::span<const Code> text, std::span<const Code> w, const Alphabet& a) {
    std::vector<uint64_t> out;
    if (w.empty() || w.size() > text.size()) return out;
    PEnc pe = penc(w, a);
    for (size_t i = 0; i + w.size() <= text.size(); ++i) {
        if (penc(text.subspan(i, w.size()), a) == pe) out.push_back(i + 1);
    }
    return out;
}

inline uint64_t naive_count(std::span<const Code> text, std::span<const Code> w, const Alphabet& a) {
    return naive_locate(text, w, a).size();
}

}  // namespace pbwt
