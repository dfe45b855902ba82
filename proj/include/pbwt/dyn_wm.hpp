#pragma once

#include <cassert>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "pbwt/dyn_seq.hpp"

namespace pbwt {

/*! Predicate for find-previous/next queries: = c, < c, or >= c. */
struct Pred {
    enum class Kind : uint8_t { kEq, kLess, kGeq };

    Kind kind;
    uint64_t value;

    static Pred eq(uint64_t c) { return {Kind::kEq, c}; }
    static Pred less(uint64_t c) { return {Kind::kLess, c}; }
    static Pred geq(uint64_t c) { return {Kind::kGeq, c}; }
};

/*!
 * Dynamic wavelet matrix: everything DynSeq supports plus range minimum,
 * predicate-based find-previous/next and range counting.
 *
 * fpq(p, i) returns the largest j <= i whose value satisfies p, fnq(p, i) the
 * smallest j >= i; both return nothing when no such position exists.
 */
class DynWaveletMatrix : public DynSeq {
  public:
    using DynSeq::DynSeq;

    /*! Value of the minimum in s[i..j]. */
    uint64_t range_min(uint64_t i, uint64_t j) const {
        check_pos(i);
        check_pos(j);
        if (i > j) throw std::invalid_argument("DynWaveletMatrix::range_min: empty range");
        return min_value0(i - 1, j);
    }

    /*! Leftmost position of the minimum in s[i..j]. */
    uint64_t rmq(uint64_t i, uint64_t j) const {
        uint64_t v = range_min(i, j);
        auto pos = fnq(Pred::eq(v), i);
        assert(pos && *pos <= j);
        return *pos;
    }

    std::optional<uint64_t> fpq(Pred p, uint64_t i) const {
        check_pos(i);
        switch (p.kind) {
            case Pred::Kind::kEq: {
                uint64_t k = rank(p.value, i);
                if (k == 0) return std::nullopt;
                return select(p.value, k);
            }
            case Pred::Kind::kGeq: return fpq_threshold(p.value, true, i);
            default: return fpq_threshold(p.value, false, i);
        }
    }

    std::optional<uint64_t> fnq(Pred p, uint64_t i) const {
        check_pos(i);
        switch (p.kind) {
            case Pred::Kind::kEq: return select(p.value, rank(p.value, i - 1) + 1);
            case Pred::Kind::kGeq: return fnq_threshold(p.value, true, i);
            default: return fnq_threshold(p.value, false, i);
        }
    }

    /*! Number of positions p in [l..r] with s[p] > e; 0 for an empty range. */
    uint64_t range_count_greater(uint64_t l, uint64_t r, uint64_t e) const {
        if (l > r) return 0;
        check_pos(l);
        check_pos(r);
        return count_greater0(l - 1, r, e);
    }

    /*! Number of positions p in [l..r] with s[p] < c; 0 for an empty range. */
    uint64_t range_count_less(uint64_t l, uint64_t r, uint64_t c) const {
        if (l > r) return 0;
        check_pos(l);
        check_pos(r);
        return count_less0(l - 1, r, c);
    }

  private:
    // Counts values < c in the 0-based half-open range [lo, hi).
    uint64_t count_less0(uint64_t lo, uint64_t hi, uint64_t c) const {
        if (lo >= hi || c == 0) return 0;
        if (c > cap_) return hi - lo;
        uint64_t cnt = 0;
        for (uint32_t d = 0; d < depth_; ++d) {
            uint64_t r0lo = lv_[d].rank0(lo), r0hi = lv_[d].rank0(hi);
            if (bit_of(c, d)) {
                cnt += r0hi - r0lo;
                lo = zeros_[d] + (lo - r0lo);
                hi = zeros_[d] + (hi - r0hi);
            } else {
                lo = r0lo;
                hi = r0hi;
            }
            if (lo >= hi) break;
        }
        return cnt;
    }

    uint64_t count_greater0(uint64_t lo, uint64_t hi, uint64_t e) const {
        if (lo >= hi || e >= cap_) return 0;
        uint64_t cnt = 0;
        for (uint32_t d = 0; d < depth_; ++d) {
            uint64_t r0lo = lv_[d].rank0(lo), r0hi = lv_[d].rank0(hi);
            if (!bit_of(e, d)) {
                cnt += (hi - lo) - (r0hi - r0lo);
                lo = r0lo;
                hi = r0hi;
            } else {
                lo = zeros_[d] + (lo - r0lo);
                hi = zeros_[d] + (hi - r0hi);
            }
            if (lo >= hi) break;
        }
        return cnt;
    }

    uint64_t min_value0(uint64_t lo, uint64_t hi) const {
        assert(lo < hi);
        uint64_t v = 0;
        for (uint32_t d = 0; d < depth_; ++d) {
            uint64_t r0lo = lv_[d].rank0(lo), r0hi = lv_[d].rank0(hi);
            if (r0hi > r0lo) {
                v <<= 1;
                lo = r0lo;
                hi = r0hi;
            } else {
                v = (v << 1) | 1u;
                lo = zeros_[d] + (lo - r0lo);
                hi = zeros_[d] + (hi - r0hi);
            }
        }
        return v;
    }

    // Threshold find-next: one descent along the bit path of c records, per
    // level, the first position at or after the bound that leaves the path on
    // the qualifying side (bit 1 where c has 0 for >= c, bit 0 where c has 1
    // for < c); one ascent maps the earliest candidate back to a sequence
    // position. Coordinates of same-path elements keep their relative order
    // on every level, so candidates are comparable level by level.
    std::optional<uint64_t> fnq_threshold(uint64_t c, bool want_geq, uint64_t i) const {
        if (want_geq) {
            if (c == 0) return i;
            if (c > cap_) return std::nullopt;
        } else {
            if (c == 0) return std::nullopt;
            if (c > cap_) return i;
        }
        uint64_t p = i - 1;  // 0-based lower bound, inclusive
        uint64_t nhi = n_;   // node end at the current level
        std::vector<std::optional<uint64_t>> fb(depth_);
        for (uint32_t d = 0; d < depth_; ++d) {
            bool b = bit_of(c, d);
            if (b != want_geq) {  // leaving the path on side !b qualifies outright
                std::optional<uint64_t> q = want_geq ? lv_[d].select1(lv_[d].rank1(p) + 1)
                                                     : lv_[d].select0(lv_[d].rank0(p) + 1);
                if (q && *q < nhi) fb[d] = q;
            }
            uint64_t r0p = lv_[d].rank0(p), r0hi = lv_[d].rank0(nhi);
            if (!b) {
                p = r0p;
                nhi = r0hi;
            } else {
                p = zeros_[d] + (p - r0p);
                nhi = zeros_[d] + (nhi - r0hi);
            }
        }
        std::optional<uint64_t> cand;
        if (want_geq && p < nhi) cand = p;  // remaining elements equal c
        for (uint32_t d = depth_; d-- > 0;) {
            if (cand) {
                cand = bit_of(c, d) ? lv_[d].select1(*cand - zeros_[d] + 1) : lv_[d].select0(*cand + 1);
            }
            if (fb[d] && (!cand || *fb[d] < *cand)) cand = fb[d];
        }
        if (!cand) return std::nullopt;
        return *cand + 1;
    }

    std::optional<uint64_t> fpq_threshold(uint64_t c, bool want_geq, uint64_t i) const {
        if (want_geq) {
            if (c == 0) return i;
            if (c > cap_) return std::nullopt;
        } else {
            if (c == 0) return std::nullopt;
            if (c > cap_) return i;
        }
        uint64_t p = i - 1;  // 0-based upper bound, inclusive
        uint64_t nlo = 0;    // node start at the current level
        std::vector<std::optional<uint64_t>> fb(depth_);
        bool path_alive = true;
        uint32_t deepest = 0;
        for (uint32_t d = 0; d < depth_; ++d) {
            deepest = d + 1;
            bool b = bit_of(c, d);
            if (b != want_geq) {
                uint64_t k = want_geq ? lv_[d].rank1(p + 1) : lv_[d].rank0(p + 1);
                if (k > 0) {
                    std::optional<uint64_t> q = want_geq ? lv_[d].select1(k) : lv_[d].select0(k);
                    if (q && *q >= nlo) fb[d] = q;
                }
            }
            // Elements matching c's prefix within [nlo..p]; none means the
            // equal path is exhausted (deeper fallbacks are impossible too).
            uint64_t before = b ? lv_[d].rank1(p + 1) : lv_[d].rank0(p + 1);
            uint64_t skipped = b ? lv_[d].rank1(nlo) : lv_[d].rank0(nlo);
            if (before == skipped) {
                path_alive = false;
                break;
            }
            uint64_t r0lo = lv_[d].rank0(nlo);
            if (!b) {
                p = before - 1;
                nlo = r0lo;
            } else {
                p = zeros_[d] + before - 1;
                nlo = zeros_[d] + (nlo - r0lo);
            }
        }
        std::optional<uint64_t> cand;
        if (path_alive && want_geq) cand = p;  // last element equal to c at or before the bound
        for (uint32_t d = deepest; d-- > 0;) {
            if (cand) {
                cand = bit_of(c, d) ? lv_[d].select1(*cand - zeros_[d] + 1) : lv_[d].select0(*cand + 1);
            }
            if (fb[d] && (!cand || *fb[d] > *cand)) cand = fb[d];
        }
        if (!cand) return std::nullopt;
        return *cand + 1;
    }
};

}  // namespace pbwt
