#pragma once

#include <bit>
#include <cassert>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "pbwt/dyn_bits.hpp"

namespace pbwt {

/*!
 * Dynamic sequence over an integer alphabet [0..max_code] with random access,
 * insert, delete, rank and select.
 *
 * Internally one bit-plane per alphabet bit (most significant first), each a
 * DynBits, wavelet-matrix style: element i's bit at level d routes it to the
 * zero or one lane of level d+1. All operations cost O(levels * log n).
 *
 * Positions are 1-based at this interface. rank(c, i) counts c in s[1..i]
 * (i may be 0); select(c, k) returns the position of the k-th c or nothing.
 *
 * Single writer; concurrent readers only between mutations.
 */
class DynSeq {
  public:
    explicit DynSeq(uint64_t max_code) : cap_(max_code) {
        depth_ = (cap_ == 0) ? 1 : static_cast<uint32_t>(std::bit_width(cap_));
        lv_.resize(depth_);
        zeros_.assign(depth_, 0);
    }

    uint64_t size() const { return n_; }
    bool empty() const { return n_ == 0; }
    uint64_t max_code() const { return cap_; }

    uint64_t at(uint64_t i) const {
        check_pos(i);
        uint64_t pos = i - 1, v = 0;
        for (uint32_t d = 0; d < depth_; ++d) {
            bool b = lv_[d].access(pos);
            v = (v << 1) | static_cast<uint64_t>(b);
            pos = child_pos(d, pos, b);
        }
        return v;
    }

    void insert(uint64_t i, uint64_t c) {
        if (i == 0 || i > n_ + 1) throw std::out_of_range("DynSeq::insert");
        if (c > cap_) throw std::invalid_argument("DynSeq::insert: code exceeds max_code");
        uint64_t pos = i - 1;
        for (uint32_t d = 0; d < depth_; ++d) {
            bool b = bit_of(c, d);
            uint64_t r0 = lv_[d].rank0(pos);
            lv_[d].insert(pos, b);
            if (!b) {
                ++zeros_[d];
                pos = r0;
            } else {
                pos = zeros_[d] + (pos - r0);
            }
        }
        ++n_;
    }

    void push_back(uint64_t c) { insert(n_ + 1, c); }

    uint64_t erase(uint64_t i) {
        check_pos(i);
        uint64_t pos = i - 1, v = 0;
        for (uint32_t d = 0; d < depth_; ++d) {
            bool b = lv_[d].access(pos);
            v = (v << 1) | static_cast<uint64_t>(b);
            uint64_t r0 = lv_[d].rank0(pos);
            lv_[d].erase(pos);
            if (!b) {
                --zeros_[d];
                pos = r0;
            } else {
                pos = zeros_[d] + (pos - r0);
            }
        }
        --n_;
        return v;
    }

    uint64_t rank(uint64_t c, uint64_t i) const {
        if (i > n_) throw std::out_of_range("DynSeq::rank");
        if (c > cap_ || i == 0) return 0;
        uint64_t p = i, s = 0;
        for (uint32_t d = 0; d < depth_; ++d) {
            bool b = bit_of(c, d);
            p = child_bound(d, p, b);
            s = child_bound(d, s, b);
            if (p == s) return 0;
        }
        return p - s;
    }

    std::optional<uint64_t> select(uint64_t c, uint64_t k) const {
        if (k == 0) throw std::invalid_argument("DynSeq::select: k must be >= 1");
        if (c > cap_ || k > rank(c, n_)) return std::nullopt;
        uint64_t s = 0;
        for (uint32_t d = 0; d < depth_; ++d) s = child_bound(d, s, bit_of(c, d));
        uint64_t pos = s + k - 1;
        for (uint32_t d = depth_; d-- > 0;) {
            if (!bit_of(c, d)) {
                pos = *lv_[d].select0(pos + 1);
            } else {
                pos = *lv_[d].select1(pos - zeros_[d] + 1);
            }
        }
        return pos + 1;
    }

    uint64_t heap_bytes() const {
        uint64_t total = sizeof(DynSeq) + zeros_.capacity() * sizeof(uint64_t);
        for (const DynBits& b : lv_) total += b.heap_bytes();
        return total;
    }

  protected:
    void check_pos(uint64_t i) const {
        if (i == 0 || i > n_) throw std::out_of_range("DynSeq: position out of range");
    }

    bool bit_of(uint64_t c, uint32_t d) const { return (c >> (depth_ - 1 - d)) & 1u; }

    // Maps a position to the next level (both for elements and for prefix
    // bounds, which is the same arithmetic).
    uint64_t child_pos(uint32_t d, uint64_t pos, bool b) const {
        uint64_t r0 = lv_[d].rank0(pos);
        return b ? zeros_[d] + (pos - r0) : r0;
    }
    uint64_t child_bound(uint32_t d, uint64_t bound, bool b) const {
        uint64_t r0 = lv_[d].rank0(bound);
        return b ? zeros_[d] + (bound - r0) : r0;
    }

    std::vector<DynBits> lv_;
    std::vector<uint64_t> zeros_;
    uint64_t cap_;
    uint32_t depth_;
    uint64_t n_ = 0;
};

}  // namespace pbwt
