#pragma once

#include <cstdint>
#include <stdexcept>
#include <utility>

#include "pbwt/dyn_bits.hpp"
#include "pbwt/dyn_seq.hpp"

namespace pbwt {

/*!
 * Suffix sampling for locating: marks the ranks of suffixes whose length is a
 * multiple of the sampling period and stores those lengths (the distance to
 * the right end of the text) in rank order. A locate walk applies LF mapping
 * until it hits a marked rank or the rank of the full suffix.
 */
class Locator {
  public:
    Locator(uint64_t period, uint64_t capacity) : period_(period), lengths_(capacity) {
        if (period == 0) throw std::invalid_argument("Locator: period must be >= 1");
    }

    Locator(uint64_t period, uint64_t capacity, DynBits bits, DynSeq lengths)
        : period_(period), bits_(std::move(bits)), lengths_(std::move(lengths)) {
        if (period == 0) throw std::invalid_argument("Locator: period must be >= 1");
        if (capacity < lengths_.size()) throw std::invalid_argument("Locator: capacity too small");
        if (bits_.ones() != lengths_.size()) throw std::invalid_argument("Locator: bitmap and lengths disagree");
    }

    uint64_t period() const { return period_; }
    uint64_t count() const { return lengths_.size(); }

    /*! Called once per prepend, after the new suffix got rank khat. */
    void on_prepend(uint64_t khat, uint64_t new_len) {
        bool mark = (new_len % period_) == 0;
        bits_.insert(khat - 1, mark);
        if (mark) lengths_.insert(bits_.rank1(khat), new_len);
    }

    bool sampled(uint64_t rank) const { return bits_.access(rank - 1); }

    uint64_t sampled_length(uint64_t rank) const { return lengths_.at(bits_.rank1(rank)); }

    const DynBits& bits() const { return bits_; }
    const DynSeq& lengths() const { return lengths_; }

    uint64_t heap_bytes() const { return bits_.heap_bytes() + lengths_.heap_bytes(); }

  private:
    uint64_t period_;
    DynBits bits_;
    DynSeq lengths_;
};

}  // namespace pbwt
