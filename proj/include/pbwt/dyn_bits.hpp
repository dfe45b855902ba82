#pragma once

#include <bit>
#include <cassert>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

namespace pbwt {

/*!
 * Dynamic bit vector with insert/delete/rank/select.
 *
 * Bits live in fixed-capacity packed blocks; two Fenwick trees over the block
 * list index cumulative lengths and popcounts, so every operation costs
 * O(log(#blocks)) plus a bounded in-block word scan.
 *
 * Positions are 0-based. rank1(i) counts ones in [0, i); select1(k) returns
 * the position of the k-th one (k >= 1) or nothing.
 */
class DynBits {
  public:
    DynBits() = default;

    uint64_t size() const { return size_; }
    uint64_t ones() const { return ones_; }
    bool empty() const { return size_ == 0; }

    bool access(uint64_t i) const {
        if (i >= size_) throw std::out_of_range("DynBits::access");
        ensure_fenwick();
        Loc loc = locate(i);
        return blocks_[loc.bi].get(static_cast<uint32_t>(loc.off));
    }

    void insert(uint64_t i, bool b) {
        if (i > size_) throw std::out_of_range("DynBits::insert");
        if (blocks_.empty()) {
            blocks_.emplace_back();
            fen_valid_ = false;
        }
        ensure_fenwick();
        Loc loc = (i == size_) ? Loc{blocks_.size() - 1, blocks_.back().len, 0, 0} : locate(i);
        if (blocks_[loc.bi].len == kBlockBits) {
            split(loc.bi);
            ensure_fenwick();
            if (loc.off > kBlockBits / 2) {
                loc.bi += 1;
                loc.off -= kBlockBits / 2;
            }
        }
        blocks_[loc.bi].insert_bit(static_cast<uint32_t>(loc.off), b);
        fen_add(loc.bi, +1, b ? +1 : 0);
        ++size_;
        ones_ += b ? 1 : 0;
    }

    void push_back(bool b) { insert(size_, b); }

    bool erase(uint64_t i) {
        if (i >= size_) throw std::out_of_range("DynBits::erase");
        ensure_fenwick();
        Loc loc = locate(i);
        Block& blk = blocks_[loc.bi];
        bool b = blk.get(static_cast<uint32_t>(loc.off));
        blk.erase_bit(static_cast<uint32_t>(loc.off));
        fen_add(loc.bi, -1, b ? -1 : 0);
        --size_;
        ones_ -= b ? 1 : 0;
        if (blk.len == 0) {
            blocks_.erase(blocks_.begin() + static_cast<ptrdiff_t>(loc.bi));
            fen_valid_ = false;
        } else if (blk.len < kMergeBits && blocks_.size() > 1) {
            try_merge(loc.bi);
        }
        return b;
    }

    uint64_t rank1(uint64_t i) const {
        if (i > size_) throw std::out_of_range("DynBits::rank1");
        if (i == size_) return ones_;
        ensure_fenwick();
        Loc loc = locate(i);
        return loc.ones_before + blocks_[loc.bi].rank1(static_cast<uint32_t>(loc.off));
    }

    uint64_t rank0(uint64_t i) const { return i - rank1(i); }

    std::optional<uint64_t> select1(uint64_t k) const {
        if (k == 0) throw std::invalid_argument("DynBits::select1: k must be >= 1");
        if (k > ones_) return std::nullopt;
        ensure_fenwick();
        uint64_t rem = k, len_before = 0;
        size_t bi = fen_search(fen_ones_, rem, len_before);
        return len_before + blocks_[bi].select1(static_cast<uint32_t>(rem));
    }

    std::optional<uint64_t> select0(uint64_t k) const {
        if (k == 0) throw std::invalid_argument("DynBits::select0: k must be >= 1");
        if (k > size_ - ones_) return std::nullopt;
        ensure_fenwick();
        uint64_t rem = k, len_before = 0;
        size_t bi = fen_search_zeros(rem, len_before);
        return len_before + blocks_[bi].select0(static_cast<uint32_t>(rem));
    }

    uint64_t heap_bytes() const {
        uint64_t total = sizeof(DynBits) + blocks_.capacity() * sizeof(Block) +
                         (fen_len_.capacity() + fen_ones_.capacity()) * sizeof(uint64_t);
        for (const Block& b : blocks_) total += b.words.capacity() * sizeof(uint64_t);
        return total;
    }

  private:
    static constexpr uint32_t kBlockBits = 4096;
    static constexpr uint32_t kMergeBits = kBlockBits / 4;
    static constexpr uint32_t kWordBits = 64;

    struct Block {
        std::vector<uint64_t> words;
        uint32_t len = 0;
        uint32_t ones = 0;

        bool get(uint32_t i) const { return (words[i / kWordBits] >> (i % kWordBits)) & 1u; }

        void insert_bit(uint32_t i, bool b) {
            assert(i <= len);
            if (len == static_cast<uint32_t>(words.size()) * kWordBits) words.push_back(0);
            uint32_t wi = i / kWordBits, off = i % kWordBits;
            uint32_t wlast = len / kWordBits;
            for (uint32_t w = wlast; w > wi; --w) {
                words[w] = (words[w] << 1) | (words[w - 1] >> 63);
            }
            uint64_t x = words[wi];
            uint64_t mask_low = off ? ((uint64_t{1} << off) - 1) : 0;
            uint64_t low = x & mask_low;
            uint64_t high = x & ~mask_low;
            words[wi] = low | (static_cast<uint64_t>(b) << off) | (high << 1);
            ++len;
            ones += b ? 1 : 0;
        }

        void erase_bit(uint32_t i) {
            assert(i < len);
            uint32_t wi = i / kWordBits, off = i % kWordBits;
            bool b = get(i);
            uint64_t x = words[wi];
            uint64_t mask_low = off ? ((uint64_t{1} << off) - 1) : 0;
            uint64_t low = x & mask_low;
            uint64_t high = x & ~(mask_low | (uint64_t{1} << off));
            words[wi] = low | (high >> 1);
            uint32_t wlast = (len - 1) / kWordBits;
            for (uint32_t w = wi + 1; w <= wlast; ++w) {
                words[w - 1] |= (words[w] & 1u) << 63;
                words[w] >>= 1;
            }
            --len;
            ones -= b ? 1 : 0;
        }

        uint32_t rank1(uint32_t i) const {
            assert(i <= len);
            uint32_t full = i / kWordBits, cnt = 0;
            for (uint32_t w = 0; w < full; ++w) cnt += static_cast<uint32_t>(std::popcount(words[w]));
            uint32_t off = i % kWordBits;
            if (off) cnt += static_cast<uint32_t>(std::popcount(words[full] & ((uint64_t{1} << off) - 1)));
            return cnt;
        }

        uint32_t select1(uint32_t k) const {  // k in [1..ones]
            assert(k >= 1 && k <= ones);
            uint32_t w = 0;
            for (;; ++w) {
                uint32_t pc = static_cast<uint32_t>(std::popcount(words[w]));
                if (k <= pc) break;
                k -= pc;
            }
            uint64_t x = words[w];
            for (uint32_t t = 1;; ++t) {
                uint32_t bit = static_cast<uint32_t>(std::countr_zero(x));
                if (t == k) return w * kWordBits + bit;
                x &= x - 1;
            }
        }

        uint32_t select0(uint32_t k) const {  // k in [1..len-ones]
            assert(k >= 1 && k <= len - ones);
            uint32_t w = 0;
            for (;; ++w) {
                uint32_t avail = std::min(len - w * kWordBits, kWordBits);
                uint32_t zc = avail - static_cast<uint32_t>(std::popcount(
                                          avail == kWordBits ? words[w] : (words[w] & ((uint64_t{1} << avail) - 1))));
                if (k <= zc) break;
                k -= zc;
            }
            uint64_t x = ~words[w];
            for (uint32_t t = 1;; ++t) {
                uint32_t bit = static_cast<uint32_t>(std::countr_zero(x));
                if (t == k) return w * kWordBits + bit;
                x &= x - 1;
            }
        }

        void append(const Block& other) {
            for (uint32_t j = 0; j < other.len; ++j) insert_bit(len, other.get(j));
        }
    };

    struct Loc {
        size_t bi;
        uint64_t off;
        uint64_t ones_before;
        uint64_t len_before;
    };

    std::vector<Block> blocks_;
    mutable std::vector<uint64_t> fen_len_, fen_ones_;
    mutable bool fen_valid_ = false;
    uint64_t size_ = 0;
    uint64_t ones_ = 0;

    void ensure_fenwick() const {
        if (fen_valid_) return;
        size_t m = blocks_.size();
        fen_len_.assign(m + 1, 0);
        fen_ones_.assign(m + 1, 0);
        for (size_t i = 1; i <= m; ++i) {
            fen_len_[i] += blocks_[i - 1].len;
            fen_ones_[i] += blocks_[i - 1].ones;
            size_t j = i + (i & (~i + 1));
            if (j <= m) {
                fen_len_[j] += fen_len_[i];
                fen_ones_[j] += fen_ones_[i];
            }
        }
        fen_valid_ = true;
    }

    void fen_add(size_t bi, int64_t dlen, int64_t dones) {
        if (!fen_valid_) return;
        for (size_t i = bi + 1; i < fen_len_.size(); i += i & (~i + 1)) {
            fen_len_[i] = static_cast<uint64_t>(static_cast<int64_t>(fen_len_[i]) + dlen);
            fen_ones_[i] = static_cast<uint64_t>(static_cast<int64_t>(fen_ones_[i]) + dones);
        }
    }

    // Finds the block containing position pos (0-based, pos < size_),
    // accumulating lengths and popcounts of the blocks before it.
    Loc locate(uint64_t pos) const {
        size_t m = blocks_.size();
        size_t idx = 0;
        uint64_t rem = pos, ones_acc = 0, len_acc = 0;
        size_t step = std::bit_floor(m);
        for (; step; step >>= 1) {
            size_t next = idx + step;
            if (next <= m && fen_len_[next] <= rem) {
                rem -= fen_len_[next];
                len_acc += fen_len_[next];
                ones_acc += fen_ones_[next];
                idx = next;
            }
        }
        assert(idx < m);
        return {idx, rem, ones_acc, len_acc};
    }

    // Finds the block containing the rem-th one (rem >= 1); on return rem is
    // the in-block one index and len_before the bits before the block.
    size_t fen_search(const std::vector<uint64_t>& tree, uint64_t& rem, uint64_t& len_before) const {
        size_t m = blocks_.size();
        size_t idx = 0;
        size_t step = std::bit_floor(m);
        for (; step; step >>= 1) {
            size_t next = idx + step;
            if (next <= m && tree[next] < rem) {
                rem -= tree[next];
                len_before += fen_len_[next];
                idx = next;
            }
        }
        assert(idx < m);
        return idx;
    }

    size_t fen_search_zeros(uint64_t& rem, uint64_t& len_before) const {
        size_t m = blocks_.size();
        size_t idx = 0;
        size_t step = std::bit_floor(m);
        for (; step; step >>= 1) {
            size_t next = idx + step;
            if (next <= m) {
                uint64_t zeros = fen_len_[next] - fen_ones_[next];
                if (zeros < rem) {
                    rem -= zeros;
                    len_before += fen_len_[next];
                    idx = next;
                }
            }
        }
        assert(idx < m);
        return idx;
    }

    void split(size_t bi) {
        Block& src = blocks_[bi];
        Block nb;
        constexpr uint32_t half_words = (kBlockBits / 2) / kWordBits;
        nb.words.assign(src.words.begin() + half_words, src.words.end());
        nb.len = src.len - kBlockBits / 2;
        nb.ones = 0;
        for (uint64_t w : nb.words) nb.ones += static_cast<uint32_t>(std::popcount(w));
        src.words.resize(half_words);
        src.len = kBlockBits / 2;
        src.ones -= nb.ones;
        blocks_.insert(blocks_.begin() + static_cast<ptrdiff_t>(bi) + 1, std::move(nb));
        fen_valid_ = false;
    }

    void try_merge(size_t bi) {
        size_t left = (bi > 0) ? bi - 1 : bi;
        if (left + 1 >= blocks_.size()) return;
        if (static_cast<uint64_t>(blocks_[left].len) + blocks_[left + 1].len > kBlockBits - kWordBits) return;
        blocks_[left].append(blocks_[left + 1]);
        blocks_.erase(blocks_.begin() + static_cast<ptrdiff_t>(left) + 1);
        fen_valid_ = false;
    }
};

}  // namespace pbwt
