#pragma once

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

#include "pbwt/alphabet.hpp"
#include "pbwt/dyn_seq.hpp"
#include "pbwt/dyn_wm.hpp"
#include "pbwt/pcore.hpp"
#include "pbwt/sampling.hpp"

namespace pbwt {

/*! 1-based inclusive rank interval; empty iff l > r. */
struct Interval {
    uint64_t l = 1;
    uint64_t r = 0;

    static Interval none() { return {1, 0}; }

    bool empty() const { return l > r; }
    uint64_t width() const { return empty() ? 0 : r - l + 1; }
    bool contains(uint64_t q) const { return l <= q && q <= r; }

    friend bool operator==(const Interval& a, const Interval& b) {
        if (a.empty() && b.empty()) return true;
        return a.l == b.l && a.r == b.r;
    }
};

inline constexpr uint64_t kDefaultSamplePeriod = 32;

/*!
 * Online index over the parameterized BWT of a text built by prepending
 * symbols one at a time. The state always represents some text T ending in
 * the sentinel and holds:
 *
 *   - F: first-character encodings of the rank-sorted p-encoded suffixes,
 *   - L: the same for each suffix extended by one symbol to the left, kept
 *     split into a kind bit vector plus a static and a parameter sequence,
 *   - LCP: the lcp-infinity values of rank-adjacent suffixes (LCP[1] = 0),
 *   - Z: parameter codes in order of their leftmost occurrence in T,
 *   - the ordered set of static codes present in T,
 *   - k: the rank of the full suffix T itself,
 *   - the rank sampling used by locate queries.
 *
 * A prepend computes the new suffix's rank with a constant number of queries
 * for a static symbol and an amortized constant number of rank rounds for a
 * parameter symbol (counted by iter_count), then splices all arrays.
 *
 * Single writer; read-only queries may run concurrently between prepends.
 */
class OnlinePbwt {
  public:
    OnlinePbwt(Alphabet alpha, uint64_t capacity, uint64_t sample_period = kDefaultSamplePeriod)
        : alpha_(std::move(alpha)),
          capacity_(capacity),
          f_(static_cast<uint64_t>(alpha_.sigma_max()) + capacity),
          lx_(alpha_.sigma_max()),
          ly_(capacity),
          lcp_(capacity),
          z_(alpha_.sigma_max()),
          loc_(sample_period, capacity) {
        if (capacity_ < 1) throw std::invalid_argument("OnlinePbwt: capacity must be >= 1");
        FceVal dollar = FceVal::from_static(alpha_.sentinel());
        f_.insert(1, fce_code(dollar));
        l_insert(1, dollar);
        lcp_.insert(1, 0);
        sset_.insert(alpha_.sentinel());
        k_ = 1;
        n_ = 1;
        loc_.on_prepend(1, 1);
    }

    const Alphabet& alphabet() const { return alpha_; }
    uint64_t size() const { return n_; }
    uint64_t capacity() const { return capacity_; }
    uint64_t full_rank() const { return k_; }
    uint64_t iter_count() const { return iter_count_; }
    uint64_t sigma_p() const { return z_.size(); }
    uint64_t sigma_s() const { return sset_.size(); }
    const Locator& locator() const { return loc_; }
    const DynSeq& z_seq() const { return z_; }
    const std::set<Code>& s_symbols() const { return sset_; }

    /*! fce value at rank i of F. */
    FceVal f_at(uint64_t i) const {
        check_rank(i);
        return fce_decode(f_.at(i));
    }

    /*! fce value at rank i of L, read through the split representation. */
    FceVal l_at(uint64_t i) const {
        check_rank(i);
        if (lb_.access(i - 1)) return FceVal::from_rank(ly_.at(lb_.rank1(i)));
        return FceVal::from_static(static_cast<Code>(lx_.at(lb_.rank0(i))));
    }

    uint64_t lcpinf_at(uint64_t i) const {
        check_rank(i);
        return lcp_.at(i);
    }

    /*! Rank of the one-symbol-longer suffix (wraps the full suffix to 1). */
    uint64_t lf(uint64_t i) const {
        check_rank(i);
        FceVal v = l_at(i);
        uint64_t cnt = l_rank(v, i);
        auto pos = f_.select(fce_code(v), cnt);
        assert(pos);
        return *pos;
    }

    /*! Rank of the one-symbol-shorter suffix; inverse of lf. */
    uint64_t fl(uint64_t i) const {
        check_rank(i);
        FceVal v = fce_decode(f_.at(i));
        uint64_t cnt = f_.rank(fce_code(v), i);
        auto pos = l_select(v, cnt);
        assert(pos);
        return *pos;
    }

    /*!
     * Maximal interval [l..r] around rank i whose suffixes all share an
     * lcp-infinity value >= e with the rank-i suffix.
     */
    Interval get_mi(uint64_t i, uint64_t e) const {
        check_rank(i);
        if (e == 0) return {1, n_};
        uint64_t l = lcp_.fpq(Pred::less(e), i).value_or(1);
        uint64_t r = n_;
        if (i < n_) r = lcp_.fnq(Pred::less(e), i + 1).value_or(n_ + 1) - 1;
        return {l, r};
    }

    /*!
     * fce of c prepended to the current text, for a parameter code c: the
     * position of c in Z if present, else one past the number of distinct
     * parameter symbols.
     */
    FceVal fce_of_prepended(Code c) const {
        if (!alpha_.is_param(c)) throw std::invalid_argument("fce_of_prepended: static code");
        if (auto pos = z_.select(c, 1)) return FceVal::from_rank(*pos);
        return FceVal::from_rank(z_.size() + 1);
    }

    /*!
     * Rank the suffix cT would get among the current suffixes plus itself,
     * for a static c: either one past the rank of the closest smaller suffix
     * preceded by c, or right after the last suffix starting with the largest
     * smaller static symbol.
     */
    uint64_t khat_static(Code c) const {
        if (alpha_.is_param(c) || c <= alpha_.sentinel())
            throw std::invalid_argument("khat_static: expects a static code above the sentinel");
        if (auto p = fpq_static(c, k_)) return 1 + lf(*p);
        auto it = sset_.lower_bound(c);
        assert(it != sset_.begin());
        Code b = *std::prev(it);
        uint64_t cnt = f_.rank(b, n_);
        assert(cnt > 0);
        auto pos = f_.select(b, cnt);
        return 1 + *pos;
    }

    /*!
     * Rank the suffix cT would get for a parameter c with fce value fce_hat.
     * Scans candidate lcp-infinity values e downward, each round looking for
     * the closest suffix whose left extension stays within lcp-infinity e of
     * the new suffix; a final round with e = 0 covers the case where the
     * neighbor shares no leading parameter structure at all. Every round is
     * added to iter_count.
     */
    uint64_t khat_param(FceVal fce_hat) {
        if (!fce_hat.is_param()) throw std::invalid_argument("khat_param: expects a parameter fce value");
        if (z_.size() == 0) return n_ + 1;  // no parameter symbol in T yet
        const uint64_t fr = fce_hat.rank();
        uint64_t lk = lcp_.at(k_);
        uint64_t lk1 = (k_ < n_) ? lcp_.at(k_ + 1) : 0;
        for (uint64_t e = std::min(fr, std::max(lk, lk1)); e >= 1; --e) {
            ++iter_count_;
            Interval lr = get_mi(k_, e);
            auto res = (e == fr) ? khat_round_fce(e, lr) : khat_round_general(e, lr);
            if (res) return *res;
        }
        ++iter_count_;
        auto res = khat_round_general(0, Interval{1, n_});
        if (!res) throw std::logic_error("khat_param: no rank found");
        return *res;
    }

    /*!
     * Prepends one symbol: computes the new suffix's fce and rank, replaces
     * the sentinel entry of L at the old full-suffix rank, inserts the new
     * row into F, L and LCP, and refreshes Z / the static-symbol set and the
     * locate sampling.
     */
    void prepend(Code c) {
        if (n_ + 1 > capacity_) throw std::length_error("OnlinePbwt::prepend: capacity exceeded");
        if (!alpha_.in_range(c)) throw std::invalid_argument("OnlinePbwt::prepend: symbol code out of range");
        bool param = alpha_.is_param(c);
        if (!param && c <= alpha_.sentinel())
            throw std::invalid_argument("OnlinePbwt::prepend: sentinel cannot be prepended");

        FceVal fh;
        uint64_t khat;
        if (param) {
            fh = fce_of_prepended(c);
            khat = khat_param(fh);
        } else {
            fh = FceVal::from_static(c);
            khat = khat_static(c);
        }
        assert(khat >= 2 && khat <= n_ + 1);

        uint64_t lcp_pred = neighbor_lcpinf(khat - 1, fh);
        std::optional<uint64_t> lcp_succ;
        if (khat <= n_) lcp_succ = neighbor_lcpinf(khat, fh);

        l_erase(k_);
        l_insert(k_, fh);
        l_insert(khat, FceVal::from_static(alpha_.sentinel()));
        f_.insert(khat, fce_code(fh));
        lcp_.insert(khat, lcp_pred);
        if (lcp_succ) {
            lcp_.erase(khat + 1);
            lcp_.insert(khat + 1, *lcp_succ);
        }

        if (param) {
            if (auto pos = z_.select(c, 1)) z_.erase(*pos);
            z_.insert(1, c);
        } else {
            sset_.insert(c);
        }
        loc_.on_prepend(khat, n_ + 1);
        k_ = khat;
        n_ += 1;
    }

    // --- L component queries (positions are L ranks, values live on the
    // parameter or static subsequence only) ---

    std::optional<uint64_t> fpq_param(Pred p, uint64_t i) const {
        check_rank(i);
        uint64_t iy = lb_.rank1(i);
        if (iy == 0) return std::nullopt;
        auto q = ly_.fpq(p, iy);
        if (!q) return std::nullopt;
        return *lb_.select1(*q) + 1;
    }

    std::optional<uint64_t> fnq_param(Pred p, uint64_t i) const {
        check_rank(i);
        uint64_t iy = lb_.rank1(i - 1) + 1;
        if (iy > ly_.size()) return std::nullopt;
        auto q = ly_.fnq(p, iy);
        if (!q) return std::nullopt;
        return *lb_.select1(*q) + 1;
    }

    std::optional<uint64_t> fpq_static(Code c, uint64_t i) const {
        check_rank(i);
        uint64_t ix = lb_.rank0(i);
        if (ix == 0) return std::nullopt;
        uint64_t cnt = lx_.rank(c, ix);
        if (cnt == 0) return std::nullopt;
        auto q = lx_.select(c, cnt);
        return *lb_.select0(*q) + 1;
    }

    std::optional<uint64_t> fnq_static(Code c, uint64_t i) const {
        check_rank(i);
        uint64_t ix = lb_.rank0(i - 1) + 1;
        if (ix > lx_.size()) return std::nullopt;
        uint64_t cnt = lx_.rank(c, ix - 1) + 1;
        auto q = lx_.select(c, cnt);
        if (!q) return std::nullopt;
        return *lb_.select0(*q) + 1;
    }

    /*! Number of parameter entries of L in [l..r] with rank value > e. */
    uint64_t count_param_greater(uint64_t l, uint64_t r, uint64_t e) const {
        if (l > r) return 0;
        check_rank(l);
        check_rank(r);
        uint64_t yl = lb_.rank1(l - 1) + 1;
        uint64_t yr = lb_.rank1(r);
        if (yl > yr) return 0;
        return ly_.range_count_greater(yl, yr, e);
    }

    uint64_t heap_bytes() const {
        return sizeof(OnlinePbwt) + f_.heap_bytes() + lb_.heap_bytes() + lx_.heap_bytes() + ly_.heap_bytes() +
               lcp_.heap_bytes() + z_.heap_bytes() + loc_.heap_bytes();
    }

    /*! F integer coding: static code c -> c, parameter rank r -> sigma + r. */
    uint64_t fce_code(FceVal v) const {
        return v.is_static() ? v.code() : alpha_.sigma_max() + v.rank();
    }
    FceVal fce_decode(uint64_t code) const {
        if (code <= alpha_.sigma_max()) return FceVal::from_static(static_cast<Code>(code));
        return FceVal::from_rank(code - alpha_.sigma_max());
    }

    /*!
     * Rebuilds a state from logical array contents (snapshot loading).
     * Validates the structural invariants and throws std::runtime_error on
     * any violation.
     */
    static OnlinePbwt restore(Alphabet alpha, uint64_t capacity, uint64_t sample_period, uint64_t k,
                              uint64_t iter_count, const std::vector<uint64_t>& f_codes,
                              const std::vector<uint64_t>& l_codes, const std::vector<uint64_t>& lcp,
                              const std::vector<uint64_t>& z, const std::vector<uint64_t>& sset,
                              const std::vector<uint64_t>& sample_bits, const std::vector<uint64_t>& lengths) {
        OnlinePbwt st(std::move(alpha), capacity, sample_period);
        st.reset_from_parts(k, iter_count, f_codes, l_codes, lcp, z, sset, sample_bits, lengths);
        return st;
    }

  private:
    void check_rank(uint64_t i) const {
        if (i == 0 || i > n_) throw std::out_of_range("OnlinePbwt: rank out of range");
    }

    uint64_t l_rank(FceVal v, uint64_t i) const {
        if (v.is_static()) return lx_.rank(v.code(), lb_.rank0(i));
        return ly_.rank(v.rank(), lb_.rank1(i));
    }

    std::optional<uint64_t> l_select(FceVal v, uint64_t cnt) const {
        if (v.is_static()) {
            auto q = lx_.select(v.code(), cnt);
            if (!q) return std::nullopt;
            return *lb_.select0(*q) + 1;
        }
        auto q = ly_.select(v.rank(), cnt);
        if (!q) return std::nullopt;
        return *lb_.select1(*q) + 1;
    }

    void l_insert(uint64_t i, FceVal v) {
        if (v.is_static()) {
            lx_.insert(lb_.rank0(i - 1) + 1, v.code());
            lb_.insert(i - 1, false);
        } else {
            ly_.insert(lb_.rank1(i - 1) + 1, v.rank());
            lb_.insert(i - 1, true);
        }
    }

    void l_erase(uint64_t i) {
        if (lb_.access(i - 1)) {
            ly_.erase(lb_.rank1(i));
        } else {
            lx_.erase(lb_.rank0(i));
        }
        lb_.erase(i - 1);
    }

    /*!
     * lcp-infinity between the new suffix (fce value fh) and the current
     * rank-j suffix, its future rank neighbor. The tails of the pair are the
     * current text (rank k) and the rank-j suffix shortened by one (rank
     * fl(j)); their lcp-infinity is the range minimum of LCP between them,
     * and one extended-pair case analysis lifts it to the full pair.
     */
    uint64_t neighbor_lcpinf(uint64_t j, FceVal fh) const {
        assert(j >= 1 && j <= n_);
        if (j == 1) return 0;  // rank 1 is the bare sentinel suffix
        uint64_t jt = fl(j);
        assert(jt != k_);
        uint64_t lo = std::min(k_, jt), hi = std::max(k_, jt);
        uint64_t e = lcp_.range_min(lo + 1, hi);
        FceVal fn = fce_decode(f_.at(j));
        ExtendedPair p = (k_ < jt) ? extended_pair(fh, fn, static_cast<int64_t>(e))
                                   : extended_pair(fn, fh, static_cast<int64_t>(e));
        return p.lcpinf;
    }

    // One round of the parameter-rank search with e equal to the new fce
    // rank: only suffixes preceded by exactly that rank can extend the match
    // past the reoccurrence position, and they keep their relative order.
    std::optional<uint64_t> khat_round_fce(uint64_t e, Interval lr) {
        if (auto q = fpq_param(Pred::eq(e), k_); q && lr.contains(*q)) return 1 + lf(*q);
        if (auto q = fnq_param(Pred::eq(e), k_); q && lr.contains(*q)) return lf(*q);
        if (auto q = fnq_param(Pred::geq(e + 1), lr.l); q && lr.contains(*q)) return get_mi(lf(*q), e + 1).l;
        return std::nullopt;
    }

    // One round with e below the new fce rank (also used for the final e = 0
    // round over the whole rank range).
    std::optional<uint64_t> khat_round_general(uint64_t e, Interval lr) {
        if (auto q = fpq_param(Pred::geq(e + 1), k_); q && lr.contains(*q)) {
            Interval in = get_mi(*q, e + 1);
            auto q2 = fpq_param(Pred::geq(e + 2), in.r);
            if (q2 && in.contains(*q2)) return 1 + get_mi(lf(*q2), e + 2).r;
            return 1 + lf(*q);
        }
        if (auto q = fnq_param(Pred::geq(e + 1), k_); q && lr.contains(*q)) {
            Interval in = get_mi(*q, e + 1);
            auto q2 = fnq_param(Pred::eq(e + 1), in.l);
            if (q2 && in.contains(*q2)) return lf(*q2);
            return get_mi(lf(*q), e + 2).l;
        }
        if (auto q = fpq_param(Pred::eq(e), lr.r); q && lr.contains(*q)) return 1 + lf(*q);
        return std::nullopt;
    }

    void reset_from_parts(uint64_t k, uint64_t iter_count, const std::vector<uint64_t>& f_codes,
                          const std::vector<uint64_t>& l_codes, const std::vector<uint64_t>& lcp,
                          const std::vector<uint64_t>& z, const std::vector<uint64_t>& sset,
                          const std::vector<uint64_t>& sample_bits, const std::vector<uint64_t>& lengths) {
        const uint64_t n = f_codes.size();
        if (n == 0 || n > capacity_) throw std::runtime_error("restore: bad length");
        if (l_codes.size() != n || lcp.size() != n || sample_bits.size() != n)
            throw std::runtime_error("restore: array sizes disagree");
        if (k == 0 || k > n) throw std::runtime_error("restore: bad full-suffix rank");
        if (lcp[0] != 0) throw std::runtime_error("restore: LCP[1] must be 0");
        {
            std::vector<uint64_t> fs = f_codes, ls = l_codes;
            std::sort(fs.begin(), fs.end());
            std::sort(ls.begin(), ls.end());
            if (fs != ls) throw std::runtime_error("restore: F is not a permutation of L");
        }
        if (l_codes[k - 1] != alpha_.sentinel()) throw std::runtime_error("restore: L[k] is not the sentinel");

        f_ = DynSeq(static_cast<uint64_t>(alpha_.sigma_max()) + capacity_);
        lb_ = DynBits();
        lx_ = DynSeq(alpha_.sigma_max());
        ly_ = DynWaveletMatrix(capacity_);
        lcp_ = DynWaveletMatrix(capacity_);
        z_ = DynSeq(alpha_.sigma_max());
        sset_.clear();
        loc_ = Locator(loc_.period(), capacity_);

        for (uint64_t code : f_codes) {
            FceVal v = fce_decode(code);
            if (v.is_param() && (v.rank() == 0 || v.rank() > n)) throw std::runtime_error("restore: bad fce rank in F");
            f_.push_back(code);
        }
        for (uint64_t code : l_codes) {
            FceVal v = fce_decode(code);
            if (v.is_param() && (v.rank() == 0 || v.rank() > n)) throw std::runtime_error("restore: bad fce rank in L");
            l_insert(lb_.size() + 1, v);
        }
        for (uint64_t v : lcp) {
            if (v >= n) throw std::runtime_error("restore: LCP value out of range");
            lcp_.push_back(v);
        }
        std::set<Code> zseen;
        for (uint64_t c : z) {
            if (c > alpha_.sigma_max() || !alpha_.is_param(static_cast<Code>(c)) || !zseen.insert(static_cast<Code>(c)).second)
                throw std::runtime_error("restore: bad Z contents");
            z_.push_back(c);
        }
        for (uint64_t c : sset) {
            if (c > alpha_.sigma_max() || alpha_.is_param(static_cast<Code>(c)))
                throw std::runtime_error("restore: bad static-set contents");
            sset_.insert(static_cast<Code>(c));
        }
        if (!sset_.count(alpha_.sentinel())) throw std::runtime_error("restore: static set lacks the sentinel");

        uint64_t ones = 0;
        DynBits bits;
        for (uint64_t b : sample_bits) {
            if (b > 1) throw std::runtime_error("restore: sample bitmap entries must be 0/1");
            ones += b;
            bits.push_back(b == 1);
        }
        if (ones != lengths.size()) throw std::runtime_error("restore: sample bitmap and V disagree");
        DynSeq vs(capacity_);
        std::set<uint64_t> vseen;
        for (uint64_t len : lengths) {
            if (len == 0 || len > n || len % loc_.period() != 0 || !vseen.insert(len).second)
                throw std::runtime_error("restore: bad sampled length");
            vs.push_back(len);
        }
        loc_ = Locator(loc_.period(), capacity_, std::move(bits), std::move(vs));

        n_ = n;
        k_ = k;
        iter_count_ = iter_count;
    }

    Alphabet alpha_;
    uint64_t capacity_;
    DynSeq f_;
    DynBits lb_;
    DynSeq lx_;
    DynWaveletMatrix ly_;
    DynWaveletMatrix lcp_;
    DynSeq z_;
    std::set<Code> sset_;
    Locator loc_;
    uint64_t k_ = 1;
    uint64_t n_ = 0;
    uint64_t iter_count_ = 0;
};

}  // namespace pbwt
