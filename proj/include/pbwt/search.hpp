#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "pbwt/online_pbwt.hpp"
#include "pbwt/pcore.hpp"

namespace pbwt {

/*!
 * Per-position precomputation over a pattern w: for every suffix w[i..] its
 * fce value, the number of distinct p-symbols in w[i+1..], and whether w[i]
 * is a parameter that reoccurs in w[i+1..]. Built in one right-to-left pass;
 * a Fenwick tree over leftmost-occurrence positions supplies the fce ranks.
 */
class PatternProfile {
  public:
    PatternProfile(std::span<const Code> w, const Alphabet& a) : m_(w.size()) {
        if (w.empty()) throw std::invalid_argument("PatternProfile: empty pattern");
        fce_.resize(m_);
        suffix_params_.resize(m_);
        repeat_.resize(m_);
        param_.resize(m_);

        std::vector<uint64_t> fenwick(m_ + 1, 0);
        auto fen_add = [&](size_t pos, int64_t d) {
            for (size_t i = pos; i <= m_; i += i & (~i + 1))
                fenwick[i] = static_cast<uint64_t>(static_cast<int64_t>(fenwick[i]) + d);
        };
        auto fen_prefix = [&](size_t pos) {
            uint64_t s = 0;
            for (size_t i = pos; i > 0; i -= i & (~i + 1)) s += fenwick[i];
            return s;
        };

        std::unordered_map<Code, size_t> next_occ;  // leftmost occurrence in the current suffix
        uint64_t distinct = 0;
        for (size_t i = m_; i-- > 0;) {
            Code c = w[i];
            if (!a.in_range(c)) throw std::invalid_argument("PatternProfile: symbol code out of range");
            if (c == a.sentinel()) throw std::invalid_argument("PatternProfile: sentinel in pattern");
            suffix_params_[i] = distinct;  // distinct p-symbols in w[i+1..]
            if (a.is_static(c)) {
                fce_[i] = FceVal::from_static(c);
            } else {
                param_[i] = true;
                auto it = next_occ.find(c);
                if (it != next_occ.end()) {
                    repeat_[i] = true;
                    fce_[i] = FceVal::from_rank(fen_prefix(it->second + 1));
                    fen_add(it->second + 1, -1);
                } else {
                    ++distinct;
                    fce_[i] = FceVal::from_rank(distinct);
                }
                fen_add(i + 1, +1);
                next_occ[c] = i;
            }
        }
    }

    uint64_t length() const { return m_; }
    bool is_param(uint64_t i) const { return param_[i - 1]; }
    bool repeats(uint64_t i) const { return repeat_[i - 1]; }
    FceVal fce_at(uint64_t i) const { return fce_[i - 1]; }
    uint64_t suffix_params(uint64_t i) const { return suffix_params_[i - 1]; }

  private:
    size_t m_;
    std::vector<FceVal> fce_;
    std::vector<uint64_t> suffix_params_;
    std::vector<bool> repeat_;
    std::vector<bool> param_;
};

/*!
 * One backward-search step: from the interval of w[i+1..] to the interval of
 * w[i..]. A static symbol and a reoccurring parameter shrink the interval by
 * matching the L value; a parameter that is new to the pattern selects all
 * entries with rank above the pattern's distinct-parameter count, whose left
 * extensions form a contiguous block that the step locates explicitly.
 */
inline Interval bws_step(Interval iv, uint64_t i, const PatternProfile& prof, const OnlinePbwt& st) {
    if (iv.empty()) return Interval::none();
    if (!prof.is_param(i)) {
        Code c = prof.fce_at(i).code();
        auto ql = st.fnq_static(c, iv.l);
        if (!ql || *ql > iv.r) return Interval::none();
        auto qr = st.fpq_static(c, iv.r);
        return {st.lf(*ql), st.lf(*qr)};
    }
    if (prof.repeats(i)) {
        uint64_t v = prof.fce_at(i).rank();
        auto ql = st.fnq_param(Pred::eq(v), iv.l);
        if (!ql || *ql > iv.r) return Interval::none();
        auto qr = st.fpq_param(Pred::eq(v), iv.r);
        return {st.lf(*ql), st.lf(*qr)};
    }
    uint64_t e = prof.suffix_params(i);
    uint64_t width = st.count_param_greater(iv.l, iv.r, e);
    if (width == 0) return Interval::none();
    auto s0 = st.fnq_param(Pred::geq(e + 1), iv.l);
    assert(s0 && *s0 <= iv.r);
    Interval outer = st.get_mi(*s0, e);
    Interval mapped = st.get_mi(st.lf(*s0), e + 1);
    uint64_t x = st.count_param_greater(outer.l, iv.l - 1, e);
    uint64_t l = mapped.l + x;
    return {l, l + width - 1};
}

/*! Interval of ranks whose p-encoded suffixes start with the encoding of w. */
inline Interval pattern_interval(std::span<const Code> w, const OnlinePbwt& st) {
    Interval iv{1, st.size()};
    if (w.empty()) return iv;
    PatternProfile prof(w, st.alphabet());
    for (uint64_t i = prof.length(); i >= 1 && !iv.empty(); --i) {
        iv = bws_step(iv, i, prof, st);
    }
    return iv;
}

/*! Number of windows of the indexed text that p-match w. */
inline uint64_t count(std::span<const Code> w, const OnlinePbwt& st) {
    return pattern_interval(w, st).width();
}

/*!
 * Text position (1-based) of the rank-i suffix: walks LF until reaching a
 * sampled rank or the full suffix, which takes at most sample-period steps.
 */
inline uint64_t suffix_position(uint64_t i, const OnlinePbwt& st, uint64_t* steps_out = nullptr) {
    if (i == 0 || i > st.size()) throw std::out_of_range("suffix_position: rank out of range");
    uint64_t t = 0;
    uint64_t len;
    while (true) {
        if (i == st.full_rank()) {
            len = st.size();
            break;
        }
        if (st.locator().sampled(i)) {
            len = st.locator().sampled_length(i);
            break;
        }
        i = st.lf(i);
        ++t;
    }
    if (steps_out) *steps_out = t;
    return st.size() - (len - t) + 1;
}

/*!
 * Start positions of all matches of w, in rank order (not position order),
 * optionally truncated to the first `limit` ranks.
 */
inline std::vector<uint64_t> locate(std::span<const Code> w, const OnlinePbwt& st,
                                    std::optional<uint64_t> limit = std::nullopt,
                                    uint64_t* max_steps_out = nullptr) {
    Interval iv = pattern_interval(w, st);
    std::vector<uint64_t> out;
    if (iv.empty()) return out;
    uint64_t todo = limit.value_or(iv.width());
    out.reserve(std::min<uint64_t>(todo, iv.width()));
    for (uint64_t r = iv.l; r <= iv.r && out.size() < todo; ++r) {
        uint64_t steps = 0;
        out.push_back(suffix_position(r, st, &steps));
        if (max_steps_out && steps > *max_steps_out) *max_steps_out = steps;
    }
    return out;
}

}  // namespace pbwt
