#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <tuple>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "pbwt/alphabet.hpp"

namespace pbwt {

/*!
 * One symbol of the prev-infinity encoding: a static symbol is kept as is, a
 * parameter occurrence becomes the distance to the previous occurrence of the
 * same symbol, or Inf at its leftmost occurrence.
 *
 * Total order: Static(a) < Static(b) iff a < b, every Static < every Dist,
 * Dist(d) < Dist(d') iff d < d', every Dist < Inf.
 */
struct PEncSym {
    enum class Tag : uint8_t { kStatic, kDist, kInf };

    Tag tag = Tag::kInf;
    uint64_t val = 0;  // code for kStatic, distance (>= 1) for kDist

    static PEncSym from_static(Code c) { return {Tag::kStatic, c}; }
    static PEncSym from_dist(uint64_t d) { return {Tag::kDist, d}; }
    static PEncSym infinity() { return {Tag::kInf, 0}; }

    bool is_static() const { return tag == Tag::kStatic; }
    bool is_dist() const { return tag == Tag::kDist; }
    bool is_inf() const { return tag == Tag::kInf; }

    friend bool operator==(const PEncSym& a, const PEncSym& b) { return a.tag == b.tag && a.val == b.val; }
    friend bool operator!=(const PEncSym& a, const PEncSym& b) { return !(a == b); }
    friend bool operator<(const PEncSym& a, const PEncSym& b) {
        return std::tie(a.tag, a.val) < std::tie(b.tag, b.val);
    }
};

using PEnc = std::vector<PEncSym>;

/*!
 * First-character encoding value: the first symbol itself when static, or the
 * rank of the first symbol among the p-symbols of the rest of the string.
 * Every Static compares below every PRank.
 */
struct FceVal {
    bool prank = false;
    uint64_t val = 0;

    static FceVal from_static(Code c) { return {false, c}; }
    static FceVal from_rank(uint64_t r) { return {true, r}; }

    bool is_static() const { return !prank; }
    bool is_param() const { return prank; }
    Code code() const { return static_cast<Code>(val); }
    uint64_t rank() const { return val; }

    friend bool operator==(const FceVal& a, const FceVal& b) { return a.prank == b.prank && a.val == b.val; }
    friend bool operator!=(const FceVal& a, const FceVal& b) { return !(a == b); }
    friend bool operator<(const FceVal& a, const FceVal& b) {
        return std::tie(a.prank, a.val) < std::tie(b.prank, b.val);
    }
};

struct ExtendedPair {
    uint64_t lcpinf = 0;  // lcp-infinity of the extended pair
    bool flipped = false; // extended order reverses the tail order
};

inline std::string to_string(const PEncSym& s) {
    switch (s.tag) {
        case PEncSym::Tag::kStatic: return "s" + std::to_string(s.val);
        case PEncSym::Tag::kDist: return std::to_string(s.val);
        default: return "inf";
    }
}

inline std::string to_string(const FceVal& f) {
    return f.is_static() ? "s" + std::to_string(f.val) : "r" + std::to_string(f.val);
}

/*! Prev-infinity encoding of w. Prefix-consistent under right extension. */
inline PEnc penc(std::span<const Code> w, const Alphabet& a) {
    PEnc out;
    out.reserve(w.size());
    std::unordered_map<Code, size_t> last;  // last occurrence, 0-based
    for (size_t i = 0; i < w.size(); ++i) {
        Code c = w[i];
        if (!a.in_range(c)) throw std::invalid_argument("penc: unknown symbol code");
        if (a.is_static(c)) {
            out.push_back(PEncSym::from_static(c));
            continue;
        }
        auto it = last.find(c);
        if (it == last.end()) {
            out.push_back(PEncSym::infinity());
        } else {
            out.push_back(PEncSym::from_dist(i - it->second));
        }
        last[c] = i;
    }
    return out;
}

/*! Number of distinct parameter symbols in w. */
inline uint64_t pcount(std::span<const Code> w, const Alphabet& a) {
    std::unordered_set<Code> seen;
    for (Code c : w) {
        if (!a.in_range(c)) throw std::invalid_argument("pcount: unknown symbol code");
        if (a.is_param(c)) seen.insert(c);
    }
    return seen.size();
}

/*!
 * First-character encoding of w. For the empty string this is the sentinel;
 * a static first symbol is returned as is; a parameter first symbol maps to
 * the number of distinct p-symbols in w[1..h+1], where h+1 is the second
 * occurrence of w[1] (or |w| when it does not reoccur).
 */
inline FceVal fce(std::span<const Code> w, const Alphabet& a) {
    if (w.empty()) return FceVal::from_static(a.sentinel());
    Code c0 = w[0];
    if (!a.in_range(c0)) throw std::invalid_argument("fce: unknown symbol code");
    if (a.is_static(c0)) return FceVal::from_static(c0);
    size_t stop = w.size();  // exclusive bound of w[..h+1]
    for (size_t i = 1; i < w.size(); ++i) {
        if (w[i] == c0) {
            stop = i + 1;
            break;
        }
    }
    std::unordered_set<Code> seen;
    for (size_t i = 0; i < stop; ++i) {
        Code c = w[i];
        if (!a.in_range(c)) throw std::invalid_argument("fce: unknown symbol code");
        if (a.is_param(c)) seen.insert(c);
    }
    return FceVal::from_rank(seen.size());
}

/*!
 * Case analysis for a pair extended by one symbol on the left.
 *
 * Preconditions (caller's responsibility): penc(x[2..]) < penc(y[2..]) and
 * e = lcpinf(penc(x[2..]), penc(y[2..])); fx = fce(x), fy = fce(y).
 * Returns lcpinf(penc(x), penc(y)) and whether the extended order is
 * penc(y) < penc(x).
 */
inline ExtendedPair extended_pair(FceVal fx, FceVal fy, int64_t e) {
    if (e < 0) throw std::invalid_argument("extended_pair: negative lcp-infinity");
    const uint64_t eu = static_cast<uint64_t>(e);
    if (fx.is_static() || fy.is_static()) {
        if (fx != fy) return {0, fy < fx};  // (A1)
        return {eu, false};                 // (A2)
    }
    const uint64_t rx = fx.rank(), ry = fy.rank();
    if (rx == ry && rx <= eu) return {eu, false};  // (B1)
    if (rx <= eu && rx < ry) return {rx, false};   // (B2)
    if (ry <= eu && ry < rx) return {ry, true};    // (B3)
    return {eu + 1, false};                        // (B4)
}

/*! p-match test: equality of prev-infinity encodings. */
inline bool pmatch(std::span<const Code> x, std::span<const Code> y, const Alphabet& a) {
    if (x.size() != y.size()) return false;
    return penc(x, a) == penc(y, a);
}

}  // namespace pbwt
