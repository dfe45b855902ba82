#pragma once

#include <algorithm>
#include <cstdint>
#include <istream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace pbwt {

using Code = uint32_t;

enum class SymKind : uint8_t { kStatic, kParam };

/*!
 * Partition of the symbol code space [0..sigma_max] into static symbols and
 * parameter symbols. The sentinel is the smallest static symbol; it is
 * reserved as the end marker of indexed texts and must not occur elsewhere.
 *
 * Codes in range that were never listed default to static. Every listed
 * static code must be >= the sentinel so that the end marker sorts first.
 */
class Alphabet {
  public:
    Alphabet(Code sentinel, const std::vector<Code>& static_codes, const std::vector<Code>& param_codes)
        : Alphabet(sentinel, static_codes, param_codes, derive_sigma(sentinel, static_codes, param_codes)) {}

    Alphabet(Code sentinel, const std::vector<Code>& static_codes, const std::vector<Code>& param_codes,
             Code sigma_max)
        : sentinel_(sentinel), sigma_max_(sigma_max) {
        if (sigma_max_ < derive_sigma(sentinel, static_codes, param_codes))
            throw std::invalid_argument("alphabet: sigma_max below a listed code");
        param_.assign(static_cast<size_t>(sigma_max_) + 1, false);
        for (Code c : param_codes) {
            if (c == sentinel_) throw std::invalid_argument("alphabet: sentinel cannot be a parameter symbol");
            param_[c] = true;
        }
        for (Code c : static_codes) {
            if (param_[c]) throw std::invalid_argument("alphabet: code listed as both static and parameter");
            if (c < sentinel_) throw std::invalid_argument("alphabet: static code below the sentinel");
        }
    }

    Code sentinel() const { return sentinel_; }
    Code sigma_max() const { return sigma_max_; }

    bool in_range(Code c) const { return c <= sigma_max_; }

    bool is_param(Code c) const {
        check(c);
        return param_[c];
    }
    bool is_static(Code c) const { return !is_param(c); }

    SymKind kind(Code c) const { return is_param(c) ? SymKind::kParam : SymKind::kStatic; }

    std::vector<Code> param_codes() const {
        std::vector<Code> out;
        for (Code c = 0; c <= sigma_max_; ++c)
            if (param_[c]) out.push_back(c);
        return out;
    }

  private:
    static Code derive_sigma(Code sentinel, const std::vector<Code>& static_codes,
                             const std::vector<Code>& param_codes) {
        Code hi = sentinel;
        for (Code c : static_codes) hi = std::max(hi, c);
        for (Code c : param_codes) hi = std::max(hi, c);
        return hi;
    }

    void check(Code c) const {
        if (!in_range(c)) throw std::invalid_argument("alphabet: symbol code out of range");
    }

    Code sentinel_;
    Code sigma_max_;
    std::vector<bool> param_;
};

namespace detail {

// Token is either a decimal integer or a single UTF-8 encoded character.
inline Code parse_symbol_token(const std::string& tok) {
    bool digits = !tok.empty() && std::all_of(tok.begin(), tok.end(), [](unsigned char ch) { return ch >= '0' && ch <= '9'; });
    if (digits) {
        unsigned long v = std::stoul(tok);
        if (v > 0xFFFFFFFFul) throw std::invalid_argument("alphabet config: code too large: " + tok);
        return static_cast<Code>(v);
    }
    // Decode one UTF-8 character.
    const auto* b = reinterpret_cast<const unsigned char*>(tok.data());
    size_t len = tok.size();
    uint32_t cp = 0;
    size_t need = 0;
    if (len >= 1 && b[0] < 0x80) {
        cp = b[0];
        need = 1;
    } else if (len >= 2 && (b[0] & 0xE0) == 0xC0) {
        cp = b[0] & 0x1F;
        need = 2;
    } else if (len >= 3 && (b[0] & 0xF0) == 0xE0) {
        cp = b[0] & 0x0F;
        need = 3;
    } else if (len >= 4 && (b[0] & 0xF8) == 0xF0) {
        cp = b[0] & 0x07;
        need = 4;
    } else {
        throw std::invalid_argument("alphabet config: bad symbol token: " + tok);
    }
    if (len != need) throw std::invalid_argument("alphabet config: expected one character per token: " + tok);
    for (size_t i = 1; i < need; ++i) {
        if ((b[i] & 0xC0) != 0x80) throw std::invalid_argument("alphabet config: invalid UTF-8: " + tok);
        cp = (cp << 6) | (b[i] & 0x3F);
    }
    return cp;
}

}  // namespace detail

/*!
 * Parses a line-based alphabet config:
 *
 *   sentinel <tok>
 *   static <tok> <tok> ...
 *   param <tok> <tok> ...
 *
 * where <tok> is a decimal code or a single UTF-8 character (mapped to its
 * code point). Blank lines and lines starting with '#' are ignored.
 */
inline Alphabet parse_alphabet(std::istream& in) {
    bool have_sentinel = false;
    Code sentinel = 0;
    std::vector<Code> statics, params;
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string head;
        if (!(ls >> head) || head[0] == '#') continue;
        if (head == "sentinel") {
            std::string tok;
            if (!(ls >> tok)) throw std::invalid_argument("alphabet config: sentinel needs a token");
            sentinel = detail::parse_symbol_token(tok);
            have_sentinel = true;
        } else if (head == "static" || head == "param") {
            std::string tok;
            auto& dst = (head == "static") ? statics : params;
            while (ls >> tok) dst.push_back(detail::parse_symbol_token(tok));
        } else {
            throw std::invalid_argument("alphabet config: unknown directive: " + head);
        }
    }
    if (!have_sentinel) throw std::invalid_argument("alphabet config: missing sentinel line");
    return Alphabet(sentinel, statics, params);
}

}  // namespace pbwt
