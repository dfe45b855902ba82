#pragma once

#include <array>
#include <cstdint>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "pbwt/online_pbwt.hpp"

namespace pbwt {

// Snapshot layout (all integers little-endian 64-bit):
//
//   magic "PBWTIX01" (8 bytes), version
//   sigma_max, sentinel, capacity, n, k, sample_period, iter_count
//   arrays, each length-prefixed: alphabet parameter codes, F, L (both in
//   the fce integer coding), LCP, Z, static-symbol set, sample bitmap
//   (one 0/1 word per rank), sampled lengths V
//
// Loading revalidates the structural invariants and rejects anything that
// does not describe a consistent state.

inline constexpr std::array<char, 8> kSnapshotMagic = {'P', 'B', 'W', 'T', 'I', 'X', '0', '1'};
inline constexpr uint64_t kSnapshotVersion = 1;

namespace detail {

inline void put_u64(std::ostream& os, uint64_t v) {
    char b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xFF);
    os.write(b, 8);
}

inline uint64_t get_u64(std::istream& is) {
    char b[8];
    is.read(b, 8);
    if (!is) throw std::runtime_error("snapshot: truncated input");
    uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<uint64_t>(static_cast<unsigned char>(b[i])) << (8 * i);
    return v;
}

inline void put_array(std::ostream& os, const std::vector<uint64_t>& a) {
    put_u64(os, a.size());
    for (uint64_t v : a) put_u64(os, v);
}

inline std::vector<uint64_t> get_array(std::istream& is, uint64_t max_len) {
    uint64_t len = get_u64(is);
    if (len > max_len) throw std::runtime_error("snapshot: implausible array length");
    std::vector<uint64_t> a(len);
    for (uint64_t i = 0; i < len; ++i) a[i] = get_u64(is);
    return a;
}

}  // namespace detail

inline void save_snapshot(const OnlinePbwt& st, std::ostream& os) {
    using detail::put_array;
    using detail::put_u64;
    os.write(kSnapshotMagic.data(), kSnapshotMagic.size());
    put_u64(os, kSnapshotVersion);
    put_u64(os, st.alphabet().sigma_max());
    put_u64(os, st.alphabet().sentinel());
    put_u64(os, st.capacity());
    put_u64(os, st.size());
    put_u64(os, st.full_rank());
    put_u64(os, st.locator().period());
    put_u64(os, st.iter_count());

    const uint64_t n = st.size();
    std::vector<uint64_t> tmp;
    for (Code c : st.alphabet().param_codes()) tmp.push_back(c);
    put_array(os, tmp);

    tmp.clear();
    for (uint64_t i = 1; i <= n; ++i) tmp.push_back(st.fce_code(st.f_at(i)));
    put_array(os, tmp);
    tmp.clear();
    for (uint64_t i = 1; i <= n; ++i) tmp.push_back(st.fce_code(st.l_at(i)));
    put_array(os, tmp);
    tmp.clear();
    for (uint64_t i = 1; i <= n; ++i) tmp.push_back(st.lcpinf_at(i));
    put_array(os, tmp);
    tmp.clear();
    for (uint64_t i = 1; i <= st.z_seq().size(); ++i) tmp.push_back(st.z_seq().at(i));
    put_array(os, tmp);
    tmp.assign(st.s_symbols().begin(), st.s_symbols().end());
    put_array(os, tmp);
    tmp.clear();
    for (uint64_t i = 1; i <= n; ++i) tmp.push_back(st.locator().sampled(i) ? 1 : 0);
    put_array(os, tmp);
    tmp.clear();
    for (uint64_t i = 1; i <= st.locator().lengths().size(); ++i) tmp.push_back(st.locator().lengths().at(i));
    put_array(os, tmp);
    if (!os) throw std::runtime_error("snapshot: write failed");
}

inline OnlinePbwt load_snapshot(std::istream& is) {
    using detail::get_array;
    using detail::get_u64;
    std::array<char, 8> magic{};
    is.read(magic.data(), magic.size());
    if (!is || magic != kSnapshotMagic) throw std::runtime_error("snapshot: bad magic");
    if (get_u64(is) != kSnapshotVersion) throw std::runtime_error("snapshot: unsupported version");
    uint64_t sigma_max = get_u64(is);
    uint64_t sentinel = get_u64(is);
    uint64_t capacity = get_u64(is);
    uint64_t n = get_u64(is);
    uint64_t k = get_u64(is);
    uint64_t period = get_u64(is);
    uint64_t iter_count = get_u64(is);
    if (sigma_max > 0xFFFFFFFFull || sentinel > sigma_max) throw std::runtime_error("snapshot: bad alphabet header");
    if (n == 0 || n > capacity) throw std::runtime_error("snapshot: bad length header");

    auto params_raw = get_array(is, sigma_max + 1);
    std::vector<Code> params;
    for (uint64_t c : params_raw) {
        if (c > sigma_max) throw std::runtime_error("snapshot: parameter code out of range");
        params.push_back(static_cast<Code>(c));
    }
    Alphabet alpha(static_cast<Code>(sentinel), {}, params, static_cast<Code>(sigma_max));

    auto f = get_array(is, n);
    auto l = get_array(is, n);
    auto lcp = get_array(is, n);
    auto z = get_array(is, n);
    auto sset = get_array(is, n);
    auto bits = get_array(is, n);
    auto lens = get_array(is, n);
    return OnlinePbwt::restore(std::move(alpha), capacity, period, k, iter_count, f, l, lcp, z, sset, bits, lens);
}

inline void save_snapshot_file(const OnlinePbwt& st, const std::string& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("snapshot: cannot open for writing: " + path);
    save_snapshot(st, os);
}

inline OnlinePbwt load_snapshot_file(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("snapshot: cannot open: " + path);
    return load_snapshot(is);
}

}  // namespace pbwt
