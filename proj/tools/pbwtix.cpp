// pbwtix: build and query online pBWT indexes for parameterized pattern
// matching. Subcommands: build, count, locate, verify, bench.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "pbwt/alphabet.hpp"
#include "pbwt/online_pbwt.hpp"
#include "pbwt/oracle.hpp"
#include "pbwt/search.hpp"
#include "pbwt/snapshot.hpp"

namespace {

using pbwt::Alphabet;
using pbwt::Code;
using pbwt::FceVal;
using pbwt::OnlinePbwt;

// Inference rule when no config file is given: ASCII lowercase letters are
// parameter symbols, every other byte is static, sentinel is byte 0.
Alphabet infer_byte_alphabet() {
    std::vector<Code> params;
    for (Code c = 'a'; c <= 'z'; ++c) params.push_back(c);
    return Alphabet(0, {}, params, 255);
}

Alphabet load_alphabet(const std::string& source) {
    if (source.empty() || source == "infer") return infer_byte_alphabet();
    std::ifstream in(source);
    if (!in) throw std::runtime_error("cannot open alphabet config: " + source);
    return pbwt::parse_alphabet(in);
}

std::vector<Code> read_input_bytes(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open input: " + path);
    std::vector<Code> out;
    char c;
    while (in.get(c)) out.push_back(static_cast<unsigned char>(c));
    return out;
}

std::vector<Code> pattern_bytes(const std::string& arg) {
    std::vector<Code> out;
    for (unsigned char c : arg) out.push_back(c);
    return out;
}

void validate_text(const std::vector<Code>& text, const Alphabet& a) {
    for (size_t i = 0; i < text.size(); ++i) {
        Code c = text[i];
        std::string reason;
        if (!a.in_range(c)) {
            reason = "code out of alphabet range";
        } else if (c == a.sentinel()) {
            reason = "sentinel byte inside the input";
        } else if (a.is_static(c) && c < a.sentinel()) {
            reason = "static code below the sentinel";
        }
        if (!reason.empty()) {
            throw std::runtime_error("input byte " + std::to_string(i + 1) + " (code " + std::to_string(c) +
                                     "): " + reason);
        }
    }
}

OnlinePbwt build_index(const std::vector<Code>& text, const Alphabet& a, uint64_t capacity, uint64_t period) {
    OnlinePbwt st(a, capacity, period);
    for (size_t i = text.size(); i-- > 0;) st.prepend(text[i]);
    return st;
}

std::string show_fce(FceVal v, const Alphabet& a) {
    if (v.is_param()) return std::to_string(v.rank());
    Code c = v.code();
    if (c == a.sentinel()) return "$";
    if (c >= 0x21 && c <= 0x7E) return std::string(1, static_cast<char>(c));
    return "s" + std::to_string(c);
}

std::string escape_text(const std::vector<Code>& text) {
    std::string out;
    for (Code c : text) {
        if (c >= 0x20 && c <= 0x7E && c != '\\') {
            out += static_cast<char>(c);
        } else {
            char buf[8];
            std::snprintf(buf, sizeof buf, "\\x%02x", c);
            out += buf;
        }
    }
    return out;
}

void dump_state(const OnlinePbwt& st, const Alphabet& a, std::ostream& os) {
    os << "i\tLCP\tL\tF\tpos\n";
    for (uint64_t i = 1; i <= st.size(); ++i) {
        os << i << '\t' << st.lcpinf_at(i) << '\t' << show_fce(st.l_at(i), a) << '\t' << show_fce(st.f_at(i), a)
           << '\t' << pbwt::suffix_position(i, st) << '\n';
    }
}

int cmd_build(const std::string& input, const std::string& alpha_arg, const std::string& out,
              uint64_t period, uint64_t capacity, bool dump) {
    Alphabet a = load_alphabet(alpha_arg);
    std::vector<Code> text = read_input_bytes(input);
    validate_text(text, a);
    if (capacity == 0) capacity = text.size() + 1;
    if (capacity < text.size() + 1) throw std::runtime_error("capacity smaller than input length + 1");

    auto t0 = std::chrono::steady_clock::now();
    OnlinePbwt st = build_index(text, a, capacity, period);
    auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();

    pbwt::save_snapshot_file(st, out);
    std::cout << "n=" << st.size() << " sigma_s=" << st.sigma_s() << " sigma_p=" << st.sigma_p()
              << " iter_count=" << st.iter_count() << " build_ms=" << ms << "\n";
    if (dump) dump_state(st, a, std::cout);
    return 0;
}

int cmd_query(const std::string& snap, const std::string& pattern, bool do_locate, uint64_t limit, bool json) {
    OnlinePbwt st = pbwt::load_snapshot_file(snap);
    std::vector<Code> w = pattern_bytes(pattern);
    if (w.empty()) throw std::runtime_error("empty pattern");

    if (!do_locate) {
        uint64_t c = pbwt::count(w, st);
        if (json) {
            nlohmann::json rec = {{"pattern", pattern}, {"count", c}};
            std::cout << rec.dump() << "\n";
        } else {
            std::cout << c << "\n";
        }
        return 0;
    }
    auto pos = pbwt::locate(w, st, limit ? std::optional<uint64_t>(limit) : std::nullopt);
    std::sort(pos.begin(), pos.end());
    if (json) {
        nlohmann::json rec = {{"pattern", pattern}, {"count", pos.size()}, {"positions", pos}};
        std::cout << rec.dump() << "\n";
    } else {
        for (size_t i = 0; i < pos.size(); ++i) std::cout << pos[i] << (i + 1 < pos.size() ? ' ' : '\n');
        if (pos.empty()) std::cout << "\n";
    }
    return 0;
}

// Compares the online state against the brute-force index of the current
// suffix; returns the name of the first mismatching array, or empty.
std::string compare_state(const OnlinePbwt& st, const pbwt::OracleIndex& ix, uint64_t& where) {
    if (st.full_rank() != ix.rank_of[1]) {
        where = 0;
        return "k";
    }
    for (uint64_t i = 1; i <= st.size(); ++i) {
        if (st.f_at(i) != ix.f[i - 1]) {
            where = i;
            return "F";
        }
        if (st.l_at(i) != ix.l[i - 1]) {
            where = i;
            return "L";
        }
        if (st.lcpinf_at(i) != ix.lcpinf[i - 1]) {
            where = i;
            return "LCP";
        }
    }
    return "";
}

int cmd_verify(const std::string& input, const std::string& alpha_arg, uint64_t every) {
    Alphabet a = load_alphabet(alpha_arg);
    std::vector<Code> text = read_input_bytes(input);
    validate_text(text, a);
    std::vector<Code> full = text;
    full.push_back(a.sentinel());

    OnlinePbwt st(a, full.size(), 32);
    uint64_t steps = 0;
    for (size_t i = text.size(); i-- > 0;) {
        st.prepend(text[i]);
        ++steps;
        if (steps % every != 0 && i != 0) continue;
        std::vector<Code> cur(full.begin() + static_cast<ptrdiff_t>(i), full.end());
        pbwt::OracleIndex ix = pbwt::oracle_build(cur, a);
        uint64_t where = 0;
        std::string bad = compare_state(st, ix, where);
        if (!bad.empty()) {
            std::cerr << "mismatch after " << steps << " prepends (text length " << cur.size() << ")\n"
                      << "  reproduction input: \"" << escape_text(std::vector<Code>(cur.begin(), cur.end() - 1))
                      << "\"\n  first difference: array " << bad << " at index " << where << "\n";
            return 2;
        }
    }
    std::cout << "verified " << steps << " prepends (n=" << st.size() << "), all arrays match the oracle\n";
    return 0;
}

std::vector<uint64_t> parse_u64_list(const std::string& s) {
    std::vector<uint64_t> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (!tok.empty()) out.push_back(std::stoull(tok));
    }
    return out;
}

int cmd_bench(const std::string& sizes_arg, const std::string& sigma_p_arg, uint64_t sigma_s, uint64_t queries,
              uint64_t seed) {
    auto sizes = parse_u64_list(sizes_arg);
    auto sigma_ps = parse_u64_list(sigma_p_arg);
    if (sizes.empty()) throw std::runtime_error("bench: --sizes is empty");
    if (sigma_ps.empty()) sigma_ps = {8};
    sigma_s = std::min<uint64_t>(sigma_s, 26);

    Alphabet a = infer_byte_alphabet();
    std::mt19937_64 rng(seed);
    std::cout << "n,sigma_s,sigma_p,build_ms,iter_count,iters_per_n,count_us,locate_us,heap_bytes\n";
    for (uint64_t sp : sigma_ps) {
        sp = std::min<uint64_t>(std::max<uint64_t>(sp, 1), 26);
        for (uint64_t n : sizes) {
            std::vector<Code> text(n);
            for (auto& c : text) {
                bool param = sigma_s == 0 || (rng() % 4 != 0);
                c = param ? static_cast<Code>('a' + rng() % sp) : static_cast<Code>('A' + rng() % std::max<uint64_t>(sigma_s, 1));
            }
            auto t0 = std::chrono::steady_clock::now();
            OnlinePbwt st = build_index(text, a, n + 1, 32);
            double build_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();

            double count_us = 0, locate_us = 0;
            uint64_t q = std::max<uint64_t>(queries, 1);
            for (uint64_t i = 0; i < q; ++i) {
                size_t len = std::min<size_t>(8, text.size());
                size_t start = text.empty() ? 0 : rng() % (text.size() - len + 1);
                std::vector<Code> w(text.begin() + static_cast<ptrdiff_t>(start),
                                    text.begin() + static_cast<ptrdiff_t>(start + len));
                auto c0 = std::chrono::steady_clock::now();
                volatile uint64_t cnt = pbwt::count(w, st);
                count_us += std::chrono::duration<double, std::micro>(std::chrono::steady_clock::now() - c0).count();
                auto l0 = std::chrono::steady_clock::now();
                auto pos = pbwt::locate(w, st, 16);
                locate_us += std::chrono::duration<double, std::micro>(std::chrono::steady_clock::now() - l0).count();
                (void)cnt;
                (void)pos;
            }
            std::cout << st.size() << ',' << st.sigma_s() << ',' << st.sigma_p() << ',' << build_ms << ','
                      << st.iter_count() << ',' << static_cast<double>(st.iter_count()) / static_cast<double>(st.size())
                      << ',' << count_us / static_cast<double>(q) << ',' << locate_us / static_cast<double>(q) << ','
                      << st.heap_bytes() << "\n";
        }
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"online pBWT index for parameterized pattern matching"};
    app.require_subcommand(1);

    std::string input, alpha_arg = "infer", out, snap, pattern;
    uint64_t period = pbwt::kDefaultSamplePeriod, capacity = 0, limit = 0, every = 1;
    bool dump = false, json = false;

    auto* build = app.add_subcommand("build", "build an index from a file, right to left");
    build->add_option("-i,--input", input, "input file (raw bytes)")->required();
    build->add_option("-a,--alphabet", alpha_arg, "alphabet config file, or 'infer'");
    build->add_option("-o,--output", out, "snapshot output path")->required();
    build->add_option("-s,--sample", period, "sampling period for locate");
    build->add_option("--capacity", capacity, "maximum text length (default: input length + 1)");
    build->add_flag("--dump", dump, "print the index arrays after building");

    auto* count = app.add_subcommand("count", "count matches of a pattern");
    count->add_option("-x,--index", snap, "snapshot path")->required();
    count->add_option("-p,--pattern", pattern, "pattern (raw bytes)")->required();
    count->add_flag("--json", json, "JSON-lines output");

    auto* locate = app.add_subcommand("locate", "report match positions of a pattern");
    locate->add_option("-x,--index", snap, "snapshot path")->required();
    locate->add_option("-p,--pattern", pattern, "pattern (raw bytes)")->required();
    locate->add_option("--limit", limit, "report at most this many matches");
    locate->add_flag("--json", json, "JSON-lines output");

    auto* verify = app.add_subcommand("verify", "rebuild online and compare against the brute-force oracle");
    verify->add_option("-i,--input", input, "input file (raw bytes)")->required();
    verify->add_option("-a,--alphabet", alpha_arg, "alphabet config file, or 'infer'");
    verify->add_option("--every", every, "compare every N-th step (final state always checked)")
        ->check(CLI::PositiveNumber);

    std::string sizes_arg, sigma_p_arg = "8";
    uint64_t sigma_s = 4, queries = 50, seed = 1;
    auto* bench = app.add_subcommand("bench", "synthesize random p-strings and report timings as CSV");
    bench->add_option("--sizes", sizes_arg, "comma-separated text lengths")->required();
    bench->add_option("--sigma-p", sigma_p_arg, "comma-separated parameter alphabet sizes (max 26)");
    bench->add_option("--sigma-s", sigma_s, "static alphabet size (max 26)");
    bench->add_option("--queries", queries, "queries per configuration");
    bench->add_option("--seed", seed, "RNG seed");

    CLI11_PARSE(app, argc, argv);

    try {
        if (build->parsed()) return cmd_build(input, alpha_arg, out, period, capacity, dump);
        if (count->parsed()) return cmd_query(snap, pattern, false, 0, json);
        if (locate->parsed()) return cmd_query(snap, pattern, true, limit, json);
        if (verify->parsed()) return cmd_verify(input, alpha_arg, every);
        if (bench->parsed()) return cmd_bench(sizes_arg, sigma_p_arg, sigma_s, queries, seed);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
