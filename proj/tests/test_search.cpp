#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>
#include <span>
#include <vector>

#include "pbwt/oracle.hpp"
#include "pbwt/search.hpp"
#include "test_util.hpp"

using namespace pbwt;
using testutil::codes;
using testutil::sample_alphabet;

namespace {

OnlinePbwt build_online(const std::vector<Code>& text, const Alphabet& a, uint64_t period = 32) {
    OnlinePbwt st(a, text.size() + 1, period);
    for (size_t i = text.size() - 1; i-- > 0;) st.prepend(text[i]);
    return st;
}

std::vector<uint64_t> sorted(std::vector<uint64_t> v) {
    std::sort(v.begin(), v.end());
    return v;
}

// Renames the parameter symbols of w under a random bijection, so the result
// still p-matches the original.
std::vector<Code> rename_params(std::vector<Code> w, const Alphabet& a, std::mt19937_64& rng) {
    std::vector<Code> params = a.param_codes();
    std::vector<Code> image = params;
    std::shuffle(image.begin(), image.end(), rng);
    for (Code& c : w) {
        if (a.is_param(c)) {
            auto it = std::find(params.begin(), params.end(), c);
            c = image[static_cast<size_t>(it - params.begin())];
        }
    }
    return w;
}

}  // namespace

TEST_CASE("pattern profile") {
    Alphabet a = sample_alphabet();
    {
        PatternProfile p(codes("za"), a);
        CHECK(p.suffix_params(1) == 0);
        CHECK(p.fce_at(1) == FceVal::from_rank(1));
        CHECK_FALSE(p.repeats(1));
        CHECK(p.fce_at(2) == FceVal::from_static('a'));
    }
    {
        PatternProfile p(codes("xx"), a);
        CHECK(p.fce_at(1) == FceVal::from_rank(1));
        CHECK(p.repeats(1));
        CHECK(p.suffix_params(1) == 1);
    }
    {
        PatternProfile p(codes("a"), a);
        CHECK(p.fce_at(1) == FceVal::from_static('a'));
    }
    {
        // fce ranks follow leftmost occurrences of the remaining suffix.
        PatternProfile p(codes("xazyx"), a);
        CHECK(p.fce_at(1) == FceVal::from_rank(3));  // x reoccurs after z and y
        CHECK(p.suffix_params(1) == 3);
    }
    CHECK_THROWS_AS(PatternProfile(codes(""), a), std::invalid_argument);
    CHECK_THROWS_AS(PatternProfile(codes("a$"), a), std::invalid_argument);
}

TEST_CASE("profile distinct counts are consistent across positions") {
    std::mt19937_64 rng(99);
    Alphabet a = testutil::small_alphabet(2, 4);
    for (int round = 0; round < 200; ++round) {
        auto w = testutil::random_text(rng, 1 + rng() % 24, 2, 4, 0.7);
        PatternProfile p(w, a);
        std::span<const Code> ws(w);
        for (uint64_t i = 1; i <= p.length(); ++i) {
            CHECK(p.suffix_params(i) == pcount(ws.subspan(i), a));
            CHECK(p.fce_at(i) == fce(ws.subspan(i - 1), a));
            bool rep = a.is_param(w[i - 1]) &&
                       std::find(w.begin() + static_cast<ptrdiff_t>(i), w.end(), w[i - 1]) != w.end();
            CHECK(p.repeats(i) == rep);
        }
    }
}

TEST_CASE("backward search on the worked example") {
    Alphabet a = sample_alphabet();
    OnlinePbwt st = build_online(codes(testutil::kSampleText), a);

    CHECK(pattern_interval(codes("za"), st) == Interval{5, 7});
    CHECK(count(codes("za"), st) == 3);
    CHECK(sorted(locate(codes("za"), st)) == std::vector<uint64_t>{2, 6, 10});

    CHECK(count(codes("x"), st) == naive_count(codes(testutil::kSampleText), codes("x"), a));
    CHECK(count(codes("xyazyxazxza"), st) == 1);
    CHECK(count(codes("xyazyxazxzax"), st) == 0);  // longer than the text
    CHECK(count(codes("aa"), st) == 0);

    // Empty in, empty out.
    PatternProfile prof(codes("a"), a);
    CHECK(bws_step(Interval::none(), 1, prof, st).empty());
}

TEST_CASE("suffix positions on the worked example") {
    Alphabet a = sample_alphabet();
    OnlinePbwt st = build_online(codes(testutil::kSampleText), a, 4);
    CHECK(suffix_position(10, st) == 1);
    CHECK(suffix_position(1, st) == 12);
    auto rinv = testutil::sample_rinv();
    for (uint64_t i = 1; i <= 12; ++i) {
        uint64_t steps = 0;
        CHECK(suffix_position(i, st, &steps) == rinv[i - 1]);
        CHECK(steps <= 4);
    }
    CHECK_THROWS_AS(suffix_position(13, st), std::out_of_range);
}

TEST_CASE("sampling bookkeeping") {
    Alphabet a = sample_alphabet();
    {
        OnlinePbwt st = build_online(codes(testutil::kSampleText), a, 4);
        CHECK(st.locator().count() == 3);  // lengths 4, 8, 12
    }
    {
        OnlinePbwt st = build_online(codes(testutil::kSampleText), a, 1);
        CHECK(st.locator().count() == 12);
        for (uint64_t i = 1; i <= 12; ++i) {
            uint64_t steps = 0;
            (void)suffix_position(i, st, &steps);
            CHECK(steps == 0);
        }
    }
    {
        // Bitmap rank and stored lengths stay aligned.
        std::mt19937_64 rng(7);
        Alphabet b = testutil::small_alphabet(2, 3);
        auto text = testutil::with_sentinel(testutil::random_text(rng, 70, 2, 3, 0.5));
        OnlinePbwt st = build_online(text, b, 8);
        const Locator& loc = st.locator();
        uint64_t ones = 0;
        for (uint64_t i = 1; i <= st.size(); ++i) {
            if (loc.sampled(i)) {
                ++ones;
                CHECK(loc.sampled_length(i) % 8 == 0);
            }
        }
        CHECK(ones == loc.count());
    }
}

TEST_CASE("count and locate match the naive scan at every stage") {
    std::mt19937_64 rng(606);
    Alphabet a = testutil::small_alphabet(2, 3);
    for (int round = 0; round < 12; ++round) {
        auto text = testutil::with_sentinel(testutil::random_text(rng, 24 + rng() % 72, 2, 3, 0.6));
        uint64_t period = (round % 2 == 0) ? 4 : 32;
        OnlinePbwt st(a, text.size(), period);
        for (size_t i = text.size() - 1; i-- > 0;) {
            st.prepend(text[i]);
            if (rng() % 4 != 0) continue;  // query at a sample of stages
            std::vector<Code> cur(text.begin() + static_cast<ptrdiff_t>(i), text.end());
            for (int q = 0; q < 6; ++q) {
                std::vector<Code> w;
                if (q % 2 == 0 || cur.size() < 3) {
                    w = testutil::random_text(rng, 1 + rng() % 8, 2, 3, 0.6);
                } else {
                    size_t len = 1 + rng() % std::min<size_t>(cur.size() - 1, 8);
                    size_t start = rng() % (cur.size() - len);
                    w.assign(cur.begin() + static_cast<ptrdiff_t>(start),
                             cur.begin() + static_cast<ptrdiff_t>(start + len));
                    w = rename_params(w, a, rng);
                }
                auto want = naive_locate(cur, w, a);
                CHECK(count(w, st) == want.size());
                uint64_t max_steps = 0;
                CHECK(sorted(locate(w, st, std::nullopt, &max_steps)) == want);
                CHECK(max_steps <= period);
            }
        }
    }
}

TEST_CASE("locate honors the limit and rank order") {
    Alphabet a = sample_alphabet();
    OnlinePbwt st = build_online(codes(testutil::kSampleText), a, 4);
    auto all = locate(codes("za"), st);
    CHECK(all.size() == 3);
    auto two = locate(codes("za"), st, 2);
    CHECK(two.size() == 2);
    CHECK(std::equal(two.begin(), two.end(), all.begin()));
    CHECK(locate(codes("q"), st).empty());
}
