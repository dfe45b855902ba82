#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <optional>
#include <random>
#include <vector>

#include "pbwt/dyn_wm.hpp"

using namespace pbwt;

namespace {

bool matches(Pred p, uint64_t v) {
    switch (p.kind) {
        case Pred::Kind::kEq: return v == p.value;
        case Pred::Kind::kLess: return v < p.value;
        default: return v >= p.value;
    }
}

struct NaiveWm {
    std::vector<uint64_t> v;

    std::optional<uint64_t> fpq(Pred p, uint64_t i) const {
        for (uint64_t j = i; j >= 1; --j)
            if (matches(p, v[j - 1])) return j;
        return std::nullopt;
    }
    std::optional<uint64_t> fnq(Pred p, uint64_t i) const {
        for (uint64_t j = i; j <= v.size(); ++j)
            if (matches(p, v[j - 1])) return j;
        return std::nullopt;
    }
    uint64_t rmq(uint64_t i, uint64_t j) const {
        uint64_t best = i;
        for (uint64_t p = i + 1; p <= j; ++p)
            if (v[p - 1] < v[best - 1]) best = p;
        return best;
    }
    uint64_t count_greater(uint64_t l, uint64_t r, uint64_t e) const {
        uint64_t cnt = 0;
        for (uint64_t p = l; p <= r && p <= v.size(); ++p) cnt += (v[p - 1] > e);
        return cnt;
    }
};

DynWaveletMatrix reference_sequence() {
    DynWaveletMatrix s(15);
    for (uint64_t c : {2, 5, 10, 6, 8, 3, 14, 5}) s.push_back(c);
    return s;
}

}  // namespace

TEST_CASE("find previous/next on the reference sequence") {
    DynWaveletMatrix s = reference_sequence();
    CHECK(s.fnq(Pred::eq(5), 4) == 8);
    CHECK(s.fnq(Pred::eq(6), 4) == 4);
    CHECK(s.fpq(Pred::eq(5), 4) == 2);
    CHECK(s.fnq(Pred::less(5), 4) == 6);
    CHECK(s.fpq(Pred::less(5), 4) == 1);
    CHECK(s.fnq(Pred::geq(9), 4) == 7);
    CHECK(s.fpq(Pred::geq(9), 4) == 3);
    CHECK(s.fpq(Pred::eq(4), 8) == std::nullopt);
    CHECK(s.fnq(Pred::geq(15), 1) == std::nullopt);
}

TEST_CASE("range minimum on the reference sequence") {
    DynWaveletMatrix s = reference_sequence();
    CHECK(s.rmq(1, 8) == 1);
    CHECK(s.rmq(4, 6) == 6);
    for (uint64_t i = 1; i <= 8; ++i) CHECK(s.rmq(i, i) == i);
    CHECK(s.rmq(2, 8) == 6);  // ties to the leftmost minimum
    CHECK_THROWS_AS(s.rmq(3, 2), std::invalid_argument);
    CHECK_THROWS_AS(s.rmq(1, 9), std::out_of_range);
}

TEST_CASE("range counting on the reference sequence") {
    DynWaveletMatrix s = reference_sequence();
    CHECK(s.range_count_greater(1, 8, 5) == 4);
    CHECK(s.range_count_greater(3, 2, 100) == 0);
    CHECK(s.range_count_less(1, 8, 5) == 2);
    CHECK(s.range_count_greater(1, 8, 0) == 8);
}

TEST_CASE("wavelet matrix against a naive oracle") {
    std::mt19937_64 rng(999);
    const uint64_t kCap = 1024;
    DynWaveletMatrix s(kCap);
    NaiveWm ref;
    const int kOps = 100000;
    auto random_pred = [&](uint64_t c) {
        switch (rng() % 3) {
            case 0: return Pred::eq(c);
            case 1: return Pred::less(c);
            default: return Pred::geq(c);
        }
    };
    for (int op = 0; op < kOps; ++op) {
        int action = static_cast<int>(rng() % 12);
        if (ref.v.empty() || action < 5) {
            uint64_t i = 1 + rng() % (ref.v.size() + 1);
            uint64_t c = rng() % (kCap + 1);
            s.insert(i, c);
            ref.v.insert(ref.v.begin() + static_cast<ptrdiff_t>(i - 1), c);
        } else if (action < 7) {
            uint64_t i = 1 + rng() % ref.v.size();
            CHECK(s.erase(i) == ref.v[i - 1]);
            ref.v.erase(ref.v.begin() + static_cast<ptrdiff_t>(i - 1));
        } else if (action < 9) {
            uint64_t i = 1 + rng() % ref.v.size();
            Pred p = random_pred(rng() % (kCap + 2));
            CHECK(s.fpq(p, i) == ref.fpq(p, i));
            CHECK(s.fnq(p, i) == ref.fnq(p, i));
        } else if (action < 11) {
            uint64_t i = 1 + rng() % ref.v.size();
            uint64_t j = i + rng() % (ref.v.size() - i + 1);
            uint64_t got = s.rmq(i, j);
            CHECK(got == ref.rmq(i, j));
            CHECK(s.range_min(i, j) == ref.v[ref.rmq(i, j) - 1]);
        } else {
            uint64_t l = 1 + rng() % ref.v.size();
            uint64_t r = 1 + rng() % ref.v.size();
            uint64_t e = rng() % (kCap + 2);
            uint64_t want = (l <= r) ? ref.count_greater(l, r, e) : 0;
            if (l > r) {
                CHECK(s.range_count_greater(l, r, e) == 0);
            } else {
                CHECK(s.range_count_greater(l, r, e) == want);
            }
        }
    }
    CHECK(s.size() == ref.v.size());
}

TEST_CASE("fpq result is maximal and fnq result is minimal") {
    std::mt19937_64 rng(4242);
    DynWaveletMatrix s(255);
    NaiveWm ref;
    for (int i = 0; i < 3000; ++i) {
        uint64_t pos = 1 + rng() % (s.size() + 1);
        uint64_t c = rng() % 256;
        s.insert(pos, c);
        ref.v.insert(ref.v.begin() + static_cast<ptrdiff_t>(pos - 1), c);
    }
    for (int round = 0; round < 2000; ++round) {
        uint64_t i = 1 + rng() % s.size();
        Pred p = (round % 3 == 0) ? Pred::eq(rng() % 256)
                                  : (round % 3 == 1 ? Pred::less(rng() % 256) : Pred::geq(rng() % 256));
        auto fp = s.fpq(p, i);
        if (fp) {
            CHECK(matches(p, s.at(*fp)));
            for (uint64_t j = *fp + 1; j <= i; ++j) CHECK_FALSE(matches(p, s.at(j)));
        }
        auto fn = s.fnq(p, i);
        if (fn) {
            CHECK(matches(p, s.at(*fn)));
            for (uint64_t j = i; j < *fn; ++j) CHECK_FALSE(matches(p, s.at(j)));
        }
    }
}
