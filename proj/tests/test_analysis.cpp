#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "fastcrc/analysis.hpp"
#include "oracle.hpp"

using namespace fastcrc;

namespace {

Poly gen(std::initializer_list<u64> exps) { return poly_from_exponents(exps); }

// verdict by checking every weight-m pattern of length l, shifted or not
bool detects_all_brute(const Poly& f, int m, u64 l) {
    std::vector<u64> exps(static_cast<size_t>(m));
    for (int i = 0; i < m; ++i) exps[static_cast<size_t>(i)] = static_cast<u64>(i);
    while (true) {
        Poly e;
        for (u64 x : exps) e.set_bit(x);
        if (mod_reduce(e, f).is_zero()) return false;
        int i = m - 1;
        while (i >= 0 && exps[static_cast<size_t>(i)] == l - static_cast<u64>(m - 1 - i) - 1) --i;
        if (i < 0) return true;
        ++exps[static_cast<size_t>(i)];
        for (int j = i + 1; j < m; ++j)
            exps[static_cast<size_t>(j)] = exps[static_cast<size_t>(j - 1)] + 1;
    }
}

u64 brute_weight_count(const Poly& f, u64 l, int m) {
    std::vector<u64> exps(static_cast<size_t>(m));
    for (int i = 0; i < m; ++i) exps[static_cast<size_t>(i)] = static_cast<u64>(i);
    u64 count = 0;
    while (true) {
        Poly e;
        for (u64 x : exps) e.set_bit(x);
        if (mod_reduce(e, f).is_zero()) ++count;
        int i = m - 1;
        while (i >= 0 && exps[static_cast<size_t>(i)] == l - static_cast<u64>(m - 1 - i) - 1) --i;
        if (i < 0) return count;
        ++exps[static_cast<size_t>(i)];
        for (int j = i + 1; j < m; ++j)
            exps[static_cast<size_t>(j)] = exps[static_cast<size_t>(j - 1)] + 1;
    }
}

}  // namespace

TEST_CASE("detection-limit golden values") {
    CHECK(lm_search(gen({16, 4, 3, 2, 1, 0}), 4, 200).v == 17);
    CHECK(lm_search(gen({16, 8, 4, 3, 1, 0}), 4, 200).v == 115);
    CHECK(lm_search(gen({8, 4, 3, 2, 0}), 4, 100).v == 14);
    CHECK(lm_search(gen({8, 4, 3, 2, 0}), 3, 100).v == 21);
    CHECK(lm_search(gen({24, 8, 5, 4, 2, 0}), 4, 1000).v == 691);
    CHECK(lm_search(gen({32, 7, 6, 2, 0}), 4, 8000).v == 5281);

    // odd error counts are always caught by even-weight generators
    CHECK(lm_search(gen({16, 4, 3, 2, 1, 0}), 3, 100).kind == Limit::Kind::unbounded);
    CHECK(lm_search(gen({16, 4, 3, 2, 1, 0}), 5, 100).kind == Limit::Kind::unbounded);

    CHECK(lm_search(gen({16, 4, 3, 2, 1, 0}), 4, 10).kind == Limit::Kind::exceeds);
    CHECK_THROWS_AS(lm_search(gen({8, 4, 1}), 3, 100), std::invalid_argument);
    CHECK_THROWS_AS(lm_search(gen({16, 4, 3, 2, 1, 0}), 6, 100000), std::invalid_argument);
    // odd counts over an even-weight generator resolve by parity, no search
    CHECK(lm_search(gen({16, 4, 3, 2, 1, 0}), 7, 100).kind == Limit::Kind::unbounded);
    CHECK_THROWS_AS(lm_search(gen({16, 4, 3, 2, 1, 0}), 8, 100), std::invalid_argument);
}

TEST_CASE("the weight-2 limit is the period") {
    std::mt19937_64 rng(211);
    for (int i = 0; i < 60; ++i) {
        Poly f = oracle::random_generator(rng, 3 + static_cast<int>(rng() % 14));
        PeriodResult p = period(f, 1 << 18);
        if (!p.found()) continue;
        CHECK(lm_search(f, 2, 1 << 18).v == p.value);
    }
}

TEST_CASE("fast kernels match the reference enumeration") {
    std::mt19937_64 rng(223);
    for (int i = 0; i < 40; ++i) {
        Poly f = oracle::random_generator(rng, 4 + static_cast<int>(rng() % 12));
        for (int m = 2; m <= 6; ++m) {
            Limit fast = lm_search(f, m, 64);
            Limit slow = ref::lm_search(f, m, 64);
            CHECK(fast == slow);
        }
    }
}

TEST_CASE("restricted and full enumerations give the same verdicts") {
    std::mt19937_64 rng(227);
    int rounds = 0;
    while (rounds < 100) {
        Poly f = oracle::random_generator(rng, 5 + static_cast<int>(rng() % 11));
        for (int m : {3, 4}) {
            Limit lim = lm_search(f, m, 48);
            for (u64 l : {u64{12}, u64{24}, u64{48}}) {
                bool restricted_says = !lim.has_value() || l <= lim.v;
                CHECK(restricted_says == detects_all_brute(f, m, l));
            }
        }
        ++rounds;
    }
}

TEST_CASE("weight-count golden values") {
    Poly f8 = gen({8, 2, 1, 0});
    CHECK(weight_count(f8, 10, 4).v == 3);
    CHECK(weight_count(f8, 20, 4).v == 39);
    CHECK(weight_count(f8, 20, 6).v == 287);
    CHECK(weight_count(f8, 20, 8).v == 1029);
    CHECK(weight_count(f8, 20, 5).v == 0);  // parity

    CHECK(weight_count(gen({16, 2, 1, 0}), 100, 4).v == 679);
    CHECK(weight_count(gen({16, 12, 5, 0}), 100, 4).v == 287);
    CHECK(weight_count(gen({16, 15, 2, 0}), 100, 4).v == 1289);
    CHECK(weight_count(gen({32, 2, 1, 0}), 100, 4).v == 282);
    CHECK(weight_count(gen({32, 31, 8, 0}), 100, 4).v == 104);
    CHECK(weight_count(gen({64, 2, 1, 0}), 100, 4).v == 71);
    CHECK(weight_count(gen({64, 63, 2, 0}), 100, 4).v == 36);
    CHECK(weight_count(gen({16, 2, 1, 0}), 1000, 4).v == 1343350);   // 1.343e+06
    CHECK(weight_count(gen({16, 12, 5, 0}), 500, 4).v == 75874);     // 7.587e+04
    CHECK(weight_count(gen({32, 2, 1, 0}), 1000, 4).v == 18091);     // 1.809e+04
    CHECK(weight_count(gen({64, 2, 1, 0}), 1000, 4).v == 11936);     // 1.194e+04

    CHECK(weight_count(f8, 5000, 8, /*budget=*/1000).kind == CountResult::Kind::exceeds);
    CHECK_THROWS_AS(weight_count(gen({8, 4, 1}), 20, 4), std::invalid_argument);
}

TEST_CASE("weight counts agree with enumeration of every pattern") {
    std::mt19937_64 rng(229);
    for (int i = 0; i < 12; ++i) {
        Poly f = oracle::random_generator(rng, 4 + static_cast<int>(rng() % 10));
        u64 l = 20 + rng() % 45;
        for (int m = 2; m <= 4; ++m) {
            u64 main_count = weight_count(f, l, m).v;
            CHECK(main_count == ref::weight_count(f, l, m));
            CHECK(main_count == brute_weight_count(f, l, m));
        }
    }
}

TEST_CASE("a multiple of degree D forces a positive count at length D+1") {
    std::mt19937_64 rng(233);
    for (int i = 0; i < 30; ++i) {
        Poly f = oracle::random_generator(rng, 4 + static_cast<int>(rng() % 10));
        for (int m : {3, 4}) {
            Limit lim = lm_search(f, m, 256);
            if (!lim.has_value()) continue;
            CHECK(weight_count(f, lim.v + 1, m).v >= 1);
            CHECK(weight_count(f, lim.v, m).v == 0);
        }
    }
}

TEST_CASE("minimum distance per length") {
    DetectionProfile p16 = build_profile(fast_poly(16), 4);
    CHECK(dmin_at_length(p16, 32767).dmin == 4);
    CHECK(dmin_at_length(p16, 32768).dmin == 2);
    CHECK(dmin_at_length(p16, 17).dmin == 4);

    DetectionProfile ex5 = build_profile(gen({32, 18, 17, 15, 14, 0}), 6);
    CHECK(dmin_at_length(ex5, 32770).dmin == 6);
    CHECK(dmin_at_length(ex5, 32771).dmin == 4);
    CHECK(dmin_at_length(ex5, 65539).dmin == 2);

    DetectionProfile t16 = build_profile(trinomial(16), 3);
    CHECK(dmin_at_length(t16, 200).dmin == 3);
    CHECK(dmin_at_length(t16, 255).dmin == 3);
    CHECK(dmin_at_length(t16, 256).dmin == 2);

    DetectionProfile shallow;
    shallow.generator = fast_poly(16);
    shallow.l[2] = Limit::of(32767);
    DminResult r = dmin_at_length(shallow, 100);
    CHECK(r.dmin == 3);
    CHECK(r.needs_more);
}

TEST_CASE("undetected-error probability") {
    WeightDistribution wd;
    wd.generator = gen({32, 2, 1, 0});
    wd.length = 3000;
    wd.counts[4] = 188464;
    wd.complete = false;

    CHECK(undetected_error_probability(wd, 0.0).value == 0.0);
    double est = first_order_estimate(188464, 4, 1e-6);
    CHECK(est == doctest::Approx(1.885e-19).epsilon(1e-3));
    Probability full = undetected_error_probability(wd, 1e-6);
    CHECK(full.lower_bound);
    CHECK(full.value == doctest::Approx(est).epsilon(1e-2));

    wd.counts[6] = 1000;
    Probability more = undetected_error_probability(wd, 1e-6);
    CHECK(more.value >= full.value);
    CHECK_THROWS_AS(undetected_error_probability(wd, 1.5), std::invalid_argument);
}

TEST_CASE("generator search reproduces the degree-16 weight-6 records") {
    SearchOptions opts;
    opts.h = 16;
    opts.weight = 6;
    opts.ms = {2, 4};
    opts.l4_cap = 131;
    opts.records_only = true;
    SearchResult r = search_generators(opts);
    REQUIRE(r.rows.size() == 7);
    CHECK(r.candidates == 1365);

    const std::pair<const char*, u64> want[] = {
        {"0x1001f", 17}, {"0x1002f", 67},  {"0x10067", 74}, {"0x100d9", 77},
        {"0x1011b", 115}, {"0x10589", 128}, {"0x14825", 130},
    };
    const u64 periods[] = {31620, 534, 12264, 28658, 28658, 254, 258};
    for (size_t i = 0; i < 7; ++i) {
        CHECK(r.rows[i].f.to_hex() == want[i].first);
        CHECK(r.rows[i].l.at(4).v == want[i].second);
        CHECK(r.rows[i].l.at(2).v == periods[i]);
    }
}

TEST_CASE("generator search finds the long weight-4 degree-12 generator") {
    SearchOptions opts;
    opts.h = 12;
    opts.weight = 4;
    opts.ms = {2};
    opts.sort_m = 2;
    SearchResult r = search_generators(opts);
    bool found = false;
    for (const auto& row : r.rows)
        if (row.f == gen({12, 3, 1, 0})) {
            found = true;
            CHECK(row.l.at(2).v == 2046);
        }
    CHECK(found);
}

TEST_CASE("weight-6 limits for weight-8 generators") {
    CHECK(lm_search(gen({16, 6, 5, 4, 3, 2, 1, 0}), 6, 100).v == 18);
    CHECK(lm_search(gen({16, 8, 6, 5, 3, 2, 1, 0}), 6, 100).v == 28);
    CHECK(lm_search(gen({24, 8, 6, 4, 3, 2, 1, 0}), 6, 100).v == 26);
    CHECK(lm_search(gen({32, 8, 7, 6, 4, 2, 1, 0}), 6, 400).v == 197);
    CHECK(lm_search(gen({16, 6, 5, 4, 3, 2, 1, 0}), 4, 100).v == 17);
}

TEST_CASE("consecutive-power generators cap the weight-4 limit at h+1") {
    for (int h : {12, 16, 20, 32, 40}) {
        Poly f = gen({static_cast<u64>(h), 4, 3, 2, 1, 0});
        CHECK(lm_search(f, 4, static_cast<u64>(h) + 10).v == static_cast<u64>(h) + 1);
    }
}

TEST_CASE("search is deterministic across thread counts") {
    SearchOptions opts;
    opts.h = 12;
    opts.weight = 6;
    opts.ms = {2, 4};
    opts.l4_cap = 2048;
    opts.threads = 1;
    SearchResult serial = search_generators(opts);
    opts.threads = 4;
    SearchResult parallel = search_generators(opts);
    REQUIRE(serial.rows.size() == parallel.rows.size());
    for (size_t i = 0; i < serial.rows.size(); ++i) {
        CHECK(serial.rows[i].f == parallel.rows[i].f);
        CHECK(serial.rows[i].l == parallel.rows[i].l);
    }

    opts.limit = 5;
    SearchResult truncated = search_generators(opts);
    CHECK(truncated.rows.size() == 5);
    CHECK(truncated.truncated);
}

TEST_CASE("parallel kernels match serial kernels") {
    Poly f = gen({24, 8, 5, 4, 2, 0});
    CHECK(lm_search(f, 4, 1000, 4) == lm_search(f, 4, 1000, 1));
    CHECK(weight_count(fast_poly(16), 400, 4, default_count_budget, 4).v ==
          weight_count(fast_poly(16), 400, 4, default_count_budget, 1).v);
}
