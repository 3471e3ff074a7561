#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "fastcrc/engine.hpp"
#include "fastcrc/tables.hpp"
#include "oracle.hpp"

using namespace fastcrc;

namespace {

Poly hex(const char* s) { return Poly::parse_hex(s).value(); }

// B(X) = R[a X^h mod gen], the value every table set must reproduce.
u64 b_reference(u64 a, const Poly& gen) {
    return shift_mod(Poly::from_u64(a), static_cast<u64>(gen.degree()), gen).low64();
}

}  // namespace

TEST_CASE("multi-table shapes and entry zero") {
    LookupTableSet one = build_multi_tables(fast_poly(16), 8, 1);
    CHECK(one.tables.size() == 1);
    CHECK(one.total_entries() == 256);

    LookupTableSet four = build_multi_tables(fast_poly(16), 16, 4);
    CHECK(four.tables.size() == 4);
    CHECK(four.total_entries() == 64);  // 4 * 2^4 = 2^6

    for (const auto& t : four.tables) CHECK(t[0] == 0);
    CHECK_THROWS_AS(build_multi_tables(fast_poly(16), 10, 3), std::invalid_argument);
}

TEST_CASE("multi-table reduction equals the division reduction") {
    std::mt19937_64 rng(41);
    LookupTableSet crc16 = build_multi_tables(hex("0x18005"), 8, 1);
    for (int i = 0; i < 500; ++i) {
        u64 a = rng() & 0xff;
        CHECK(b_multi(a, crc16) == b_reference(a, hex("0x18005")));
    }
    LookupTableSet f32 = build_multi_tables(fast_poly(32), 32, 8);
    for (int i = 0; i < 500; ++i) {
        u64 a = rng() & 0xffffffff;
        CHECK(b_multi(a, f32) == b_reference(a, fast_poly(32)));
    }
}

TEST_CASE("fast table entries") {
    LookupTableSet t16 = build_fast_table(16, 16);
    CHECK(t16.tables[0] == std::vector<u64>{0x0, 0xc007, 0x8009, 0x400e});
    CHECK(t16.total_entries() == 4);

    for (int h : {8, 12, 24, 32, 64}) {
        LookupTableSet t = build_fast_table(h, h);
        CHECK(t.total_entries() == 4);
        CHECK(t.tables[0][0] == 0);
    }
    LookupTableSet wide = build_fast_table(16, 20);
    CHECK(wide.total_entries() == 64);  // 2^(20-16+2)

    CHECK_THROWS_AS(build_fast_table(16, 8), std::invalid_argument);
    CHECK_THROWS_AS(build_fast_table(8, 40), std::length_error);
}

TEST_CASE("improved fast table") {
    for (int h : {8, 16, 24, 32, 64}) {
        LookupTableSet t = build_fast_table_improved(h);
        CHECK(t.tables[0] == std::vector<u64>{0x0, 0x7, 0x9, 0xe});
        CHECK(b_fast_table_improved(0, t) == 0);
    }
    // improved lookup equals the plain four-entry lookup on every 16-bit input
    LookupTableSet plain = build_fast_table(16, 16);
    LookupTableSet improved = build_fast_table_improved(16);
    for (u64 a = 0; a < (u64{1} << 16); ++a)
        CHECK(b_fast_table(a, plain) == b_fast_table_improved(a, improved));
}

TEST_CASE("mixed table entries and equivalence") {
    Poly gen = poly_from_exponents({32, 18, 17, 15, 14, 0});
    LookupTableSet t = build_mixed_table(gen, 16, 2);
    CHECK(t.tables[0] == std::vector<u64>{0x0, 0x8006c001, 0xb4003, 0x800d8002});

    std::mt19937_64 rng(43);
    for (int i = 0; i < 2000; ++i) {
        u64 a = rng() & 0xffff;
        CHECK(b_mixed(a, t) == b_reference(a, gen));
    }
    CHECK_THROWS_AS(build_mixed_table(gen, 16, 1), std::invalid_argument);  // too narrow
    CHECK_THROWS_AS(build_mixed_table(hex("0x1a"), 4, 2), std::invalid_argument);
}

TEST_CASE("every table reduction matches division exhaustively for s <= 16") {
    std::mt19937_64 rng(47);
    for (int round = 0; round < 12; ++round) {
        int h = 4 + static_cast<int>(rng() % 29);
        int s = 1 + static_cast<int>(rng() % 16);
        Poly gen = oracle::random_generator(rng, h);
        for (int m : {1, 2, 4, 8}) {
            if (s % m != 0 || m > s) continue;
            LookupTableSet ts = build_multi_tables(gen, s, m);
            for (u64 a = 0; a < (u64{1} << s); ++a)
                CHECK(b_multi(a, ts) == b_reference(a, gen));
        }
    }
    for (int h : {4, 8, 12, 14}) {
        for (int s = h; s <= 16; ++s) {
            LookupTableSet ts = build_fast_table(h, s);
            for (u64 a = 0; a < (u64{1} << s); ++a)
                CHECK(b_fast_table(a, ts) == b_reference(a, fast_poly(h)));
        }
    }
}

TEST_CASE("wide tuples sampled at scale") {
    std::mt19937_64 rng(67);
    Poly g = oracle::random_generator(rng, 40);
    LookupTableSet multi = build_multi_tables(g, 32, 4);
    LookupTableSet fast = build_fast_table(24, 32);
    Poly f24 = fast_poly(24);
    u64 bad = 0;
    for (int i = 0; i < 100000; ++i) {
        u64 a = rng() & 0xffffffff;
        if (b_multi(a, multi) != b_reference(a, g)) ++bad;
        if (b_fast_table(a, fast) != b_reference(a, f24)) ++bad;
    }
    CHECK(bad == 0);
}

TEST_CASE("entry accounting matches the closed forms") {
    std::mt19937_64 rng(53);
    for (int round = 0; round < 40; ++round) {
        int s = 1 + static_cast<int>(rng() % 32);
        int h = 3 + static_cast<int>(rng() % 30);
        Poly gen = oracle::random_generator(rng, h);
        for (int m = 1; m <= s; ++m) {
            if (s % m != 0 || s / m > fast_table_width_cap) continue;
            LookupTableSet ts = build_multi_tables(gen, s, m);
            CHECK(ts.total_entries() == static_cast<u64>(m) << (s / m));
        }
        if (s >= h && s - h + 2 <= fast_table_width_cap) {
            LookupTableSet ts = build_fast_table(h, s);
            CHECK(ts.total_entries() == u64{1} << (s - h + 2));
        }
    }
}

TEST_CASE("table entries are reduced values") {
    std::mt19937_64 rng(59);
    for (int round = 0; round < 20; ++round) {
        int h = 3 + static_cast<int>(rng() % 62);
        int s = 1 + static_cast<int>(rng() % 16);
        Poly gen = oracle::random_generator(rng, h);
        LookupTableSet ts = build_multi_tables(gen, s, 1);
        for (u64 e : ts.tables[0])
            CHECK(Poly::from_u64(e).degree() < h);
    }
}

TEST_CASE("table techniques drive the engine") {
    std::mt19937_64 rng(61);
    for (int i = 0; i < 200; ++i) {
        int h = 3 + static_cast<int>(rng() % 30);
        int s = 1 + static_cast<int>(rng() % 48);
        Poly gen = oracle::random_generator(rng, h);
        CrcSpec plain = make_spec(gen, s);
        int m = s <= 16 ? 1 : (s % 4 == 0 ? 4 : s);
        CrcSpec multi = make_spec(gen, s, Technique::multi_table, m);
        MessageFrame f;
        f.s = s;
        for (int t = 0; t < 12; ++t)
            f.tuples.push_back(rng() & (s == 64 ? ~u64{0} : (u64{1} << s) - 1));
        CHECK(crc_check(multi, f) == crc_check(plain, f));
        if (gen == fast_poly(h) && s >= h && s - h + 2 <= fast_table_width_cap) {
            CrcSpec fast = make_spec(gen, s, Technique::fast_table);
            CHECK(crc_check(fast, f) == crc_check(plain, f));
        }
    }
}
