#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <random>

#include "fastcrc/analysis.hpp"
#include "fastcrc/codes.hpp"
#include "oracle.hpp"

using namespace fastcrc;

namespace {

MessageFrame tuple_frame(std::vector<u64> tuples, int s) {
    MessageFrame f;
    f.s = s;
    f.tuples = std::move(tuples);
    f.bit_length = f.tuples.size() * static_cast<u64>(s);
    return f;
}

// message taken from the low (len - check_bits) bits of `msg`
Poly extended_codeword(const ExtendedCodeSpec& spec, u64 msg, int msg_bits) {
    MessageFrame f;
    f.s = spec.check_bits;
    u64 n = (static_cast<u64>(msg_bits) + f.s - 1) / f.s;
    if (n == 0) n = 1;
    for (u64 i = 0; i < n; ++i) {
        int shift = static_cast<int>((n - 1 - i) * static_cast<u64>(f.s));
        f.tuples.push_back((msg >> shift) & ((u64{1} << f.s) - 1));
    }
    f.bit_length = static_cast<u64>(msg_bits);
    u64 p = extended_check(spec, f);
    return (Poly::from_u64(msg) << static_cast<u64>(spec.check_bits)) ^ Poly::from_u64(p);
}

}  // namespace

TEST_CASE("block parity") {
    CHECK(block_parity_check(tuple_frame({0x01, 0x02, 0x03}, 8)) == 0x00);
    CHECK(block_parity_check(tuple_frame({0x5a}, 8)) == 0x5a);

    std::mt19937_64 rng(71);
    for (int i = 0; i < 200; ++i) {
        int s = 3 + static_cast<int>(rng() % 14);
        MessageFrame f = tuple_frame({}, s);
        u64 n = 1 + rng() % 12;
        for (u64 j = 0; j < n; ++j) f.tuples.push_back(rng() & ((u64{1} << s) - 1));
        Poly binom = Poly::x_pow(static_cast<u64>(s)) ^ Poly::one();
        CrcSpec sp = make_spec(binom, s);
        CHECK(block_parity_check(f) == crc_check(sp, f));
    }

    // a double error spanning exactly the period is undetected: X^s + 1 is a codeword
    Poly binom8 = Poly::x_pow(8) ^ Poly::one();
    CrcSpec sp8 = make_spec(binom8, 8);
    CHECK(verify_codeword(sp8, binom8));
}

TEST_CASE("trinomial specs") {
    CrcSpec t16 = trinomial_spec(16, 8);
    CHECK(t16.generator == trinomial(16));
    CHECK(t16.technique == Technique::low_terms);
    CHECK(period(t16.generator).value == 255);
    CHECK(is_primitive(trinomial(15)));
    CHECK(period(trinomial(15)).value == 32767);

    std::mt19937_64 rng(73);
    for (int i = 0; i < 100; ++i) {
        int h = 3 + static_cast<int>(rng() % 40);
        int s = 1 + static_cast<int>(rng() % 32);
        CrcSpec fast = trinomial_spec(h, s);
        CrcSpec basic = make_spec(trinomial(h), s);
        MessageFrame f = tuple_frame({}, s);
        for (int j = 0; j < 10; ++j)
            f.tuples.push_back(rng() & (s == 64 ? ~u64{0} : (u64{1} << s) - 1));
        CHECK(crc_check(fast, f) == crc_check(basic, f));
    }
}

TEST_CASE("extended code at full length is the doubled-parity perfect code") {
    // base X^3+X+1: the 16 codewords of the length-8 code weigh 0, 4, or 8
    ExtendedCodeSpec h3 = make_extended_spec(trinomial(3));
    std::map<u64, int> census;
    for (u64 msg = 0; msg < 16; ++msg) {
        Poly v = extended_codeword(h3, msg, 4);
        ++census[v.weight()];
        CHECK(v.weight() % 2 == 0);
        CHECK(extended_verify(h3, v));
    }
    CHECK(census == std::map<u64, int>{{0, 1}, {4, 14}, {8, 1}});

    CHECK(extended_check(h3, tuple_frame({0}, 4)) == 0);
}

TEST_CASE("weight-3 extended specs") {
    ExtendedCodeSpec w11 = weight3_extended_spec(11, 2);
    CHECK(period(w11.base_generator).value == 2047);
    CHECK(w11.check_bits == 12);

    CHECK(is_primitive(weight3_extended_spec(31, 3).base_generator));

    // (16, 11, 4): every nonzero codeword of the full-length h=4 code weighs >= 4
    ExtendedCodeSpec w4 = weight3_extended_spec(4, 1);
    u64 min_weight = 99;
    for (u64 msg = 1; msg < (u64{1} << 11); ++msg) {
        Poly v = extended_codeword(w4, msg, 11);
        min_weight = std::min(min_weight, v.weight());
        CHECK(extended_verify(w4, v));
    }
    CHECK(min_weight == 4);

    CHECK_THROWS_AS(weight3_extended_spec(4, 4), std::invalid_argument);
    CHECK_THROWS_AS(make_extended_spec(fast_poly(8)), std::invalid_argument);  // even weight
}

TEST_CASE("extended codes catch all bursts up to h+1 bits") {
    for (int h : {3, 5, 7}) {
        ExtendedCodeSpec spec = make_extended_spec(trinomial(h));
        int len = 32;
        for (int width = 1; width <= h + 1; ++width) {
            u64 inner_count = width >= 2 ? u64{1} << (width - 2) : 1;
            for (u64 inner = 0; inner < inner_count; ++inner) {
                Poly burst = Poly::one();
                if (width >= 2) {
                    burst.set_bit(static_cast<u64>(width) - 1);
                    for (int b = 0; b < width - 2; ++b)
                        if ((inner >> b) & 1) burst.set_bit(static_cast<u64>(b) + 1);
                }
                for (int off = 0; off + width <= len; ++off)
                    CHECK(!extended_verify(spec, burst << static_cast<u64>(off)));
            }
        }
    }
}

TEST_CASE("extended minimum distance is exactly four within range") {
    // small bases: enumerate every codeword of the full-length extended code
    for (int h : {3, 4, 5}) {
        ExtendedCodeSpec spec = make_extended_spec(trinomial(h));
        u64 t = period(spec.base_generator).value;
        int msg_bits = static_cast<int>(t + 1) - spec.check_bits;
        u64 min_weight = ~u64{0};
        for (u64 msg = 1; msg < (u64{1} << msg_bits); ++msg) {
            Poly v = extended_codeword(spec, msg, msg_bits);
            min_weight = std::min(min_weight, v.weight());
        }
        CHECK(min_weight == 4);
    }

    // taller bases through the detection-limit machinery: the appended
    // parity bit kills weight 3, a weight-2 base codeword needs more than
    // period bits, and a weight-3 base codeword exists, so the extended
    // distance is exactly 4 up to period(base)+1
    for (int h : {3, 5, 7}) {
        Poly base = trinomial(h);
        u64 t = period(base).value;
        u64 len = t + 1;  // extended code length
        CHECK(lm_search(base, 2, len).v == t);
        CHECK(weight_count(base, len - 1, 3).v >= 1);
    }
}

TEST_CASE("frame width must be h+1") {
    ExtendedCodeSpec spec = make_extended_spec(trinomial(7));
    CHECK_THROWS_AS(extended_check(spec, tuple_frame({1}, 7)), std::invalid_argument);
    std::vector<std::uint8_t> data{0xde, 0xad};
    CHECK(extended_check_bytes(spec, data) ==
          extended_check(spec, frame_message(data, spec.check_bits)));
}
