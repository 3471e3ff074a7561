#include "fastcrc/engine.hpp"

#include <bit>
#include <stdexcept>

namespace fastcrc {

namespace {

u64 mask_bits(int n) { return n >= 64 ? ~u64{0} : (u64{1} << n) - 1; }

}  // namespace

CrcSpec make_spec(const Poly& generator, int s, Technique technique, int table_m) {
    CrcSpec spec;
    long long h = generator.degree();
    if (h < 3 || h > 64) throw std::invalid_argument("make_spec: generator degree must be 3..64");
    if (s < 1 || s > 64) throw std::invalid_argument("make_spec: s must be 1..64");
    spec.generator = generator;
    spec.h = static_cast<int>(h);
    spec.s = s;
    spec.technique = technique;
    spec.table_m = table_m;
    spec.gen_low = generator.low64();
    if (h < 64) spec.gen_low ^= u64{1} << h;
    spec.low_terms = spec.gen_low;
    spec.ik = spec.low_terms ? 63 - std::countl_zero(spec.low_terms) : 0;
    spec.kw = std::popcount(spec.low_terms ^ 1);

    switch (technique) {
        case Technique::basic:
            break;
        case Technique::low_terms:
            if (!generator.bit(0))
                throw std::invalid_argument("make_spec: low_terms needs generator(0) = 1");
            break;
        case Technique::multi_table:
            spec.tables = build_multi_tables(generator, s, table_m);
            break;
        case Technique::fast_table:
            if (generator != fast_poly(spec.h))
                throw std::invalid_argument("make_spec: fast_table needs the X^h+X^2+X+1 generator");
            if (s < spec.h)
                throw std::invalid_argument("make_spec: fast_table needs s >= h");
            spec.tables = build_fast_table(spec.h, s);
            break;
    }
    return spec;
}

Algo select_algorithm(const CrcSpec& spec) {
    bool table = spec.technique == Technique::multi_table || spec.technique == Technique::fast_table;
    if (table) return spec.s < spec.h ? Algo::a3 : Algo::a2;
    if (spec.technique == Technique::low_terms) return spec.s < spec.h ? Algo::a3 : Algo::a4;
    return spec.s < spec.h ? Algo::a1 : Algo::a4;
}

MessageFrame frame_message(std::span<const std::uint8_t> data, int s,
                           std::optional<u64> bit_length) {
    if (s < 1 || s > 64) throw std::invalid_argument("frame_message: s must be 1..64");
    u64 l = bit_length.value_or(static_cast<u64>(data.size()) * 8);
    if (l > static_cast<u64>(data.size()) * 8)
        throw std::invalid_argument("frame_message: bit_length exceeds data");
    MessageFrame frame;
    frame.bit_length = l;
    frame.s = s;
    u64 n = l == 0 ? 1 : (l + static_cast<u64>(s) - 1) / s;
    u64 pad = n * s - l;
    frame.tuples.assign(n, 0);
    for (u64 j = 0; j < l; ++j) {
        u64 pj = pad + j;  // position in the zero-extended stream
        bool bit = (data[j >> 3] >> (7 - (j & 7))) & 1;
        if (bit) frame.tuples[pj / s] |= u64{1} << (s - 1 - (pj % s));
    }
    return frame;
}

namespace {

// B(X) shapes per algorithm: widen the input, then divide.
u64 b_div_a1(u64 a, const CrcSpec& sp) {  // R_M[a X^s], deg(a) < h
    return bits::reduce_u128(static_cast<u128>(a) << sp.s, sp.h, sp.gen_low);
}
u64 b_div_a23(u64 a, const CrcSpec& sp) {  // R_M[a X^h], deg(a) < s
    return bits::reduce_u128(static_cast<u128>(a) << sp.h, sp.h, sp.gen_low);
}
u64 b_div_a4(u64 a, const CrcSpec& sp) {  // R_N[a X^s], N = M X^(s-h)
    int shift = sp.s - sp.h;
    return bits::reduce_u128(static_cast<u128>(a) << sp.s, sp.s, sp.gen_low << shift);
}
u64 b_low_a3(u64 a, const CrcSpec& sp) {  // R_M[a H], deg(a) < s
    return bits::reduce_u128(bits::clmul(a, sp.low_terms), sp.h, sp.gen_low);
}
u64 b_low_a4(u64 a, const CrcSpec& sp) {  // R_N[a X^(s-h) H]
    int shift = sp.s - sp.h;
    return bits::reduce_u128(bits::clmul(a, sp.low_terms) << shift, sp.s, sp.gen_low << shift);
}

u64 b_for(const CrcSpec& sp, Algo algo, u64 a) {
    switch (sp.technique) {
        case Technique::basic:
            switch (algo) {
                case Algo::a1: return b_div_a1(a, sp);
                case Algo::a2:
                case Algo::a3: return b_div_a23(a, sp);
                case Algo::a4: return b_div_a4(a, sp);
            }
            break;
        case Technique::low_terms:
            if (algo == Algo::a3) return b_low_a3(a, sp);
            if (algo == Algo::a4) return b_low_a4(a, sp);
            throw std::invalid_argument("low_terms technique runs on Algorithms 3 and 4");
        case Technique::multi_table:
        case Technique::fast_table:
            if (algo == Algo::a2 || algo == Algo::a3) return b_table(a, sp.tables);
            throw std::invalid_argument("table techniques run on Algorithms 2 and 3");
    }
    throw std::logic_error("unreachable");
}

void check_applicable(const CrcSpec& sp, Algo algo) {
    bool below = algo == Algo::a1 || algo == Algo::a3;
    if (below && sp.s >= sp.h)
        throw std::invalid_argument("Algorithms 1 and 3 need s < h");
    if (!below && sp.s < sp.h)
        throw std::invalid_argument("Algorithms 2 and 4 need s >= h");
}

}  // namespace

u64 crc_step_algo(const CrcSpec& sp, Algo algo, u64 state, u64 q) {
    check_applicable(sp, algo);
    switch (algo) {
        case Algo::a1: {
            u64 a = state ^ (q << (sp.h - sp.s));
            return b_for(sp, algo, a);
        }
        case Algo::a2: {
            u64 a = (state << (sp.s - sp.h)) ^ q;
            return b_for(sp, algo, a);
        }
        case Algo::a3: {
            u64 a = (state >> (sp.h - sp.s)) ^ q;
            u64 right = state & mask_bits(sp.h - sp.s);
            return b_for(sp, algo, a) ^ (right << sp.s);
        }
        case Algo::a4: {
            return b_for(sp, algo, state ^ q);
        }
    }
    throw std::logic_error("unreachable");
}

u64 crc_step(const CrcSpec& spec, u64 state, u64 q) {
    return crc_step_algo(spec, select_algorithm(spec), state, q);
}

u64 extract_check(const CrcSpec& spec, Algo algo, u64 state) {
    if (algo == Algo::a4) return state >> (spec.s - spec.h);
    return state;
}

u64 crc_check_algo(const CrcSpec& spec, Algo algo, const MessageFrame& frame) {
    if (frame.s != spec.s) throw std::invalid_argument("crc_check: frame tuple width mismatch");
    check_applicable(spec, algo);
    u64 state = 0;
    for (u64 q : frame.tuples) state = crc_step_algo(spec, algo, state, q);
    return extract_check(spec, algo, state);
}

u64 crc_check(const CrcSpec& spec, const MessageFrame& frame) {
    return crc_check_algo(spec, select_algorithm(spec), frame);
}

u64 b_basic(u64 a, const CrcSpec& spec) {
    return spec.s < spec.h ? b_div_a23(a, spec) : b_div_a4(a, spec);
}

u64 b_low_terms(u64 a, const CrcSpec& spec) {
    if (!spec.generator.bit(0))
        throw std::invalid_argument("b_low_terms: generator(0) must be 1");
    return spec.s < spec.h ? b_low_a3(a, spec) : b_low_a4(a, spec);
}

namespace {

// U(X) X^shift as a word vector, tuple 0 most significant.
Poly frame_to_poly(const MessageFrame& frame, u64 shift) {
    u64 n = frame.n();
    u64 total = n * static_cast<u64>(frame.s) + shift;
    std::vector<u64> words((total + 63) / 64 + 1, 0);
    for (u64 i = 0; i < n; ++i) {
        u64 q = frame.tuples[i];
        if (!q) continue;
        u64 off = (n - 1 - i) * static_cast<u64>(frame.s) + shift;
        size_t w = static_cast<size_t>(off / 64);
        int b = static_cast<int>(off % 64);
        words[w] ^= q << b;
        if (b) {
            u64 carry = q >> (64 - b);
            if (carry) words[w + 1] ^= carry;
        }
    }
    return Poly::from_words(std::move(words));
}

}  // namespace

Poly encode(const CrcSpec& spec, const MessageFrame& frame) {
    u64 p = crc_check(spec, frame);
    return frame_to_poly(frame, static_cast<u64>(spec.h)) ^ Poly::from_u64(p);
}

bool verify_codeword(const CrcSpec& spec, const Poly& v) {
    return mod_reduce(v, spec.generator).is_zero();
}

Poly crc_check_ref(const Poly& generator, int s, const MessageFrame& frame) {
    if (generator.degree() < 1) throw std::invalid_argument("crc_check_ref: bad generator");
    if (s != frame.s) throw std::invalid_argument("crc_check_ref: frame tuple width mismatch");
    return mod_reduce(frame_to_poly(frame, static_cast<u64>(generator.degree())), generator);
}

}  // namespace fastcrc
