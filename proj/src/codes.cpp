#include "fastcrc/codes.hpp"

#include <bit>
#include <stdexcept>

namespace fastcrc {

u64 block_parity_check(const MessageFrame& frame) {
    u64 p = 0;
    for (u64 q : frame.tuples) p ^= q;
    return p;
}

CrcSpec trinomial_spec(int h, int s) {
    if (h < 3) throw std::invalid_argument("trinomial_spec: h must be >= 3");
    return make_spec(trinomial(h), s, Technique::low_terms);
}

ExtendedCodeSpec make_extended_spec(const Poly& base_generator) {
    long long h = base_generator.degree();
    if (h < 3 || h > 63)
        throw std::invalid_argument("make_extended_spec: base degree must be 3..63");
    if (!base_generator.bit(0))
        throw std::invalid_argument("make_extended_spec: base generator needs constant term 1");
    if (base_generator.weight() % 2 == 0)
        throw std::invalid_argument("make_extended_spec: base generator must have odd weight");
    ExtendedCodeSpec spec;
    spec.base_generator = base_generator;
    spec.h = static_cast<int>(h);
    spec.check_bits = spec.h + 1;
    return spec;
}

ExtendedCodeSpec weight3_extended_spec(int h, int i) {
    if (!(h > i && i > 0)) throw std::invalid_argument("weight3_extended_spec: need h > i > 0");
    return make_extended_spec(poly_from_exponents({static_cast<u64>(h), static_cast<u64>(i), 0}));
}

u64 extended_check(const ExtendedCodeSpec& spec, const MessageFrame& frame) {
    if (frame.s != spec.check_bits)
        throw std::invalid_argument("extended_check: frame must use s = h + 1");
    CrcSpec base = make_spec(spec.base_generator, spec.check_bits, Technique::low_terms);
    u64 p_crc = crc_check(base, frame);
    u64 w = block_parity_check(frame) ^ (p_crc << 1);
    u64 parity = static_cast<u64>(std::popcount(w)) & 1;
    return (p_crc << 1) ^ parity;
}

u64 extended_check_bytes(const ExtendedCodeSpec& spec, std::span<const std::uint8_t> data,
                         std::optional<u64> bit_length) {
    return extended_check(spec, frame_message(data, spec.check_bits, bit_length));
}

Poly extended_encode(const ExtendedCodeSpec& spec, const MessageFrame& frame) {
    u64 p = extended_check(spec, frame);
    u64 n = frame.n();
    Poly u;
    for (u64 i = 0; i < n; ++i)
        u ^= Poly::from_u64(frame.tuples[i]) << ((n - 1 - i) * static_cast<u64>(frame.s));
    return (u << static_cast<u64>(spec.check_bits)) ^ Poly::from_u64(p);
}

bool extended_verify(const ExtendedCodeSpec& spec, const Poly& v) {
    if (v.weight() % 2 != 0) return false;
    Poly left;  // v without its parity bit
    if (!v.is_zero()) {
        std::vector<u64> words = v.words();
        u64 carry = 0;
        for (size_t j = words.size(); j-- > 0;) {
            u64 w = words[j];
            words[j] = (w >> 1) | (carry << 63);
            carry = w & 1;
        }
        left = Poly::from_words(std::move(words));
    }
    return mod_reduce(left, spec.base_generator).is_zero();
}

}  // namespace fastcrc
