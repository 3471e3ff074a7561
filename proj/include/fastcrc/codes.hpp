#ifndef FASTCRC_CODES_HPP
#define FASTCRC_CODES_HPP

#include "fastcrc/engine.hpp"
#include "fastcrc/poly.hpp"

namespace fastcrc {

/// XOR of all tuples; the check of the generator X^s + 1 with s = h.
u64 block_parity_check(const MessageFrame& frame);

/// Spec for the X^h+X+1 generator with the low-terms technique, so the
/// per-tuple reduction is a single translation a + aX (plus division only
/// when s >= h-1).
CrcSpec trinomial_spec(int h, int s);

/// Base CRC plus one overall parity bit: h+1 check bits, distance 4 and
/// burst cover h+1 up to length period(base)+1. Requires an odd-weight base
/// generator with constant term 1.
struct ExtendedCodeSpec {
    Poly base_generator;
    int h = 0;           // base degree
    int check_bits = 0;  // h + 1
};

ExtendedCodeSpec make_extended_spec(const Poly& base_generator);

/// Extended spec over the weight-3 base X^h + X^i + 1 (division-free when
/// s <= h-i).
ExtendedCodeSpec weight3_extended_spec(int h, int i);

/// (h+1)-bit check: base check shifted up one, low bit = overall parity of
/// message plus shifted check. The frame must use s = h+1.
u64 extended_check(const ExtendedCodeSpec& spec, const MessageFrame& frame);

/// Convenience: frames data at s = h+1 internally.
u64 extended_check_bytes(const ExtendedCodeSpec& spec, std::span<const std::uint8_t> data,
                         std::optional<u64> bit_length = std::nullopt);

/// Codeword: message followed by the h+1 check bits (parity bit last).
Poly extended_encode(const ExtendedCodeSpec& spec, const MessageFrame& frame);

/// True iff v has even overall parity and its left part is a base codeword.
bool extended_verify(const ExtendedCodeSpec& spec, const Poly& v);

}  // namespace fastcrc

#endif
