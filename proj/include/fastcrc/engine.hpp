#ifndef FASTCRC_ENGINE_HPP
#define FASTCRC_ENGINE_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "fastcrc/poly.hpp"
#include "fastcrc/tables.hpp"

namespace fastcrc {

/// How the per-tuple reduction B(X) is computed.
///   basic       - bit-serial long division, s iterations
///   low_terms   - multiply by H(X) = M(X) - X^h instead of dividing by M,
///                 shrinking the division to max(0, s-h+2) iterations
///   multi_table - m lookup tables splitting the tuple into s/m-bit chunks
///   fast_table  - the 2^(s-h+2)-entry table exploiting X^h+X^2+X+1
enum class Technique { basic, low_terms, multi_table, fast_table };

enum class Algo { a1, a2, a3, a4 };

/// Generator + framing + reduction choice. Immutable after construction;
/// safe to share across threads.
struct CrcSpec {
    Poly generator;      // M(X)
    int h = 0;           // degree(M)
    int s = 0;           // tuple width in bits
    Technique technique = Technique::basic;
    int table_m = 1;     // chunk count for multi_table

    u64 gen_low = 0;     // M without its X^h term, as bits
    u64 low_terms = 0;   // H(X) = M - X^h (equals gen_low)
    int ik = 0;          // degree(H)
    int kw = 0;          // weight(H + 1)
    LookupTableSet tables;  // built for table techniques

    Poly check_to_poly(u64 p) const { return Poly::from_u64(p); }
};

/// Validates and builds a spec (h = degree(generator) must be 3..64, s 1..64).
/// low_terms requires generator(0)=1; fast_table requires the X^h+X^2+X+1
/// generator and s >= h; multi_table requires m | s.
CrcSpec make_spec(const Poly& generator, int s, Technique technique = Technique::basic,
                  int table_m = 1);

/// Which algorithm this spec runs: division stays on Algorithms 1/4, the
/// low-terms rewrite needs 3/4, tables need 3/2 (below/at-or-above h).
Algo select_algorithm(const CrcSpec& spec);

/// Message split into s-bit tuples, zero left-padding on the first tuple only.
struct MessageFrame {
    std::vector<u64> tuples;
    u64 bit_length = 0;  // original l
    int s = 0;

    u64 n() const { return tuples.size(); }
};

/// Splits a byte sequence (bits consumed most-significant-first) into s-bit
/// tuples. bit_length defaults to 8 * data.size(); an empty message yields a
/// single all-zero tuple.
MessageFrame frame_message(std::span<const std::uint8_t> data, int s,
                           std::optional<u64> bit_length = std::nullopt);

/// One tuple step of the spec's algorithm. State starts at zero; for
/// Algorithm 4 it holds L_i = P_i * X^(s-h).
u64 crc_step(const CrcSpec& spec, u64 state, u64 q);

/// Like crc_step but forcing a specific algorithm (tests drive all four).
/// Applicability: a1/a3 need s < h, a2/a4 need s >= h; low_terms runs on
/// a3/a4, tables on a2/a3, basic anywhere.
u64 crc_step_algo(const CrcSpec& spec, Algo algo, u64 state, u64 q);

/// Check tuple extracted from the final state (Algorithm 4 keeps P in the h
/// left-hand bits).
u64 extract_check(const CrcSpec& spec, Algo algo, u64 state);

/// P(X) = R_M[U(X) X^h], identical across algorithms and techniques.
u64 crc_check(const CrcSpec& spec, const MessageFrame& frame);
u64 crc_check_algo(const CrcSpec& spec, Algo algo, const MessageFrame& frame);

/// Per-tuple reduction B(X) for the spec's algorithm:
///   Algo 1:      R_M[a X^s]       (degree(a) < h)
///   Algos 2, 3:  R_M[a X^h]       (degree(a) < s)
///   Algo 4:      R_N[a X^s], N = M X^(s-h)
u64 b_basic(u64 a, const CrcSpec& spec);

/// Same value as b_basic, computed as R[a H] (s < h) or R[a X^(s-h) H]
/// (s >= h). Requires generator(0) = 1.
u64 b_low_terms(u64 a, const CrcSpec& spec);

/// Codeword U(X) X^h + P(X).
Poly encode(const CrcSpec& spec, const MessageFrame& frame);
/// True iff v is a multiple of the generator.
bool verify_codeword(const CrcSpec& spec, const Poly& v);

/// Reference check value computed directly from the definition
/// R_M[U(X) X^h] with arbitrary-degree arithmetic; works for any h and is
/// the serial baseline the word-sized engine is tested against.
Poly crc_check_ref(const Poly& generator, int s, const MessageFrame& frame);

}  // namespace fastcrc

#endif
