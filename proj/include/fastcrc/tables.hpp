#ifndef FASTCRC_TABLES_HPP
#define FASTCRC_TABLES_HPP

#include <cstdint>
#include <vector>

#include "fastcrc/poly.hpp"

namespace fastcrc {

enum class TableKind { none, multi, fast, fast_improved, mixed };

/// Precomputed reduction tables. All entries are h-bit values; entry 0 of
/// every table is zero.
struct LookupTableSet {
    TableKind kind = TableKind::none;
    Poly generator;
    int h = 0;
    int s = 0;
    int m = 1;       // multi: table count
    int split = 0;   // multi: chunk width s/m; fast: s-h+2; mixed: top width
    std::vector<std::vector<u64>> tables;

    u64 total_entries() const {
        u64 g = 0;
        for (const auto& t : tables) g += t.size();
        return g;
    }
};

inline constexpr int fast_table_width_cap = 20;  // 2^20-entry build ceiling

/// m equal-split tables for B(X) = R_M[A X^h]: T_i[v] = R_M[v X^(h+s(m-i)/m)].
/// Requires m | s.
LookupTableSet build_multi_tables(const Poly& generator, int s, int m);

/// B(X) via the multi-table set: sum of T_i over the s/m-bit chunks of a.
u64 b_multi(u64 a, const LookupTableSet& ts);

/// The 2^(s-h+2)-entry table for the X^h+X^2+X+1 generator (s >= h):
/// T[v] = R[v X^(h-2) (X^2+X+1)]. Four entries when s = h.
LookupTableSet build_fast_table(int h, int s);

/// B(X) = T[top s-h+2 bits of a] + (low h-2 bits of a)(X^2+X+1).
u64 b_fast_table(u64 a, const LookupTableSet& ts);

/// Height-independent 4-entry variant for s = h: entries {0, 0x7, 0x9, 0xe};
/// the lookup combines with the whole register instead of its right part.
LookupTableSet build_fast_table_improved(int h);

u64 b_fast_table_improved(u64 a, const LookupTableSet& ts);

/// Partial-table reduction for a general f with f(0)=1 and s < h: the top
/// split_width bits go through a table built over the high terms of
/// H(X) = f - X^h; the rest is shift-and-XOR of H's terms.
LookupTableSet build_mixed_table(const Poly& f, int s, int split_width);

u64 b_mixed(u64 a, const LookupTableSet& ts);

/// Dispatch on ts.kind.
u64 b_table(u64 a, const LookupTableSet& ts);

}  // namespace fastcrc

#endif
