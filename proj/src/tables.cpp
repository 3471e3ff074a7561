#include "fastcrc/tables.hpp"

#include <bit>
#include <stdexcept>

namespace fastcrc {

namespace {

u64 mask_bits(int n) { return n >= 64 ? ~u64{0} : (u64{1} << n) - 1; }

u64 gen_low_bits(const Poly& generator, int h) {
    u64 low = generator.low64();
    if (h < 64) low ^= u64{1} << h;
    return low;
}

}  // namespace

LookupTableSet build_multi_tables(const Poly& generator, int s, int m) {
    long long h = generator.degree();
    if (h < 3 || h > 64) throw std::invalid_argument("build_multi_tables: degree must be 3..64");
    if (s < 1 || s > 64) throw std::invalid_argument("build_multi_tables: s must be 1..64");
    if (m < 1 || m > s || s % m != 0)
        throw std::invalid_argument("build_multi_tables: m must divide s");
    if (s / m > fast_table_width_cap)
        throw std::length_error("build_multi_tables: table too large");
    LookupTableSet ts;
    ts.kind = TableKind::multi;
    ts.generator = generator;
    ts.h = static_cast<int>(h);
    ts.s = s;
    ts.m = m;
    ts.split = s / m;
    u64 low = gen_low_bits(generator, ts.h);
    int t = ts.split;
    ts.tables.resize(m);
    for (int i = 1; i <= m; ++i) {
        int shift = ts.h + t * (m - i);
        auto& table = ts.tables[i - 1];
        table.resize(u64{1} << t);
        for (u64 v = 0; v < table.size(); ++v)
            table[v] = bits::reduce_u128(static_cast<u128>(v) << shift, ts.h, low);
    }
    return ts;
}

u64 b_multi(u64 a, const LookupTableSet& ts) {
    int t = ts.split;
    u64 b = 0;
    for (int i = 1; i <= ts.m; ++i) {
        u64 chunk = (a >> (t * (ts.m - i))) & mask_bits(t);
        b ^= ts.tables[i - 1][chunk];
    }
    return b;
}

LookupTableSet build_fast_table(int h, int s) {
    if (h < 3 || h > 64) throw std::invalid_argument("build_fast_table: h must be 3..64");
    if (s < h || s > 64) throw std::invalid_argument("build_fast_table: needs h <= s <= 64");
    int width = s - h + 2;
    if (width > fast_table_width_cap)
        throw std::length_error("build_fast_table: table too large");
    LookupTableSet ts;
    ts.kind = TableKind::fast;
    ts.generator = fast_poly(h);
    ts.h = h;
    ts.s = s;
    ts.split = width;
    u64 low = gen_low_bits(ts.generator, h);
    ts.tables.resize(1);
    auto& table = ts.tables[0];
    table.resize(u64{1} << width);
    for (u64 v = 0; v < table.size(); ++v) {
        u128 prod = bits::clmul(v, 0b111) << (h - 2);
        table[v] = bits::reduce_u128(prod, h, low);
    }
    return ts;
}

u64 b_fast_table(u64 a, const LookupTableSet& ts) {
    u64 a1 = a >> (ts.h - 2);
    u64 a2 = a & mask_bits(ts.h - 2);
    return ts.tables[0][a1] ^ a2 ^ (a2 << 1) ^ (a2 << 2);
}

LookupTableSet build_fast_table_improved(int h) {
    if (h < 3 || h > 64) throw std::invalid_argument("build_fast_table_improved: h must be 3..64");
    LookupTableSet ts;
    ts.kind = TableKind::fast_improved;
    ts.generator = fast_poly(h);
    ts.h = h;
    ts.s = h;
    ts.split = 2;
    ts.tables = {{0x0, 0x7, 0x9, 0xe}};
    return ts;
}

u64 b_fast_table_improved(u64 a, const LookupTableSet& ts) {
    int h = ts.h;
    u64 folded = (a ^ (a << 1) ^ (a << 2)) & mask_bits(h);
    return folded ^ ts.tables[0][a >> (h - 2)];
}

LookupTableSet build_mixed_table(const Poly& f, int s, int split_width) {
    long long h = f.degree();
    if (h < 3 || h > 64) throw std::invalid_argument("build_mixed_table: degree must be 3..64");
    if (!f.bit(0)) throw std::invalid_argument("build_mixed_table: needs f(0) = 1");
    if (s < 1 || s >= h) throw std::invalid_argument("build_mixed_table: needs s < h");
    if (split_width < 1 || split_width >= s)
        throw std::invalid_argument("build_mixed_table: needs 0 < split_width < s");
    u64 low = gen_low_bits(f, static_cast<int>(h));
    u64 hi = low & ~mask_bits(static_cast<int>(h) - s + 1);  // terms with exponent > h-s
    int ik = hi ? 63 - std::countl_zero(hi) : 0;
    if (hi && (s - split_width) + ik > h)
        throw std::invalid_argument("build_mixed_table: split too narrow for the high terms");
    LookupTableSet ts;
    ts.kind = TableKind::mixed;
    ts.generator = f;
    ts.h = static_cast<int>(h);
    ts.s = s;
    ts.split = split_width;
    ts.tables.resize(1);
    auto& table = ts.tables[0];
    table.resize(u64{1} << split_width);
    for (u64 v = 0; v < table.size(); ++v) {
        u128 prod = bits::clmul(v << (s - split_width), hi);
        table[v] = bits::reduce_u128(prod, ts.h, low);
    }
    return ts;
}

u64 b_mixed(u64 a, const LookupTableSet& ts) {
    int t = ts.split;
    u64 low = gen_low_bits(ts.generator, ts.h);
    u64 hi = low & ~mask_bits(ts.h - ts.s + 1);
    u64 lo = low ^ hi;
    u64 a1 = a >> (ts.s - t);
    u64 a2 = a & mask_bits(ts.s - t);
    return ts.tables[0][a1] ^ static_cast<u64>(bits::clmul(a2, hi)) ^
           static_cast<u64>(bits::clmul(a, lo));
}

u64 b_table(u64 a, const LookupTableSet& ts) {
    switch (ts.kind) {
        case TableKind::multi: return b_multi(a, ts);
        case TableKind::fast: return b_fast_table(a, ts);
        case TableKind::fast_improved: return b_fast_table_improved(a, ts);
        case TableKind::mixed: return b_mixed(a, ts);
        case TableKind::none: break;
    }
    throw std::invalid_argument("b_table: empty table set");
}

}  // namespace fastcrc
