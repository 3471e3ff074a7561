#ifndef FASTCRC_COSTMODEL_HPP
#define FASTCRC_COSTMODEL_HPP

#include <string>

#include "fastcrc/poly.hpp"

namespace fastcrc {

/// Exact rational; the whole model stays in rationals so golden ratios
/// compare without float drift.
struct Rat {
    long long num = 0;
    long long den = 1;  // > 0, gcd(|num|, den) = 1

    Rat() = default;
    Rat(long long n, long long d = 1);

    Rat operator+(const Rat& o) const;
    Rat operator-(const Rat& o) const;
    Rat operator*(const Rat& o) const;
    Rat operator/(const Rat& o) const;
    bool operator==(const Rat& o) const { return num == o.num && den == o.den; }
    bool operator<(const Rat& o) const;

    double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
    /// "45.5" style when terminating in <= 6 digits, else "n/d".
    std::string str() const;
};

/// Three-significant-figure decimal used in the printed tables.
std::string to_sig3(const Rat& r);
std::string to_sig3(double v);

inline Rat half_ops(bool unrolled) { return unrolled ? Rat(7, 2) : Rat(11, 2); }

/// Operation count per input byte for the plain division technique:
/// 8(4+5.5s)/s below h, 8(3+5.5s)/s otherwise (3.5 when loops are unrolled).
Rat e_basic(int s, int h, bool unrolled = false);

/// Per-byte count for the X^h+X^2+X+1 generator under the low-terms
/// technique, the full piecewise form including h outside {8,16,32,64}.
Rat e_fast(int s, int h, bool unrolled = false);

enum class SDomain { any, byte_multiples, word_sizes };

struct OptimalS {
    int s = 0;
    Rat e;
};

/// Minimizing s (ties break to the larger s) and its e_fast.
OptimalS optimal_s(int h, SDomain domain = SDomain::any);

struct TableCost {
    Rat e;
    u128 entries = 0;
    bool dominated = false;  // m = s: m = s/2 gives the same size, fewer ops
};

/// Multi-table lookup: e = (24m + {24,32,0,8})/s by case, entries m*2^(s/m).
TableCost table_costs(int s, int h, int m);

/// Fast-generator table lookup (s >= h): e = 80/s or 88/s, entries 2^(s-h+2).
TableCost fast_table_costs(int s, int h);

/// Exact (3+5.5h)/12, the closed ratio between the division and low-terms
/// techniques at s = h; equals 1/4 + (11/24)h.
Rat ratio_fast(int h);

/// The rough s/2 version of the same ratio.
Rat ratio_fast_estimate(int h);

/// Cost of the if-else ladder for computing the reduction of an s-bit tuple:
/// 2^(s-1) + 1/2 - 2^(-s). Exact for s <= 31.
Rat k_ifelse(int s);

/// Per-byte count for the parity-extended weight-3 code in its
/// division-free region (s <= h - i).
Rat e_extended_weight3(int s, int h);

/// Per-byte count for the parity-extended trinomial code at s = h+1.
Rat e_extended_full_width(int h_plus_1);

struct CostReport {
    Rat e_b;                 // division technique
    Rat e;                   // low-terms technique for this generator
    u128 g = 0;              // table entries (0 for bitwise)
    Rat ratio;               // e_b / e
    std::string case_label;  // which reduction shape applied
    bool unrolled = false;   // tiny-degree division loop unrolled
    int ik = 0;              // degree of the generator's low part
    int k = 0;               // term count of the low part above X^0
};

/// Case analysis for an arbitrary generator f (f(0)=1, weight >= 3) at tuple
/// width s. Labels: "wide" (s >= h), "division-free" (low part fits),
/// "partial-split" / "full-reduce" / "top-reduce" for the three partially
/// reduced shapes.
CostReport e_new_general(const Poly& f, int s);

/// The split-register (below-h) machinery evaluated for any s <= h, with the
/// right part degenerating to zero bits at s = h. e_new_general routes s = h
/// through the wide form instead; this view prices the alternative kernel.
CostReport e_new_general_split(const Poly& f, int s);

std::string format_u128(u128 v);

}  // namespace fastcrc

#endif
