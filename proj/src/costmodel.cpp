#include "fastcrc/costmodel.hpp"

#include <cmath>
#include <cstdio>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace fastcrc {

Rat::Rat(long long n, long long d) {
    if (d == 0) throw std::invalid_argument("Rat: zero denominator");
    if (d < 0) {
        n = -n;
        d = -d;
    }
    long long g = std::gcd(n < 0 ? -n : n, d);
    if (g == 0) g = 1;
    num = n / g;
    den = d / g;
}

Rat Rat::operator+(const Rat& o) const { return Rat(num * o.den + o.num * den, den * o.den); }
Rat Rat::operator-(const Rat& o) const { return Rat(num * o.den - o.num * den, den * o.den); }
Rat Rat::operator*(const Rat& o) const { return Rat(num * o.num, den * o.den); }
Rat Rat::operator/(const Rat& o) const {
    if (o.num == 0) throw std::invalid_argument("Rat: division by zero");
    return Rat(num * o.den, den * o.num);
}
bool Rat::operator<(const Rat& o) const { return num * o.den < o.num * den; }

std::string Rat::str() const {
    if (den == 1) return std::to_string(num);
    long long d = den, twos = 0, fives = 0;
    while (d % 2 == 0) { d /= 2; ++twos; }
    while (d % 5 == 0) { d /= 5; ++fives; }
    long long digits = twos > fives ? twos : fives;
    if (d == 1 && digits <= 6) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.*f", static_cast<int>(digits), to_double());
        return buf;
    }
    return std::to_string(num) + "/" + std::to_string(den);
}

std::string to_sig3(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

std::string to_sig3(const Rat& r) { return to_sig3(r.to_double()); }

namespace {

bool word_height(int h) { return h == 8 || h == 16 || h == 32 || h == 64; }

void check_sh(int s, int h) {
    if (s < 1 || h < 1) throw std::invalid_argument("cost model: s and h must be >= 1");
}

}  // namespace

Rat e_basic(int s, int h, bool unrolled) {
    check_sh(s, h);
    Rat per_bit = half_ops(unrolled);
    long long x = s < h ? 4 : 3;
    return (Rat(x) + per_bit * Rat(s)) * Rat(8) / Rat(s);
}

Rat e_fast(int s, int h, bool unrolled) {
    check_sh(s, h);
    bool wh = word_height(h);
    if (s < h - 1) return Rat(wh ? 80 : 88) / Rat(s);
    if (s == h - 1) return Rat(wh ? 100 : 108) / Rat(s);
    if (s == h) return Rat(96) / Rat(s);
    Rat per_bit = half_ops(unrolled);
    return (Rat(12) + per_bit * Rat(s - h)) * Rat(8) / Rat(s);
}

OptimalS optimal_s(int h, SDomain domain) {
    check_sh(1, h);
    std::vector<int> candidates;
    switch (domain) {
        case SDomain::any:
            for (int s = 1; s <= 64; ++s) candidates.push_back(s);
            break;
        case SDomain::byte_multiples:
            for (int s = 8; s <= 64; s += 8) candidates.push_back(s);
            break;
        case SDomain::word_sizes:
            candidates = {8, 16, 32, 64};
            break;
    }
    OptimalS best;
    for (int s : candidates) {
        Rat e = e_fast(s, h);
        if (best.s == 0 || e < best.e || (e == best.e && s > best.s)) {
            best.s = s;
            best.e = e;
        }
    }
    return best;
}

TableCost table_costs(int s, int h, int m) {
    check_sh(s, h);
    if (m < 1 || m > s || s % m != 0)
        throw std::invalid_argument("table_costs: m must divide s");
    long long extra;
    if (s < h) extra = word_height(h) ? 24 : 32;
    else if (s == h) extra = 0;
    else extra = 8;
    TableCost tc;
    tc.e = Rat(24 * m + extra) / Rat(s);
    tc.entries = static_cast<u128>(m) << (s / m);
    tc.dominated = m == s && s % 2 == 0;
    return tc;
}

TableCost fast_table_costs(int s, int h) {
    check_sh(s, h);
    if (s < h) throw std::invalid_argument("fast_table_costs: needs s >= h");
    TableCost tc;
    tc.e = Rat(s == h ? 80 : 88) / Rat(s);
    tc.entries = static_cast<u128>(1) << (s - h + 2);
    return tc;
}

Rat ratio_fast(int h) { return (Rat(3) + Rat(11, 2) * Rat(h)) / Rat(12); }

Rat ratio_fast_estimate(int h) { return Rat(h, 2); }

Rat k_ifelse(int s) {
    if (s < 1 || s > 31) throw std::invalid_argument("k_ifelse: s must be 1..31");
    // 2^(s-1) + 1/2 - 2^(-s) = (2^(2s-1) + 2^(s-1) - 1) / 2^s
    long long num = (1LL << (2 * s - 1)) + (1LL << (s - 1)) - 1;
    return Rat(num, 1LL << s);
}

Rat e_extended_weight3(int s, int h) {
    check_sh(s, h);
    return Rat(word_height(h) ? 72 : 80) / Rat(s);
}

Rat e_extended_full_width(int h_plus_1) {
    check_sh(1, h_plus_1);
    return Rat(96) / Rat(h_plus_1);
}

namespace {

struct LowPart {
    std::vector<long long> exps;  // low-part exponents above 0, ascending
    int k = 0;
    long long ik = 0;
};

LowPart low_part(const Poly& f, int s) {
    long long h = f.degree();
    if (h < 3) throw std::invalid_argument("e_new_general: degree must be >= 3");
    if (!f.bit(0)) throw std::invalid_argument("e_new_general: needs f(0) = 1");
    if (f.weight() < 3) throw std::invalid_argument("e_new_general: weight must be >= 3");
    if (s < 1 || s > 64) throw std::invalid_argument("e_new_general: s must be 1..64");
    LowPart lp;
    for (long long i = 1; i < h; ++i)
        if (f.bit(static_cast<u64>(i))) lp.exps.push_back(i);
    lp.k = static_cast<int>(lp.exps.size());
    lp.ik = lp.exps.back();
    return lp;
}

// the split-register kernel's reduction cost for gap = h - s >= 0
void fill_split(CostReport& report, const LowPart& lp, long long h, int s) {
    long long gap = h - s;
    Rat x(word_height(static_cast<int>(h)) ? 6 : 7);
    Rat r;
    if (lp.ik <= gap) {
        report.case_label = "division-free";
        r = Rat(2 * lp.k);
    } else {
        int mstar = 1;  // smallest index whose exponent exceeds the gap
        while (lp.exps[mstar - 1] <= gap) ++mstar;
        Rat div_bits = Rat(11, 2) * Rat(lp.ik - gap);
        if (mstar == 1) {
            report.case_label = "full-reduce";
            r = div_bits + Rat(lp.k) + Rat(1);
        } else if (mstar == lp.k) {
            report.case_label = "top-reduce";
            r = div_bits + Rat(2 * lp.k);
        } else {
            report.case_label = "partial-split";
            r = div_bits + Rat(lp.k) + Rat(mstar - 1) + Rat(1);
        }
    }
    report.e = (x + r) * Rat(8) / Rat(s);
}

}  // namespace

CostReport e_new_general(const Poly& f, int s) {
    long long h = f.degree();
    LowPart lp = low_part(f, s);

    CostReport report;
    report.ik = static_cast<int>(lp.ik);
    report.k = lp.k;
    report.e_b = e_basic(s, static_cast<int>(h));

    if (s >= h) {
        report.case_label = "wide";
        Rat r;
        if (lp.ik <= 2) {
            report.unrolled = true;
            r = Rat(11, 2) * Rat(s - h) + Rat(7, 2) * Rat(lp.ik) + Rat(lp.k);
        } else {
            r = Rat(11, 2) * (Rat(s - h) + Rat(lp.ik)) + Rat(lp.k);
        }
        report.e = (Rat(3) + r) * Rat(8) / Rat(s);
    } else {
        fill_split(report, lp, h, s);
    }
    report.ratio = report.e_b / report.e;
    return report;
}

CostReport e_new_general_split(const Poly& f, int s) {
    long long h = f.degree();
    LowPart lp = low_part(f, s);
    if (s > h) throw std::invalid_argument("e_new_general_split: needs s <= h");

    CostReport report;
    report.ik = static_cast<int>(lp.ik);
    report.k = lp.k;
    report.e_b = (Rat(4) + Rat(11, 2) * Rat(s)) * Rat(8) / Rat(s);
    fill_split(report, lp, h, s);
    report.ratio = report.e_b / report.e;
    return report;
}

std::string format_u128(u128 v) {
    if (v == 0) return "0";
    std::string out;
    while (v) {
        out.insert(out.begin(), static_cast<char>('0' + static_cast<int>(v % 10)));
        v /= 10;
    }
    return out;
}

}  // namespace fastcrc
