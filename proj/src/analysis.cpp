#include "fastcrc/analysis.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace fastcrc {

namespace {

struct WordGen {
    int h;
    u64 low;
};

WordGen word_gen(const Poly& f) {
    long long d = f.degree();
    if (d < 1 || d > 64) throw std::invalid_argument("analysis: generator degree must be 1..64");
    if (!f.bit(0)) throw std::invalid_argument("analysis: generator needs constant term 1");
    u64 low = f.low64();
    if (d < 64) low ^= u64{1} << d;
    return {static_cast<int>(d), low};
}

// R[a] = X^a mod f for a = 0..count-1.
std::vector<u64> remainder_table(const WordGen& g, u64 count) {
    std::vector<u64> r(count);
    if (count == 0) return r;
    r[0] = g.h > 0 ? 1 : 0;
    for (u64 a = 1; a < count; ++a) r[a] = bits::step(r[a - 1], g.h, g.low);
    return r;
}

// Open-addressing map remainder -> smallest exponent, filled in increasing
// exponent order so insert-if-absent keeps the minimum. Probes are mostly
// misses, so a small one-bit filter in front short-circuits them without
// touching the slot array.
class MinIndexMap {
  public:
    explicit MinIndexMap(u64 expected) {
        u64 cap = 16;
        while (cap < expected + expected / 2) cap <<= 1;
        slots_.assign(cap, Slot{0, 0});
        mask_ = cap - 1;
        u64 bloom_bits = cap * 8;
        bloom_.assign(bloom_bits / 64, 0);
        bloom_mask_ = bloom_bits - 1;
    }

    void insert(u64 key, u64 idx) {
        u64 hx = mix(key);
        u64 b = (hx >> 32) & bloom_mask_;
        bloom_[b >> 6] |= u64{1} << (b & 63);
        u64 i = hx & mask_;
        while (slots_[i].val) {
            if (slots_[i].key == key) return;
            i = (i + 1) & mask_;
        }
        slots_[i] = Slot{key, idx};
    }

    // 0 when absent (exponent indexes start at 1).
    u64 find(u64 key) const {
        u64 hx = mix(key);
        u64 b = (hx >> 32) & bloom_mask_;
        if (!((bloom_[b >> 6] >> (b & 63)) & 1)) return 0;
        u64 i = hx & mask_;
        while (slots_[i].val) {
            if (slots_[i].key == key) return slots_[i].val;
            i = (i + 1) & mask_;
        }
        return 0;
    }

  private:
    struct Slot {
        u64 key;
        u64 val;
    };

    static u64 mix(u64 key) {
        key *= 0xff51afd7ed558ccdULL;
        key ^= key >> 29;
        key *= 0xc4ceb9fe1a85ec53ULL;
        return key ^ (key >> 32);
    }

    std::vector<Slot> slots_;
    std::vector<u64> bloom_;
    u64 mask_ = 0;
    u64 bloom_mask_ = 0;
};

int thread_count(int threads) {
#ifdef _OPENMP
    if (threads <= 0) return omp_get_max_threads();
    return threads;
#else
    (void)threads;
    return 1;
#endif
}

Limit lm2(const WordGen& g, u64 l_max) {
    u64 r = g.h == 1 ? bits::step(1, g.h, g.low) : 2;
    if (r == 1) return Limit::of(1);
    for (u64 t = 2; t <= l_max; ++t) {
        r = bits::step(r, g.h, g.low);
        if (r == 1) return Limit::of(t);
    }
    return Limit::over(l_max);
}

Limit lm3(const WordGen& g, u64 l_max) {
    MinIndexMap seen(l_max + 1);
    u64 r = 1;
    for (u64 d = 1; d <= l_max; ++d) {
        r = bits::step(r, g.h, g.low);
        if (seen.find(r ^ 1)) return Limit::of(d);
        seen.insert(r, d);
    }
    return Limit::over(l_max);
}

Limit lm4(const WordGen& g, u64 l_max, int threads) {
    std::vector<u64> rt = remainder_table(g, l_max + 1);
    MinIndexMap seen(l_max + 1);
    int nthreads = thread_count(threads);
    for (u64 d = 1; d <= l_max; ++d) {
        u64 target = rt[d] ^ 1;
        bool hit = false;
        if (nthreads > 1 && d > 8192) {
#ifdef _OPENMP
#pragma omp parallel for num_threads(nthreads) schedule(static) reduction(|| : hit)
            for (long long b = 1; b < static_cast<long long>(d); ++b) {
                u64 a = seen.find(target ^ rt[b]);
                if (a && a < static_cast<u64>(b)) hit = true;
            }
#endif
        } else {
            for (u64 b = 1; b < d && !hit; ++b) {
                u64 a = seen.find(target ^ rt[b]);
                if (a && a < b) hit = true;
            }
        }
        if (hit) return Limit::of(d);
        seen.insert(rt[d], d);
    }
    return Limit::over(l_max);
}

// Pair map: remainder-pair sum -> smallest possible larger exponent, for
// the weight-5/6 searches. Pairs (a < b) are inserted in increasing b.
Limit lm56(const WordGen& g, int m, u64 l_max, int threads) {
    std::vector<u64> rt = remainder_table(g, l_max + 1);
    MinIndexMap pairs((l_max + 1) * (l_max + 1) / 2 + 16);
    int nthreads = thread_count(threads);
    for (u64 d = 2; d <= l_max; ++d) {
        // make pairs with larger exponent d-1 available
        for (u64 a = 1; a + 1 < d; ++a) pairs.insert(rt[a] ^ rt[d - 1], d - 1);
        u64 target = rt[d] ^ 1;
        bool hit = false;
        if (m == 5) {
            // X^d + X^a3 + (pair) + 1 with pair's larger exponent < a3
            if (nthreads > 1 && d > 4096) {
#ifdef _OPENMP
#pragma omp parallel for num_threads(nthreads) schedule(static) reduction(|| : hit)
                for (long long a3 = 3; a3 < static_cast<long long>(d); ++a3) {
                    u64 top = pairs.find(target ^ rt[a3]);
                    if (top && top < static_cast<u64>(a3)) hit = true;
                }
#endif
            } else {
                for (u64 a3 = 3; a3 < d && !hit; ++a3) {
                    u64 top = pairs.find(target ^ rt[a3]);
                    if (top && top < a3) hit = true;
                }
            }
        } else {
            // X^d + X^a4 + X^a3 + (pair) + 1, pair's larger exponent < a3 < a4
#ifdef _OPENMP
#pragma omp parallel for num_threads(nthreads) schedule(dynamic, 16) reduction(|| : hit) \
    if (nthreads > 1 && d > 512)
#endif
            for (long long a4 = 4; a4 < static_cast<long long>(d); ++a4) {
                if (hit) continue;
                u64 part = target ^ rt[a4];
                for (u64 a3 = 3; a3 < static_cast<u64>(a4); ++a3) {
                    u64 top = pairs.find(part ^ rt[a3]);
                    if (top && top < a3) {
                        hit = true;
                        break;
                    }
                }
            }
        }
        if (hit) return Limit::of(d);
    }
    return Limit::over(l_max);
}

}  // namespace

Limit lm_search(const Poly& f, int m, u64 l_max, int threads) {
    if (m < 2) throw std::invalid_argument("lm_search: m must be >= 2");
    WordGen g = word_gen(f);
    if (f.weight() % 2 == 0 && m % 2 == 1) return Limit::inf();
    if (l_max == 0) return Limit::over(0);
    switch (m) {
        case 2: return lm2(g, l_max);
        case 3: return lm3(g, l_max);
        case 4: return lm4(g, l_max, threads);
        case 5:
        case 6:
            // the pair table grows quadratically with the bound
            if (l_max > 4096)
                throw std::invalid_argument("lm_search: bound above 4096 for weight 5/6");
            return lm56(g, m, l_max, threads);
        default: throw std::invalid_argument("lm_search: m above 6 is unsupported");
    }
}

DetectionProfile build_profile(const Poly& f, int max_m, u64 l3_cap, u64 l4_cap, int threads) {
    DetectionProfile profile;
    profile.generator = f;
    u64 w = f.weight();
    for (int m = 2; m <= max_m; ++m) {
        if (w % 2 == 0 && m % 2 == 1) {
            profile.l[m] = Limit::inf();
            continue;
        }
        if (static_cast<u64>(m) == w) {
            profile.l[m] = Limit::of(static_cast<u64>(f.degree()));
            continue;
        }
        u64 cap;
        switch (m) {
            case 2: cap = default_period_cap; break;
            case 3: cap = l3_cap; break;
            case 4: cap = l4_cap; break;
            default: cap = 1024; break;
        }
        profile.l[m] = lm_search(f, m, cap, threads);
    }
    return profile;
}

DminResult dmin_at_length(const DetectionProfile& profile, u64 length) {
    DminResult result;
    result.dmin = 2;
    auto it = profile.l.find(2);
    if (it == profile.l.end()) {
        result.needs_more = true;
        return result;
    }
    for (int m = 2;; ++m) {
        it = profile.l.find(m);
        if (it == profile.l.end()) {
            result.needs_more = true;
            return result;
        }
        const Limit& lim = it->second;
        bool satisfied;
        switch (lim.kind) {
            case Limit::Kind::unbounded: satisfied = true; break;
            case Limit::Kind::value: satisfied = length <= lim.v; break;
            case Limit::Kind::exceeds:
                if (length <= lim.bound) {
                    satisfied = true;
                } else {
                    result.needs_more = true;
                    return result;
                }
                break;
            default: satisfied = false;
        }
        if (!satisfied) return result;
        result.dmin = m + 1;
    }
}

namespace {

// Remainders of exponents 1..l-1 sorted by (value, exponent); counts of
// matching exponents below a threshold come from binary search.
struct RemainderIndex {
    std::vector<u64> rt;                    // rt[a] = X^a mod f
    std::vector<std::pair<u64, u64>> byval; // (remainder, exponent), sorted

    explicit RemainderIndex(const WordGen& g, u64 l) : rt(remainder_table(g, l)) {
        byval.reserve(l > 0 ? l - 1 : 0);
        for (u64 a = 1; a < l; ++a) byval.emplace_back(rt[a], a);
        std::sort(byval.begin(), byval.end());
    }

    u64 count_below(u64 value, u64 below) const {
        auto lo = std::lower_bound(byval.begin(), byval.end(), std::make_pair(value, u64{0}));
        auto hi = std::lower_bound(byval.begin(), byval.end(), std::make_pair(value, below));
        return static_cast<u64>(hi - lo);
    }
};

// C(n, k) saturating at cap.
u64 binom_capped(u64 n, u64 k, u64 cap) {
    if (k > n) return 0;
    u128 r = 1;
    for (u64 i = 1; i <= k; ++i) {
        r = r * (n - k + i) / i;
        if (r > cap) return cap + 1;
    }
    return static_cast<u64>(r);
}

u64 count_rec(const RemainderIndex& idx, u64 top_limit, int remaining, u64 target) {
    if (remaining == 1) return idx.count_below(target, top_limit);
    u64 sum = 0;
    for (u64 e = static_cast<u64>(remaining); e < top_limit; ++e)
        sum += count_rec(idx, e, remaining - 1, target ^ idx.rt[e]);
    return sum;
}

}  // namespace

CountResult weight_count(const Poly& f, u64 l, int m, u64 budget, int threads) {
    WordGen g = word_gen(f);
    if (m < 1 || l < 1) throw std::invalid_argument("weight_count: need m >= 1 and l >= 1");
    if (f.weight() % 2 == 0 && m % 2 == 1) return CountResult::of(0);
    if (m == 1) return CountResult::of(0);
    if (static_cast<u64>(m) > l) return CountResult::of(0);
    if (m == 2) {
        Limit t = lm2(g, l);
        if (!t.has_value()) return CountResult::of(0);
        u64 total = 0;
        for (u64 d = t.v; d < l; d += t.v) total += l - d;
        return CountResult::of(total);
    }
    if (binom_capped(l - 1, static_cast<u64>(m) - 1, budget) > budget) return CountResult::over();
    RemainderIndex idx(g, l);
    int nthreads = thread_count(threads);
    u64 total = 0;
#ifdef _OPENMP
#pragma omp parallel for num_threads(nthreads) schedule(dynamic, 64) reduction(+ : total) \
    if (nthreads > 1)
#endif
    for (long long c = m - 1; c < static_cast<long long>(l); ++c) {
        u64 target = idx.rt[c] ^ 1;
        u64 found;
        if (m == 3) {
            found = idx.count_below(target, static_cast<u64>(c));
        } else if (m == 4) {
            found = 0;
            for (u64 b = 2; b < static_cast<u64>(c); ++b)
                found += idx.count_below(target ^ idx.rt[b], b);
        } else {
            found = count_rec(idx, static_cast<u64>(c), m - 2, target);
        }
        total += found * (l - static_cast<u64>(c));
    }
    return CountResult::of(total);
}

Probability undetected_error_probability(const WeightDistribution& weights, double p) {
    if (p < 0.0 || p > 1.0)
        throw std::invalid_argument("undetected_error_probability: p must be in [0, 1]");
    long double sum = 0;
    for (const auto& [m, wm] : weights.counts) {
        if (!wm) continue;
        long double term = static_cast<long double>(wm);
        term *= powl(static_cast<long double>(p), m);
        term *= powl(1.0L - static_cast<long double>(p),
                     static_cast<long double>(weights.length - static_cast<u64>(m)));
        sum += term;
    }
    return {static_cast<double>(sum), !weights.complete};
}

double first_order_estimate(double w_dmin, int dmin, double p) {
    double t = w_dmin;
    for (int i = 0; i < dmin; ++i) t *= p;
    return t;
}

namespace {

std::vector<Poly> enumerate_candidates(int h, int weight) {
    int k = weight - 2;  // middle exponents
    std::vector<Poly> out;
    if (k < 0 || k > h - 1) return out;
    std::vector<int> exps(k);
    for (int i = 0; i < k; ++i) exps[i] = i + 1;  // smallest combination
    while (true) {
        Poly f = Poly::x_pow(static_cast<u64>(h)) ^ Poly::one();
        for (int e : exps) f.flip_bit(static_cast<u64>(e));
        out.push_back(f);
        // next combination of k values from [1, h-1]
        int i = k - 1;
        while (i >= 0 && exps[i] == h - 1 - (k - 1 - i)) --i;
        if (i < 0) break;
        ++exps[i];
        for (int j = i + 1; j < k; ++j) exps[j] = exps[j - 1] + 1;
    }
    std::sort(out.begin(), out.end());
    return out;
}

u64 limit_sort_value(const Limit& lim) {
    switch (lim.kind) {
        case Limit::Kind::value: return lim.v;
        case Limit::Kind::exceeds: return lim.bound;  // bigger than any found value below it
        case Limit::Kind::unbounded: return ~u64{0};
    }
    return 0;
}

}  // namespace

SearchResult search_generators(const SearchOptions& opts) {
    if (opts.weight < 3) throw std::invalid_argument("search_generators: weight must be >= 3");
    if (opts.h < 3 || opts.h > 64)
        throw std::invalid_argument("search_generators: h must be 3..64");
    if (binom_capped(static_cast<u64>(opts.h) - 1, static_cast<u64>(opts.weight) - 2,
                     u64{1} << 23) > (u64{1} << 23))
        throw std::invalid_argument("search_generators: candidate space too large");
    std::vector<int> ms = opts.ms;
    if (ms.empty()) ms = opts.weight % 2 == 0 ? std::vector<int>{2, 4} : std::vector<int>{2, 3, 4};
    if (std::find(ms.begin(), ms.end(), opts.sort_m) == ms.end()) ms.push_back(opts.sort_m);
    std::vector<Poly> cands = enumerate_candidates(opts.h, opts.weight);

    SearchResult result;
    result.candidates = cands.size();
    std::vector<SearchRow> rows(cands.size());
    int nthreads = thread_count(opts.threads);
#ifdef _OPENMP
#pragma omp parallel for num_threads(nthreads) schedule(dynamic, 8) if (nthreads > 1)
#endif
    for (long long i = 0; i < static_cast<long long>(cands.size()); ++i) {
        SearchRow row;
        row.f = cands[i];
        for (int m : ms) {
            u64 cap;
            switch (m) {
                case 2: cap = opts.l2_cap; break;
                case 3: cap = opts.l3_cap; break;
                case 4: cap = opts.l4_cap; break;
                default: cap = opts.l6_cap; break;
            }
            row.l[m] = lm_search(row.f, m, cap, 1);
        }
        rows[i] = std::move(row);
    }

    if (opts.records_only) {
        std::vector<SearchRow> records;
        u64 best = 0;
        for (auto& row : rows) {
            u64 key = limit_sort_value(row.l.at(opts.sort_m));
            if (key > best) {
                best = key;
                records.push_back(std::move(row));
            }
        }
        rows = std::move(records);
    } else {
        std::stable_sort(rows.begin(), rows.end(), [&](const SearchRow& a, const SearchRow& b) {
            u64 ka = limit_sort_value(a.l.at(opts.sort_m));
            u64 kb = limit_sort_value(b.l.at(opts.sort_m));
            if (ka != kb) return ka < kb;
            return a.f < b.f;
        });
    }
    if (rows.size() > opts.limit) {
        rows.resize(opts.limit);
        result.truncated = true;
    }
    result.rows = std::move(rows);
    return result;
}

namespace ref {

namespace {

bool exists_rec(const std::vector<u64>& rt, u64 top_limit, int remaining, u64 target) {
    if (remaining == 0) return target == 0;
    for (u64 e = static_cast<u64>(remaining); e < top_limit; ++e)
        if (exists_rec(rt, e, remaining - 1, target ^ rt[e])) return true;
    return false;
}

}  // namespace

Limit lm_search(const Poly& f, int m, u64 l_max) {
    if (m < 2) throw std::invalid_argument("ref::lm_search: m must be >= 2");
    WordGen g = word_gen(f);
    if (f.weight() % 2 == 0 && m % 2 == 1) return Limit::inf();
    std::vector<u64> rt = remainder_table(g, l_max + 1);
    for (u64 d = 1; d <= l_max; ++d)
        if (exists_rec(rt, d, m - 2, rt[d] ^ 1)) return Limit::of(d);
    return Limit::over(l_max);
}

u64 weight_count(const Poly& f, u64 l, int m) {
    WordGen g = word_gen(f);
    if (f.weight() % 2 == 0 && m % 2 == 1) return 0;
    if (m < 2 || static_cast<u64>(m) > l) return 0;
    std::vector<u64> rt = remainder_table(g, l);
    u64 total = 0;
    for (u64 c = static_cast<u64>(m) - 1; c < l; ++c) {
        struct Walker {
            const std::vector<u64>& rt;
            u64 count = 0;
            void walk(u64 top_limit, int remaining, u64 target) {
                if (remaining == 0) {
                    if (target == 0) ++count;
                    return;
                }
                for (u64 e = static_cast<u64>(remaining); e < top_limit; ++e)
                    walk(e, remaining - 1, target ^ rt[e]);
            }
        } walker{rt};
        walker.walk(c, m - 2, rt[c] ^ 1);
        total += walker.count * (l - c);
    }
    return total;
}

}  // namespace ref

}  // namespace fastcrc
