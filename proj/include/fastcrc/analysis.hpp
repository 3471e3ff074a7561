#ifndef FASTCRC_ANALYSIS_HPP
#define FASTCRC_ANALYSIS_HPP

#include <cstdint>
#include <map>
#include <vector>

#include "fastcrc/poly.hpp"

namespace fastcrc {

/// A detection limit l_m: the longest total code length at which every
/// m-error pattern is caught. Equals the minimal degree of a weight-m
/// multiple of the generator with nonzero constant term.
struct Limit {
    enum class Kind { value, unbounded, exceeds };
    Kind kind = Kind::exceeds;
    u64 v = 0;      // the limit when kind == value
    u64 bound = 0;  // the search bound when kind == exceeds

    static Limit of(u64 x) { return {Kind::value, x, 0}; }
    static Limit inf() { return {Kind::unbounded, 0, 0}; }
    static Limit over(u64 b) { return {Kind::exceeds, 0, b}; }

    bool has_value() const { return kind == Kind::value; }
    bool operator==(const Limit&) const = default;
};

inline constexpr u64 default_l3_cap = u64{1} << 20;
inline constexpr u64 default_l4_cap = 65536;

/// Minimal degree of a weight-m multiple of f with constant term 1 (so all
/// m-error patterns are detected at total length <= the result). Odd m over
/// an even-weight f is unbounded. Supported m: 2..6. threads=0 picks the
/// OpenMP default, 1 forces serial.
Limit lm_search(const Poly& f, int m, u64 l_max, int threads = 0);

struct DetectionProfile {
    Poly generator;
    std::map<int, Limit> l;  // m -> l_m
};

/// Computes l_2..l_max_m with parity shortcuts (odd m over even weight is
/// unbounded; m = weight(f) is degree(f) outright).
DetectionProfile build_profile(const Poly& f, int max_m, u64 l3_cap = default_l3_cap,
                               u64 l4_cap = default_l4_cap, int threads = 0);

struct DminResult {
    int dmin = 2;
    bool needs_more = false;  // profile too shallow (or bounds too low) to certify further
};

/// Largest m+1 with length <= min of the profile's l_2..l_m; 2 beyond the
/// period.
DminResult dmin_at_length(const DetectionProfile& profile, u64 length);

struct WeightDistribution {
    Poly generator;
    u64 length = 0;
    std::map<int, u64> counts;  // m -> w_m
    bool complete = false;      // all nonzero w_m present (else partial-sum lower bound)
};

struct CountResult {
    enum class Kind { value, exceeds } kind = Kind::value;
    u64 v = 0;

    static CountResult of(u64 x) { return {Kind::value, x}; }
    static CountResult over() { return {Kind::exceeds, 0}; }
    bool has_value() const { return kind == Kind::value; }
};

inline constexpr u64 default_count_budget = u64{1} << 33;

/// Exact number of weight-m codewords of length l, summed over constant-term
/// multiples per degree. Budget compares C(l-1, m-1) against `budget`.
CountResult weight_count(const Poly& f, u64 l, int m, u64 budget = default_count_budget,
                         int threads = 0);

struct Probability {
    double value = 0;
    bool lower_bound = false;
};

/// p_u = sum w_m p^m (1-p)^(l-m) over a binary symmetric channel; flagged as
/// a lower bound when the distribution is partial.
Probability undetected_error_probability(const WeightDistribution& weights, double p);

/// w_dmin * p^dmin.
double first_order_estimate(double w_dmin, int dmin, double p);

struct SearchOptions {
    int h = 16;
    int weight = 6;
    std::vector<int> ms;  // which l_m to compute; default by parity of weight
    u64 l2_cap = default_period_cap;
    u64 l3_cap = default_l3_cap;
    u64 l4_cap = default_l4_cap;
    u64 l6_cap = 1024;
    int sort_m = 4;            // sort key l_m; ties by encoding
    bool records_only = false; // keep rows whose key strictly improves, scanning by encoding
    u64 limit = ~u64{0};       // emitted-row cap; truncation is reported, not fatal
    int threads = 0;
};

struct SearchRow {
    Poly f;
    std::map<int, Limit> l;
};

struct SearchResult {
    std::vector<SearchRow> rows;
    u64 candidates = 0;
    bool truncated = false;
};

/// Enumerates X^h + (weight-2 middle terms) + 1 in increasing binary value,
/// computes the requested limits, and returns rows sorted by the key.
/// Parallel and serial runs produce identical rows.
SearchResult search_generators(const SearchOptions& opts);

/// Serial reference implementations following the straightforward
/// restricted-enumeration methods; kept for testing and benchmarking the
/// kernels above.
namespace ref {

Limit lm_search(const Poly& f, int m, u64 l_max);
u64 weight_count(const Poly& f, u64 l, int m);

}  // namespace ref

}  // namespace fastcrc

#endif
