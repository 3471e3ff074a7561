// Compares the OpenMP kernels against their serial references and measures
// check-computation throughput per technique.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "fastcrc/analysis.hpp"
#include "fastcrc/engine.hpp"
#include "fastcrc/parallel.hpp"
#include "fastcrc/poly.hpp"

using namespace fastcrc;
using Clock = std::chrono::steady_clock;

namespace {

double time_of(const char* name, const std::function<void()>& fn) {
    auto t0 = Clock::now();
    fn();
    double dt = std::chrono::duration<double>(Clock::now() - t0).count();
    std::printf("%-44s %10.3f ms\n", name, dt * 1e3);
    return dt;
}

MessageFrame random_frame(std::mt19937_64& rng, int s, u64 n) {
    MessageFrame f;
    f.s = s;
    f.tuples.resize(n);
    for (u64& q : f.tuples) q = s == 64 ? rng() : rng() & ((u64{1} << s) - 1);
    f.bit_length = n * static_cast<u64>(s);
    return f;
}

void throughput(const char* name, const CrcSpec& spec, const MessageFrame& f, int reps) {
    u64 sink = 0;
    auto t0 = Clock::now();
    for (int r = 0; r < reps; ++r) sink ^= crc_check(spec, f);
    double dt = std::chrono::duration<double>(Clock::now() - t0).count();
    double mbps = static_cast<double>(f.n()) * spec.s / 8.0 * reps / dt / 1e6;
    std::printf("%-44s %10.1f MB/s   (check %016llx)\n", name, mbps,
                static_cast<unsigned long long>(sink));
}

}  // namespace

int main() {
#ifdef _OPENMP
    std::printf("OpenMP enabled, max threads %d\n\n", omp_get_max_threads());
#else
    std::printf("OpenMP not available, serial build\n\n");
#endif

    std::mt19937_64 rng(1);

    std::printf("-- check computation, 16 MiB message --\n");
    MessageFrame f64 = random_frame(rng, 64, u64{1} << 21);
    throughput("x^64 family, division technique", make_spec(fast_poly(64), 64), f64, 1);
    throughput("x^64 family, low-terms technique",
               make_spec(fast_poly(64), 64, Technique::low_terms), f64, 5);
    throughput("x^64 family, four-entry table",
               make_spec(fast_poly(64), 64, Technique::fast_table), f64, 5);
    MessageFrame f32 = random_frame(rng, 32, u64{1} << 22);
    throughput("x^32 family, low-terms technique",
               make_spec(fast_poly(32), 32, Technique::low_terms), f32, 3);
    throughput("crc-32 multi-table m=4",
               make_spec(poly_from_exponents({32, 7, 6, 2, 0}), 32, Technique::multi_table, 4),
               f32, 3);

    std::printf("\n-- weight counting, x^16 family, length 600, weight 4 --\n");
    u64 w_ref = 0, w_par = 0;
    time_of("serial reference (direct enumeration)",
            [&] { w_ref = ref::weight_count(fast_poly(16), 600, 4); });
    time_of("kernel, 1 thread", [&] {
        w_par = weight_count(fast_poly(16), 600, 4, default_count_budget, 1).v;
    });
    time_of("kernel, all threads", [&] {
        w_par = weight_count(fast_poly(16), 600, 4, default_count_budget, 0).v;
    });
    std::printf("counts agree: %s (%llu)\n", w_ref == w_par ? "yes" : "NO",
                static_cast<unsigned long long>(w_par));

    std::printf("\n-- weight-4 detection limit, bound 4096 --\n");
    Poly probe = poly_from_exponents({32, 12, 8, 4, 3, 0});
    Limit l_ref, l_par;
    time_of("serial reference (restricted enumeration)",
            [&] { l_ref = ref::lm_search(probe, 4, 512); });
    time_of("kernel, bound 512", [&] { l_par = lm_search(probe, 4, 512, 0); });
    std::printf("verdicts agree at 512: %s\n", l_ref == l_par ? "yes" : "NO");
    time_of("kernel, bound 4096", [&] { l_par = lm_search(probe, 4, 4096, 0); });

    std::printf("\n-- generator search, degree 16 weight 6 --\n");
    SearchOptions opts;
    opts.h = 16;
    opts.weight = 6;
    opts.ms = {2, 4};
    opts.l4_cap = 131;
    SearchResult s_serial, s_par;
    opts.threads = 1;
    time_of("search, 1 thread", [&] { s_serial = search_generators(opts); });
    opts.threads = 0;
    time_of("search, all threads", [&] { s_par = search_generators(opts); });
    bool same = s_serial.rows.size() == s_par.rows.size();
    for (size_t i = 0; same && i < s_serial.rows.size(); ++i)
        same = s_serial.rows[i].f == s_par.rows[i].f && s_serial.rows[i].l == s_par.rows[i].l;
    std::printf("rows identical: %s (%zu rows)\n", same ? "yes" : "NO", s_par.rows.size());

    std::printf("\n-- split checking, 8 parts, 32 MiB --\n");
    CrcSpec spec = make_spec(fast_poly(64), 64, Technique::low_terms);
    MessageFrame big = random_frame(rng, 64, u64{1} << 22);
    std::vector<u64> parts(8, big.n() / 8);
    u64 c_seq = 0, c_ref = 0, c_par = 0;
    time_of("sequential check", [&] { c_seq = crc_check(spec, big); });
    time_of("split workers, serial loop", [&] { c_ref = ref::parallel_check(spec, big, parts); });
    time_of("split workers, OpenMP", [&] { c_par = parallel_check(spec, big, parts, 0); });
    std::printf("checks agree: %s\n", c_seq == c_ref && c_ref == c_par ? "yes" : "NO");
    return 0;
}
