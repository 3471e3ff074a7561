#include "fastcrc/parallel.hpp"

#include <algorithm>
#include <numeric>
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

WordGen word_gen(const CrcSpec& spec) {
    u64 low = spec.generator.low64();
    if (spec.h < 64) low ^= u64{1} << spec.h;
    return {spec.h, low};
}

std::vector<MessageFrame> split_frame(const MessageFrame& frame,
                                      const std::vector<u64>& part_tuples) {
    u64 total = std::accumulate(part_tuples.begin(), part_tuples.end(), u64{0});
    if (total != frame.n())
        throw std::invalid_argument("parallel: part lengths must cover the frame");
    std::vector<MessageFrame> parts(part_tuples.size());
    u64 at = 0;
    for (size_t i = 0; i < part_tuples.size(); ++i) {
        parts[i].s = frame.s;
        parts[i].bit_length = part_tuples[i] * static_cast<u64>(frame.s);
        parts[i].tuples.assign(frame.tuples.begin() + static_cast<long long>(at),
                               frame.tuples.begin() + static_cast<long long>(at + part_tuples[i]));
        at += part_tuples[i];
    }
    return parts;
}

}  // namespace

ParallelPlan make_plan(const CrcSpec& spec, const std::vector<u64>& part_tuples) {
    if (part_tuples.empty()) throw std::invalid_argument("make_plan: empty part list");
    for (u64 n : part_tuples)
        if (n < 1) throw std::invalid_argument("make_plan: parts need at least one tuple");
    ParallelPlan plan;
    plan.generator = spec.generator;
    plan.h = spec.h;
    plan.s = spec.s;
    plan.part_tuples = part_tuples;
    size_t k = part_tuples.size();
    plan.weights.assign(k, 0);
    WordGen g = word_gen(spec);
    plan.weights[k - 1] = 1;
    for (size_t i = k - 1; i-- > 0;) {
        u64 shift = part_tuples[i + 1] * static_cast<u64>(spec.s);
        u64 xj = bits::xpow_mod(shift, g.h, g.low);
        plan.weights[i] = bits::mulmod(plan.weights[i + 1], xj, g.h, g.low);
    }
    return plan;
}

u64 combine(const ParallelPlan& plan, const std::vector<u64>& partials) {
    if (partials.size() != plan.weights.size())
        throw std::invalid_argument("combine: partial count mismatch");
    u64 low = plan.generator.low64();
    if (plan.h < 64) low ^= u64{1} << plan.h;
    u64 p = 0;
    for (size_t i = 0; i < partials.size(); ++i)
        p ^= bits::mulmod(partials[i], plan.weights[i], plan.h, low);
    return p;
}

double time_model(double t_w, const std::vector<double>& t_p, const std::vector<double>& t_z,
                  double t_sum) {
    if (t_p.size() != t_z.size() || t_p.empty())
        throw std::invalid_argument("time_model: per-worker lists must match and be nonempty");
    if (t_w < 0 || t_sum < 0) throw std::invalid_argument("time_model: negative time");
    double worst = 0;
    for (size_t i = 0; i < t_p.size(); ++i) {
        if (t_p[i] < 0 || t_z[i] < 0) throw std::invalid_argument("time_model: negative time");
        worst = std::max(worst, t_p[i] + t_z[i]);
    }
    return t_w + worst + t_sum;
}

u64 parallel_check(const CrcSpec& spec, const MessageFrame& frame,
                   const std::vector<u64>& part_tuples, int threads) {
    ParallelPlan plan = make_plan(spec, part_tuples);
    std::vector<MessageFrame> parts = split_frame(frame, part_tuples);
    std::vector<u64> partials(parts.size(), 0);
#ifdef _OPENMP
    int nthreads = threads <= 0 ? omp_get_max_threads() : threads;
#pragma omp parallel for num_threads(nthreads) schedule(static) if (nthreads > 1)
#else
    (void)threads;
#endif
    for (long long i = 0; i < static_cast<long long>(parts.size()); ++i)
        partials[i] = crc_check(spec, parts[i]);
    return combine(plan, partials);
}

namespace ref {

u64 parallel_check(const CrcSpec& spec, const MessageFrame& frame,
                   const std::vector<u64>& part_tuples) {
    ParallelPlan plan = make_plan(spec, part_tuples);
    std::vector<MessageFrame> parts = split_frame(frame, part_tuples);
    std::vector<u64> partials;
    partials.reserve(parts.size());
    for (const MessageFrame& part : parts) partials.push_back(crc_check(spec, part));
    return combine(plan, partials);
}

}  // namespace ref

}  // namespace fastcrc
