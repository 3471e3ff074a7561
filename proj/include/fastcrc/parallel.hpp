#ifndef FASTCRC_PARALLEL_HPP
#define FASTCRC_PARALLEL_HPP

#include <vector>

#include "fastcrc/engine.hpp"
#include "fastcrc/poly.hpp"

namespace fastcrc {

/// Split layout plus the per-part recombination weights
/// W_i = R_M[X^(tuples-after-part-i * s)], W_last = 1. Weights depend only
/// on the layout, so a fixed layout's plan is computed once and shared.
struct ParallelPlan {
    Poly generator;
    int h = 0;
    int s = 0;
    std::vector<u64> part_tuples;  // n_i, tuple counts per part
    std::vector<u64> weights;      // W_i as h-bit values
};

/// Weights by the backward recurrence W_i = R[X^(n_(i+1) s) W_(i+1)].
ParallelPlan make_plan(const CrcSpec& spec, const std::vector<u64>& part_tuples);

/// Final check: sum of R_M[P_i W_i] over the per-part checks P_i. Equals the
/// sequential check of the concatenated message exactly.
u64 combine(const ParallelPlan& plan, const std::vector<u64>& partials);

/// t_total = t_w + max_i(t_p[i] + t_z[i]) + t_sum.
double time_model(double t_w, const std::vector<double>& t_p, const std::vector<double>& t_z,
                  double t_sum);

/// Full runner: partitions the frame per the layout, computes per-part
/// checks (OpenMP across parts), combines. threads=1 forces serial workers.
u64 parallel_check(const CrcSpec& spec, const MessageFrame& frame,
                   const std::vector<u64>& part_tuples, int threads = 0);

namespace ref {

/// Sequential worker loop over the same plan; the baseline the threaded
/// runner is compared against.
u64 parallel_check(const CrcSpec& spec, const MessageFrame& frame,
                   const std::vector<u64>& part_tuples);

}  // namespace ref

}  // namespace fastcrc

#endif
