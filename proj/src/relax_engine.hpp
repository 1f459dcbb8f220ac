#pragma once

#include <cstdint>
#include <vector>

#include "cip/model.hpp"
#include "cip/relaxation.hpp"

namespace cip::detail {

/// One satisfaction target for the resampling loop: row k of `inst` is
/// satisfied when rhs_k <= 0 or sum_i A_ki*(base_i + bit_i) >= rhs_k,
/// evaluated freshly in stored-entry order (the check_cover summation).
/// `rhs` defaults to inst->a and `base` to zero. All targets must share the
/// row count of the probability instance.
struct CheckTarget {
    const CipInstance* inst = nullptr;
    const std::vector<double>* rhs = nullptr;
    const std::vector<double>* base = nullptr;
};

struct EngineResult {
    std::vector<std::uint8_t> bits;
    ResampleTrace trace;
};

/// Core partial-resampling loop shared by relax_round and the quantized
/// rounding pipelines. Membership probabilities come from `prob`; the loop
/// runs until every target row is satisfied. Bits only flip 0 -> 1, so
/// satisfied rows stay satisfied and the minimal violated row index is
/// nondecreasing over the run.
EngineResult run_partial_resampling(const CipInstance& prob, const std::vector<double>& xhat,
                                    const RoundingParams& params,
                                    const std::vector<CheckTarget>& targets, std::uint64_t seed,
                                    long long cap);

inline long long default_cap(int m) { return 1000LL * m + 1000LL; }

}  // namespace cip::detail
