#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "cip/model.hpp"

namespace cip {

/// Parameters shared by the two rounding algorithms. Valid parameters have
/// sigma in (0,1), alpha > 1 and alpha > -ln(1-sigma)/sigma; theta is the
/// derived quantization step -ln(1-sigma)/(alpha*sigma), always < 1 with
/// theta*alpha > 1.
struct RoundingParams {
    double sigma = 0.0;
    double alpha = 0.0;
    double theta = 0.0;
};

/// Validates (sigma, alpha) and derives theta. Throws std::invalid_argument.
RoundingParams make_params(double sigma, double alpha);

/// Per-run log of a partial-resampling run. Replays deterministically from
/// the seed: initial draws are consumed in variable order, then each event
/// walks the stored entries of its constraint row in column order, consuming
/// one uniform per zero-valued variable (set membership) plus one more for
/// each member (its new value).
struct ResampleTrace {
    struct Event {
        int k = 0;                   ///< resampled constraint (minimal violated)
        std::vector<int> resampled;  ///< the set Y
        std::vector<int> turned;     ///< members that flipped 0 -> 1
    };
    std::vector<std::uint8_t> initial_bits;
    std::vector<Event> events;
    std::size_t total_events() const { return events.size(); }
};

/// Partial-resampling rounding for xhat in [0, 1/alpha)^n: draw
/// x_i ~ Bernoulli(alpha*xhat_i), then while some constraint with a_k > 0 is
/// unsatisfied, resample the minimal one (membership probability
/// sigma*A_ki among zero variables, then Bernoulli(alpha*xhat_i) per member).
/// Constraints with a_k <= 0 count as satisfied. The returned x is binary and
/// passes check_cover exactly.
///
/// Preconditions (std::invalid_argument): xhat_i in [0, 1/alpha) for all i,
/// and s_bound(k) < 1 for every constraint with a_k > 0. Throws
/// std::runtime_error("cap exceeded") after more than `cap` events
/// (cap <= 0 selects the default 1000*m + 1000).
std::pair<IntegralSolution, ResampleTrace> relax_round(const std::vector<double>& xhat,
                                                       const CipInstance& inst,
                                                       const RoundingParams& params,
                                                       std::uint64_t seed, long long cap = 0);

/// Witness weight of a resampled set Z for constraint k:
///   (1-sigma)^{-a_k} * prod_i (1 - A_ki*sigma)
///                    * prod_{i in Z} (1-p_i)*A_ki*sigma / (1 - A_ki*sigma)
/// with p_i = alpha*xhat_i. Zero whenever Z contains a variable outside the
/// row's support.
double f_weight(const CipInstance& inst, const std::vector<double>& xhat,
                const RoundingParams& params, int k, const std::vector<int>& Z);

/// s_k = (1-sigma)^{-a_k} * exp(-sigma*alpha*A_k.xhat). The sum of f_k over
/// all subsets is at most s_k, and s_k < 1 is the working precondition.
double s_bound(const CipInstance& inst, const std::vector<double>& xhat,
               const RoundingParams& params, int k);

/// Upper bound on the expected number of resampling events:
///   sum_k 1 / (exp(sigma*alpha*A_k.xhat) * (1-sigma)^{a_k} - 1)
/// over constraints with a_k > 0. Throws std::invalid_argument when some
/// such constraint has s_k >= 1.
double expected_resample_bound(const CipInstance& inst, const std::vector<double>& xhat,
                               const RoundingParams& params);

/// Upper bound rho_i on P(x_i = 1) at the end of relax_round:
///   alpha*xhat_i * (1 + sigma * sum_k A_ki / (exp(sigma*alpha*A_k.xhat)*(1-sigma)^{a_k} - 1))
double marginal_bound(const CipInstance& inst, const std::vector<double>& xhat,
                      const RoundingParams& params, int i);

}  // namespace cip
